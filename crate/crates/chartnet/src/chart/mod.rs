//! Symbolic chart specifications and their constrained sampling.
//!
//! A `ChartSpec` is the single source of truth for a chart: the renderer
//! derives pixels from it and the question oracle derives answers from it.
//! Sampling is a pure function of `(seed, constraints)`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::util::fnv1a64;

/// A named color from the fixed palette.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColorName {
    pub name: &'static str,
    pub rgb: [u8; 3],
}

/// Fixed ordered palette. Question templates reference chart elements by
/// color, so names must be unique and the set must cover every color that
/// appears in a question surface form.
pub const PALETTE: [ColorName; 10] = [
    ColorName { name: "red", rgb: [255, 0, 0] },
    ColorName { name: "blue", rgb: [0, 0, 255] },
    ColorName { name: "green", rgb: [0, 128, 0] },
    ColorName { name: "black", rgb: [0, 0, 0] },
    ColorName { name: "yellow", rgb: [255, 214, 0] },
    ColorName { name: "yellowgreen", rgb: [154, 205, 50] },
    ColorName { name: "orange", rgb: [255, 140, 0] },
    ColorName { name: "purple", rgb: [128, 0, 128] },
    ColorName { name: "cyan", rgb: [0, 190, 214] },
    ColorName { name: "magenta", rgb: [255,  0, 255] },
];

pub fn palette_color(name: &str) -> Option<ColorName> {
    PALETTE.iter().copied().find(|c| c.name == name)
}

/// Fixed label lexicon: 30 short ASCII strings (programming-language names),
/// at most 7 characters so bounding-box targets have bounded text width.
pub const LABEL_LEXICON: [&str; 30] = [
    "C++", "C", "JAVA", "PYTHON", "RUST", "GO", "RUBY", "SWIFT", "KOTLIN",
    "SCALA", "PERL", "PHP", "HASKELL", "LUA", "JULIA", "R", "FORTRAN", "COBOL",
    "ADA", "LISP", "SCHEME", "PROLOG", "ERLANG", "ELIXIR", "OCAML", "MATLAB",
    "BASIC", "PASCAL", "DART", "SQL",
];

impl Serialize for ColorName {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name)
    }
}

impl<'de> Deserialize<'de> for ColorName {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        palette_color(&name)
            .ok_or_else(|| D::Error::custom(format!("unknown palette color `{name}`")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Bar {
    pub color: ColorName,
    /// Height as a fraction of the y-axis range, in (0, 1].
    pub height: f64,
    pub label: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BarChartSpec {
    pub bars: Vec<Bar>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Sector {
    pub color: ColorName,
    /// Central angle in degrees, > 0. Sectors are stored clockwise starting
    /// at 12 o'clock.
    pub angle: f64,
    pub label: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PieChartSpec {
    pub sectors: Vec<Sector>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "chart_type", rename_all = "snake_case")]
pub enum ChartSpec {
    Bar(BarChartSpec),
    Pie(PieChartSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartType {
    Bar,
    Pie,
}

impl std::fmt::Display for ChartType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChartType::Bar => write!(f, "bar"),
            ChartType::Pie => write!(f, "pie"),
        }
    }
}

impl ChartSpec {
    pub fn chart_type(&self) -> ChartType {
        match self {
            ChartSpec::Bar(_) => ChartType::Bar,
            ChartSpec::Pie(_) => ChartType::Pie,
        }
    }

    pub fn element_count(&self) -> usize {
        match self {
            ChartSpec::Bar(b) => b.bars.len(),
            ChartSpec::Pie(p) => p.sectors.len(),
        }
    }

    /// Colors in element order.
    pub fn colors(&self) -> Vec<ColorName> {
        match self {
            ChartSpec::Bar(b) => b.bars.iter().map(|x| x.color).collect(),
            ChartSpec::Pie(p) => p.sectors.iter().map(|x| x.color).collect(),
        }
    }

    /// Comparison magnitude per element: bar height or sector angle.
    pub fn sizes(&self) -> Vec<f64> {
        match self {
            ChartSpec::Bar(b) => b.bars.iter().map(|x| x.height).collect(),
            ChartSpec::Pie(p) => p.sectors.iter().map(|x| x.angle).collect(),
        }
    }

    pub fn labels(&self) -> Vec<&str> {
        match self {
            ChartSpec::Bar(b) => b.bars.iter().map(|x| x.label.as_str()).collect(),
            ChartSpec::Pie(p) => p.sectors.iter().map(|x| x.label.as_str()).collect(),
        }
    }

    /// Stable content fingerprint over the canonical JSON form, used for
    /// split-disjointness checks and manifest hashing.
    pub fn content_hash(&self) -> u64 {
        let json = serde_json::to_string(self).expect("spec serializes");
        fnv1a64(json.as_bytes())
    }
}

/// Constraints under which specs are sampled.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct GenerationConstraints {
    pub min_elements: usize,
    pub max_elements: usize,
    /// Minimum pairwise height difference between bars (axis fraction).
    pub height_epsilon: f64,
    pub min_height: f64,
    pub max_height: f64,
    /// Minimum pairwise angle difference between sectors, degrees.
    pub angle_epsilon: f64,
    /// Smallest allowed sector angle, degrees.
    pub min_angle: f64,
}

impl Default for GenerationConstraints {
    fn default() -> Self {
        GenerationConstraints {
            min_elements: 2,
            max_elements: 8,
            height_epsilon: 0.05,
            min_height: 0.1,
            max_height: 1.0,
            angle_epsilon: 10.0,
            min_angle: 5.0,
        }
    }
}

pub const ANGLE_SUM_TOLERANCE: f64 = 1e-9;

impl GenerationConstraints {
    /// Largest element count for which a bar chart satisfying the pairwise
    /// height separation exists.
    fn max_feasible_bars(&self) -> usize {
        if self.max_height <= self.min_height {
            return 0;
        }
        let span = self.max_height - self.min_height;
        let by_eps = (span / self.height_epsilon).floor() as usize + 1;
        by_eps.min(PALETTE.len())
    }

    /// Largest sector count for which angles can sum to 360 under the
    /// separation and minimum-angle constraints.
    fn max_feasible_sectors(&self) -> usize {
        for n in (1..=PALETTE.len()).rev() {
            let base = n as f64 * self.min_angle
                + self.angle_epsilon * (n * (n - 1)) as f64 / 2.0;
            if base <= 360.0 {
                return n;
            }
        }
        0
    }

    fn check(&self, chart_type: ChartType) -> Result<(usize, usize)> {
        if self.min_elements < 2 {
            return Err(Error::InfeasibleConstraints(
                "min_elements must be at least 2".into(),
            ));
        }
        if self.min_elements > self.max_elements {
            return Err(Error::InfeasibleConstraints(format!(
                "min_elements {} exceeds max_elements {}",
                self.min_elements, self.max_elements
            )));
        }
        if self.max_elements > PALETTE.len() {
            return Err(Error::InfeasibleConstraints(format!(
                "max_elements {} exceeds palette size {}",
                self.max_elements,
                PALETTE.len()
            )));
        }
        let feasible_max = match chart_type {
            ChartType::Bar => self.max_feasible_bars(),
            ChartType::Pie => self.max_feasible_sectors(),
        };
        if feasible_max < self.min_elements {
            return Err(Error::InfeasibleConstraints(format!(
                "no {} chart with at least {} elements satisfies the separation constraints",
                chart_type, self.min_elements
            )));
        }
        Ok((self.min_elements, self.max_elements.min(feasible_max)))
    }
}

/// Sample values with all pairwise differences >= eps: take the separated
/// ladder `lo + eps*i` and distribute random non-decreasing slack on top.
fn sample_separated(rng: &mut Rng, n: usize, lo: f64, eps: f64, slack_total: f64) -> Vec<f64> {
    let mut slack: Vec<f64> = (0..n).map(|_| rng.next_f64()).collect();
    slack.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut values: Vec<f64> = (0..n)
        .map(|i| lo + eps * i as f64 + slack[i] * slack_total)
        .collect();
    rng.shuffle(&mut values);
    values
}

/// Sample a bar chart spec. Pure function of `(rng_seed, constraints)`.
pub fn sample_bar_spec(rng_seed: u64, constraints: &GenerationConstraints) -> Result<BarChartSpec> {
    let (lo_n, hi_n) = constraints.check(ChartType::Bar)?;
    let mut rng = Rng::new(rng_seed).derive(0x6261_7273); // "bars"
    let n = rng.range_usize(lo_n, hi_n);

    let color_idx = rng.sample_indices(PALETTE.len(), n);
    let label_idx = rng.sample_indices(LABEL_LEXICON.len(), n);
    let slack_total = constraints.max_height
        - constraints.min_height
        - constraints.height_epsilon * (n - 1) as f64;
    let heights = sample_separated(
        &mut rng,
        n,
        constraints.min_height,
        constraints.height_epsilon,
        slack_total,
    );

    let bars = (0..n)
        .map(|i| Bar {
            color: PALETTE[color_idx[i]],
            height: heights[i],
            label: LABEL_LEXICON[label_idx[i]].to_string(),
        })
        .collect();
    Ok(BarChartSpec { bars, seed: rng_seed })
}

/// Sample a pie chart spec. Pure function of `(rng_seed, constraints)`.
pub fn sample_pie_spec(rng_seed: u64, constraints: &GenerationConstraints) -> Result<PieChartSpec> {
    let (lo_n, hi_n) = constraints.check(ChartType::Pie)?;
    let mut rng = Rng::new(rng_seed).derive(0x7069_6573); // "pies"
    let n = rng.range_usize(lo_n, hi_n);

    let color_idx = rng.sample_indices(PALETTE.len(), n);
    let label_idx = rng.sample_indices(LABEL_LEXICON.len(), n);

    // Angles: separated ladder plus non-decreasing slack summing exactly to
    // the remainder, so the total is 360 by construction.
    let base_sum = n as f64 * constraints.min_angle
        + constraints.angle_epsilon * (n * (n - 1)) as f64 / 2.0;
    let slack_total = 360.0 - base_sum;
    let mut slack: Vec<f64> = (0..n).map(|_| rng.next_f64()).collect();
    let sum: f64 = slack.iter().sum();
    if sum > 0.0 {
        for s in &mut slack {
            *s *= slack_total / sum;
        }
    }
    slack.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut angles: Vec<f64> = (0..n)
        .map(|i| constraints.min_angle + constraints.angle_epsilon * i as f64 + slack[i])
        .collect();
    // Fix residual rounding on the largest angle so the sum is exact.
    let total: f64 = angles.iter().sum();
    let last = angles.len() - 1;
    angles[last] += 360.0 - total;
    rng.shuffle(&mut angles);

    let sectors = (0..n)
        .map(|i| Sector {
            color: PALETTE[color_idx[i]],
            angle: angles[i],
            label: LABEL_LEXICON[label_idx[i]].to_string(),
        })
        .collect();
    Ok(PieChartSpec { sectors, seed: rng_seed })
}

pub fn sample_spec(
    chart_type: ChartType,
    rng_seed: u64,
    constraints: &GenerationConstraints,
) -> Result<ChartSpec> {
    match chart_type {
        ChartType::Bar => sample_bar_spec(rng_seed, constraints).map(ChartSpec::Bar),
        ChartType::Pie => sample_pie_spec(rng_seed, constraints).map(ChartSpec::Pie),
    }
}

/// One violated invariant, with enough context to read in a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: String,
    pub message: String,
}

impl Violation {
    fn new(code: &str, message: String) -> Self {
        Violation { code: code.into(), message }
    }
}

/// Result of validating a spec. Empty iff the spec is valid. Validation
/// never fails; it only reports.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.code, v.message)?;
        }
        Ok(())
    }
}

/// Validate a spec against the default constraints.
pub fn validate_spec(spec: &ChartSpec) -> ValidationReport {
    validate_spec_with(spec, &GenerationConstraints::default())
}

/// Validate a spec against explicit constraints, listing every violation.
pub fn validate_spec_with(spec: &ChartSpec, c: &GenerationConstraints) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = spec.element_count();
    let kind = match spec.chart_type() {
        ChartType::Bar => "bar",
        ChartType::Pie => "sector",
    };

    if n < c.min_elements {
        report.violations.push(Violation::new(
            "too-few-elements",
            format!("{n} {kind}s, minimum is {}", c.min_elements),
        ));
    }
    if n > c.max_elements {
        report.violations.push(Violation::new(
            "too-many-elements",
            format!("{n} {kind}s, maximum is {}", c.max_elements),
        ));
    }

    let colors = spec.colors();
    for i in 0..n {
        for j in (i + 1)..n {
            if colors[i] == colors[j] {
                report.violations.push(Violation::new(
                    "duplicate-color",
                    format!("{kind}s {i} and {j} share color {}", colors[i].name),
                ));
            }
        }
    }

    let labels = spec.labels();
    for i in 0..n {
        if !LABEL_LEXICON.contains(&labels[i]) {
            report.violations.push(Violation::new(
                "unknown-label",
                format!("{kind} {i} has label `{}` outside the lexicon", labels[i]),
            ));
        }
        for j in (i + 1)..n {
            if labels[i] == labels[j] {
                report.violations.push(Violation::new(
                    "duplicate-label",
                    format!("{kind}s {i} and {j} share label `{}`", labels[i]),
                ));
            }
        }
    }

    match spec {
        ChartSpec::Bar(bar) => {
            for (i, b) in bar.bars.iter().enumerate() {
                if !(b.height > 0.0 && b.height <= 1.0) {
                    report.violations.push(Violation::new(
                        "height-out-of-range",
                        format!("bar {i} height {} outside (0, 1]", b.height),
                    ));
                }
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let d = (bar.bars[i].height - bar.bars[j].height).abs();
                    if d < c.height_epsilon {
                        report.violations.push(Violation::new(
                            "height-tie",
                            format!(
                                "bars {i} and {j} differ by {d:.4} < epsilon {}",
                                c.height_epsilon
                            ),
                        ));
                    }
                }
            }
        }
        ChartSpec::Pie(pie) => {
            for (i, s) in pie.sectors.iter().enumerate() {
                if s.angle <= 0.0 {
                    report.violations.push(Violation::new(
                        "non-positive-angle",
                        format!("sector {i} angle {} must be > 0", s.angle),
                    ));
                }
            }
            let sum: f64 = pie.sectors.iter().map(|s| s.angle).sum();
            if (sum - 360.0).abs() > ANGLE_SUM_TOLERANCE {
                report.violations.push(Violation::new(
                    "angle-sum",
                    format!("sector angles sum to {sum}, expected 360"),
                ));
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let d = (pie.sectors[i].angle - pie.sectors[j].angle).abs();
                    if d < c.angle_epsilon {
                        report.violations.push(Violation::new(
                            "angle-tie",
                            format!(
                                "sectors {i} and {j} differ by {d:.4} < epsilon {}",
                                c.angle_epsilon
                            ),
                        ));
                    }
                }
            }
        }
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palette_names_and_rgb_unique() {
        for i in 0..PALETTE.len() {
            for j in (i + 1)..PALETTE.len() {
                assert_ne!(PALETTE[i].name, PALETTE[j].name);
                assert_ne!(PALETTE[i].rgb, PALETTE[j].rgb);
            }
        }
        for required in ["red", "blue", "green", "black", "yellow", "yellowgreen"] {
            assert!(palette_color(required).is_some(), "palette must contain {required}");
        }
    }

    #[test]
    fn lexicon_has_30_short_unique_labels() {
        assert_eq!(LABEL_LEXICON.len(), 30);
        for i in 0..LABEL_LEXICON.len() {
            assert!(LABEL_LEXICON[i].len() <= 7, "{} too long", LABEL_LEXICON[i]);
            for j in (i + 1)..LABEL_LEXICON.len() {
                assert_ne!(LABEL_LEXICON[i], LABEL_LEXICON[j]);
            }
        }
    }

    #[test]
    fn bar_sampling_is_deterministic() {
        let c = GenerationConstraints::default();
        let a = sample_bar_spec(7, &c).unwrap();
        let b = sample_bar_spec(7, &c).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn pie_sampling_is_deterministic() {
        let c = GenerationConstraints::default();
        let a = sample_pie_spec(3, &c).unwrap();
        let b = sample_pie_spec(3, &c).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn forced_two_bars() {
        let c = GenerationConstraints {
            min_elements: 2,
            max_elements: 2,
            ..Default::default()
        };
        for seed in 0..20 {
            assert_eq!(sample_bar_spec(seed, &c).unwrap().bars.len(), 2);
        }
    }

    #[test]
    fn forced_two_sectors_sum_to_360() {
        let c = GenerationConstraints {
            min_elements: 2,
            max_elements: 2,
            ..Default::default()
        };
        for seed in 0..20 {
            let spec = sample_pie_spec(seed, &c).unwrap();
            assert_eq!(spec.sectors.len(), 2);
            let sum: f64 = spec.sectors.iter().map(|s| s.angle).sum();
            assert!((sum - 360.0).abs() <= ANGLE_SUM_TOLERANCE);
        }
    }

    #[test]
    fn pie_angles_sum_to_360() {
        let c = GenerationConstraints::default();
        for seed in 0..50 {
            let spec = sample_pie_spec(seed, &c).unwrap();
            let sum: f64 = spec.sectors.iter().map(|s| s.angle).sum();
            assert!((sum - 360.0).abs() <= ANGLE_SUM_TOLERANCE, "seed {seed}: sum {sum}");
        }
    }

    #[test]
    fn min_bars_above_palette_is_infeasible() {
        let c = GenerationConstraints {
            min_elements: 11,
            max_elements: 11,
            ..Default::default()
        };
        assert!(matches!(
            sample_bar_spec(0, &c),
            Err(Error::InfeasibleConstraints(_))
        ));
    }

    #[test]
    fn sampled_specs_validate_over_many_seeds() {
        let c = GenerationConstraints::default();
        for seed in 0..1000 {
            let bar = ChartSpec::Bar(sample_bar_spec(seed, &c).unwrap());
            let report = validate_spec(&bar);
            assert!(report.is_valid(), "bar seed {seed}: {report}");
            let pie = ChartSpec::Pie(sample_pie_spec(seed, &c).unwrap());
            let report = validate_spec(&pie);
            assert!(report.is_valid(), "pie seed {seed}: {report}");
        }
    }

    #[test]
    fn duplicate_color_detected() {
        let mut spec = sample_bar_spec(1, &GenerationConstraints::default()).unwrap();
        let c0 = spec.bars[0].color;
        spec.bars[1].color = c0;
        let report = validate_spec(&ChartSpec::Bar(spec));
        assert!(report.violations.iter().any(|v| v.code == "duplicate-color"));
    }

    #[test]
    fn angle_sum_violation_detected() {
        let mut spec = sample_pie_spec(1, &GenerationConstraints::default()).unwrap();
        spec.sectors[0].angle -= 60.0;
        let report = validate_spec(&ChartSpec::Pie(spec));
        assert!(report.violations.iter().any(|v| v.code == "angle-sum"));
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = ChartSpec::Bar(sample_bar_spec(7, &GenerationConstraints::default()).unwrap());
        let json = serde_json::to_string(&spec).unwrap();
        let back: ChartSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);
    }

    /// Snapshot regression fixture: frozen from the first run of the
    /// generator at seed 7 under default constraints. Catches accidental
    /// changes to the sampling stream.
    #[test]
    fn bar_seed7_snapshot() {
        let spec = sample_bar_spec(7, &GenerationConstraints::default()).unwrap();
        assert!((2..=8).contains(&spec.bars.len()));
        let report = validate_spec(&ChartSpec::Bar(spec.clone()));
        assert!(report.is_valid());
        let snapshot = serde_json::to_string(&spec).unwrap();
        assert_eq!(snapshot, BAR_SEED7_JSON, "generator stream changed");
    }

    // Frozen output of `sample_bar_spec(7, default)`; see bar_seed7_snapshot.
    const BAR_SEED7_JSON: &str = "{\"bars\":[{\"color\":\"orange\",\"height\":0.19892199323586368,\"label\":\"JULIA\"},{\"color\":\"purple\",\"height\":0.3029716415882935,\"label\":\"BASIC\"},{\"color\":\"black\",\"height\":0.8685695515838817,\"label\":\"PHP\"},{\"color\":\"yellow\",\"height\":0.4599784288484142,\"label\":\"PROLOG\"},{\"color\":\"cyan\",\"height\":0.39356366119443975,\"label\":\"OCAML\"},{\"color\":\"red\",\"height\":0.6871558979579049,\"label\":\"RUST\"},{\"color\":\"yellowgreen\",\"height\":0.6187279572758178,\"label\":\"ERLANG\"}],\"seed\":7}";
}
