//! Deterministic chart rasterization with exact text bounding boxes.
//!
//! Rendering is a pure function of `(spec, resolution)`: integer layout
//! arithmetic, flat fills, no anti-aliasing, and a built-in bitmap font make
//! identical inputs produce byte-identical pixels. Every text element drawn
//! on the canvas is reported as a `TextAnnotation` whose box is the exact
//! glyph raster extent.

pub mod constants;
pub mod font;

use std::io::BufWriter;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chart::{BarChartSpec, ChartSpec, PieChartSpec, validate_spec};
use crate::error::{Error, Result};
use crate::util::fnv1a64;
use constants as k;

/// Axis-aligned box in unit-normalized canvas coordinates, origin top-left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormBBox {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl NormBBox {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> Result<Self> {
        let b = NormBBox { x_min, y_min, x_max, y_max };
        if !b.is_valid() {
            return Err(Error::InvalidArgument(format!("invalid bbox {b:?}")));
        }
        Ok(b)
    }

    pub fn is_valid(&self) -> bool {
        0.0 <= self.x_min
            && self.x_min < self.x_max
            && self.x_max <= 1.0
            && 0.0 <= self.y_min
            && self.y_min < self.y_max
            && self.y_max <= 1.0
    }

    pub fn area(&self) -> f64 {
        (self.x_max - self.x_min).max(0.0) * (self.y_max - self.y_min).max(0.0)
    }

    pub fn intersects(&self, other: &NormBBox) -> bool {
        self.x_min < other.x_max
            && other.x_min < self.x_max
            && self.y_min < other.y_max
            && other.y_min < self.y_max
    }

    /// From a pixel rectangle `[x0, x1) x [y0, y1)` on a canvas of `res`.
    pub fn from_pixel_rect(x0: u32, y0: u32, x1: u32, y1: u32, res: u32) -> Self {
        let r = res as f64;
        NormBBox {
            x_min: x0 as f64 / r,
            y_min: y0 as f64 / r,
            x_max: x1 as f64 / r,
            y_max: y1 as f64 / r,
        }
    }

    pub fn to_pixel_rect(&self, res: u32) -> (u32, u32, u32, u32) {
        let r = res as f64;
        (
            (self.x_min * r).floor() as u32,
            (self.y_min * r).floor() as u32,
            ((self.x_max * r).ceil() as u32).min(res),
            ((self.y_max * r).ceil() as u32).min(res),
        )
    }
}

/// A text element drawn on the canvas, linked back to the spec element (or
/// axis tick) it belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextAnnotation {
    pub element_id: String,
    pub text: String,
    pub bbox: NormBBox,
}

/// 8-bit RGB raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<u8>,
}

impl RasterImage {
    pub fn filled(width: u32, height: u32, rgb: [u8; 3]) -> Self {
        let mut pixels = Vec::with_capacity((width * height * 3) as usize);
        for _ in 0..width * height {
            pixels.extend_from_slice(&rgb);
        }
        RasterImage { width, height, pixels }
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> [u8; 3] {
        let i = ((y * self.width + x) * 3) as usize;
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, rgb: [u8; 3]) {
        if x < self.width && y < self.height {
            let i = ((y * self.width + x) * 3) as usize;
            self.pixels[i..i + 3].copy_from_slice(&rgb);
        }
    }

    /// Fill `[x0, x1) x [y0, y1)`, clipped to the canvas.
    pub fn fill_rect(&mut self, x0: u32, y0: u32, x1: u32, y1: u32, rgb: [u8; 3]) {
        for y in y0..y1.min(self.height) {
            for x in x0..x1.min(self.width) {
                self.set(x, y, rgb);
            }
        }
    }

    /// Draw text at integer scale with the built-in font; returns the exact
    /// pixel extent `(x0, y0, x1, y1)` of the drawn block.
    pub fn draw_text(
        &mut self,
        x: u32,
        y: u32,
        text: &str,
        scale: usize,
        rgb: [u8; 3],
    ) -> (u32, u32, u32, u32) {
        let mut pen_x = x as usize;
        for ch in text.chars() {
            let g = font::glyph(ch);
            for (row, bits) in g.iter().enumerate() {
                for col in 0..font::GLYPH_W {
                    if bits & (1 << (font::GLYPH_W - 1 - col)) != 0 {
                        let px = pen_x + col * scale;
                        let py = y as usize + row * scale;
                        for dy in 0..scale {
                            for dx in 0..scale {
                                self.set((px + dx) as u32, (py + dy) as u32, rgb);
                            }
                        }
                    }
                }
            }
            pen_x += font::ADVANCE * scale;
        }
        let w = font::text_width(text, scale) as u32;
        let h = font::text_height(scale) as u32;
        (x, y, x + w, y + h)
    }

    /// Content hash over dimensions and pixel bytes.
    pub fn pixel_hash(&self) -> u64 {
        let mut bytes = Vec::with_capacity(self.pixels.len() + 8);
        bytes.extend_from_slice(&self.width.to_le_bytes());
        bytes.extend_from_slice(&self.height.to_le_bytes());
        bytes.extend_from_slice(&self.pixels);
        fnv1a64(&bytes)
    }

    pub fn write_png(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let file = std::fs::File::create(path)?;
        let mut encoder = png::Encoder::new(BufWriter::new(file), self.width, self.height);
        encoder.set_color(png::ColorType::Rgb);
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder.write_header()?;
        writer.write_image_data(&self.pixels)?;
        Ok(())
    }

    pub fn read_png(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)
            .map_err(|_| Error::MissingImage(path.to_path_buf()))?;
        let decoder = png::Decoder::new(std::io::BufReader::new(file));
        let mut reader = decoder.read_info()?;
        let mut buf = vec![0u8; reader.output_buffer_size()];
        let info = reader.next_frame(&mut buf)?;
        buf.truncate(info.buffer_size());
        let (width, height) = (info.width, info.height);
        let pixels = match info.color_type {
            png::ColorType::Rgb => buf,
            png::ColorType::Rgba => buf
                .chunks_exact(4)
                .flat_map(|p| [p[0], p[1], p[2]])
                .collect(),
            png::ColorType::Grayscale => buf.iter().flat_map(|&g| [g, g, g]).collect(),
            other => {
                return Err(Error::Png(format!("unsupported png color type {other:?}")));
            }
        };
        Ok(RasterImage { width, height, pixels })
    }
}

/// Pixel geometry of a bar chart at a given resolution.
#[derive(Debug, Clone)]
pub struct BarLayout {
    pub resolution: u32,
    pub plot_x0: u32,
    pub plot_x1: u32,
    pub plot_y0: u32,
    pub plot_y1: u32,
    pub axis: u32,
    pub font_scale: usize,
}

impl BarLayout {
    pub fn new(resolution: u32) -> Self {
        BarLayout {
            resolution,
            plot_x0: k::scaled(k::BAR_MARGIN_LEFT, resolution),
            plot_x1: resolution - k::scaled(k::BAR_MARGIN_RIGHT, resolution),
            plot_y0: k::scaled(k::BAR_MARGIN_TOP, resolution),
            plot_y1: resolution - k::scaled(k::BAR_MARGIN_BOTTOM, resolution),
            axis: k::scaled(k::AXIS_THICKNESS, resolution),
            font_scale: k::font_scale(resolution),
        }
    }

    pub fn plot_width(&self) -> u32 {
        self.plot_x1 - self.plot_x0
    }

    pub fn plot_height(&self) -> u32 {
        self.plot_y1 - self.plot_y0
    }

    /// Fill rectangle `[x0, x1) x [y0, y1)` of bar `i`.
    pub fn bar_rect(&self, spec: &BarChartSpec, i: usize) -> (u32, u32, u32, u32) {
        let n = spec.bars.len() as u32;
        let gap = k::scaled(k::BAR_GAP, self.resolution);
        let w = self.plot_width();
        let sx0 = self.plot_x0 + (i as u32) * w / n;
        let sx1 = self.plot_x0 + (i as u32 + 1) * w / n;
        let hpx = (spec.bars[i].height * self.plot_height() as f64).round() as u32;
        let x0 = sx0 + gap;
        let x1 = sx1.saturating_sub(gap).max(x0 + 1);
        (x0, self.plot_y1 - hpx.min(self.plot_height()), x1, self.plot_y1)
    }

    /// Tick index -> (pixel y of the tick line, label text).
    pub fn tick(&self, j: u32) -> (u32, String) {
        let v = j as f64 / (k::TICK_COUNT - 1) as f64;
        let y = self.plot_y1 - (v * self.plot_height() as f64).round() as u32;
        (y, format!("{:.1}", v))
    }

    /// Top-left origin of tick label `j` (right-aligned against the axis).
    pub fn tick_label_origin(&self, j: u32) -> (u32, u32) {
        let (ty, text) = self.tick(j);
        let w = font::text_width(&text, self.font_scale) as u32;
        let h = font::text_height(self.font_scale) as u32;
        let pad = k::scaled(k::TICK_TEXT_PAD, self.resolution)
            + k::scaled(k::TICK_LENGTH, self.resolution)
            + self.axis;
        let x = self.plot_x0.saturating_sub(pad + w);
        let y = ty.saturating_sub(h / 2);
        (x, y)
    }

    /// Top-left origin of the label under bar `i`. Labels alternate between
    /// two rows so adjacent boxes stay disjoint.
    pub fn bar_label_origin(&self, spec: &BarChartSpec, i: usize) -> (u32, u32) {
        let (bx0, _, bx1, _) = self.bar_rect(spec, i);
        let w = font::text_width(&spec.bars[i].label, self.font_scale) as u32;
        let cx = (bx0 + bx1) / 2;
        let x = cx
            .saturating_sub(w / 2)
            .min(self.resolution.saturating_sub(w));
        let row = (i % 2) as u32;
        let row_h = font::text_height(self.font_scale) as u32
            + k::scaled(k::BAR_LABEL_ROW_GAP, self.resolution);
        let y = self.plot_y1
            + self.axis
            + k::scaled(k::BAR_LABEL_PAD, self.resolution)
            + row * row_h;
        (x, y)
    }
}

/// Pixel geometry of a pie chart at a given resolution.
#[derive(Debug, Clone)]
pub struct PieLayout {
    pub resolution: u32,
    pub cx: u32,
    pub cy: u32,
    pub radius: u32,
    pub font_scale: usize,
}

impl PieLayout {
    pub fn new(resolution: u32) -> Self {
        PieLayout {
            resolution,
            cx: resolution / 2,
            cy: resolution / 2,
            radius: k::scaled(k::PIE_RADIUS, resolution),
            font_scale: k::font_scale(resolution),
        }
    }

    /// Cumulative sector boundaries in degrees clockwise from 12 o'clock;
    /// length `n + 1`, first 0, last ~360.
    pub fn boundaries(spec: &PieChartSpec) -> Vec<f64> {
        let mut cum = Vec::with_capacity(spec.sectors.len() + 1);
        let mut acc = 0.0;
        cum.push(0.0);
        for s in &spec.sectors {
            acc += s.angle;
            cum.push(acc);
        }
        cum
    }

    /// Mid angle of sector `j`, degrees clockwise from 12 o'clock.
    pub fn mid_angle(spec: &PieChartSpec, j: usize) -> f64 {
        let cum = Self::boundaries(spec);
        (cum[j] + cum[j + 1]) / 2.0
    }

    /// Label origin for sector `j`. Labels live in two columns flanking the
    /// pie (right column for sectors whose mid angle falls in the right half,
    /// left column otherwise), stacked top to bottom in angular order. Fixed
    /// rows keep all label boxes pairwise disjoint by construction.
    pub fn sector_label_origin(&self, spec: &PieChartSpec, j: usize) -> (u32, u32) {
        let n = spec.sectors.len();
        let mids: Vec<f64> = (0..n).map(|i| Self::mid_angle(spec, i)).collect();
        let on_right = mids[j] < 180.0;
        // Row = rank of this sector among same-side sectors, ordered from the
        // top of the circle downward.
        let key = |m: f64| if m < 180.0 { m } else { 360.0 - m };
        let row = (0..n)
            .filter(|&i| (mids[i] < 180.0) == on_right)
            .filter(|&i| {
                let (a, b) = (key(mids[i]), key(mids[j]));
                a < b || (a == b && i < j)
            })
            .count() as u32;

        let pad = k::scaled(k::PIE_LABEL_PAD, self.resolution);
        let pitch = k::scaled(k::PIE_ROW_PITCH, self.resolution);
        let w = font::text_width(&spec.sectors[j].label, self.font_scale) as u32;
        let x = if on_right {
            (self.cx + self.radius + pad).min(self.resolution.saturating_sub(w))
        } else {
            (self.cx - self.radius - pad).saturating_sub(w)
        };
        let y = (self.cy - self.radius) + row * pitch;
        (x, y)
    }
}

fn annotate_text(element_id: String, text: &str, x: u32, y: u32, scale: usize, res: u32) -> TextAnnotation {
    let w = font::text_width(text, scale) as u32;
    let h = font::text_height(scale) as u32;
    TextAnnotation {
        element_id,
        text: text.to_string(),
        bbox: NormBBox::from_pixel_rect(x, y, x + w, y + h, res),
    }
}

/// Compute every text annotation without rasterizing. This is the layout
/// function the question oracle uses for box targets; `render` draws text at
/// exactly these positions.
pub fn compute_annotations(spec: &ChartSpec, resolution: u32) -> Vec<TextAnnotation> {
    match spec {
        ChartSpec::Bar(bar) => {
            let layout = BarLayout::new(resolution);
            let mut anns = Vec::new();
            for (i, b) in bar.bars.iter().enumerate() {
                let (x, y) = layout.bar_label_origin(bar, i);
                anns.push(annotate_text(
                    format!("bar-{i}"),
                    &b.label,
                    x,
                    y,
                    layout.font_scale,
                    resolution,
                ));
            }
            for j in 0..k::TICK_COUNT {
                let (_, text) = layout.tick(j);
                let (x, y) = layout.tick_label_origin(j);
                anns.push(annotate_text(
                    format!("ytick-{j}"),
                    &text,
                    x,
                    y,
                    layout.font_scale,
                    resolution,
                ));
            }
            anns
        }
        ChartSpec::Pie(pie) => {
            let layout = PieLayout::new(resolution);
            pie.sectors
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    let (x, y) = layout.sector_label_origin(pie, j);
                    annotate_text(
                        format!("sector-{j}"),
                        &s.label,
                        x,
                        y,
                        layout.font_scale,
                        resolution,
                    )
                })
                .collect()
        }
    }
}

/// The annotation belonging to a bar/sector element, by index.
pub fn element_annotation(
    spec: &ChartSpec,
    resolution: u32,
    index: usize,
) -> Option<TextAnnotation> {
    let id = match spec.chart_type() {
        crate::chart::ChartType::Bar => format!("bar-{index}"),
        crate::chart::ChartType::Pie => format!("sector-{index}"),
    };
    compute_annotations(spec, resolution)
        .into_iter()
        .find(|a| a.element_id == id)
}

fn render_bar(spec: &BarChartSpec, resolution: u32) -> (RasterImage, Vec<TextAnnotation>) {
    let layout = BarLayout::new(resolution);
    let mut img = RasterImage::filled(resolution, resolution, k::BACKGROUND);

    for i in 0..spec.bars.len() {
        let (x0, y0, x1, y1) = layout.bar_rect(spec, i);
        img.fill_rect(x0, y0, x1, y1, spec.bars[i].color.rgb);
    }

    // Axes.
    img.fill_rect(
        layout.plot_x0 - layout.axis,
        layout.plot_y0,
        layout.plot_x0,
        layout.plot_y1 + layout.axis,
        k::INK,
    );
    img.fill_rect(
        layout.plot_x0 - layout.axis,
        layout.plot_y1,
        layout.plot_x1,
        layout.plot_y1 + layout.axis,
        k::INK,
    );

    // Tick marks.
    let tick_len = k::scaled(k::TICK_LENGTH, resolution);
    let tick_th = k::scaled(k::TICK_THICKNESS, resolution);
    for j in 0..k::TICK_COUNT {
        let (ty, _) = layout.tick(j);
        img.fill_rect(
            layout.plot_x0 - layout.axis - tick_len,
            ty.saturating_sub(tick_th / 2),
            layout.plot_x0 - layout.axis,
            ty.saturating_sub(tick_th / 2) + tick_th,
            k::INK,
        );
    }

    // Text: draw exactly where compute_annotations places it.
    let spec_enum = ChartSpec::Bar(spec.clone());
    let anns = compute_annotations(&spec_enum, resolution);
    for a in &anns {
        let (x0, y0, _, _) = a.bbox.to_pixel_rect(resolution);
        img.draw_text(x0, y0, &a.text, layout.font_scale, k::INK);
    }
    (img, anns)
}

/// Angle of pixel center relative to the circle center, degrees clockwise
/// from 12 o'clock, in [0, 360).
fn clockwise_angle(dx: f64, dy: f64) -> f64 {
    let deg = dx.atan2(-dy).to_degrees();
    if deg < 0.0 { deg + 360.0 } else { deg }
}

fn render_pie(spec: &PieChartSpec, resolution: u32) -> (RasterImage, Vec<TextAnnotation>) {
    let layout = PieLayout::new(resolution);
    let mut img = RasterImage::filled(resolution, resolution, k::BACKGROUND);
    let cum = PieLayout::boundaries(spec);
    let r = layout.radius as f64;
    let r2 = r * r;

    let x_lo = layout.cx - layout.radius - 1;
    let x_hi = layout.cx + layout.radius + 1;
    let y_lo = layout.cy - layout.radius - 1;
    let y_hi = layout.cy + layout.radius + 1;
    for y in y_lo..=y_hi {
        for x in x_lo..=x_hi {
            let dx = x as f64 + 0.5 - layout.cx as f64;
            let dy = y as f64 + 0.5 - layout.cy as f64;
            if dx * dx + dy * dy > r2 {
                continue;
            }
            let ang = clockwise_angle(dx, dy);
            // Find the sector whose [cum[j], cum[j+1]) range contains ang.
            let mut j = spec.sectors.len() - 1;
            for s in 0..spec.sectors.len() {
                if ang < cum[s + 1] {
                    j = s;
                    break;
                }
            }
            img.set(x, y, spec.sectors[j].color.rgb);
        }
    }

    let spec_enum = ChartSpec::Pie(spec.clone());
    let anns = compute_annotations(&spec_enum, resolution);
    for a in &anns {
        let (x0, y0, _, _) = a.bbox.to_pixel_rect(resolution);
        img.draw_text(x0, y0, &a.text, layout.font_scale, k::INK);
    }
    (img, anns)
}

/// Rasterize a valid spec. One `TextAnnotation` per drawn text element:
/// every bar/sector label, plus axis tick labels for bar charts.
pub fn render(spec: &ChartSpec, resolution: u32) -> Result<(RasterImage, Vec<TextAnnotation>)> {
    if resolution < 64 {
        return Err(Error::InvalidArgument(format!(
            "render resolution {resolution} below minimum 64"
        )));
    }
    let report = validate_spec(spec);
    if !report.is_valid() {
        return Err(Error::InvalidSpec(report.to_string()));
    }
    Ok(match spec {
        ChartSpec::Bar(b) => render_bar(b, resolution),
        ChartSpec::Pie(p) => render_pie(p, resolution),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{
        sample_bar_spec, sample_pie_spec, GenerationConstraints, PALETTE,
    };

    fn default_bar(seed: u64) -> BarChartSpec {
        sample_bar_spec(seed, &GenerationConstraints::default()).unwrap()
    }

    fn default_pie(seed: u64) -> PieChartSpec {
        sample_pie_spec(seed, &GenerationConstraints::default()).unwrap()
    }

    #[test]
    fn bar_annotation_count_is_labels_plus_ticks() {
        let spec = default_bar(5);
        let n = spec.bars.len();
        let (_, anns) = render(&ChartSpec::Bar(spec), 448).unwrap();
        let bar_labels = anns.iter().filter(|a| a.element_id.starts_with("bar-")).count();
        let ticks = anns.iter().filter(|a| a.element_id.starts_with("ytick-")).count();
        assert_eq!(bar_labels, n);
        assert_eq!(ticks, k::TICK_COUNT as usize);
        assert_eq!(anns.len(), n + k::TICK_COUNT as usize);
    }

    #[test]
    fn pie_annotation_count_is_sector_count() {
        let spec = default_pie(5);
        let n = spec.sectors.len();
        let (_, anns) = render(&ChartSpec::Pie(spec), 448).unwrap();
        assert_eq!(anns.len(), n);
    }

    #[test]
    fn rendering_is_deterministic() {
        for seed in [1u64, 9, 23] {
            let spec = ChartSpec::Bar(default_bar(seed));
            let (a, _) = render(&spec, 448).unwrap();
            let (b, _) = render(&spec, 448).unwrap();
            assert_eq!(a.pixel_hash(), b.pixel_hash());
            let spec = ChartSpec::Pie(default_pie(seed));
            let (a, _) = render(&spec, 448).unwrap();
            let (b, _) = render(&spec, 448).unwrap();
            assert_eq!(a.pixel_hash(), b.pixel_hash());
        }
    }

    /// Measured column extents: a bar of height 0.4 must be twice as tall in
    /// pixels (within one pixel) as a bar of height 0.2.
    #[test]
    fn bar_pixel_heights_proportional() {
        let mut spec = default_bar(2);
        spec.bars.truncate(2);
        spec.bars[0].height = 0.2;
        spec.bars[1].height = 0.4;
        let layout = BarLayout::new(448);
        let (img, _) = render(&ChartSpec::Bar(spec.clone()), 448).unwrap();

        let measure = |i: usize| -> i64 {
            let (x0, _, x1, _) = layout.bar_rect(&spec, i);
            let x = (x0 + x1) / 2;
            let mut count = 0i64;
            for y in 0..448 {
                if img.get(x, y) == spec.bars[i].color.rgb {
                    count += 1;
                }
            }
            count
        };
        let h0 = measure(0);
        let h1 = measure(1);
        assert!((h1 - 2 * h0).abs() <= 1, "h0={h0} h1={h1}");
    }

    #[test]
    fn annotation_boxes_contain_ink() {
        for seed in 0..10u64 {
            for spec in [
                ChartSpec::Bar(default_bar(seed)),
                ChartSpec::Pie(default_pie(seed)),
            ] {
                let (img, anns) = render(&spec, 448).unwrap();
                for a in &anns {
                    let (x0, y0, x1, y1) = a.bbox.to_pixel_rect(448);
                    let mut ink = 0usize;
                    for y in y0..y1 {
                        for x in x0..x1 {
                            if img.get(x, y) != k::BACKGROUND {
                                ink += 1;
                            }
                        }
                    }
                    assert!(ink > 0, "seed {seed}: empty box for {}", a.element_id);
                }
            }
        }
    }

    #[test]
    fn annotation_boxes_are_disjoint() {
        for res in [224u32, 448] {
            for seed in 0..20u64 {
                for spec in [
                    ChartSpec::Bar(default_bar(seed)),
                    ChartSpec::Pie(default_pie(seed)),
                ] {
                    let anns = compute_annotations(&spec, res);
                    for i in 0..anns.len() {
                        assert!(anns[i].bbox.is_valid(), "{:?}", anns[i]);
                        for j in (i + 1)..anns.len() {
                            assert!(
                                !anns[i].bbox.intersects(&anns[j].bbox),
                                "seed {seed} res {res}: {} overlaps {}",
                                anns[i].element_id,
                                anns[j].element_id
                            );
                        }
                    }
                }
            }
        }
    }

    /// Flat fill: the dominant non-background color inside each element
    /// region is exactly the spec color.
    #[test]
    fn color_fidelity_inside_regions() {
        let spec = default_bar(3);
        let layout = BarLayout::new(448);
        let (img, _) = render(&ChartSpec::Bar(spec.clone()), 448).unwrap();
        for (i, b) in spec.bars.iter().enumerate() {
            let (x0, y0, x1, y1) = layout.bar_rect(&spec, i);
            for y in y0..y1 {
                for x in x0..x1 {
                    assert_eq!(img.get(x, y), b.color.rgb, "bar {i} at ({x},{y})");
                }
            }
        }

        let spec = default_pie(3);
        let layout = PieLayout::new(448);
        let cum = PieLayout::boundaries(&spec);
        let (img, _) = render(&ChartSpec::Pie(spec.clone()), 448).unwrap();
        // Sample interior points: inside 90% radius, at least 1 degree away
        // from both boundaries.
        for (j, s) in spec.sectors.iter().enumerate() {
            let mut checked = 0;
            for t in 0..50 {
                let ang = cum[j] + 1.0 + (s.angle - 2.0) * (t as f64) / 49.0;
                if ang <= cum[j] + 1.0 || ang >= cum[j + 1] - 1.0 {
                    continue;
                }
                let rad = ang.to_radians();
                let rho = layout.radius as f64 * 0.6;
                let x = (layout.cx as f64 + rho * rad.sin()) as u32;
                let y = (layout.cy as f64 - rho * rad.cos()) as u32;
                assert_eq!(img.get(x, y), s.color.rgb, "sector {j} at angle {ang}");
                checked += 1;
            }
            assert!(checked > 0, "sector {j} too thin to sample");
        }
    }

    /// Rasterized sector area fraction approximates the spec angle fraction.
    #[test]
    fn sector_pixel_angles_match_spec() {
        let spec = default_pie(8);
        let layout = PieLayout::new(448);
        let (img, _) = render(&ChartSpec::Pie(spec.clone()), 448).unwrap();
        let mut counts = vec![0usize; spec.sectors.len()];
        let mut total = 0usize;
        for y in 0..448 {
            for x in 0..448 {
                let px = img.get(x, y);
                // Text is black ink; black is also a palette color, but label
                // text lives outside the circle, so restrict to the disc.
                let dx = x as f64 + 0.5 - layout.cx as f64;
                let dy = y as f64 + 0.5 - layout.cy as f64;
                if dx * dx + dy * dy > (layout.radius as f64).powi(2) {
                    continue;
                }
                if let Some(j) = spec.sectors.iter().position(|s| s.color.rgb == px) {
                    counts[j] += 1;
                    total += 1;
                }
            }
        }
        for (j, s) in spec.sectors.iter().enumerate() {
            let measured = 360.0 * counts[j] as f64 / total as f64;
            assert!(
                (measured - s.angle).abs() < 2.0,
                "sector {j}: measured {measured:.2} vs spec {:.2}",
                s.angle
            );
        }
    }

    #[test]
    fn invalid_spec_is_rejected() {
        let mut spec = default_bar(1);
        spec.bars[1].color = spec.bars[0].color;
        assert!(matches!(
            render(&ChartSpec::Bar(spec), 448),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn png_roundtrip_preserves_pixels() {
        let spec = ChartSpec::Pie(default_pie(4));
        let (img, _) = render(&spec, 224).unwrap();
        let dir = std::env::temp_dir().join(format!("chartnet-test-{}", std::process::id()));
        let path = dir.join("roundtrip.png");
        img.write_png(&path).unwrap();
        let back = RasterImage::read_png(&path).unwrap();
        assert_eq!(img, back);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn palette_rgb_distinct_from_background() {
        for c in PALETTE {
            assert_ne!(c.rgb, k::BACKGROUND);
        }
    }
}
