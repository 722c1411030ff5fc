//! Built-in 5x7 monospaced bitmap font.
//!
//! Shipping the glyphs with the crate keeps text layout byte-identical across
//! platforms; there is no system font dependency anywhere in the renderer.
//! Coverage: A-Z, 0-9, and the handful of symbols used by labels and axis
//! ticks. Lowercase input is drawn with the uppercase glyph.

pub const GLYPH_W: usize = 5;
pub const GLYPH_H: usize = 7;
/// Horizontal advance between glyph origins, in font units.
pub const ADVANCE: usize = 6;

/// Rows top to bottom; bit 4 is the leftmost pixel.
type Glyph = [u8; GLYPH_H];

const LETTERS: [Glyph; 26] = [
    [0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11], // A
    [0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E], // B
    [0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E], // C
    [0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E], // D
    [0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F], // E
    [0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10], // F
    [0x0F, 0x10, 0x10, 0x13, 0x11, 0x11, 0x0E], // G
    [0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11], // H
    [0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E], // I
    [0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C], // J
    [0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11], // K
    [0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F], // L
    [0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11], // M
    [0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11], // N
    [0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E], // O
    [0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10], // P
    [0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D], // Q
    [0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11], // R
    [0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E], // S
    [0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04], // T
    [0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E], // U
    [0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04], // V
    [0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A], // W
    [0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11], // X
    [0x11, 0x11, 0x0A, 0x04, 0x04, 0x04, 0x04], // Y
    [0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F], // Z
];

const DIGITS: [Glyph; 10] = [
    [0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E], // 0
    [0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E], // 1
    [0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F], // 2
    [0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E], // 3
    [0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02], // 4
    [0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E], // 5
    [0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E], // 6
    [0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08], // 7
    [0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E], // 8
    [0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C], // 9
];

const PLUS: Glyph = [0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00];
const MINUS: Glyph = [0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00];
const DOT: Glyph = [0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C];
const HASH: Glyph = [0x0A, 0x0A, 0x1F, 0x0A, 0x1F, 0x0A, 0x0A];
const PERCENT: Glyph = [0x18, 0x19, 0x02, 0x04, 0x08, 0x13, 0x03];
const SPACE: Glyph = [0; GLYPH_H];
/// Fallback for unmapped characters: a filled block, so missing coverage is
/// visible rather than silently blank.
const UNKNOWN: Glyph = [0x1F; GLYPH_H];

pub fn glyph(ch: char) -> &'static Glyph {
    let ch = ch.to_ascii_uppercase();
    match ch {
        'A'..='Z' => &LETTERS[(ch as u8 - b'A') as usize],
        '0'..='9' => &DIGITS[(ch as u8 - b'0') as usize],
        '+' => &PLUS,
        '-' => &MINUS,
        '.' => &DOT,
        '#' => &HASH,
        '%' => &PERCENT,
        ' ' => &SPACE,
        _ => &UNKNOWN,
    }
}

/// Pixel width of a string at integer scale (no trailing inter-glyph gap).
pub fn text_width(text: &str, scale: usize) -> usize {
    let n = text.chars().count();
    if n == 0 {
        return 0;
    }
    (n * ADVANCE - (ADVANCE - GLYPH_W)) * scale
}

pub fn text_height(scale: usize) -> usize {
    GLYPH_H * scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicon_characters_are_covered() {
        for label in crate::chart::LABEL_LEXICON {
            for ch in label.chars() {
                assert!(
                    !std::ptr::eq(glyph(ch), &UNKNOWN),
                    "no glyph for {ch:?} in {label}"
                );
            }
        }
        for ch in "0123456789.".chars() {
            assert!(!std::ptr::eq(glyph(ch), &UNKNOWN));
        }
    }

    #[test]
    fn glyphs_fit_five_columns() {
        for ch in ('A'..='Z').chain('0'..='9').chain("+-.#% ".chars()) {
            for row in glyph(ch) {
                assert_eq!(row & !0x1F, 0, "glyph {ch:?} exceeds 5 columns");
            }
        }
    }

    #[test]
    fn width_formula() {
        assert_eq!(text_width("", 1), 0);
        assert_eq!(text_width("A", 1), 5);
        assert_eq!(text_width("AB", 1), 11);
        assert_eq!(text_width("C++", 2), 34);
    }
}
