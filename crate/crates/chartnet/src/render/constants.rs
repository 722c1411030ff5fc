//! Frozen rendering constants.
//!
//! All values are in pixels at the 448 base resolution and are rescaled
//! proportionally (with a floor of 1) at other resolutions. They are
//! arbitrary choices, but they are part of the dataset definition: changing
//! any of them changes every rendered image and every bounding-box target.

/// Canonical render resolution. Charts are rasterized at this size; the model
/// input is produced by downscaling at load time, so box targets stay defined
/// in canvas coordinates.
pub const RENDER_RESOLUTION: u32 = 448;

pub const BACKGROUND: [u8; 3] = [255, 255, 255];
pub const INK: [u8; 3] = [0, 0, 0];

// Bar chart layout (448 base).
pub const BAR_MARGIN_LEFT: u32 = 64;
pub const BAR_MARGIN_RIGHT: u32 = 18;
pub const BAR_MARGIN_TOP: u32 = 26;
pub const BAR_MARGIN_BOTTOM: u32 = 56;
pub const AXIS_THICKNESS: u32 = 2;
pub const BAR_GAP: u32 = 2;
pub const TICK_LENGTH: u32 = 6;
pub const TICK_THICKNESS: u32 = 2;
pub const TICK_TEXT_PAD: u32 = 4;
pub const BAR_LABEL_PAD: u32 = 6;
pub const BAR_LABEL_ROW_GAP: u32 = 4;
/// Number of y-axis ticks (0.0, 0.2, ... 1.0).
pub const TICK_COUNT: u32 = 6;

// Pie chart layout (448 base).
pub const PIE_RADIUS: u32 = 90;
pub const PIE_LABEL_PAD: u32 = 12;
pub const PIE_ROW_PITCH: u32 = 22;

/// Scale a 448-base constant to `resolution`, rounding to nearest with a
/// floor of one pixel.
pub fn scaled(base: u32, resolution: u32) -> u32 {
    ((base * resolution + RENDER_RESOLUTION / 2) / RENDER_RESOLUTION).max(1)
}

/// Integer font scale: 1 below 448, 2 at 448, and so on.
pub fn font_scale(resolution: u32) -> usize {
    ((resolution / 224) as usize).max(1)
}
