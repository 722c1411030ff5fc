pub mod chart;
pub mod error;
pub mod render;
pub mod rng;
pub mod util;
