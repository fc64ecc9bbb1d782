//! One module per CLI command; each owns its settings resolution, its
//! experiment driver, and its table formatting.

pub mod lambda;
pub mod mean_estimate;
pub mod ope;
pub mod opl;
