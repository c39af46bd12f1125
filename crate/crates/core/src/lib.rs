pub mod cli;
pub mod diagram;
pub mod error;
pub mod families;
pub mod matrix;
pub mod qa;
pub mod resolve;
pub mod surgery;
pub mod tait;
pub mod tangle;

pub use diagram::{parse_pd, Crossing, LinkDiagram};
pub use error::{Error, Result};
