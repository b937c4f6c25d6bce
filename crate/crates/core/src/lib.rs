pub mod cli;
pub mod cochran;
pub mod diagram;
pub mod error;
pub mod families;
pub mod json;
pub mod series;
pub mod skein;
pub mod surgery;
pub mod wqo;

pub use diagram::{Diagram, Side, Visit};
pub use error::{Error, Result};
pub use skein::ConwayPoly;
