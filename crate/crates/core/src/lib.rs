pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod geom;
pub mod metric;
pub mod minind;
pub mod spectra;
pub mod svg;
pub mod surface;
pub mod tracer;

pub use error::{Error, Result};
