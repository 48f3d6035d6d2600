//! Library side of the `fgl-forge` command: parameter parsing, the
//! verification suites, the on-disk result cache and output rendering.
pub mod cache;
mod error;
pub mod params;
pub mod render;
pub mod suite;

pub use error::{CliError, CliResult};
