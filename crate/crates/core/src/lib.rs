//! Exact computer algebra for the Buchstaber formal group law, its
//! two-valued modulus square, and the associated Hirzebruch genera.

pub mod buchstaber;
pub mod exactcore;
pub mod genera;
mod error;
pub mod report;
pub mod series;
pub mod table;
pub mod twovalued;
pub mod weierstrass;

pub use error::{Error, Result};
