//! Exact counting of Artin-Schreier extensions of global function fields by
//! conductor, the generating Dirichlet series, and their asymptotics.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod counting;
pub mod dirichlet;
pub mod error;
pub mod field;
pub mod oracle;
pub mod poly;
pub mod real;
pub mod roots;
pub mod series;
pub mod tauberian;

pub use counting::{DivisorModule, GroupSpec, Place};
pub use error::{Error, Result};
pub use field::FieldModel;
pub use poly::QPoly;
pub use real::{Complex, Real};
pub use series::TruncatedSeries;
