//! Exact computations with cyclotomic distributions, their cohomology,
//! spectral sequences and Stickelberger lattices.

pub mod abgroup;
pub mod arith;
pub mod check;
pub mod cyclotomic;
pub mod distribution;
pub mod error;
pub mod lcomplex;
pub mod linalg;
pub mod ntheory;
pub mod spectral;
pub mod stickelberger;

pub use arith::{Int, Rat};
pub use error::{Error, Result};
