//! Exact arithmetic: rationals, cyclotomic fields, and linear algebra over
//! any exact field.

mod cyclotomic;
mod field;
mod linalg;
mod poly;

pub use cyclotomic::{euler_phi, CycNum};
pub use field::{Field, Rational};
pub use linalg::{Matrix, Subspace};
pub use poly::cyclo_poly;
