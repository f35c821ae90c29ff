//! Exact computations on noncrossing-partition lattices of well-generated
//! complex reflection groups.
//!
//! The linear algebra in [`exactalg`] is generic over any exact [`Field`];
//! the group machinery instantiates it with cyclotomic numbers. Everything
//! downstream of [`groups`] works on element indices into a fully
//! enumerated group, so lattices, factorisations and Hurwitz orbits are
//! purely combinatorial.

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod factorizations;
pub mod groups;
pub mod hurwitz;
pub mod ncp;
pub mod parabolic;

pub use error::{Error, Result};
pub use exactalg::{cyclo_poly, CycNum, Field, Matrix, Rational, Subspace};
pub use factorizations::{CompositionType, CountLedger, Factorisation};
pub use groups::{Elem, GroupSpec, ReflectionGroup};
pub use hurwitz::{BraidGen, HurwitzOrbit};
pub use ncp::NcpLattice;
pub use parabolic::{LLData, ParabolicSubgroup, Stratum2};

/// Matrices over a cyclotomic field; the representation of group elements.
pub type CycMatrix = Matrix<CycNum>;
/// Subspaces of `Q(ζ_m)^n`; fixed spaces and flats.
pub type CycSubspace = Subspace<CycNum>;
/// Matrices over the rationals.
pub type RatMatrix = Matrix<Rational>;
/// Subspaces of `Q^n`.
pub type RatSubspace = Subspace<Rational>;
