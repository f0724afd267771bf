//! Hochschild cohomology in degrees 0 and 1 of monomial quiver algebras, absolute and
//! relative to a monomial subalgebra, with the Lie structure on the first group.

pub mod algebra;
pub mod complex;
pub mod dualext;
pub mod error;
pub mod field;
pub mod fundgroup;
pub mod lie;
pub mod linalg;
pub mod parse;
pub mod quiver;
pub mod radzero;
pub mod relative;
pub mod report;
pub mod suites;

pub use algebra::{MonomialAlgebra, ParallelPair, SubalgebraPair};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use quiver::{Arrow, Path, Quiver, VertexId};
