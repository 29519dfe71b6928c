//! Exact computations around the smoothness of generalised Calogero-Moser
//! spaces: fake degrees of `G(m,p,n)`, the Poincare-polynomial divisibility
//! test, restricted symplectic forms of reflections, and the binary
//! tetrahedral group `G4`.

pub mod combinatorics;
pub mod error;
pub mod exceptional;
pub mod fake_degree;
pub mod field;
pub mod g4;
pub mod linalg;
pub mod monomial;
pub mod polycore;
pub mod scan;
pub mod symplectic;

pub use error::{DatasetError, GroupError, PolyError};
