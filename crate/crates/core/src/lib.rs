//! Dual extensions of path algebras, their derivation and Lie-derivation
//! spaces, and block-level checks of the standard decomposition.

pub mod algebra;
pub mod corpus;
pub mod dsl;
pub mod dual;
pub mod linalg;
pub mod peirce;
pub mod quiver;
pub mod random;
pub mod scalar;
pub mod spaces;
pub mod verify;

pub use algebra::{build_path_algebra, AlgebraError, Element, FiniteDimAlgebra};
pub use dsl::{parse_quiver, print_quiver};
pub use quiver::{Path, Quiver, Relation};
pub use scalar::Scalar;
