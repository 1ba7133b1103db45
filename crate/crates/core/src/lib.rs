//! Exact computation in free-abelian-by-free groups `F_n ⋉ Z^m`.
//!
//! Matrices and polynomials are generic over an exact scalar; the group
//! layer works over [`num_bigint::BigInt`] with the aliases below.

pub mod action;
pub mod brinkmann;
pub mod error;
pub mod format;
pub mod group;
pub mod hom;
pub mod linalg;
pub mod orbit;
pub mod poly;
pub mod stallings;
pub mod words;

pub use action::{image_bfs, intertwiner_search, ip_finite, kernel_basis, FiniteImage, IsoConfig, IsoReport};
pub use brinkmann::{BrinkmannConfig, CancelToken, Certificate, PhiLog, TriState};
pub use error::{FabfError, Result};
pub use group::{eval_word, Element, EvalMethod, Group, GroupData};
pub use hom::{classify, Assignment, Hom, HomClassification, MorphismClass, TypeIHom, TypeIIHom};
pub use linalg::{Matrix, Scalar};
pub use orbit::{affine_orbit, fixed_space, matrix_orbit, AffineMap, LogSet};
pub use poly::{IntPoly, Poly, RatPoly};
pub use stallings::SubgroupGraph;
pub use words::{common_root, FreeEndo, Word};

/// Integer matrix acting on row vectors from the right.
pub type IntMat = Matrix<num_bigint::BigInt>;
pub type RatMat = Matrix<num_rational::BigRational>;
/// Integer row vector.
pub type IntVec = Vec<num_bigint::BigInt>;
