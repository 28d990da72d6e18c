//! Second rack cohomology of finite indecomposable quandles.
//!
//! The pipeline: a quandle `X` determines a finite group (the quotient of its
//! enveloping presentation by the translation orders), whose commutator
//! subgroup acts transitively on `X`. The stabilizer `N₀` of a base point is
//! a finite group whose characters, together with one coefficient value,
//! classify the 2-cocycles of `X` up to coboundary: `H²(X,A) ≅ A × Hom(N₀,A)`.
//! This crate computes that description explicitly, reconstructs cocycle
//! tables from it, inverts the correspondence, and cross-checks everything
//! against brute-force chain-complex homology over ℤ.

pub mod affine;
pub mod catalog;
pub mod coeff;
pub mod cohomology;
pub mod fp_group;
pub mod homology;
pub mod perm;
pub mod quandle;
pub mod word;

pub use coeff::{CoefficientGroup, Value};
pub use cohomology::{Cocycle, CocycleDatum, GoodTransversal, H2Context, H2Summary};
pub use fp_group::{AbelianStructure, CayleyGroup, Presentation, Subgroup};
pub use homology::HomologyResult;
pub use perm::Perm;
pub use quandle::{InnerAction, Quandle};
pub use word::Word;
