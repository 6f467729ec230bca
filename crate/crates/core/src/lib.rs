//! Cyclic-skew-cyclic codes in the sum-rank metric.
//!
//! The crate covers the whole algebraic pipeline behind these codes: a
//! four-field tower `E ⊂ F, K ⊂ L`, skew polynomials over `F[z;θ]` and
//! `L[z;σ]`, the bivariate ring `(F[x]/(x^ℓ-1))[z;θ]/(z^N-1)` that models
//! the codes, exact Hamming/rank/sum-rank weights with an exhaustive distance
//! oracle, semilinear sum-rank isometries, tensor products of cyclic and
//! skew-cyclic codes, and certified BCH / Hartmann-Tzeng / Roos lower bounds
//! on the minimum sum-rank distance.
//!
//! Everything is exact finite-field arithmetic. The crate is `no_std` and
//! needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bivar;
pub mod bounds;
pub mod code;
pub mod error;
pub mod gf;
pub mod isometry;
pub mod linalg;
pub mod product;
pub mod skew;
pub mod tower;

pub use bivar::BivarPoly;
pub use bounds::{BoundCertificate, BoundKind, BoundParams, DefiningSetView, SearchLimits};
pub use code::{LinearCode, Metric, Partition, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use gf::{Elem, Gf};
pub use isometry::SumRankIsometry;
pub use product::{CorpusPair, ProductCode};
pub use skew::SkewPoly;
pub use tower::{build_tower, Extension, FieldElement, FieldTower, Level};

/// Shared, immutable handle to a tower.
pub type TowerRef = alloc::sync::Arc<FieldTower>;
