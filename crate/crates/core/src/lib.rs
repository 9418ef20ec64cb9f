//! Exact cohomology of homogeneous vector bundles on Grassmannians.
//!
//! The crate evaluates bundle expressions on `Gr(k, n)` into irreducible
//! summands, applies Bott's theorem to each summand, assembles Koszul
//! spectral-sequence tables for zero loci of sections, and runs the
//! projective-normality and rigidity scans for Fano zero loci.

pub mod bott;
pub mod cache;
pub mod error;
pub mod expr;
pub mod fano;
pub mod koszul;
pub mod schur;
mod serde_util;
pub mod theorem;
pub mod weight;
pub mod weyl;

pub use bott::{bott_irreducible, cohomology, CohomologyProfile};
pub use error::{Error, Result};
pub use expr::{parse_expr, BundleExpr};
pub use schur::{Decomposition, Engine};
pub use weight::{BlockWeight, FullWeight, GrassContext};
