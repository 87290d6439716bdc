//! Exact invariants of Delsarte surfaces.
//!
//! A finite quotient `GG -> G` of the rank-three lattice `GG` (generators
//! `t0..t3` with `t0 t1 t2 t3 = 1`) determines a Delsarte surface. This crate
//! computes its fundamental group, the rank of the kernel `K`, the torsion
//! group `T`, the layer-by-layer torsion bounds, and the closed-form invariant
//! factors of cyclic quotients, all in exact arithmetic.

pub mod cyclic;
pub mod error;
pub mod linalg;
pub mod modules;
pub mod pi1;
pub mod quotient;
pub mod report;
pub mod ring;

pub use error::Error;
pub use quotient::FiniteQuotient;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type IntMatrix = linalg::Matrix<BigInt>;
pub type IntPoly = ring::Poly<BigInt>;
pub type RatPoly = ring::Poly<BigRational>;
pub type FpPoly = ring::Poly<ring::Fp>;
