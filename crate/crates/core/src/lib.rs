//! Modular data of affine `SU(n)` at level `k`, level-rank pairings, and the
//! simple-current / mirror extension machinery used to assemble the three
//! central-charge-24 holomorphic constructions over
//! `SU(10)_2 x SU(5)_1 x Spin(7)_1`, `SU(9)_3 x SU(3)_1 x SU(3)_1` and
//! `SU(8)_4 x SU(2)_1^3`.
//!
//! Everything here is pure computation over `alloc`; file formats, catalog
//! loading and the command line live in the `holonet` crate.
//!
//! Conformal weights and central charges are exact rationals ([`Q`]); all
//! locality checks are congruences mod 1 on those. S-matrices are `f64`
//! complex and only feed unitarity-conditioned sums.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod entries;
pub mod error;
pub mod extensions;
pub mod inclusions;
pub mod level_rank;
pub mod linalg;
pub mod math;
pub mod modular;
pub mod report;
pub mod weights;

pub use error::{Error, Result};
pub use math::Q;
pub use modular::{ModularDatum, SectorVector, Theory};
pub use weights::AffineWeight;
