//! Modular data: labels, exact conformal weights, central charge, S-matrix,
//! conjugation and fusion for one rational theory or a tensor product.

mod datum;
mod level_one;
mod product;
mod sector;

pub use datum::{central_charge, conformal_weight, s_matrix, ModularDatum, ModularResiduals};
pub use level_one::LevelOne;
pub use product::{split_top_level, TensorProduct};
pub use sector::SectorVector;

use alloc::string::String;

use crate::error::Result;
use crate::math::Q;

/// Data-level view shared by computed modular data, tensor products and
/// extension catalogs: labels, exact `h`, quantum dimensions, conjugation
/// and (possibly partial) fusion. Label `0` is always the vacuum.
///
/// Operations that need an S-matrix take [`ModularDatum`] or
/// [`TensorProduct<ModularDatum>`] instead, so catalog-level inputs are
/// refused at compile time.
pub trait Theory {
    fn name(&self) -> String;
    fn len(&self) -> usize;
    fn label(&self, i: usize) -> String;
    fn index_of(&self, label: &str) -> Option<usize>;
    /// Exact conformal weight, or a representative mod 1 for catalogs.
    fn h(&self, i: usize) -> Q;
    fn dim(&self, i: usize) -> f64;
    fn dual(&self, i: usize) -> usize;
    fn fuse(&self, a: usize, b: usize) -> Result<SectorVector>;
    fn central_charge(&self) -> Q;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Looks up a label or fails with a usage error naming the theory.
    fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| crate::Error::Usage(alloc::format!("no label {label:?} in {}", self.name())))
    }
}

impl<T: Theory + ?Sized> Theory for &T {
    fn name(&self) -> String {
        (**self).name()
    }
    fn len(&self) -> usize {
        (**self).len()
    }
    fn label(&self, i: usize) -> String {
        (**self).label(i)
    }
    fn index_of(&self, label: &str) -> Option<usize> {
        (**self).index_of(label)
    }
    fn h(&self, i: usize) -> Q {
        (**self).h(i)
    }
    fn dim(&self, i: usize) -> f64 {
        (**self).dim(i)
    }
    fn dual(&self, i: usize) -> usize {
        (**self).dual(i)
    }
    fn fuse(&self, a: usize, b: usize) -> Result<SectorVector> {
        (**self).fuse(a, b)
    }
    fn central_charge(&self) -> Q {
        (**self).central_charge()
    }
}
