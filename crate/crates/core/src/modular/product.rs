use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{ModularDatum, SectorVector, Theory};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::math::Q;

/// Largest product dimension for which [`TensorProduct::materialize_s`]
/// agrees to build a dense matrix.
pub const MATERIALIZE_LIMIT: usize = 10_000;

/// Splits `a,(b,c),[d,e]` at top-level commas.
pub fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

/// Tensor product of theories, kept factorized.
///
/// Labels are tuples encoded in mixed radix with the first factor most
/// significant, so the flat order is lexicographic in the factor orders.
pub struct TensorProduct<'a, T: Theory + ?Sized> {
    factors: Vec<&'a T>,
    radix: Vec<usize>,
}

impl<'a, T: Theory + ?Sized> Clone for TensorProduct<'a, T> {
    fn clone(&self) -> Self {
        Self { factors: self.factors.clone(), radix: self.radix.clone() }
    }
}

impl<'a, T: Theory + ?Sized> TensorProduct<'a, T> {
    pub fn new(factors: Vec<&'a T>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Usage("a tensor product needs at least one factor".into()));
        }
        let radix = factors.iter().map(|f| f.len()).collect();
        Ok(Self { factors, radix })
    }

    pub fn factors(&self) -> &[&'a T] {
        &self.factors
    }

    pub fn factor_sizes(&self) -> &[usize] {
        &self.radix
    }

    pub fn encode(&self, parts: &[usize]) -> usize {
        debug_assert_eq!(parts.len(), self.radix.len());
        parts.iter().zip(&self.radix).fold(0, |acc, (&p, &r)| acc * r + p)
    }

    pub fn decode(&self, mut flat: usize) -> Vec<usize> {
        let mut parts = vec![0; self.radix.len()];
        for (slot, &r) in parts.iter_mut().zip(&self.radix).rev() {
            *slot = flat % r;
            flat /= r;
        }
        parts
    }

    /// Looks up one label per factor.
    pub fn require_parts(&self, labels: &[&str]) -> Result<usize> {
        if labels.len() != self.factors.len() {
            return Err(Error::Usage(format!(
                "{} labels given for a product of {} factors",
                labels.len(),
                self.factors.len()
            )));
        }
        let parts: Result<Vec<usize>> = self.factors.iter().zip(labels).map(|(f, l)| f.require(l)).collect();
        Ok(self.encode(&parts?))
    }
}

impl<'a, T: Theory + ?Sized> Theory for TensorProduct<'a, T> {
    fn name(&self) -> String {
        let names: Vec<String> = self.factors.iter().map(|f| f.name()).collect();
        names.join(" x ")
    }

    fn len(&self) -> usize {
        self.radix.iter().product()
    }

    fn label(&self, i: usize) -> String {
        let parts: Vec<String> = self.decode(i).iter().zip(&self.factors).map(|(&p, f)| f.label(p)).collect();
        format!("({})", parts.join(","))
    }

    fn index_of(&self, label: &str) -> Option<usize> {
        let inner = label.trim().strip_prefix('(')?.strip_suffix(')')?;
        let pieces = split_top_level(inner);
        if pieces.len() != self.factors.len() {
            return None;
        }
        let parts: Option<Vec<usize>> = self.factors.iter().zip(pieces).map(|(f, p)| f.index_of(p)).collect();
        Some(self.encode(&parts?))
    }

    fn h(&self, i: usize) -> Q {
        self.decode(i).iter().zip(&self.factors).map(|(&p, f)| f.h(p)).sum()
    }

    fn dim(&self, i: usize) -> f64 {
        self.decode(i).iter().zip(&self.factors).map(|(&p, f)| f.dim(p)).product()
    }

    fn dual(&self, i: usize) -> usize {
        let parts: Vec<usize> = self.decode(i).iter().zip(&self.factors).map(|(&p, f)| f.dual(p)).collect();
        self.encode(&parts)
    }

    fn fuse(&self, a: usize, b: usize) -> Result<SectorVector> {
        let (pa, pb) = (self.decode(a), self.decode(b));
        let mut acc: Vec<(Vec<usize>, u32)> = vec![(Vec::new(), 1)];
        for ((f, &x), &y) in self.factors.iter().zip(&pa).zip(&pb) {
            let prod = f.fuse(x, y)?;
            let mut next = Vec::with_capacity(acc.len() * prod.len());
            for (prefix, m) in &acc {
                for (c, n) in prod.iter() {
                    let mut p = prefix.clone();
                    p.push(c);
                    next.push((p, m * n));
                }
            }
            acc = next;
        }
        Ok(SectorVector::from_pairs(acc.into_iter().map(|(p, m)| (self.encode(&p), m))))
    }

    fn central_charge(&self) -> Q {
        self.factors.iter().map(|f| f.central_charge()).sum()
    }
}

impl<'a> TensorProduct<'a, ModularDatum> {
    /// Applies `M_1 (x) M_2 (x) ...` to a flat vector, one factor axis at a
    /// time, never forming the Kronecker product.
    fn apply_factorized(&self, v: &[Complex64], mats: &[&CMatrix]) -> Vec<Complex64> {
        let total = self.len();
        assert_eq!(v.len(), total, "vector length must match the product dimension");
        let mut cur = v.to_vec();
        let mut inner = total;
        for (axis, m) in mats.iter().enumerate() {
            let r = self.radix[axis];
            inner /= r;
            let outer = total / (inner * r);
            let mut next = vec![Complex64::new(0.0, 0.0); total];
            for o in 0..outer {
                for a in 0..r {
                    let row = m.row(a);
                    for i in 0..inner {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for (b, s) in row.iter().enumerate() {
                            acc += s * cur[(o * r + b) * inner + i];
                        }
                        next[(o * r + a) * inner + i] = acc;
                    }
                }
            }
            cur = next;
        }
        cur
    }

    /// `S v` with `S` the Kronecker product of the factor S-matrices.
    pub fn apply_s(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mats: Vec<&CMatrix> = self.factors.iter().map(|f| f.s()).collect();
        self.apply_factorized(v, &mats)
    }

    /// Diagonal of `T` for the product.
    pub fn t_diagonal(&self) -> Vec<Complex64> {
        let shift = self.central_charge() / Q::from_integer(24);
        (0..self.len()).map(|i| crate::math::phase(self.h(i) - shift)).collect()
    }

    pub fn mu_index(&self) -> f64 {
        self.factors.iter().map(|f| f.mu_index()).product()
    }

    /// Dense product S-matrix, refused beyond [`MATERIALIZE_LIMIT`].
    pub fn materialize_s(&self) -> Result<CMatrix> {
        if self.len() > MATERIALIZE_LIMIT {
            return Err(Error::Unsupported(format!(
                "product dimension {} exceeds {MATERIALIZE_LIMIT}; use apply_s",
                self.len()
            )));
        }
        let mut it = self.factors.iter();
        let first = it.next().expect("non-empty").s().clone();
        Ok(it.fold(first, |acc, f| acc.kronecker(f.s())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::q;
    use crate::modular::LevelOne;

    #[test]
    fn split_respects_brackets() {
        assert_eq!(split_top_level("a,(b,c),[1,2]"), vec!["a", "(b,c)", "[1,2]"]);
        assert_eq!(split_top_level("x"), vec!["x"]);
    }

    #[test]
    fn central_charge_of_entry_forty_base_is_24() {
        let a = ModularDatum::wzw(10, 2).unwrap();
        let b = LevelOne::Su(5).datum().unwrap();
        let c = LevelOne::Spin(7).datum().unwrap();
        let p = TensorProduct::new(vec![&a, &b, &c]).unwrap();
        assert_eq!(p.central_charge(), q(24, 1));
        assert_eq!(p.h(0), q(0, 1));
        assert!((p.dim(0) - 1.0).abs() < 1e-15);
        assert_eq!(p.len(), 55 * 5 * 3);
    }

    #[test]
    fn labels_round_trip() {
        let a = ModularDatum::wzw(3, 2).unwrap();
        let b = LevelOne::Su(3).datum().unwrap();
        let p = TensorProduct::new(vec![&a, &b]).unwrap();
        for i in 0..p.len() {
            assert_eq!(p.index_of(&p.label(i)), Some(i));
        }
        assert_eq!(p.index_of("([1,0],y2)"), Some(p.encode(&[a.index_of("1,0").unwrap(), 2])));
    }

    #[test]
    fn factorized_s_matches_kronecker() {
        let a = ModularDatum::wzw(2, 3).unwrap();
        let b = LevelOne::Su(3).datum().unwrap();
        let c = LevelOne::Spin(7).datum().unwrap();
        let p = TensorProduct::new(vec![&a, &b, &c]).unwrap();
        let dense = p.materialize_s().unwrap();
        let v: Vec<Complex64> = (0..p.len()).map(|i| Complex64::new(i as f64, 1.0 / (i as f64 + 1.0))).collect();
        let fast = p.apply_s(&v);
        let slow = dense.mul_vec(&v);
        for (x, y) in fast.iter().zip(&slow) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn product_fusion_is_componentwise() {
        let a = ModularDatum::wzw(2, 2).unwrap();
        let b = LevelOne::Spin(7).datum().unwrap();
        let p = TensorProduct::new(vec![&a, &b]).unwrap();
        let x = p.encode(&[1, 2]);
        let got = p.fuse(x, x).unwrap();
        let want = SectorVector::from_pairs([
            (p.encode(&[0, 0]), 1),
            (p.encode(&[0, 1]), 1),
            (p.encode(&[2, 0]), 1),
            (p.encode(&[2, 1]), 1),
        ]);
        assert_eq!(got, want);
    }
}
