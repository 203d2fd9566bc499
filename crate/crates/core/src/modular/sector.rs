use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::Theory;

/// Finitely supported nonnegative-integer combination of labels of one
/// theory: a spectrum, a restriction or a fusion product.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectorVector {
    mult: BTreeMap<usize, u32>,
}

impl SectorVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::new();
        v.add(i, 1);
        v
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut v = Self::new();
        for (i, m) in pairs {
            v.add(i, m);
        }
        v
    }

    pub fn add(&mut self, i: usize, m: u32) {
        if m > 0 {
            *self.mult.entry(i).or_insert(0) += m;
        }
    }

    pub fn add_vector(&mut self, other: &SectorVector) {
        for (i, m) in other.iter() {
            self.add(i, m);
        }
    }

    pub fn get(&self, i: usize) -> u32 {
        self.mult.get(&i).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.mult.iter().map(|(&i, &m)| (i, m))
    }

    pub fn support(&self) -> Vec<usize> {
        self.mult.keys().copied().collect()
    }

    /// Number of distinct labels with nonzero multiplicity.
    pub fn len(&self) -> usize {
        self.mult.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.mult.values().map(|&m| m as u64).sum()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.mult.values().copied().max().unwrap_or(0)
    }

    /// `sum m_l d_l`.
    pub fn dimension<T: Theory + ?Sized>(&self, theory: &T) -> f64 {
        self.iter().map(|(i, m)| m as f64 * theory.dim(i)).sum()
    }

    /// Image under a label map, keeping multiplicities.
    pub fn map(&self, mut f: impl FnMut(usize) -> usize) -> Self {
        Self::from_pairs(self.iter().map(|(i, m)| (f(i), m)))
    }

    pub fn conjugate<T: Theory + ?Sized>(&self, theory: &T) -> Self {
        self.map(|i| theory.dual(i))
    }

    pub fn is_conjugation_symmetric<T: Theory + ?Sized>(&self, theory: &T) -> bool {
        self.conjugate(theory) == *self
    }

    /// Human-readable `m*[label] + ...`.
    pub fn describe<T: Theory + ?Sized>(&self, theory: &T) -> String {
        use alloc::format;
        let parts: Vec<String> = self
            .iter()
            .map(|(i, m)| if m == 1 { theory.label(i) } else { format!("{m}*{}", theory.label(i)) })
            .collect();
        parts.join(" + ")
    }

    /// Dense multiplicity vector of length `n`.
    pub fn to_dense(&self, n: usize) -> Vec<f64> {
        let mut v = alloc::vec![0.0; n];
        for (i, m) in self.iter() {
            v[i] = m as f64;
        }
        v
    }
}
