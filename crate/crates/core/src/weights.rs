//! Level-`k` dominant weights of `SU(n)` and the combinatorics on them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A dominant weight of `SU(n)` at level `k`, stored as Dynkin labels
/// `[l_1, ..., l_{n-1}]` with `sum l_i <= k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineWeight {
    rank: usize,
    level: u32,
    labels: Vec<u32>,
}

fn check_rank_level(n: usize, k: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Usage(format!("rank must be >= 2, got {n}")));
    }
    if k < 1 {
        return Err(Error::Usage(format!("level must be >= 1, got {k}")));
    }
    Ok(())
}

impl AffineWeight {
    pub fn new(rank: usize, level: u32, labels: Vec<u32>) -> Result<Self> {
        check_rank_level(rank, level)?;
        if labels.len() != rank - 1 {
            return Err(Error::Usage(format!("SU({rank}) weight needs {} labels, got {}", rank - 1, labels.len())));
        }
        let total: u64 = labels.iter().map(|&l| l as u64).sum();
        if total > level as u64 {
            return Err(Error::Usage(format!("labels {labels:?} sum to {total}, past level {level}")));
        }
        Ok(Self { rank, level, labels })
    }

    pub fn vacuum(rank: usize, level: u32) -> Result<Self> {
        Self::new(rank, level, vec![0; rank.saturating_sub(1)])
    }

    /// Builds a weight from `(i, c)` pairs meaning `c * Lambda_i`. Pairs with
    /// `i = 0` set the zeroth label and must be consistent with the level.
    pub fn from_fundamentals(rank: usize, level: u32, terms: &[(usize, u32)]) -> Result<Self> {
        check_rank_level(rank, level)?;
        let mut ext = vec![0u32; rank];
        for &(i, c) in terms {
            if i >= rank {
                return Err(Error::Usage(format!("Lambda_{i} out of range for SU({rank})")));
            }
            ext[i] += c;
        }
        let inner: u32 = ext[1..].iter().sum();
        if inner > level {
            return Err(Error::Usage(format!("labels sum to {inner}, past level {level}")));
        }
        if ext[0] != 0 && ext[0] != level - inner {
            return Err(Error::Usage(format!(
                "zeroth label {} inconsistent with level {level} (expected {})",
                ext[0],
                level - inner
            )));
        }
        Self::new(rank, level, ext[1..].to_vec())
    }

    /// Builds a weight from the full extended label vector `(l_0, ..., l_{n-1})`.
    pub fn from_extended(level: u32, ext: &[u32]) -> Result<Self> {
        let total: u32 = ext.iter().sum();
        if total != level {
            return Err(Error::Usage(format!("extended labels {ext:?} do not sum to {level}")));
        }
        Self::new(ext.len(), level, ext[1..].to_vec())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn zeroth(&self) -> u32 {
        self.level - self.labels.iter().sum::<u32>()
    }

    /// `(l_0, l_1, ..., l_{n-1})`.
    pub fn extended(&self) -> Vec<u32> {
        let mut ext = Vec::with_capacity(self.rank);
        ext.push(self.zeroth());
        ext.extend_from_slice(&self.labels);
        ext
    }

    pub fn is_vacuum(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    /// The generator `J` of the `Z_n` outer automorphisms: cyclic rotation
    /// of the extended labels, `(l_1..l_{n-1}) -> (l_0, l_1, ..., l_{n-2})`.
    pub fn simple_current(&self) -> Self {
        let mut labels = Vec::with_capacity(self.labels.len());
        labels.push(self.zeroth());
        labels.extend_from_slice(&self.labels[..self.labels.len() - 1]);
        Self { rank: self.rank, level: self.level, labels }
    }

    /// `J^p`, any integer `p` (taken mod `n`).
    pub fn simple_current_pow(&self, p: i64) -> Self {
        let n = self.rank as i64;
        let shift = p.rem_euclid(n) as usize;
        let ext = self.extended();
        let mut out = vec![0u32; self.rank];
        for (i, &l) in ext.iter().enumerate() {
            out[(i + shift) % self.rank] = l;
        }
        Self { rank: self.rank, level: self.level, labels: out[1..].to_vec() }
    }

    /// Charge conjugate: labels reversed.
    pub fn conjugate(&self) -> Self {
        let mut labels = self.labels.clone();
        labels.reverse();
        Self { rank: self.rank, level: self.level, labels }
    }

    /// `n`-ality, `sum_i i * l_i mod n`.
    pub fn color(&self) -> u32 {
        (self.boxes() % self.rank as u64) as u32
    }

    /// Number of boxes of the Young diagram with no full columns,
    /// `sum_i i * l_i`.
    pub fn boxes(&self) -> u64 {
        self.labels.iter().enumerate().map(|(i, &l)| (i as u64 + 1) * l as u64).sum()
    }

    /// Row lengths `r_1 >= ... >= r_{n-1}` of the Young diagram.
    pub fn rows(&self) -> Vec<u32> {
        let mut rows = vec![0u32; self.labels.len()];
        let mut acc = 0;
        for i in (0..self.labels.len()).rev() {
            acc += self.labels[i];
            rows[i] = acc;
        }
        rows
    }

    /// Text form `a1,a2,...`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.labels.iter().map(|l| format!("{l}")).collect();
        parts.join(",")
    }

    /// Parses `a1,a2,...`, optionally wrapped in brackets.
    pub fn parse(rank: usize, level: u32, text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(']');
        let labels = if t.trim().is_empty() {
            Vec::new()
        } else {
            t.split(',')
                .map(|p| {
                    p.trim().parse::<u32>().map_err(|_| Error::Usage(format!("bad Dynkin label {p:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(rank, level, labels)
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_text())
    }
}

/// All level-`k` dominant weights of `SU(n)` in lexicographic label order;
/// the vacuum comes first.
pub fn enumerate_weights(n: usize, k: u32) -> Result<Vec<AffineWeight>> {
    check_rank_level(n, k)?;
    let mut out = Vec::new();
    let mut cur = vec![0u32; n - 1];
    fill(&mut cur, 0, k, &mut |labels| out.push(AffineWeight { rank: n, level: k, labels: labels.to_vec() }));
    Ok(out)
}

fn fill(cur: &mut Vec<u32>, pos: usize, budget: u32, emit: &mut dyn FnMut(&[u32])) {
    if pos == cur.len() {
        emit(cur);
        return;
    }
    for v in 0..=budget {
        cur[pos] = v;
        fill(cur, pos + 1, budget - v, emit);
    }
    cur[pos] = 0;
}

/// The `J`-orbit `{J^(start + step*i)(w) : i = 0..count}`.
pub fn orbit(w: &AffineWeight, start: i64, step: i64, count: usize) -> Vec<AffineWeight> {
    (0..count as i64).map(|i| w.simple_current_pow(start + step * i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn enumeration_counts_match_stars_and_bars() {
        assert_eq!(enumerate_weights(2, 10).unwrap().len(), 11);
        // sum_{s<=k} C(s + n - 2, n - 2)
        for (n, k) in [(10usize, 2u32), (8, 4), (9, 3), (4, 8), (3, 9)] {
            let expected: u64 = (0..=k as u64).map(|s| binom(s + n as u64 - 2, n as u64 - 2)).sum();
            assert_eq!(enumerate_weights(n, k).unwrap().len() as u64, expected, "SU({n})_{k}");
        }
        assert_eq!(enumerate_weights(10, 2).unwrap().len(), 55);
        assert_eq!(enumerate_weights(8, 4).unwrap().len(), 330);
    }

    #[test]
    fn enumeration_is_sorted_with_vacuum_first() {
        let ws = enumerate_weights(4, 3).unwrap();
        assert!(ws[0].is_vacuum());
        assert!(ws.windows(2).all(|p| p[0].labels < p[1].labels));
        let su2: Vec<u32> = enumerate_weights(2, 10).unwrap().iter().map(|w| w.labels[0]).collect();
        assert_eq!(su2, (0..=10).collect::<Vec<_>>());
    }

    #[test]
    fn invalid_rank_or_level_is_usage_error() {
        assert!(matches!(enumerate_weights(1, 3), Err(Error::Usage(_))));
        assert!(matches!(enumerate_weights(3, 0), Err(Error::Usage(_))));
        assert!(AffineWeight::new(3, 2, vec![2, 1]).is_err());
        assert!(AffineWeight::new(3, 2, vec![1]).is_err());
    }

    #[test]
    fn simple_current_examples() {
        let vac = AffineWeight::vacuum(10, 2).unwrap();
        let j = vac.simple_current();
        assert_eq!(j.labels(), &[2, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(j.color(), 2);

        let e3 = AffineWeight::from_fundamentals(10, 2, &[(0, 1), (3, 1)]).unwrap();
        let expect = AffineWeight::from_fundamentals(10, 2, &[(3, 1), (6, 1)]).unwrap();
        assert_eq!(e3.simple_current_pow(3), expect);
        for w in enumerate_weights(10, 2).unwrap() {
            assert_eq!(w.simple_current_pow(10), w);
            let mut x = w.clone();
            for _ in 0..10 {
                x = x.simple_current();
            }
            assert_eq!(x, w);
        }
    }

    #[test]
    fn conjugation_examples() {
        let w = AffineWeight::from_fundamentals(10, 2, &[(3, 1), (7, 1)]).unwrap();
        assert_eq!(w.conjugate(), w);
        let x = AffineWeight::from_fundamentals(9, 3, &[(4, 1), (6, 1), (8, 1)]).unwrap();
        let y = AffineWeight::from_fundamentals(9, 3, &[(1, 1), (3, 1), (5, 1)]).unwrap();
        assert_eq!(x.conjugate(), y);
        assert_eq!(x.color(), 0);
        assert!(AffineWeight::vacuum(6, 4).unwrap().conjugate().is_vacuum());
    }

    #[test]
    fn text_round_trip_and_fundamentals() {
        let w = AffineWeight::parse(4, 8, "[1, 2,1]").unwrap();
        assert_eq!(w.to_text(), "1,2,1");
        assert_eq!(w.to_string(), "[1,2,1]");
        assert_eq!(w.zeroth(), 4);
        assert!(AffineWeight::from_fundamentals(8, 4, &[(0, 1), (4, 1), (5, 2), (7, 1)]).is_err());
        assert!(AffineWeight::from_fundamentals(4, 8, &[(0, 3), (1, 1), (2, 2), (3, 3)]).is_err());
        assert!(AffineWeight::parse(3, 2, "1,x").is_err());
    }

    #[test]
    fn rows_and_boxes() {
        let w = AffineWeight::new(4, 8, vec![1, 2, 1]).unwrap();
        assert_eq!(w.rows(), vec![4, 3, 1]);
        assert_eq!(w.boxes(), 8);
    }
}
