//! Level-rank duality between `SU(m)_n` and `SU(n)_m` inside `SU(mn)_1`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{congruent_mod1, Q};
use crate::modular::{conformal_weight, SectorVector};
use crate::weights::{enumerate_weights, AffineWeight};
use crate::ModularDatum;

/// The combinatorial bijection from `SU(m)` at level `n` to `SU(n)` at
/// level `m`, built from the complement of the partial sums of the shifted
/// extended labels in `{1, ..., m + n}`.
pub fn beta(w: &AffineWeight) -> AffineWeight {
    let m = w.rank();
    let n = w.level() as usize;
    let ext = w.extended();
    // k_1, ..., k_{m-1}, k_m = k_0
    let mut k: Vec<usize> = ext[1..].iter().map(|&l| l as usize + 1).collect();
    k.push(ext[0] as usize + 1);
    let r: BTreeSet<usize> = (0..m).map(|j| k[j..].iter().sum()).collect();
    let rbar: Vec<usize> = (1..=m + n).rev().filter(|x| !r.contains(x)).collect();
    let s: Vec<usize> = (1..=n).map(|j| m + n + rbar[n - 1] - rbar[n - j]).collect();
    let labels = (0..n - 1).map(|j| (s[j] - s[j + 1] - 1) as u32).collect();
    AffineWeight::new(n, m as u32, labels).expect("beta lands on a level-m weight")
}

/// Transposes the Young diagram of an `SU(m)_n` weight into an `SU(n)_m`
/// weight. Column heights become rows; columns of full height `n` drop out.
pub fn transpose(w: &AffineWeight) -> AffineWeight {
    let m = w.rank();
    let n = w.level() as usize;
    let rows = w.rows();
    let cols: Vec<u32> = (0..n as u32).map(|j| rows.iter().filter(|&&r| r > j).count() as u32).collect();
    let labels = (0..n - 1).map(|i| cols[i] - cols[i + 1]).collect();
    AffineWeight::new(n, m as u32, labels).expect("transpose lands on a level-m weight")
}

/// `h(Lambda_l)` of `SU(N)_1`.
pub fn level_one_weight(big_n: usize, l: u32) -> Q {
    let (nn, l) = (big_n as i64, l as i64);
    Q::new(l * (nn - l), 2 * nn)
}

/// The partner `lambda..` of `lambda.` in the branching of the level-one
/// label `Lambda_l`: the transposed diagram rotated by
/// `(l - |Y|) / m` steps of `J`, with `|Y|` the box count.
pub fn partner(w: &AffineWeight, l: u32) -> Result<AffineWeight> {
    let m = w.rank() as i64;
    let n = w.level() as i64;
    let boxes = w.boxes() as i64;
    if (boxes - l as i64).rem_euclid(m) != 0 {
        return Err(Error::Precondition(format!(
            "{w} has color {} but the branching of Lambda_{l} needs color {}",
            w.color(),
            l as i64 % m
        )));
    }
    let shift = (l as i64 - boxes).div_euclid(m).rem_euclid(n);
    Ok(transpose(w).simple_current_pow(shift))
}

/// The twists `t` in `Z_n` for which `J^t(beta(lambda.))` satisfies the
/// conformal-weight congruence against `Lambda_l`.
pub fn twist_candidates(w: &AffineWeight, l: u32) -> Vec<u32> {
    let m = w.rank();
    let n = w.level() as usize;
    let target = level_one_weight(m * n, l);
    let h = conformal_weight(w);
    let b = beta(w);
    (0..n as u32).filter(|&t| congruent_mod1(h + conformal_weight(&b.simple_current_pow(t as i64)), target)).collect()
}

/// Weights of `SU(m)_n` with color 0.
pub fn exp_set(m: usize, n: u32) -> Result<Vec<AffineWeight>> {
    Ok(enumerate_weights(m, n)?.into_iter().filter(|w| w.color() == 0).collect())
}

/// One row of a [`PairingTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub dot: AffineWeight,
    pub ddot: AffineWeight,
    /// Power of `J` applied on top of `beta(dot)`.
    pub twist: u32,
    /// How many twists pass the conformal-weight congruence; the pairing is
    /// decided by [`partner`], this is kept as a diagnostic.
    pub congruent_twists: u32,
}

/// The branching pairs `(lambda., lambda..)` of one level-one label.
#[derive(Clone, Debug)]
pub struct PairingTable {
    m: usize,
    n: usize,
    level_one_label: u32,
    pairs: Vec<Pair>,
    forward: BTreeMap<AffineWeight, usize>,
    backward: BTreeMap<AffineWeight, usize>,
}

impl PairingTable {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level_one_label(&self) -> u32 {
        self.level_one_label
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn partner_of(&self, dot: &AffineWeight) -> Option<&AffineWeight> {
        self.forward.get(dot).map(|&i| &self.pairs[i].ddot)
    }

    pub fn preimage_of(&self, ddot: &AffineWeight) -> Option<&AffineWeight> {
        self.backward.get(ddot).map(|&i| &self.pairs[i].dot)
    }
}

/// Branching of `Lambda_l` of `SU(mn)_1` over `SU(m)_n x SU(n)_m`.
///
/// Every pair is checked against the exact congruence
/// `h(lambda.) + h(lambda..) = h(Lambda_l) mod 1` and the map is checked
/// injective; either failure is a data-integrity error.
pub fn branching(l: u32, m: usize, n: usize) -> Result<PairingTable> {
    if m < 2 || n < 2 {
        return Err(Error::Usage(format!("level-rank pair ({m},{n}) needs m, n >= 2")));
    }
    if l as usize >= m * n {
        return Err(Error::Usage(format!("Lambda_{l} is not a level-one label of SU({})", m * n)));
    }
    let target = level_one_weight(m * n, l);
    let mut table = PairingTable {
        m,
        n,
        level_one_label: l,
        pairs: Vec::new(),
        forward: BTreeMap::new(),
        backward: BTreeMap::new(),
    };
    for dot in enumerate_weights(m, n as u32)? {
        if dot.color() as usize != l as usize % m {
            continue;
        }
        let ddot = partner(&dot, l)?;
        if !congruent_mod1(conformal_weight(&dot) + conformal_weight(&ddot), target) {
            return Err(Error::DataIntegrity(format!(
                "pair {dot} / {ddot} violates the conformal-weight congruence for Lambda_{l}"
            )));
        }
        let b = beta(&dot);
        let twist = (0..n as u32)
            .find(|&t| b.simple_current_pow(t as i64) == ddot)
            .ok_or_else(|| Error::DataIntegrity(format!("{ddot} is not in the J-orbit of beta({dot}) = {b}")))?;
        let congruent_twists = twist_candidates(&dot, l).len() as u32;
        let idx = table.pairs.len();
        if table.backward.insert(ddot.clone(), idx).is_some() {
            return Err(Error::DataIntegrity(format!("partner {ddot} reached twice")));
        }
        table.forward.insert(dot.clone(), idx);
        table.pairs.push(Pair { dot, ddot, twist, congruent_twists });
    }
    Ok(table)
}

/// [`branching`] of the vacuum.
pub fn vacuum_pairing(m: usize, n: usize) -> Result<PairingTable> {
    branching(0, m, n)
}

/// Replaces every `SU(m)_n` label of `spec` by its vacuum partner in
/// `SU(n)_m`, keeping multiplicities.
///
/// The input must live on `exp_set(m, n)` and be conjugation symmetric.
pub fn mirror_spectrum(
    spec: &SectorVector,
    source: &ModularDatum,
    target: &ModularDatum,
    pairing: &PairingTable,
) -> Result<SectorVector> {
    if pairing.level_one_label != 0 {
        return Err(Error::Precondition("mirror spectra use the vacuum pairing".into()));
    }
    if !spec.is_conjugation_symmetric(source) {
        return Err(Error::Precondition(format!("spectrum {} is not conjugation symmetric", spec.describe(source))));
    }
    let mut out = SectorVector::new();
    for (i, mult) in spec.iter() {
        let w = source.weight(i).ok_or_else(|| {
            Error::Precondition(format!("{} is not an affine weight", crate::Theory::label(source, i)))
        })?;
        let partner =
            pairing.partner_of(w).ok_or_else(|| Error::Precondition(format!("{w} lies outside the color-0 set")))?;
        out.add(target.require_weight(partner)?, mult);
    }
    Ok(out)
}

/// `mu(C~) = mu(A~) mu(C) / mu(A)`.
pub fn mirror_mu(mu_c: f64, mu_a: f64, mu_a_tilde: f64) -> f64 {
    mu_a_tilde * mu_c / mu_a
}
