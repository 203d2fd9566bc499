use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use spin::Mutex;

use super::{SectorVector, Theory};
use crate::error::{Error, Result};
use crate::linalg::{determinant_in_place, CMatrix};
use crate::math::{self, Q};
use crate::weights::{enumerate_weights, AffineWeight};

/// Largest distance from an integer tolerated when rounding a Verlinde sum.
pub const FUSION_ROUNDING_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Label {
    Weight(AffineWeight),
    Named(String),
}

impl Label {
    fn text(&self) -> String {
        match self {
            Label::Weight(w) => format!("{w}"),
            Label::Named(s) => s.clone(),
        }
    }
}

/// Modular data of one rational theory.
///
/// Immutable once built. Fusion is computed from the S-matrix on demand and
/// cached per unordered pair behind a spin lock.
#[derive(Debug)]
pub struct ModularDatum {
    name: String,
    labels: Vec<Label>,
    lookup: BTreeMap<String, usize>,
    h: Vec<Q>,
    c: Q,
    s: CMatrix,
    conj: Vec<usize>,
    wzw: Option<(usize, u32)>,
    fusion_cache: Mutex<BTreeMap<(usize, usize), SectorVector>>,
}

impl Clone for ModularDatum {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            labels: self.labels.clone(),
            lookup: self.lookup.clone(),
            h: self.h.clone(),
            c: self.c,
            s: self.s.clone(),
            conj: self.conj.clone(),
            wzw: self.wzw,
            fusion_cache: Mutex::new(self.fusion_cache.lock().clone()),
        }
    }
}

/// Residuals of the modular-group relations for one datum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularResiduals {
    /// `max |S S^dagger - I|`.
    pub unitarity: f64,
    /// `max |S - S^T|`.
    pub symmetry: f64,
    /// `max |S^2 - C|`.
    pub s_squared_conjugation: f64,
    /// `max |(S T)^3 - S^2|`.
    pub st_cubed: f64,
    /// Smallest real part on the vacuum row (must be positive).
    pub vacuum_row_min: f64,
    /// Largest imaginary part on the vacuum row.
    pub vacuum_row_imag: f64,
}

impl ModularResiduals {
    pub fn max_residual(&self) -> f64 {
        [self.unitarity, self.symmetry, self.s_squared_conjugation, self.st_cubed, self.vacuum_row_imag]
            .into_iter()
            .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() < tol && self.vacuum_row_min > 0.0
    }
}

/// Conformal weight `(l, l + 2 rho) / (2 (k + n))` written in Dynkin labels,
/// with the cross term over strict pairs `j < i`.
pub fn conformal_weight(w: &AffineWeight) -> Q {
    let n = w.rank() as i64;
    let k = w.level() as i64;
    let l: Vec<i64> = w.labels().iter().map(|&x| x as i64).collect();
    let mut diag = 0i64;
    let mut lin = 0i64;
    let mut cross = 0i64;
    for i in 1..n {
        let li = l[(i - 1) as usize];
        diag += i * (n - i) * li * li;
        lin += i * (n - i) * li;
        for j in 1..i {
            cross += j * (n - i) * l[(j - 1) as usize] * li;
        }
    }
    Q::new(diag, 2 * n * (k + n)) + Q::new(cross, n * (k + n)) + Q::new(lin, 2 * (k + n))
}

/// Sugawara central charge `k (n^2 - 1) / (k + n)`.
pub fn central_charge(n: usize, k: u32) -> Result<Q> {
    if n < 2 || k < 1 {
        return Err(Error::Usage(format!("SU({n})_{k} is not a valid WZW model")));
    }
    let (n, k) = (n as i64, k as i64);
    Ok(Q::new(k * (n * n - 1), k + n))
}

/// Shifted orthogonal coordinates of `l + rho`, scaled by `n` and centred:
/// `n x_a - sum x` with `x_a = sum_{i >= a} (l_i + 1)`.
fn centred_coords(w: &AffineWeight) -> Vec<i64> {
    let n = w.rank();
    let mut x = vec![0i64; n];
    for a in (0..n - 1).rev() {
        x[a] = x[a + 1] + w.labels()[a] as i64 + 1;
    }
    let total: i64 = x.iter().sum();
    x.iter().map(|&v| n as i64 * v - total).collect()
}

fn raw_coords(w: &AffineWeight) -> Vec<i64> {
    let n = w.rank();
    let mut x = vec![0i64; n];
    for a in (0..n - 1).rev() {
        x[a] = x[a + 1] + w.labels()[a] as i64 + 1;
    }
    x
}

/// Kac-Peterson S-matrix of `SU(n)_k` on [`enumerate_weights`] order.
///
/// Each entry is the alternating sum over `S_n`, evaluated as the `n x n`
/// determinant `det[exp(-2 pi i (l+rho)_a (m+rho)_b / (k+n))]`. The global
/// constant is fixed afterwards: modulus by unitarity of the vacuum row,
/// phase by making `S_00` positive.
pub fn s_matrix(n: usize, k: u32) -> Result<CMatrix> {
    let weights = enumerate_weights(n, k)?;
    Ok(kac_peterson(&weights))
}

fn kac_peterson(weights: &[AffineWeight]) -> CMatrix {
    let n = weights[0].rank();
    let k = weights[0].level();
    let modulus = (n as i64) * (k as i64 + n as i64);
    let roots: Vec<Complex64> = (0..modulus)
        .map(|j| {
            let t = -math::TAU * j as f64 / modulus as f64;
            Complex64::new(libm::cos(t), libm::sin(t))
        })
        .collect();
    let centred: Vec<Vec<i64>> = weights.iter().map(centred_coords).collect();
    let raw: Vec<Vec<i64>> = weights.iter().map(raw_coords).collect();

    let size = weights.len();
    let mut d = CMatrix::zeros(size, size);
    let mut scratch = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..size {
        for b in a..size {
            for i in 0..n {
                for j in 0..n {
                    let e = (centred[a][i] * raw[b][j]).rem_euclid(modulus);
                    scratch[i * n + j] = roots[e as usize];
                }
            }
            let det = determinant_in_place(&mut scratch, n);
            d[(a, b)] = det;
            d[(b, a)] = det;
        }
    }
    let norm: f64 = math::sqrt(d.row(0).iter().map(|z| z.norm_sqr()).sum());
    let d00 = d[(0, 0)];
    let c = d00.conj() / (d00.norm() * norm);
    d.scale(c);
    d
}

impl ModularDatum {
    /// Modular data of `SU(n)_k` from first principles.
    pub fn wzw(n: usize, k: u32) -> Result<Self> {
        let weights = enumerate_weights(n, k)?;
        let s = kac_peterson(&weights);
        let h = weights.iter().map(conformal_weight).collect();
        let lookup_w: BTreeMap<AffineWeight, usize> =
            weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let conj = weights.iter().map(|w| lookup_w[&w.conjugate()]).collect();
        let labels = weights.into_iter().map(Label::Weight).collect();
        let mut datum = Self::from_parts(format!("SU({n})_{k}"), labels, h, central_charge(n, k)?, s, conj)?;
        datum.wzw = Some((n, k));
        Ok(datum)
    }

    pub(crate) fn from_parts(
        name: String,
        labels: Vec<Label>,
        h: Vec<Q>,
        c: Q,
        s: CMatrix,
        conj: Vec<usize>,
    ) -> Result<Self> {
        let size = labels.len();
        if h.len() != size || conj.len() != size || s.rows() != size || s.cols() != size {
            return Err(Error::DataIntegrity(format!("{name}: inconsistent table sizes")));
        }
        let lookup = labels.iter().enumerate().map(|(i, l)| (l.text(), i)).collect();
        Ok(Self { name, labels, lookup, h, c, s, conj, wzw: None, fusion_cache: Mutex::new(BTreeMap::new()) })
    }

    /// `(n, k)` when this is a WZW datum built by [`ModularDatum::wzw`].
    pub fn rank_level(&self) -> Option<(usize, u32)> {
        self.wzw
    }

    pub fn s(&self) -> &CMatrix {
        &self.s
    }

    pub fn weight(&self, i: usize) -> Option<&AffineWeight> {
        match &self.labels[i] {
            Label::Weight(w) => Some(w),
            Label::Named(_) => None,
        }
    }

    pub fn weights(&self) -> Vec<AffineWeight> {
        self.labels.iter().filter_map(|l| if let Label::Weight(w) = l { Some(w.clone()) } else { None }).collect()
    }

    pub fn index_of_weight(&self, w: &AffineWeight) -> Option<usize> {
        match self.wzw {
            Some((n, k)) if w.rank() == n && w.level() == k => self.lookup.get(&format!("{w}")).copied(),
            _ => None,
        }
    }

    pub fn require_weight(&self, w: &AffineWeight) -> Result<usize> {
        self.index_of_weight(w).ok_or_else(|| {
            Error::Usage(format!("{w} (SU({})_{}) is not a label of {}", w.rank(), w.level(), self.name))
        })
    }

    /// `d_l = S_0l / S_00`.
    pub fn quantum_dim(&self, i: usize) -> f64 {
        (self.s[(0, i)] / self.s[(0, 0)]).re
    }

    /// Global dimension `1 / S_00^2`.
    pub fn mu_index(&self) -> f64 {
        let s00 = self.s[(0, 0)].re;
        1.0 / (s00 * s00)
    }

    /// `sum_l d_l^2`, which must agree with [`Self::mu_index`].
    pub fn sum_dim_squared(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let d = self.quantum_dim(i);
                d * d
            })
            .sum()
    }

    /// `omega_l = exp(2 pi i h_l)` together with `h_l mod 1`.
    pub fn univalence(&self, i: usize) -> (Complex64, Q) {
        (math::phase(self.h[i]), math::frac(self.h[i]))
    }

    /// Diagonal of `T = diag(exp(2 pi i (h - c/24)))`.
    pub fn t_diagonal(&self) -> Vec<Complex64> {
        let shift = self.c / Q::from_integer(24);
        self.h.iter().map(|&h| math::phase(h - shift)).collect()
    }

    pub fn conjugation_matrix(&self) -> CMatrix {
        let mut c = CMatrix::zeros(self.len(), self.len());
        for (i, &j) in self.conj.iter().enumerate() {
            c[(i, j)] = Complex64::new(1.0, 0.0);
        }
        c
    }

    pub fn modular_residuals(&self) -> ModularResiduals {
        let n = self.len();
        let s = &self.s;
        let ss = s.matmul(s);
        let t = CMatrix::diagonal(&self.t_diagonal());
        let st = s.matmul(&t);
        let st3 = st.matmul(&st).matmul(&st);
        let row0 = s.row(0);
        ModularResiduals {
            unitarity: s.matmul(&s.adjoint()).max_abs_diff(&CMatrix::identity(n)),
            symmetry: s.max_abs_diff(&s.transpose()),
            s_squared_conjugation: ss.max_abs_diff(&self.conjugation_matrix()),
            st_cubed: st3.max_abs_diff(&ss),
            vacuum_row_min: row0.iter().map(|z| z.re).fold(f64::INFINITY, f64::min),
            vacuum_row_imag: row0.iter().map(|z| z.im.abs()).fold(0.0, f64::max),
        }
    }

    /// Unrounded Verlinde sums `sum_d S_ad S_bd conj(S_cd) / S_0d` for all `c`.
    pub fn verlinde_row(&self, a: usize, b: usize) -> Vec<f64> {
        let n = self.len();
        let w: Vec<Complex64> = (0..n).map(|d| self.s[(a, d)] * self.s[(b, d)] / self.s[(0, d)]).collect();
        (0..n).map(|c| self.s.row(c).iter().zip(&w).map(|(s, w)| s.conj() * w).sum::<Complex64>().re).collect()
    }

    /// The full matrix `N_a` with `N_a[b][c] = N_ab^c`, unrounded, computed as
    /// `S diag(S_a / S_0) S^dagger`. Bypasses the cache.
    pub fn verlinde_matrix(&self, a: usize) -> CMatrix {
        let n = self.len();
        let scaled = CMatrix::from_fn(n, n, |b, d| self.s[(b, d)] * self.s[(a, d)] / self.s[(0, d)]);
        scaled.matmul(&self.s.adjoint())
    }

    fn compute_fusion(&self, a: usize, b: usize) -> Result<SectorVector> {
        let mut out = SectorVector::new();
        for (c, x) in self.verlinde_row(a, b).into_iter().enumerate() {
            let r = libm::round(x);
            let residual = (x - r).abs();
            if residual >= FUSION_ROUNDING_TOL || r < 0.0 {
                return Err(Error::NumericIntegrity {
                    a: self.label(a),
                    b: self.label(b),
                    c: self.label(c),
                    value: x,
                    residual: if r < 0.0 { x.abs() } else { residual },
                });
            }
            out.add(c, r as u32);
        }
        Ok(out)
    }

    /// Sorted `(a, b)` pairs currently cached.
    pub fn cached_pairs(&self) -> usize {
        self.fusion_cache.lock().len()
    }
}

impl Theory for ModularDatum {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn len(&self) -> usize {
        self.labels.len()
    }

    fn label(&self, i: usize) -> String {
        self.labels[i].text()
    }

    fn index_of(&self, label: &str) -> Option<usize> {
        if let Some(&i) = self.lookup.get(label.trim()) {
            return Some(i);
        }
        let (n, k) = self.wzw?;
        let w = AffineWeight::parse(n, k, label).ok()?;
        self.index_of_weight(&w)
    }

    fn h(&self, i: usize) -> Q {
        self.h[i]
    }

    fn dim(&self, i: usize) -> f64 {
        self.quantum_dim(i)
    }

    fn dual(&self, i: usize) -> usize {
        self.conj[i]
    }

    fn fuse(&self, a: usize, b: usize) -> Result<SectorVector> {
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(v) = self.fusion_cache.lock().get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute_fusion(key.0, key.1)?;
        self.fusion_cache.lock().insert(key, v.clone());
        Ok(v)
    }

    fn central_charge(&self) -> Q {
        self.c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::q;

    fn su2_oracle(k: u32) -> impl Fn(usize, usize) -> f64 {
        let kk = k as f64 + 2.0;
        move |a, b| libm::sqrt(2.0 / kk) * libm::sin((a as f64 + 1.0) * (b as f64 + 1.0) * core::f64::consts::PI / kk)
    }

    #[test]
    fn conformal_weight_examples() {
        let w = AffineWeight::from_fundamentals(10, 2, &[(0, 1), (3, 1)]).unwrap();
        assert_eq!(conformal_weight(&w), q(77, 80));
        let w = AffineWeight::new(2, 10, vec![6]).unwrap();
        assert_eq!(conformal_weight(&w), q(1, 1));
        let w = AffineWeight::from_fundamentals(9, 3, &[(4, 1), (6, 1), (8, 1)]).unwrap();
        assert_eq!(conformal_weight(&w), q(7, 3));
        assert_eq!(conformal_weight(&AffineWeight::vacuum(7, 5).unwrap()), q(0, 1));
    }

    #[test]
    fn conformal_weight_matches_su2_closed_form() {
        for k in 1..12u32 {
            for l in 0..=k {
                let w = AffineWeight::new(2, k, vec![l]).unwrap();
                let l = l as i64;
                assert_eq!(conformal_weight(&w), Q::new(l * (l + 2), 4 * (k as i64 + 2)));
            }
        }
    }

    #[test]
    fn central_charge_examples() {
        assert_eq!(central_charge(10, 2).unwrap(), q(33, 2));
        assert_eq!(central_charge(2, 1).unwrap(), q(1, 1));
        assert_eq!(central_charge(9, 3).unwrap(), q(20, 1));
        assert!(central_charge(1, 1).is_err());
    }

    #[test]
    fn su2_s_matrix_matches_closed_form() {
        let s = s_matrix(2, 10).unwrap();
        let oracle = su2_oracle(10);
        for a in 0..11 {
            for b in 0..11 {
                assert!((s[(a, b)] - Complex64::new(oracle(a, b), 0.0)).norm() < 1e-12, "({a},{b})");
            }
        }
    }

    #[test]
    fn su2_fusion_and_dimensions() {
        let d = ModularDatum::wzw(2, 10).unwrap();
        let one_one = d.fuse(1, 1).unwrap();
        assert_eq!(one_one, SectorVector::from_pairs([(0, 1), (2, 1)]));
        let expect = libm::sin(7.0 * core::f64::consts::PI / 12.0) / libm::sin(core::f64::consts::PI / 12.0);
        assert!((d.quantum_dim(6) - expect).abs() < 1e-12);
        assert!((d.quantum_dim(0) - 1.0).abs() < 1e-15);
        for b in 0..11 {
            assert_eq!(d.fuse(0, b).unwrap(), SectorVector::unit(b));
        }
    }

    #[test]
    fn su10_level2_global_dimension_is_level_rank_multiple_of_su2() {
        let big = ModularDatum::wzw(10, 2).unwrap();
        let small = ModularDatum::wzw(2, 10).unwrap();
        let s = libm::sin(core::f64::consts::PI / 12.0);
        assert!((small.mu_index() - 6.0 / (s * s)).abs() < 1e-9);
        assert!((big.mu_index() / (5.0 * small.mu_index()) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn simple_current_fusion_permutes_su10_level2() {
        let d = ModularDatum::wzw(10, 2).unwrap();
        let jv = d.require_weight(&AffineWeight::vacuum(10, 2).unwrap().simple_current()).unwrap();
        for mu in 0..d.len() {
            let target = d.require_weight(&d.weight(mu).unwrap().simple_current()).unwrap();
            assert_eq!(d.fuse(jv, mu).unwrap(), SectorVector::unit(target));
        }
    }

    #[test]
    fn univalence_examples() {
        let d = ModularDatum::wzw(10, 2).unwrap();
        let (w, h) = d.univalence(0);
        assert!((w - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(h, q(0, 1));
        let e3 = d.index_of("0,0,1,0,0,0,0,0,0").unwrap();
        assert_eq!(d.univalence(e3).1, q(77, 80));
        let su9 = ModularDatum::wzw(9, 3).unwrap();
        let j = su9.require_weight(&AffineWeight::vacuum(9, 3).unwrap().simple_current()).unwrap();
        assert_eq!(su9.h(j), q(4, 3));
        assert!((su9.univalence(j).0 - math::phase(q(4, 3))).norm() < 1e-15);
    }

    #[test]
    fn small_wzw_data_satisfy_modular_relations() {
        for (n, k) in [(2, 10), (3, 2), (4, 2), (3, 4), (5, 2)] {
            let d = ModularDatum::wzw(n, k).unwrap();
            let r = d.modular_residuals();
            assert!(r.passes(1e-9), "SU({n})_{k}: {r:?}");
        }
    }

    #[test]
    fn corrupted_s_matrix_is_a_numeric_integrity_error() {
        let mut d = ModularDatum::wzw(2, 4).unwrap();
        d.s[(1, 2)] += Complex64::new(0.05, 0.0);
        d.s[(2, 1)] += Complex64::new(0.05, 0.0);
        let err = (0..d.len())
            .flat_map(|a| (0..d.len()).map(move |b| (a, b)))
            .find_map(|(a, b)| d.compute_fusion(a, b).err());
        assert!(matches!(err, Some(Error::NumericIntegrity { .. })));
    }
}
