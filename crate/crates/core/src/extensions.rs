//! Simple-current extensions: scalar monodromy, local systems, spectra,
//! index bookkeeping, induced multiplicities, coupling matrices and
//! quadratic-form consistency of candidate group structures.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::math::{self, fmt_q, frac, Q};
use crate::modular::{ModularDatum, SectorVector, Theory};
use crate::report::{Check, VerificationReport};

/// Distance from 1 below which a quantum dimension counts as 1.
pub const AUTOMORPHISM_TOL: f64 = 1e-9;

fn single_label<T: Theory + ?Sized>(theory: &T, a: usize, b: usize) -> Result<usize> {
    let prod = theory.fuse(a, b)?;
    match (prod.len(), prod.total()) {
        (1, 1) => Ok(prod.support()[0]),
        _ => Err(Error::Unsupported(format!(
            "{} x {} = {} is not a single sector",
            theory.label(a),
            theory.label(b),
            prod.describe(theory)
        ))),
    }
}

fn require_automorphism<T: Theory + ?Sized>(theory: &T, a: usize) -> Result<()> {
    let d = theory.dim(a);
    if (d - 1.0).abs() > AUTOMORPHISM_TOL {
        return Err(Error::NotAutomorphism { label: theory.label(a), dim: d });
    }
    Ok(())
}

/// `h(lambda mu) - h(lambda) - h(mu)` mod 1, for a simple current `lambda`
/// and an irreducible `mu`.
pub fn monodromy_charge<T: Theory + ?Sized>(theory: &T, lambda: usize, mu: usize) -> Result<Q> {
    require_automorphism(theory, lambda)
        .map_err(|_| Error::Unsupported(format!("{} is not a simple current", theory.label(lambda))))?;
    let nu = single_label(theory, lambda, mu)?;
    Ok(frac(theory.h(nu) - theory.h(lambda) - theory.h(mu)))
}

/// Whether the scalar monodromy of `lambda` with every component of `mu`
/// is trivial. Exact: no tolerance enters.
pub fn monodromy_trivial<T: Theory + ?Sized>(theory: &T, lambda: usize, mu: &SectorVector) -> Result<bool> {
    for (m, _) in mu.iter() {
        if monodromy_charge(theory, lambda, m)? != math::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finite abelian group of simple currents with integer conformal weights
/// and pairwise trivial monodromy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSystem {
    pub generators: Vec<usize>,
    /// Elements in discovery order; the vacuum comes first.
    pub elements: Vec<usize>,
    /// Exponents of each element in the generators, parallel to `elements`.
    pub words: Vec<Vec<u32>>,
    /// Invariant factors `d_1 | d_2 | ...` of the group.
    pub invariant_factors: Vec<u32>,
    product: BTreeMap<(usize, usize), usize>,
}

impl LocalSystem {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.elements.contains(&label)
    }

    /// The element reached by the given generator exponents.
    pub fn element(&self, word: &[u32]) -> Option<usize> {
        let orders = self.generator_orders();
        self.words
            .iter()
            .position(|w| w.iter().zip(word).zip(&orders).all(|((a, b), o)| a % o == b % o))
            .map(|i| self.elements[i])
    }

    pub fn multiply(&self, a: usize, b: usize) -> Option<usize> {
        self.product.get(&(a, b)).copied()
    }

    /// Order of each generator.
    pub fn generator_orders(&self) -> Vec<u32> {
        self.generators
            .iter()
            .map(|&g| {
                let mut x = g;
                let mut k = 1;
                while x != self.elements[0] {
                    x = self.product[&(x, g)];
                    k += 1;
                }
                k
            })
            .collect()
    }

    /// `Z_3 x Z_3` style description.
    pub fn structure(&self) -> String {
        if self.invariant_factors.is_empty() {
            return "trivial".into();
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z{d}")).collect();
        parts.join(" x ")
    }
}

/// Closes `generators` under fusion and checks that the result is a local
/// system.
///
/// Fails with the offending label on a non-automorphism or non-integer
/// `h`, and with the offending pair on nontrivial monodromy.
pub fn find_local_system<T: Theory + ?Sized>(theory: &T, generators: &[usize]) -> Result<LocalSystem> {
    for &g in generators {
        require_automorphism(theory, g)?;
        if !math::is_integer(theory.h(g)) {
            return Err(Error::NontrivialUnivalence { label: theory.label(g), h: fmt_q(theory.h(g)) });
        }
    }
    for (i, &a) in generators.iter().enumerate() {
        for &b in &generators[i..] {
            let charge = monodromy_charge(theory, a, b)?;
            if charge != math::zero() {
                return Err(Error::NontrivialMonodromy {
                    a: theory.label(a),
                    b: theory.label(b),
                    charge: fmt_q(charge),
                });
            }
        }
    }

    let vacuum = 0usize;
    let mut elements = vec![vacuum];
    let mut words = vec![vec![0u32; generators.len()]];
    let mut seen: BTreeMap<usize, usize> = BTreeMap::from([(vacuum, 0)]);
    let mut queue = VecDeque::from([vacuum]);
    while let Some(x) = queue.pop_front() {
        let wx = words[seen[&x]].clone();
        for (gi, &g) in generators.iter().enumerate() {
            let y = single_label(theory, x, g)?;
            if let alloc::collections::btree_map::Entry::Vacant(slot) = seen.entry(y) {
                slot.insert(elements.len());
                let mut w = wx.clone();
                w[gi] += 1;
                elements.push(y);
                words.push(w);
                queue.push_back(y);
            }
        }
    }

    let mut product = BTreeMap::new();
    for &a in &elements {
        for &b in &elements {
            let c = single_label(theory, a, b)?;
            if !seen.contains_key(&c) {
                return Err(Error::DataIntegrity(format!(
                    "{} x {} = {} leaves the generated set",
                    theory.label(a),
                    theory.label(b),
                    theory.label(c)
                )));
            }
            product.insert((a, b), c);
        }
    }
    for &a in &elements {
        if !math::is_integer(theory.h(a)) {
            return Err(Error::NontrivialUnivalence { label: theory.label(a), h: fmt_q(theory.h(a)) });
        }
        if !seen.contains_key(&theory.dual(a)) {
            return Err(Error::DataIntegrity(format!("conjugate of {} missing", theory.label(a))));
        }
    }
    for (i, &a) in elements.iter().enumerate() {
        for &b in &elements[i..] {
            let charge = frac(theory.h(product[&(a, b)]) - theory.h(a) - theory.h(b));
            if charge != math::zero() {
                return Err(Error::NontrivialMonodromy {
                    a: theory.label(a),
                    b: theory.label(b),
                    charge: fmt_q(charge),
                });
            }
        }
    }

    let orders: Vec<u32> = elements
        .iter()
        .map(|&g| {
            let mut x = g;
            let mut k = 1u32;
            while x != vacuum {
                x = product[&(x, g)];
                k += 1;
            }
            k
        })
        .collect();
    let invariant_factors = invariant_factors(&orders);
    Ok(LocalSystem { generators: generators.to_vec(), elements, words, invariant_factors, product })
}

fn primes_dividing(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of a finite abelian group, given the order of each of
/// its elements.
///
/// For each prime `p`, the number of elements killed by `p^j` is `p^{a_j}`;
/// the number of cyclic `p`-factors of size at least `p^j` is then
/// `a_j - a_{j-1}`.
pub fn invariant_factors(element_orders: &[u32]) -> Vec<u32> {
    let size = element_orders.len() as u32;
    let mut per_prime: Vec<Vec<u32>> = Vec::new();
    for p in primes_dividing(size) {
        let log = |mut c: u32| {
            let mut e = 0;
            while c > 1 {
                c /= p;
                e += 1;
            }
            e
        };
        let mut a = vec![0u32];
        let mut pj = 1u32;
        loop {
            pj *= p;
            let killed = element_orders.iter().filter(|&&o| pj.is_multiple_of(o)).count() as u32;
            a.push(log(killed));
            if killed == size || pj > size {
                break;
            }
        }
        // at_least[j] = number of factors of size >= p^j
        let at_least: Vec<u32> = (1..a.len()).map(|j| a[j] - a[j - 1]).collect();
        let mut sizes = Vec::new();
        for j in 0..at_least.len() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..at_least[j] - next {
                sizes.push(p.pow(j as u32 + 1));
            }
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(sizes);
    }
    let count = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<u32> =
        (0..count).map(|i| per_prime.iter().map(|s| s.get(i).copied().unwrap_or(1)).product()).collect();
    factors.reverse();
    factors
}

/// `sum_{g in Gamma} [g]`.
pub fn simple_current_spectrum(system: &LocalSystem) -> SectorVector {
    SectorVector::from_pairs(system.elements.iter().map(|&g| (g, 1)))
}

/// `sum m_l d_l`.
pub fn extension_index<T: Theory + ?Sized>(theory: &T, spec: &SectorVector) -> f64 {
    spec.dimension(theory)
}

/// `mu / index^2`.
pub fn mu_after(mu_base: f64, index: f64) -> f64 {
    mu_base / (index * index)
}

/// `<lambda rho, mu> = sum_nu m_nu N_{lambda nu}^mu`.
pub fn induced_hom<T: Theory + ?Sized>(theory: &T, lambda: usize, mu: usize, spec: &SectorVector) -> Result<u32> {
    let mut total = 0;
    for (nu, m) in spec.iter() {
        total += m * theory.fuse(lambda, nu)?.get(mu);
    }
    Ok(total)
}

/// `sum_{g} exp(2 pi i (h(g l) - h(g) - h(l)))` over a local system.
pub fn charge_sum<T: Theory + ?Sized>(theory: &T, system: &LocalSystem, lambda: usize) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &g in &system.elements {
        acc += math::phase(monodromy_charge(theory, g, lambda)?);
    }
    Ok(acc)
}

/// Restriction of ambient sectors to a base theory with computed S.
#[derive(Clone, Debug)]
pub struct BranchingTable<'a, A: Theory + ?Sized> {
    pub ambient: &'a A,
    pub base: &'a ModularDatum,
    pub rows: Vec<SectorVector>,
}

impl<'a, A: Theory + ?Sized> BranchingTable<'a, A> {
    pub fn new(ambient: &'a A, base: &'a ModularDatum, rows: Vec<SectorVector>) -> Result<Self> {
        if rows.len() != ambient.len() {
            return Err(Error::DataIntegrity(format!("{} rows for {} ambient sectors", rows.len(), ambient.len())));
        }
        if rows.first().map(|r| r.get(0)) != Some(1) {
            return Err(Error::DataIntegrity("vacuum must contain the base vacuum exactly once".into()));
        }
        Ok(Self { ambient, base, rows })
    }

    /// `Z = B^T B`, indexed by base labels.
    pub fn coupling_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.base.len();
        let mut z = vec![vec![0u32; n]; n];
        for row in &self.rows {
            for (a, ma) in row.iter() {
                for (b, mb) in row.iter() {
                    z[a][b] += ma * mb;
                }
            }
        }
        z
    }

    /// Checks `Z_00 = 1`, `[Z, S] = 0`, `[Z, T] = 0` and that every row has a
    /// single `h` mod 1 equal to its ambient sector's.
    pub fn verify_coupling(&self, tol: f64) -> VerificationReport {
        let name = format!("{} in {}", self.base.name(), self.ambient.name());
        let mut report = VerificationReport::new(name);
        let z = self.coupling_matrix();
        let n = z.len();
        report.push(Check::new("Z_00 = 1", z[0][0] == 1, format!("Z_00 = {}", z[0][0])));
        let zc = CMatrix::from_fn(n, n, |a, b| Complex64::new(z[a][b] as f64, 0.0));
        let s = self.base.s();
        let zs = zc.matmul(s);
        let sz = s.matmul(&zc);
        let rs = zs.max_abs_diff(&sz);
        report.push(Check::residual("[Z,S] = 0", rs, tol, "max |ZS - SZ|"));
        let t = CMatrix::diagonal(&self.base.t_diagonal());
        let rt = zc.matmul(&t).max_abs_diff(&t.matmul(&zc));
        report.push(Check::residual("[Z,T] = 0", rt, tol, "max |ZT - TZ|"));
        let mut bad = None;
        for (i, row) in self.rows.iter().enumerate() {
            for (b, _) in row.iter() {
                if !math::congruent_mod1(self.base.h(b), self.ambient.h(i)) {
                    bad = Some(format!("{} -> {}", self.ambient.label(i), self.base.label(b)));
                }
            }
        }
        let ok = bad.is_none();
        let mut c = Check::new("branching h uniform mod 1", ok, "each ambient sector restricts to one h mod 1");
        if let Some(w) = bad {
            c = c.with_witness(w);
        }
        report.push(c);
        report
    }
}

/// A finite abelian group `Z_{o_1} x ... x Z_{o_r}` in coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub orders: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: &[u32]) -> Self {
        Self { orders: orders.to_vec() }
    }

    pub fn size(&self) -> usize {
        self.orders.iter().map(|&o| o as usize).product()
    }

    /// Coordinates of flat element `i`, first factor most significant.
    pub fn coords(&self, mut i: usize) -> Vec<u32> {
        let mut c = vec![0; self.orders.len()];
        for (slot, &o) in c.iter_mut().zip(&self.orders).rev() {
            *slot = (i % o as usize) as u32;
            i /= o as usize;
        }
        c
    }

    pub fn index(&self, coords: &[u32]) -> usize {
        coords.iter().zip(&self.orders).fold(0, |acc, (&c, &o)| acc * o as usize + (c % o) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<u32> = x.iter().zip(&y).zip(&self.orders).map(|((p, q), o)| (p + q) % o).collect();
        self.index(&s)
    }

    pub fn scale(&self, a: usize, k: u32) -> usize {
        let s: Vec<u32> = self.coords(a).iter().zip(&self.orders).map(|(p, o)| (p * k) % o).collect();
        self.index(&s)
    }

    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1, |acc, &o| math::lcm(acc as u64, o as u64) as u32)
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.orders.iter().map(|o| format!("Z{o}")).collect();
        parts.join(" x ")
    }
}

/// First violation of the quadratic-form conditions by `q` (indexed by
/// group element), or `None` when `q` is a quadratic form mod 1:
/// `q(a g) = a^2 q(g)` and `b(g, h) = q(g + h) - q(g) - q(h)` bi-additive.
pub fn quadratic_form_violation(group: &AbelianGroup, q: &[Q]) -> Option<String> {
    let n = group.size();
    if !math::is_integer(q[0]) {
        return Some("q(0) is not 0".into());
    }
    for g in 0..n {
        for a in 2..=group.exponent() {
            let lhs = q[group.scale(g, a)];
            let rhs = q[g] * Q::from_integer((a * a) as i64);
            if !math::congruent_mod1(lhs, rhs) {
                return Some(format!("q({a}*{:?}) = {} but {a}^2 q = {}", group.coords(g), fmt_q(lhs), fmt_q(rhs)));
            }
        }
    }
    let b = |x: usize, y: usize| q[group.add(x, y)] - q[x] - q[y];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !math::congruent_mod1(b(group.add(x, y), z), b(x, z) + b(y, z)) {
                    return Some(format!(
                        "b not additive at {:?}, {:?}, {:?}",
                        group.coords(x),
                        group.coords(y),
                        group.coords(z)
                    ));
                }
            }
        }
    }
    None
}

/// Checks a concrete labelling: `assignment[i]` is the group element of
/// label `i`, with weights `h[i]`.
pub fn quadratic_form_consistency(
    names: &[String],
    h: &[Q],
    group: &AbelianGroup,
    assignment: &[usize],
) -> VerificationReport {
    let mut report = VerificationReport::new(format!("quadratic form on {}", group.describe()));
    let n = group.size();
    let distinct: BTreeSet<usize> = assignment.iter().copied().collect();
    let bijective = assignment.len() == n && distinct.len() == n && h.len() == n && names.len() == n;
    report.push(Check::new(
        "assignment is a bijection",
        bijective,
        format!("{} labels onto {n} elements", names.len()),
    ));
    if !bijective {
        return report;
    }
    let mut q = vec![math::zero(); n];
    for (i, &e) in assignment.iter().enumerate() {
        q[e] = h[i];
    }
    let violation = quadratic_form_violation(group, &q);
    let mut c = Check::new("h is a quadratic form mod 1", violation.is_none(), "q(ag) = a^2 q(g) and b bi-additive");
    if let Some(w) = violation {
        c = c.with_witness(w);
    }
    report.push(c);
    report
}

/// Every labelling of `h` (vacuum at index 0 fixed to the identity) onto
/// `group` for which `h` is a quadratic form mod 1 and `accept` holds.
pub fn consistent_assignments(
    h: &[Q],
    group: &AbelianGroup,
    mut accept: impl FnMut(&[usize]) -> bool,
) -> Vec<Vec<usize>> {
    let n = group.size();
    let mut out = Vec::new();
    if h.len() != n || n == 0 {
        return out;
    }
    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    assignment[0] = 0;
    used[0] = true;
    search(1, h, group, &mut assignment, &mut used, &mut out, &mut accept);
    out
}

fn search(
    pos: usize,
    h: &[Q],
    group: &AbelianGroup,
    assignment: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) {
    let n = group.size();
    if pos == n {
        let mut q = vec![math::zero(); n];
        for (i, &e) in assignment.iter().enumerate() {
            q[e] = h[i];
        }
        if quadratic_form_violation(group, &q).is_none() && accept(assignment) {
            out.push(assignment.clone());
        }
        return;
    }
    for e in 1..n {
        if used[e] {
            continue;
        }
        // prune: q(-g) = q(g) whenever both are placed
        let neg = group.scale(e, group.exponent() - 1);
        if let Some(j) = (0..pos).find(|&j| assignment[j] == neg) {
            if !math::congruent_mod1(h[j], h[pos]) {
                continue;
            }
        }
        used[e] = true;
        assignment[pos] = e;
        search(pos + 1, h, group, assignment, used, out, accept);
        used[e] = false;
    }
    assignment[pos] = usize::MAX;
}
