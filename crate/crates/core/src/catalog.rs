//! Representation catalogs of finite-index extensions, recorded at data
//! level (no S-matrix), plus their verification.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extensions::{
    consistent_assignments, extension_index, invariant_factors, quadratic_form_violation, AbelianGroup,
};
use crate::inclusions::Inclusion;
use crate::level_rank::{mirror_spectrum, vacuum_pairing};
use crate::math::{self, fmt_q, Q};
use crate::modular::{ModularDatum, SectorVector, Theory};
use crate::report::{Check, VerificationReport};
use crate::weights::AffineWeight;

/// One irreducible sector as stored in a catalog file.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepData {
    pub label: String,
    pub dim_sq: Q,
    /// Representative of `h` mod 1 (the value the source prints).
    pub h_mod1: Q,
    pub automorphism: bool,
    /// Groups of base weights (text form) sharing one multiplicity.
    pub restriction: Vec<(Vec<String>, u32)>,
}

/// Serialization-neutral catalog contents.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogData {
    pub name: String,
    pub display: String,
    pub rank: usize,
    pub level: u32,
    pub mu: Q,
    /// `index^2`; a decimal or `p/q` string, since it is irrational in general.
    pub index_sq: String,
    pub mirror_of: Option<String>,
    pub irreps: Vec<IrrepData>,
    pub fusion: Vec<(String, String, String, u32)>,
}

/// A loaded catalog over its computed WZW base.
#[derive(Debug)]
pub struct ExtensionCatalog {
    data: CatalogData,
    base: ModularDatum,
    lookup: BTreeMap<String, usize>,
    restrictions: Vec<SectorVector>,
    fusion: BTreeMap<(usize, usize), SectorVector>,
    dual: Vec<usize>,
}

fn parse_index_sq(s: &str) -> Option<f64> {
    if let Some(q) = math::parse_q(s) {
        return Some(math::to_f64(q));
    }
    s.trim().parse::<f64>().ok()
}

impl ExtensionCatalog {
    /// Builds the base datum and resolves every label. Structural problems
    /// (unknown labels, missing duals, wrong vacuum) are errors here; the
    /// numerical invariants are left to [`verify_catalog`].
    pub fn from_data(data: CatalogData) -> Result<Self> {
        let base = ModularDatum::wzw(data.rank, data.level)?;
        Self::with_base(data, base)
    }

    pub fn with_base(data: CatalogData, base: ModularDatum) -> Result<Self> {
        let name = data.name.clone();
        let bad = |msg: String| Error::DataIntegrity(format!("catalog {name}: {msg}"));
        if base.rank_level() != Some((data.rank, data.level)) {
            return Err(bad("base datum does not match the catalog's base".into()));
        }
        if data.irreps.first().map(|i| i.label.as_str()) != Some("1") {
            return Err(bad("the first irrep must be the vacuum \"1\"".into()));
        }
        let mut lookup = BTreeMap::new();
        for (i, irrep) in data.irreps.iter().enumerate() {
            if lookup.insert(irrep.label.clone(), i).is_some() {
                return Err(bad(format!("duplicate label {}", irrep.label)));
            }
        }
        let mut restrictions = Vec::new();
        for irrep in &data.irreps {
            let mut v = SectorVector::new();
            for (group, mult) in &irrep.restriction {
                for text in group {
                    let w = AffineWeight::parse(data.rank, data.level, text)
                        .map_err(|e| bad(format!("{}: {e}", irrep.label)))?;
                    v.add(base.require_weight(&w)?, *mult);
                }
            }
            restrictions.push(v);
        }
        let mut fusion: BTreeMap<(usize, usize), SectorVector> = BTreeMap::new();
        for (a, b, c, m) in &data.fusion {
            let find = |l: &String| lookup.get(l).copied().ok_or_else(|| bad(format!("fusion mentions unknown {l}")));
            let (a, b, c) = (find(a)?, find(b)?, find(c)?);
            let key = if a <= b { (a, b) } else { (b, a) };
            fusion.entry(key).or_default().add(c, *m);
        }
        let n = data.irreps.len();
        let mut dual = Vec::with_capacity(n);
        for a in 0..n {
            let found = (0..n).find(|&b| {
                let key = if a <= b { (a, b) } else { (b, a) };
                a == 0 && b == 0 || fusion.get(&key).is_some_and(|v| v.get(0) > 0)
            });
            dual.push(found.ok_or_else(|| bad(format!("no conjugate recorded for {}", data.irreps[a].label)))?);
        }
        Ok(Self { data, base, lookup, restrictions, fusion, dual })
    }

    pub fn data(&self) -> &CatalogData {
        &self.data
    }

    pub fn base(&self) -> &ModularDatum {
        &self.base
    }

    pub fn restriction(&self, i: usize) -> &SectorVector {
        &self.restrictions[i]
    }

    /// `mu` as recorded.
    pub fn mu(&self) -> Q {
        self.data.mu
    }

    pub fn is_automorphism(&self, i: usize) -> bool {
        self.data.irreps[i].automorphism
    }

    /// Index of the base inside the extension: total base dimension of the
    /// vacuum restriction.
    pub fn index(&self) -> f64 {
        extension_index(&self.base, &self.restrictions[0])
    }

    pub fn automorphisms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_automorphism(i)).collect()
    }
}

impl Theory for ExtensionCatalog {
    fn name(&self) -> String {
        self.data.display.clone()
    }

    fn len(&self) -> usize {
        self.data.irreps.len()
    }

    fn label(&self, i: usize) -> String {
        self.data.irreps[i].label.clone()
    }

    fn index_of(&self, label: &str) -> Option<usize> {
        self.lookup.get(label.trim()).copied()
    }

    fn h(&self, i: usize) -> Q {
        self.data.irreps[i].h_mod1
    }

    fn dim(&self, i: usize) -> f64 {
        math::sqrt(math::to_f64(self.data.irreps[i].dim_sq))
    }

    fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    fn fuse(&self, a: usize, b: usize) -> Result<SectorVector> {
        if a == 0 {
            return Ok(SectorVector::unit(b));
        }
        if b == 0 {
            return Ok(SectorVector::unit(a));
        }
        let key = if a <= b { (a, b) } else { (b, a) };
        self.fusion.get(&key).cloned().ok_or_else(|| Error::UnknownFusion { a: self.label(a), b: self.label(b) })
    }

    fn central_charge(&self) -> Q {
        self.base.central_charge()
    }
}

/// Checks every catalog invariant; with `inclusion`, also that the vacuum
/// restriction is the mirror of the inclusion's spectrum and that both
/// sides have the same index.
pub fn verify_catalog(cat: &ExtensionCatalog, inclusion: Option<&Inclusion>, tol: f64) -> VerificationReport {
    let mut r = VerificationReport::new(format!("catalog {}", cat.data.name));
    let base = &cat.base;
    let n = cat.len();

    let sum_sq: Q = cat.data.irreps.iter().map(|i| i.dim_sq).sum();
    r.push(Check::new(
        "sum dim^2 = mu",
        sum_sq == cat.data.mu,
        format!("sum dim^2 = {}, mu = {}", fmt_q(sum_sq), fmt_q(cat.data.mu)),
    ));

    let index = cat.index();
    let mu_ratio = base.mu_index() / (index * index);
    let mu = math::to_f64(cat.data.mu);
    r.push(Check::residual(
        "mu(base) / index^2 = mu",
        (mu_ratio / mu - 1.0).abs(),
        tol,
        format!("mu(base) = {:.9}, index = {index:.9}, ratio = {mu_ratio:.9}", base.mu_index()),
    ));
    let idx_sq = parse_index_sq(&cat.data.index_sq);
    let resid = idx_sq.map_or(f64::INFINITY, |x| (x / (index * index) - 1.0).abs());
    r.push(Check::residual("index^2 as recorded", resid, tol, format!("recorded {}", cat.data.index_sq)));

    r.push(Check::new(
        "vacuum restriction contains base vacuum once",
        cat.restrictions[0].get(0) == 1,
        cat.restrictions[0].describe(base),
    ));

    let mut h_bad = Vec::new();
    let mut dim_resid: f64 = 0.0;
    let mut color_bad = Vec::new();
    let mut flag_bad = Vec::new();
    let mut conj_bad = Vec::new();
    for i in 0..n {
        let res = &cat.restrictions[i];
        for (b, _) in res.iter() {
            if !math::congruent_mod1(base.h(b), cat.h(i)) {
                h_bad.push(format!("{}: {} has h = {}", cat.label(i), base.label(b), fmt_q(base.h(b))));
            }
        }
        let colors: alloc::collections::BTreeSet<u32> =
            res.iter().map(|(b, _)| base.weight(b).expect("WZW label").color()).collect();
        if colors.len() > 1 {
            color_bad.push(cat.label(i));
        }
        dim_resid = dim_resid.max((res.dimension(base) / (cat.dim(i) * index) - 1.0).abs());
        if cat.data.irreps[i].automorphism != (cat.data.irreps[i].dim_sq == math::one()) {
            flag_bad.push(cat.label(i));
        }
        if cat.restrictions[cat.dual(i)] != res.conjugate(base) {
            conj_bad.push(cat.label(i));
        }
    }
    let mut c = Check::new("restriction h uniform and equal to h mod 1", h_bad.is_empty(), "exact rationals");
    if let Some(w) = h_bad.first() {
        c = c.with_witness(w.clone());
    }
    r.push(c);
    r.push(Check::residual("restriction dimension = dim * index", dim_resid, tol, "relative"));
    r.push(Check::new("restriction color uniform", color_bad.is_empty(), color_bad.join(", ")));
    r.push(Check::new("automorphism flag matches dim^2 = 1", flag_bad.is_empty(), flag_bad.join(", ")));
    r.push(Check::new("conjugate restricts to conjugate", conj_bad.is_empty(), conj_bad.join(", ")));

    let mut fusion_resid: f64 = 0.0;
    for (&(a, b), v) in &cat.fusion {
        let lhs = cat.dim(a) * cat.dim(b);
        fusion_resid = fusion_resid.max((v.dimension(cat) - lhs).abs() / lhs);
    }
    r.push(Check::residual(
        "fusion respects dimensions",
        fusion_resid,
        tol,
        format!("{} recorded pairs", cat.fusion.len()),
    ));

    r.absorb(automorphism_group_report(cat));

    if let Some(inc) = inclusion {
        let (m, k) = inc.rank_level();
        let mirrored = vacuum_pairing(m, k as usize).and_then(|p| mirror_spectrum(inc.spectrum(), &inc.base, base, &p));
        match mirrored {
            Ok(v) => r.push(Check::new(
                "vacuum restriction = mirror of inclusion spectrum",
                v == cat.restrictions[0],
                format!("mirror: {}", v.describe(base)),
            )),
            Err(e) => r.push(
                Check::new("vacuum restriction = mirror of inclusion spectrum", false, "").with_witness(format!("{e}")),
            ),
        };
        let other = extension_index(&inc.base, inc.spectrum());
        r.push(Check::residual(
            "index equals inclusion index",
            (other / index - 1.0).abs(),
            tol,
            format!("{index:.9} vs {other:.9}"),
        ));
    }
    r
}

/// Builds the group generated by the catalog's automorphisms from its own
/// fusion table, checks `h` is a quadratic form on it, and counts how many
/// labellings of the same `h` values onto each other abelian group of that
/// order would be consistent.
pub fn automorphism_group_report(cat: &ExtensionCatalog) -> VerificationReport {
    let mut r = VerificationReport::new(format!("automorphisms of {}", cat.data.name));
    let autos = cat.automorphisms();
    let orders: Result<Vec<u32>> = autos
        .iter()
        .map(|&g| {
            let mut x = g;
            let mut k = 1u32;
            while x != 0 {
                let p = cat.fuse(x, g)?;
                x = p.support().first().copied().unwrap_or(0);
                k += 1;
                if k as usize > autos.len() + 1 {
                    return Err(Error::DataIntegrity(format!("{} has no finite order", cat.label(g))));
                }
            }
            Ok(k)
        })
        .collect();
    let orders = match orders {
        Ok(o) => o,
        Err(e) => {
            r.push(Check::new("automorphism group", false, "").with_witness(format!("{e}")));
            return r;
        }
    };
    let factors = invariant_factors(&orders);
    let group = AbelianGroup::new(&factors);
    r.note(format!("automorphism group of {}: {}", cat.data.name, group.describe()));

    // Place each automorphism at a group element by expressing it in a
    // generating set chosen greedily from the labels.
    let placement = place_in_group(cat, &autos, &group);
    match placement {
        Some(place) => {
            let mut q = alloc::vec![math::zero(); group.size()];
            for (&a, &e) in autos.iter().zip(&place) {
                q[e] = cat.h(a);
            }
            let v = quadratic_form_violation(&group, &q);
            let mut c =
                Check::new("automorphism h is a quadratic form", v.is_none(), format!("on {}", group.describe()));
            if let Some(w) = v {
                c = c.with_witness(w);
            }
            r.push(c);
        }
        None => {
            r.push(Check::new("automorphism h is a quadratic form", false, "fusion table does not form the group"));
        }
    }
    let h: Vec<Q> = autos.iter().map(|&a| cat.h(a)).collect();
    for alt in abelian_groups_of_order(autos.len() as u32) {
        if alt == factors {
            continue;
        }
        let g = AbelianGroup::new(&alt);
        let count = consistent_assignments(&h, &g, |_| true).len();
        r.push(Check::new(
            format!("{} excluded", g.describe()),
            count == 0,
            format!("{count} consistent labellings of the same h values"),
        ));
    }
    r
}

fn place_in_group(cat: &ExtensionCatalog, autos: &[usize], group: &AbelianGroup) -> Option<Vec<usize>> {
    // Try every choice of generator labels for the invariant factors, then
    // check the induced map is a fusion-respecting bijection.
    let k = group.orders.len();
    let pos: BTreeMap<usize, usize> = autos.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut choice = alloc::vec![0usize; k];
    loop {
        if let Some(place) = try_generators(cat, autos, &pos, group, &choice) {
            return Some(place);
        }
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            choice[i] += 1;
            if choice[i] < autos.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn try_generators(
    cat: &ExtensionCatalog,
    autos: &[usize],
    pos: &BTreeMap<usize, usize>,
    group: &AbelianGroup,
    gens: &[usize],
) -> Option<Vec<usize>> {
    let mut place = alloc::vec![usize::MAX; autos.len()];
    for e in 0..group.size() {
        let coords = group.coords(e);
        let mut x = 0usize;
        for (&g, &c) in gens.iter().zip(&coords) {
            for _ in 0..c {
                let p = cat.fuse(x, autos[g]).ok()?;
                x = *p.support().first()?;
            }
        }
        let slot = *pos.get(&x)?;
        if place[slot] != usize::MAX {
            return None;
        }
        place[slot] = e;
    }
    for (i, &a) in autos.iter().enumerate() {
        for (j, &b) in autos.iter().enumerate() {
            let p = cat.fuse(a, b).ok()?;
            let c = *p.support().first()?;
            if place[pos[&c]] != group.add(place[i], place[j]) {
                return None;
            }
        }
    }
    Some(place)
}

/// Invariant-factor lists of all abelian groups of order `n`.
pub fn abelian_groups_of_order(n: u32) -> Vec<Vec<u32>> {
    // enumerate chains d_1 | d_2 | ... | d_r with product n, d_1 > 1
    fn rec(rem: u32, prev: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=rem {
            if rem.is_multiple_of(d) && d % prev == 0 {
                // remaining factors must be multiples of d
                acc.push(d);
                if rem / d == 1 || (rem / d).is_multiple_of(d) {
                    rec(rem / d, d, acc, out);
                }
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_of_small_orders() {
        assert_eq!(abelian_groups_of_order(8), alloc::vec![alloc::vec![2, 2, 2], alloc::vec![2, 4], alloc::vec![8]]);
        assert_eq!(abelian_groups_of_order(9), alloc::vec![alloc::vec![3, 3], alloc::vec![9]]);
        assert_eq!(abelian_groups_of_order(10), alloc::vec![alloc::vec![10]]);
        assert_eq!(abelian_groups_of_order(1), alloc::vec![Vec::<u32>::new()]);
    }

    fn toy() -> CatalogData {
        // SU(2)_4 extended by (4): the SU(3)_1 conformal embedding.
        let irrep = |label: &str, h: Q, res: &[&str]| IrrepData {
            label: label.into(),
            dim_sq: math::one(),
            h_mod1: h,
            automorphism: true,
            restriction: alloc::vec![(res.iter().map(|s| String::from(*s)).collect(), 1)],
        };
        CatalogData {
            name: "toy".into(),
            display: "SU(3)_1 from SU(2)_4".into(),
            rank: 2,
            level: 4,
            mu: Q::from_integer(3),
            index_sq: "4".into(),
            mirror_of: None,
            irreps: alloc::vec![
                irrep("1", math::zero(), &["0", "4"]),
                irrep("a", math::q(1, 3), &["2"]),
                irrep("b", math::q(1, 3), &["2"])
            ],
            fusion: alloc::vec![
                ("a".into(), "a".into(), "b".into(), 1),
                ("b".into(), "b".into(), "a".into(), 1),
                ("a".into(), "b".into(), "1".into(), 1),
            ],
        }
    }

    #[test]
    fn toy_catalog_verifies() {
        let cat = ExtensionCatalog::from_data(toy()).unwrap();
        assert_eq!(cat.dual(1), 2);
        let r = verify_catalog(&cat, None, 1e-9);
        assert!(r.passed(), "{r:#?}");
        assert!((cat.index() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn toy_catalog_with_wrong_h_fails() {
        let mut d = toy();
        d.irreps[1].h_mod1 = math::q(2, 3);
        let cat = ExtensionCatalog::from_data(d).unwrap();
        let r = verify_catalog(&cat, None, 1e-9);
        assert!(!r.check("restriction h uniform and equal to h mod 1").unwrap().passed());
    }

    #[test]
    fn unknown_fusion_is_reported() {
        let mut d = toy();
        d.fusion.remove(0);
        let cat = ExtensionCatalog::from_data(d).unwrap();
        assert!(matches!(cat.fuse(1, 1), Err(Error::UnknownFusion { .. })));
    }

    #[test]
    fn missing_dual_is_a_load_error() {
        let mut d = toy();
        d.fusion.remove(2);
        assert!(ExtensionCatalog::from_data(d).is_err());
    }
}
