//! Assembly and verification of the holomorphic `c = 24` theories
//! numbered 40, 27 and 18 in the standard list.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::catalog::ExtensionCatalog;
use crate::error::{Error, Result};
use crate::extensions::{
    charge_sum, consistent_assignments, find_local_system, induced_hom, monodromy_charge, quadratic_form_consistency,
    simple_current_spectrum, AbelianGroup, LocalSystem,
};
use crate::math::{self, fmt_q, Q};
use crate::modular::{LevelOne, ModularDatum, SectorVector, TensorProduct, Theory};
use crate::report::{Check, VerificationReport};
use crate::weights::AffineWeight;

/// Default tolerance of the S-invariance check.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EntryId {
    E18,
    E27,
    E40,
}

impl EntryId {
    pub const ALL: [EntryId; 3] = [EntryId::E40, EntryId::E27, EntryId::E18];

    pub fn number(&self) -> u32 {
        match self {
            EntryId::E18 => 18,
            EntryId::E27 => 27,
            EntryId::E40 => 40,
        }
    }

    pub fn from_number(n: u32) -> Result<Self> {
        match n {
            18 => Ok(EntryId::E18),
            27 => Ok(EntryId::E27),
            40 => Ok(EntryId::E40),
            _ => Err(Error::Usage(format!("entry {n} is not one of 18, 27, 40"))),
        }
    }

    /// Name of the catalog the construction extends.
    pub fn catalog_name(&self) -> &'static str {
        match self {
            EntryId::E18 => "su8_4",
            EntryId::E27 => "su9_3",
            EntryId::E40 => "su10_2",
        }
    }

    pub fn level_one_factors(&self) -> Vec<LevelOne> {
        match self {
            EntryId::E18 => vec![LevelOne::Su(2); 3],
            EntryId::E27 => vec![LevelOne::Su(3); 2],
            EntryId::E40 => vec![LevelOne::Su(5), LevelOne::Spin(7)],
        }
    }

    /// Generators of the stage-one local system, as product labels.
    pub fn generators(&self) -> Vec<&'static str> {
        match self {
            EntryId::E18 => vec!["(aJ,y1,y0,y0)", "(3/4_1,y0,y1,y0)", "(3/4_2,y0,y0,y1)"],
            EntryId::E27 => vec!["(aJ,y1,y1)", "(tau1,y1,y2)"],
            EntryId::E40 => vec!["(aJ,y2,v)"],
        }
    }
}

/// The second extension step of entry 40: a `Z_2` generated by a sector of
/// the stage-one extension that restricts to a `Gamma`-orbit.
#[derive(Clone, Debug)]
pub struct SecondStage {
    /// Seed label `x` of the orbit.
    pub seed: usize,
    /// `<alpha_x, alpha_x>` over the stage-one spectrum.
    pub self_pairing: u32,
    /// The orbit `{g x}` with multiplicity 1, i.e. the restriction of the new
    /// sector to the stage-one base.
    pub orbit: SectorVector,
    /// Stage-one sector `w` with `h(w) = 1/2`, the fourth element of the
    /// candidate group.
    pub odd_sector: usize,
}

/// Exact global-dimension bookkeeping for one extension chain.
#[derive(Clone, Debug, PartialEq)]
pub struct MuLedger {
    /// Global dimensions of the factors, in order.
    pub factors: Vec<Q>,
    /// Index of each extension step.
    pub indices: Vec<Q>,
}

impl MuLedger {
    pub fn base(&self) -> Q {
        self.factors.iter().product()
    }

    /// `mu` after every step, starting from the base.
    pub fn steps(&self) -> Vec<Q> {
        let mut out = vec![self.base()];
        for idx in &self.indices {
            let last = *out.last().expect("non-empty");
            out.push(last / (idx * idx));
        }
        out
    }

    pub fn terminal(&self) -> Q {
        *self.steps().last().expect("non-empty")
    }

    /// `20·5·4 / 10² / 2² = 1`.
    pub fn describe(&self) -> String {
        let factors: Vec<String> = self.factors.iter().map(|&f| fmt_q(f)).collect();
        let mut s = factors.join("·");
        for idx in &self.indices {
            s.push_str(&format!(" / {}²", fmt_q(*idx)));
        }
        s.push_str(&format!(" = {}", fmt_q(self.terminal())));
        s
    }
}

/// One of the three constructions, assembled but not yet verified.
pub struct HolomorphicConstruction<'c> {
    pub id: EntryId,
    pub catalog: &'c ExtensionCatalog,
    pub level_one: Vec<LevelOne>,
    pub level_one_data: Vec<ModularDatum>,
    pub generators: Vec<String>,
    pub system: Option<LocalSystem>,
    pub system_error: Option<Error>,
    pub second_stage: Option<SecondStage>,
    /// Final spectrum over the catalog-level product.
    pub extended_spectrum: SectorVector,
    /// Final spectrum over the WZW product.
    pub spectrum: SectorVector,
    pub ledger: MuLedger,
    pub notes: Vec<String>,
}

impl<'c> HolomorphicConstruction<'c> {
    /// `catalog x level-one factors`.
    pub fn extended_product(&self) -> TensorProduct<'_, dyn Theory + '_> {
        let mut factors: Vec<&dyn Theory> = vec![self.catalog as &dyn Theory];
        factors.extend(self.level_one_data.iter().map(|d| d as &dyn Theory));
        TensorProduct::new(factors).expect("non-empty")
    }

    /// `SU(n)_k x level-one factors`.
    pub fn base_product(&self) -> TensorProduct<'_, ModularDatum> {
        let mut factors = vec![self.catalog.base()];
        factors.extend(self.level_one_data.iter());
        TensorProduct::new(factors).expect("non-empty")
    }

    /// Restricts a spectrum over the extended product to the WZW product.
    pub fn restrict(&self, spec: &SectorVector) -> SectorVector {
        let ext = self.extended_product();
        let base = self.base_product();
        let mut out = SectorVector::new();
        for (i, m) in spec.iter() {
            let parts = ext.decode(i);
            for (b, mb) in self.catalog.restriction(parts[0]).iter() {
                let mut p = parts.clone();
                p[0] = b;
                out.add(base.encode(&p), m * mb);
            }
        }
        out
    }

    /// `max |S v - v| / max |v|` with `S` applied factor by factor.
    pub fn s_invariance_residual(&self, spec: &SectorVector) -> f64 {
        let base = self.base_product();
        let v: Vec<Complex64> = spec.to_dense(base.len()).into_iter().map(|x| Complex64::new(x, 0.0)).collect();
        let sv = base.apply_s(&v);
        let norm = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let diff = sv.iter().zip(&v).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        diff / norm
    }

    /// `sum_l v_l d_l`, which equals `sqrt(mu)` of the WZW product when
    /// `S v = v`.
    pub fn vacuum_fixed_point_defect(&self, spec: &SectorVector) -> f64 {
        let base = self.base_product();
        let lhs = spec.dimension(&base);
        (lhs / math::sqrt(base.mu_index()) - 1.0).abs()
    }

    /// Every final label with its total conformal weight, first failure if
    /// any is not an integer.
    pub fn non_integer_weight(&self, spec: &SectorVector) -> Option<(String, Q)> {
        let base = self.base_product();
        spec.iter().map(|(i, _)| (i, base.h(i))).find(|(_, h)| !math::is_integer(*h)).map(|(i, h)| (base.label(i), h))
    }

    /// Labels of a spectrum over the WZW product, sorted.
    pub fn describe_terms(&self, spec: &SectorVector) -> Vec<(String, u32)> {
        let base = self.base_product();
        let mut terms: Vec<(String, u32)> = spec.iter().map(|(i, m)| (base.label(i), m)).collect();
        terms.sort();
        terms
    }
}

/// Builds an entry with its printed generators.
pub fn build_entry(id: EntryId, catalog: &ExtensionCatalog) -> Result<HolomorphicConstruction<'_>> {
    let gens = id.generators();
    build_entry_with(id, catalog, &gens)
}

/// Builds an entry with caller-chosen stage-one generators. A failing local
/// system is recorded on the construction rather than returned, so that it
/// shows up as a failed check.
pub fn build_entry_with<'c>(
    id: EntryId,
    catalog: &'c ExtensionCatalog,
    generators: &[&str],
) -> Result<HolomorphicConstruction<'c>> {
    if catalog.data().name != id.catalog_name() {
        return Err(Error::Usage(format!(
            "entry {} needs catalog {}, got {}",
            id.number(),
            id.catalog_name(),
            catalog.data().name
        )));
    }
    let level_one = id.level_one_factors();
    let level_one_data = level_one.iter().map(LevelOne::datum).collect::<Result<Vec<_>>>()?;
    let mut factors = vec![catalog.mu()];
    factors.extend(level_one.iter().map(LevelOne::mu));
    let mut c = HolomorphicConstruction {
        id,
        catalog,
        level_one,
        level_one_data,
        generators: generators.iter().map(|s| String::from(*s)).collect(),
        system: None,
        system_error: None,
        second_stage: None,
        extended_spectrum: SectorVector::new(),
        spectrum: SectorVector::new(),
        ledger: MuLedger { factors, indices: Vec::new() },
        notes: Vec::new(),
    };

    let (system, spec, stage2) = {
        let ext = c.extended_product();
        let gens: Vec<usize> = generators.iter().map(|g| ext.require(g)).collect::<Result<_>>()?;
        match find_local_system(&ext, &gens) {
            Ok(system) => {
                let mut spec = simple_current_spectrum(&system);
                let stage2 = if id == EntryId::E40 { Some(second_stage(&ext, &system, &spec)?) } else { None };
                if let Some(s2) = &stage2 {
                    spec.add_vector(&s2.orbit);
                }
                (Some(system), spec, stage2)
            }
            Err(e) => {
                c.system_error = Some(e);
                (None, SectorVector::unit(0), None)
            }
        }
    };
    if let Some(system) = &system {
        c.ledger.indices.push(Q::from_integer(system.order() as i64));
        c.notes.push(format!("stage one: {} generated by {}", system.structure(), c.generators.join(", ")));
    }
    if stage2.is_some() {
        c.ledger.indices.push(Q::from_integer(2));
        c.notes.push("stage two: Z2 generated by the sector restricting to the u-orbit of (sigma,y3,s)".into());
        c.notes.push(
            "the other choice of that sector differs by (1,y0,v), which fixes (sigma,y3,s), so it has the same restriction".into(),
        );
    }
    c.system = system;
    c.second_stage = stage2;
    c.spectrum = c.restrict(&spec);
    c.extended_spectrum = spec;
    if id == EntryId::E27 {
        c.notes.push("the printed spectrum sums over 0 <= i <= 9; J has order 9 on SU(9)_3, so i runs mod 9".into());
    }
    Ok(c)
}

fn second_stage<T: Theory + ?Sized>(ext: &T, system: &LocalSystem, spec: &SectorVector) -> Result<SecondStage> {
    let seed = ext.require("(sigma,y3,s)")?;
    let self_pairing = induced_hom(ext, seed, seed, spec)?;
    let u = system.generators[0];
    let mut orbit = SectorVector::new();
    let mut x = seed;
    loop {
        orbit.add(x, 1);
        x = ext.fuse(u, x)?.support()[0];
        if x == seed {
            break;
        }
    }
    let odd_sector = ext.require("(1,y0,v)")?;
    Ok(SecondStage { seed, self_pairing, orbit, odd_sector })
}

fn weight(n: usize, k: u32, terms: &[(usize, u32)]) -> AffineWeight {
    AffineWeight::from_fundamentals(n, k, terms).expect("transcribed weight is valid")
}

/// One printed family: a seed weight, the range of `i` and the level-one
/// labels as functions of `i`.
struct Family {
    seed: AffineWeight,
    count: i64,
    level_one: Box<dyn Fn(i64) -> Vec<usize>>,
}

fn families(id: EntryId) -> Vec<Family> {
    let fam = |seed: AffineWeight, count: i64, f: Box<dyn Fn(i64) -> Vec<usize>>| Family { seed, count, level_one: f };
    let m = |x: i64, n: i64| x.rem_euclid(n) as usize;
    match id {
        EntryId::E40 => vec![
            fam(weight(10, 2, &[]), 10, Box::new(move |i| vec![m(2 * i, 5), m(i, 2)])),
            fam(weight(10, 2, &[(3, 1), (7, 1)]), 10, Box::new(move |i| vec![m(2 * i, 5), m(i, 2)])),
            fam(weight(10, 2, &[(3, 1), (6, 1)]), 10, Box::new(move |i| vec![m(2 * i + 4, 5), 2])),
        ],
        EntryId::E27 => {
            let x = weight(9, 3, &[(3, 1), (7, 1), (8, 1)]);
            let t = weight(9, 3, &[(4, 1), (6, 1), (8, 1)]);
            vec![
                fam(weight(9, 3, &[]), 9, Box::new(move |i| vec![m(i, 3), m(i, 3)])),
                fam(x, 9, Box::new(move |i| vec![m(i, 3), m(i, 3)])),
                fam(t.clone(), 9, Box::new(move |i| vec![m(i - 1, 3), m(i + 1, 3)])),
                fam(t, 9, Box::new(move |i| vec![m(i + 1, 3), m(i - 1, 3)])),
            ]
        }
        EntryId::E18 => {
            let y = weight(8, 4, &[(0, 1), (3, 1), (6, 1), (7, 1)]);
            vec![
                fam(weight(8, 4, &[]), 8, Box::new(move |i| vec![m(i, 2), 0, 0])),
                fam(weight(8, 4, &[(0, 1), (4, 1), (5, 1), (7, 1)]), 8, Box::new(move |i| vec![m(i, 2), 0, 0])),
                fam(weight(8, 4, &[(5, 2), (7, 2)]), 8, Box::new(move |i| vec![m(i, 2), 1, 1])),
                fam(weight(8, 4, &[(0, 2), (3, 1), (5, 1)]), 8, Box::new(move |i| vec![m(i, 2), 1, 1])),
                fam(y.clone(), 8, Box::new(move |i| vec![m(i, 2), 0, 1])),
                fam(y, 8, Box::new(move |i| vec![m(i, 2), 1, 0])),
            ]
        }
    }
}

/// The spectrum as printed, transcribed family by family over the WZW
/// product, with the label corrections documented in the catalogs applied.
pub fn printed_spectrum(c: &HolomorphicConstruction<'_>) -> Result<SectorVector> {
    let base = c.base_product();
    let wzw = c.catalog.base();
    let mut out = SectorVector::new();
    for f in families(c.id) {
        for i in 0..f.count {
            let w = f.seed.simple_current_pow(i);
            let mut parts = vec![wzw.require_weight(&w)?];
            parts.extend((f.level_one)(i));
            out.add(base.encode(&parts), 1);
        }
    }
    Ok(out)
}

/// Runs checks (a) to (g) on an assembled construction.
pub fn verify_construction(c: &HolomorphicConstruction<'_>, tol: f64) -> VerificationReport {
    let mut r = VerificationReport::new(format!("entry {}", c.id.number()));
    let ext = c.extended_product();

    // (a)
    let local = match (&c.system, &c.system_error) {
        (Some(system), _) => {
            let expected: &[u32] = match c.id {
                EntryId::E40 => &[10],
                EntryId::E27 => &[3, 3],
                EntryId::E18 => &[2, 2, 2],
            };
            let mut ok = system.invariant_factors == expected;
            let mut details = format!("{} generated by {}", system.structure(), c.generators.join(", "));
            let mut witness = None;
            if let Some(s2) = &c.second_stage {
                let s2_report = second_stage_report(&ext, system, s2);
                ok &= s2_report.passed();
                details.push_str(&format!(
                    "; <alpha_x, alpha_x> = {}, orbit of {} sectors",
                    s2.self_pairing,
                    s2.orbit.len()
                ));
                witness = s2_report.failures().next().map(|f| f.name.clone());
            }
            let mut check = Check::new("(a) local system", ok, details);
            if let Some(w) = witness {
                check = check.with_witness(w);
            }
            check
        }
        (None, Some(e)) => Check::new("(a) local system", false, format!("generators {}", c.generators.join(", ")))
            .with_witness(format!("{e}")),
        (None, None) => Check::new("(a) local system", false, "no local system"),
    };
    r.push(local);

    // (b)
    let terminal = c.ledger.terminal();
    r.push(Check::new("(b) mu ledger", terminal == math::one(), c.ledger.describe()));
    r.note(format!("mu ledger: {}", c.ledger.describe()));

    // (c)
    let cc = ext.central_charge();
    r.push(Check::new("(c) central charge 24", cc == Q::from_integer(24), format!("c = {}", fmt_q(cc))));

    // (d)
    let printed = printed_spectrum(c);
    let d_check = match &printed {
        Ok(p) => {
            let ok = *p == c.spectrum;
            let mut chk = Check::new(
                "(d) spectrum matches printed list",
                ok,
                format!("{} terms constructed, {} printed", c.spectrum.total(), p.total()),
            );
            if !ok {
                let base = c.base_product();
                let extra = c.spectrum.iter().find(|&(i, m)| p.get(i) != m).map(|(i, _)| base.label(i));
                let missing = p.iter().find(|&(i, m)| c.spectrum.get(i) != m).map(|(i, _)| base.label(i));
                chk = chk.with_witness(format!("first mismatch: constructed {extra:?}, printed {missing:?}"));
            }
            chk
        }
        Err(e) => Check::new("(d) spectrum matches printed list", false, "").with_witness(format!("{e}")),
    };
    r.push(d_check);

    // (e)
    let bad = c.non_integer_weight(&c.spectrum);
    let mut e_check = Check::new("(e) T-invariance", bad.is_none(), "every label has integer total h");
    if let Some((label, h)) = bad {
        e_check = e_check.with_witness(format!("{label}: h = {}", fmt_q(h)));
    }
    r.push(e_check);

    // (f)
    let resid = c.s_invariance_residual(&c.spectrum);
    r.push(Check::residual("(f) S-invariance", resid, tol, "max|Sv - v| / max|v|, S applied factor by factor"));

    // (g)
    let vac = c.spectrum.get(0);
    let maxm = c.spectrum.max_multiplicity();
    r.push(Check::new(
        "(g) vacuum once, multiplicities 0/1",
        vac == 1 && maxm <= 1,
        format!("vacuum multiplicity {vac}, largest multiplicity {maxm}"),
    ));

    r.note(format!("sum v d / sqrt(mu) - 1 = {:.3e}", c.vacuum_fixed_point_defect(&c.spectrum)));
    r.note(format!("spectrum closed under conjugation: {}", c.spectrum.is_conjugation_symmetric(&c.base_product())));
    for n in &c.notes {
        r.note(n.clone());
    }
    r.attach_spectrum(format!("entry {} spectrum", c.id.number()), c.describe_terms(&c.spectrum));
    r
}

/// The entry-40 second stage: pairing 2, orbit of five, trivial monodromy
/// of `(1,y0,v)` with the local system, and the group-structure argument.
pub fn second_stage_report<T: Theory + ?Sized>(ext: &T, system: &LocalSystem, s2: &SecondStage) -> VerificationReport {
    let mut r = VerificationReport::new("entry 40 second stage");
    r.push(Check::new("<alpha_x, alpha_x> = 2", s2.self_pairing == 2, format!("{}", s2.self_pairing)));
    r.push(Check::new(
        "orbit of x has 5 sectors",
        s2.orbit.len() == 5 && s2.orbit.total() == 5,
        format!("{} sectors", s2.orbit.len()),
    ));
    let orbit_integral = s2.orbit.iter().all(|(i, _)| math::is_integer(ext.h(i)));
    r.push(Check::new("orbit has integer h", orbit_integral, format!("h(x) = {}", fmt_q(ext.h(s2.seed)))));
    let w = s2.odd_sector;
    let local =
        system.elements.iter().all(|&g| monodromy_charge(ext, g, w).map(|q| q == math::zero()).unwrap_or(false));
    r.push(Check::new("(1,y0,v) is local with the system", local, "scalar monodromy with every element"));
    let single = induced_hom(ext, w, w, &simple_current_spectrum(system)).map(|v| v == 1).unwrap_or(false);
    r.push(Check::new("(1,y0,v) stays irreducible", single, "<alpha_w, alpha_w> = 1"));

    let h_delta = ext.h(s2.seed);
    let h = [math::zero(), h_delta, h_delta, ext.h(w)];
    let names: Vec<String> = ["1", "delta1", "delta2", "alpha(1,y0,v)"].iter().map(|s| String::from(*s)).collect();
    let z2z2 = AbelianGroup::new(&[2, 2]);
    let qf = quadratic_form_consistency(&names, &h, &z2z2, &[0, 2, 1, 3]);
    r.push(Check::new("Z2 x Z2 consistent", qf.passed(), "delta1, delta2, delta1 delta2 = alpha(1,y0,v)"));
    let z4 = AbelianGroup::new(&[4]);
    let z4_count = consistent_assignments(&h, &z4, |a| a[1] == 1 && a[3] == 2).len();
    r.push(Check::new("Z4 with delta1^2 = alpha(1,y0,v) excluded", z4_count == 0, format!("{z4_count} consistent")));
    r
}

/// Builds and verifies one entry.
pub fn verify_entry(id: EntryId, catalog: &ExtensionCatalog, tol: f64) -> Result<VerificationReport> {
    let c = build_entry(id, catalog)?;
    Ok(verify_construction(&c, tol))
}

/// The charge-sum dichotomy `sum_g exp(2 pi i (h(g l) - h(g) - h(l))) in
/// {0, |Gamma|}` for every label of the extended product; returns the
/// first label violating it.
pub fn charge_sum_violation(c: &HolomorphicConstruction<'_>) -> Result<Option<String>> {
    let ext = c.extended_product();
    let system = c.system.as_ref().ok_or_else(|| Error::Precondition("no local system".into()))?;
    let order = system.order() as f64;
    for l in 0..ext.len() {
        let s = charge_sum(&ext, system, l)?;
        let zero = s.norm() < 1e-9;
        let full = (s - Complex64::new(order, 0.0)).norm() < 1e-9;
        if !zero && !full {
            return Ok(Some(ext.label(l)));
        }
    }
    Ok(None)
}
