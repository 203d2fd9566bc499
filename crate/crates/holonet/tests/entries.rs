mod common;

use holonet::load_verified_catalog;
use holonet_core::catalog::ExtensionCatalog;
use holonet_core::entries::{
    build_entry, build_entry_with, charge_sum_violation, second_stage_report, verify_construction, EntryId,
};
use holonet_core::{Error, SectorVector, Theory, Q};

const TOL: f64 = 1e-8;

fn catalog(id: EntryId) -> ExtensionCatalog {
    load_verified_catalog(id.catalog_name(), 1e-6).expect("bundled catalog verifies").0
}

/// Level-one factor names in the oracle's spelling.
fn factor_names(id: EntryId) -> Vec<&'static str> {
    match id {
        EntryId::E40 => vec!["su5_1", "spin7_1"],
        EntryId::E27 => vec!["su3_1", "su3_1"],
        EntryId::E18 => vec!["su2_1", "su2_1", "su2_1"],
    }
}

fn rank_level(id: EntryId) -> (usize, u32) {
    match id {
        EntryId::E40 => (10, 2),
        EntryId::E27 => (9, 3),
        EntryId::E18 => (8, 4),
    }
}

#[test]
fn every_entry_passes_all_seven_checks() {
    for id in EntryId::ALL {
        let cat = catalog(id);
        let c = build_entry(id, &cat).unwrap();
        let report = verify_construction(&c, TOL);
        assert_eq!(report.checks.len(), 7, "entry {}", id.number());
        assert!(report.passed(), "{}", report.summary());
    }
}

#[test]
fn spectrum_sizes_and_total_weights_agree_with_oracle() {
    let expected_terms = [(EntryId::E40, 30), (EntryId::E27, 36), (EntryId::E18, 48)];
    for (id, terms) in expected_terms {
        let cat = catalog(id);
        let c = build_entry(id, &cat).unwrap();
        let described = c.describe_terms(&c.spectrum);
        assert_eq!(described.len(), terms);
        let (n, k) = rank_level(id);
        let names = factor_names(id);
        for (label, m) in described {
            assert_eq!(m, 1);
            let (w, rest) = common::split_label(&label);
            let mut total = common::h(&w, n, k);
            for (lab, f) in rest.iter().zip(&names) {
                total += common::level_one_h(lab, f);
            }
            assert!(total.is_integer(), "{label}: h = {total}");
        }
    }
}

#[test]
fn central_charges_sum_to_24_by_oracle() {
    for id in EntryId::ALL {
        let (n, k) = rank_level(id);
        let mut c = common::c(n, k);
        for f in factor_names(id) {
            c += match f {
                "su5_1" => Q::from_integer(4),
                "su3_1" => Q::from_integer(2),
                "su2_1" => Q::from_integer(1),
                "spin7_1" => Q::new(7, 2),
                _ => unreachable!(),
            };
        }
        assert_eq!(c, Q::from_integer(24), "entry {}", id.number());
    }
}

/// `sum v_l d_l = sqrt(mu)` of the WZW product, with dimensions and `mu` both
/// from the sine-product oracle.
#[test]
fn vacuum_fixed_point_dimension_sum_by_oracle() {
    for id in EntryId::ALL {
        let cat = catalog(id);
        let c = build_entry(id, &cat).unwrap();
        let (n, k) = rank_level(id);
        let names = factor_names(id);
        let mut lhs = 0.0;
        for (label, m) in c.describe_terms(&c.spectrum) {
            let (w, rest) = common::split_label(&label);
            let mut d = common::qdim(&w, n, k);
            for (lab, f) in rest.iter().zip(&names) {
                d *= common::level_one_dim(lab, f);
            }
            lhs += m as f64 * d;
        }
        let level_one_mu: f64 = names
            .iter()
            .map(|f| match *f {
                "su5_1" => 5.0,
                "su3_1" => 3.0,
                "su2_1" => 2.0,
                _ => 4.0,
            })
            .product();
        let rhs = (common::mu(n, k) * level_one_mu).sqrt();
        assert!((lhs / rhs - 1.0).abs() < 1e-9, "entry {}: {lhs} vs {rhs}", id.number());
        assert!(c.vacuum_fixed_point_defect(&c.spectrum) < 1e-9);
    }
}

#[test]
fn ledger_reaches_one() {
    for id in EntryId::ALL {
        let cat = catalog(id);
        let c = build_entry(id, &cat).unwrap();
        assert_eq!(c.ledger.terminal(), Q::from_integer(1), "{}", c.ledger.describe());
    }
    let cat = catalog(EntryId::E40);
    assert_eq!(build_entry(EntryId::E40, &cat).unwrap().ledger.describe(), "20·5·4 / 10² / 2² = 1");
}

#[test]
fn perturbed_spectrum_breaks_s_invariance() {
    for id in EntryId::ALL {
        let cat = catalog(id);
        let c = build_entry(id, &cat).unwrap();
        assert!(c.s_invariance_residual(&c.spectrum) < TOL);
        let first_non_vacuum = c.spectrum.support().into_iter().find(|&i| i != 0).unwrap();
        let mut plus = c.spectrum.clone();
        plus.add(first_non_vacuum, 1);
        assert!(c.s_invariance_residual(&plus) > 1e-3, "entry {} +1", id.number());
        let minus = SectorVector::from_pairs(c.spectrum.iter().filter(|&(i, _)| i != first_non_vacuum));
        assert!(c.s_invariance_residual(&minus) > 1e-3, "entry {} -1", id.number());
    }
}

#[test]
fn wrong_stage_one_generator_is_rejected_with_its_weight() {
    let cat = catalog(EntryId::E40);
    let c = build_entry_with(EntryId::E40, &cat, &["(aJ,y1,v)"]).unwrap();
    match c.system_error.as_ref() {
        Some(Error::NontrivialUnivalence { h, .. }) => assert_eq!(h, "9/5"),
        other => panic!("expected a univalence failure, got {other:?}"),
    }
    let report = verify_construction(&c, TOL);
    assert!(!report.passed());
    assert!(!report.check("(a) local system").unwrap().passed());
}

#[test]
fn alternative_generators_of_entry_27_give_the_conjugate_spectrum() {
    let cat = catalog(EntryId::E27);
    let printed = build_entry(EntryId::E27, &cat).unwrap();
    let alt = build_entry_with(EntryId::E27, &cat, &["(aJ,y1,y2)", "(tau1,y1,y1)"]).unwrap();
    let report = verify_construction(&alt, TOL);
    for check in &report.checks {
        // The alternative spectrum is not the printed one, by design.
        if !check.name.starts_with("(d)") {
            assert!(check.passed(), "{}: {}", check.name, check.details);
        }
    }
    let flip = |label: &str| {
        let (w, rest) = common::split_label(label);
        let last = rest.last().unwrap();
        let a: u32 = last[1..].parse().unwrap();
        let mut rest = rest.clone();
        *rest.last_mut().unwrap() = format!("y{}", (3 - a) % 3);
        let ws: Vec<String> = w.iter().map(u32::to_string).collect();
        format!("([{}],{})", ws.join(","), rest.join(","))
    };
    let mut mapped: Vec<(String, u32)> =
        alt.describe_terms(&alt.spectrum).into_iter().map(|(l, m)| (flip(&l), m)).collect();
    mapped.sort();
    assert_eq!(mapped, printed.describe_terms(&printed.spectrum));
}

#[test]
fn charge_sums_are_zero_or_group_order() {
    for id in EntryId::ALL {
        let cat = catalog(id);
        let c = build_entry(id, &cat).unwrap();
        assert_eq!(charge_sum_violation(&c).unwrap(), None, "entry {}", id.number());
    }
}

#[test]
fn spectra_are_closed_under_conjugation() {
    for id in EntryId::ALL {
        let cat = catalog(id);
        let c = build_entry(id, &cat).unwrap();
        let base = c.base_product();
        assert!(c.spectrum.is_conjugation_symmetric(&base), "entry {}", id.number());
    }
}

#[test]
fn local_system_orders() {
    let expected = [(EntryId::E40, "Z10"), (EntryId::E27, "Z3 x Z3"), (EntryId::E18, "Z2 x Z2 x Z2")];
    for (id, structure) in expected {
        let cat = catalog(id);
        let c = build_entry(id, &cat).unwrap();
        let sys = c.system.as_ref().unwrap();
        assert_eq!(sys.structure(), structure);
        let ext = c.extended_product();
        for &g in &sys.elements {
            assert!(ext.h(g).is_integer(), "{} has h = {}", ext.label(g), ext.h(g));
        }
    }
}

#[test]
fn entry_40_second_stage() {
    let cat = catalog(EntryId::E40);
    let c = build_entry(EntryId::E40, &cat).unwrap();
    let s2 = c.second_stage.as_ref().unwrap();
    assert_eq!(s2.self_pairing, 2);
    assert_eq!(s2.orbit.len(), 5);
    let ext = c.extended_product();
    assert_eq!(ext.label(s2.seed), "(sigma,y3,s)");
    assert_eq!(ext.h(s2.odd_sector), Q::new(1, 2));
}

#[test]
fn catalog_of_the_wrong_entry_is_refused() {
    let cat = catalog(EntryId::E27);
    assert!(matches!(build_entry(EntryId::E40, &cat), Err(Error::Usage(_))));
}

#[test]
fn entry_40_second_stage_group_is_klein_not_cyclic() {
    let cat = catalog(EntryId::E40);
    let c = build_entry(EntryId::E40, &cat).unwrap();
    let ext = c.extended_product();
    let report = second_stage_report(&ext, c.system.as_ref().unwrap(), c.second_stage.as_ref().unwrap());
    assert!(report.passed(), "{}", report.summary());
    assert!(report.check("Z2 x Z2 consistent").unwrap().passed());
    assert!(report.check("Z4 with delta1^2 = alpha(1,y0,v) excluded").unwrap().passed());
}
