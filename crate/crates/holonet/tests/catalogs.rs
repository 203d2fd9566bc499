use holonet::catalog_io::{catalog_text, check_catalog, CatalogFile};
use holonet::theory_spec::{parse_factor, parse_product};
use holonet::{load_catalog, HolonetError, CATALOG_NAMES};
use holonet_core::catalog::ExtensionCatalog;
use holonet_core::{Theory, Q};

#[test]
fn bundled_catalogs_round_trip_through_the_file_format() {
    for name in CATALOG_NAMES {
        let file = CatalogFile::parse(name, &catalog_text(name).unwrap()).unwrap();
        let data = file.clone().into_data().unwrap();
        assert_eq!(CatalogFile::from_data(&data), file, "{name}");
    }
}

#[test]
fn bundled_catalogs_pass_every_check() {
    for name in CATALOG_NAMES {
        let cat = load_catalog(name).unwrap();
        let report = check_catalog(&cat, 1e-6).unwrap();
        assert!(report.passed(), "{}", report.summary());
    }
}

#[test]
fn automorphism_groups() {
    let expected = [("su10_2", "Z10"), ("su9_3", "Z3 x Z3"), ("su8_4", "Z2 x Z2 x Z2")];
    for (name, group) in expected {
        let cat = load_catalog(name).unwrap();
        let report = check_catalog(&cat, 1e-6).unwrap();
        assert!(report.notes.iter().any(|n| n.ends_with(group)), "{name}: {:?}", report.notes);
    }
}

#[test]
fn dual_labels_come_from_fusion() {
    let cat = load_catalog("su10_2").unwrap();
    let aj = cat.index_of("aJ").unwrap();
    assert_eq!(cat.label(cat.dual(aj)), "aJ9");
    let sigma = cat.index_of("sigma").unwrap();
    assert_eq!(cat.label(cat.dual(sigma)), "aJ2.sigma");
}

#[test]
fn perturbed_dimension_is_reported() {
    let mut data = load_catalog("su9_3").unwrap().data().clone();
    data.irreps[1].dim_sq = Q::from_integer(2);
    let cat = ExtensionCatalog::from_data(data).unwrap();
    let report = check_catalog(&cat, 1e-6).unwrap();
    assert!(!report.passed());
    assert!(!report.check("sum dim^2 = mu").unwrap().passed());
}

#[test]
fn malformed_json_is_a_json_error() {
    assert!(matches!(CatalogFile::parse("x", "{"), Err(HolonetError::Json { .. })));
}

#[test]
fn theory_specs() {
    assert_eq!(parse_factor("su5_1").unwrap().len(), 5);
    assert_eq!(parse_factor("spin7_1").unwrap().len(), 3);
    assert_eq!(parse_factor("wzw:su2_10").unwrap().len(), 11);
    assert_eq!(parse_factor("su3_2").unwrap().len(), 6);
    assert_eq!(parse_factor("mirror:su9_3").unwrap().len(), 9);
    let product = parse_product("mirror:su8_4*su2_1*su2_1*su2_1").unwrap();
    assert_eq!(product.len(), 4);
    assert!(parse_factor("g2_1").is_err());
}
