//! The catalog JSON format.

use std::path::PathBuf;

use holonet_core::catalog::{verify_catalog, CatalogData, ExtensionCatalog, IrrepData};
use holonet_core::inclusions::Inclusion;
use holonet_core::math::{fmt_q, parse_q};
use holonet_core::report::VerificationReport;
use holonet_core::{ModularDatum, Q};
use serde::{Deserialize, Serialize};

use crate::{HolonetError, Result};

/// Environment variable that replaces the bundled catalog directory.
pub const CATALOG_DIR_ENV: &str = "HOLONET_CATALOG_DIR";

pub const CATALOG_NAMES: [&str; 3] = ["su10_2", "su9_3", "su8_4"];

const BUNDLED: [(&str, &str); 3] = [
    ("su10_2", include_str!("../catalogs/su10_2.json")),
    ("su9_3", include_str!("../catalogs/su9_3.json")),
    ("su8_4", include_str!("../catalogs/su8_4.json")),
];

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BaseFile {
    pub rank: usize,
    pub level: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IrrepFile {
    pub label: String,
    pub dim_sq: String,
    pub h_mod1: String,
    pub automorphism: bool,
    pub restriction: Vec<(Vec<String>, u32)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CatalogFile {
    pub name: String,
    #[serde(default)]
    pub display: Option<String>,
    pub base: BaseFile,
    pub mu: String,
    pub index_sq: String,
    #[serde(default)]
    pub mirror_of: Option<String>,
    pub irreps: Vec<IrrepFile>,
    pub fusion: Vec<(String, String, String, u32)>,
}

impl CatalogFile {
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|source| HolonetError::Json { name: name.to_string(), source })
    }

    pub fn into_data(self) -> Result<CatalogData> {
        let name = self.name.clone();
        let rational = |field: &'static str, value: &str| {
            parse_q(value).ok_or_else(|| HolonetError::Field { name: name.clone(), field, value: value.to_string() })
        };
        let mu = rational("mu", &self.mu)?;
        let irreps = self
            .irreps
            .into_iter()
            .map(|i| {
                Ok(IrrepData {
                    dim_sq: rational("dim_sq", &i.dim_sq)?,
                    h_mod1: rational("h_mod1", &i.h_mod1)?,
                    label: i.label,
                    automorphism: i.automorphism,
                    restriction: i.restriction,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CatalogData {
            display: self.display.unwrap_or_else(|| self.name.clone()),
            name: self.name,
            rank: self.base.rank,
            level: self.base.level,
            mu,
            index_sq: self.index_sq,
            mirror_of: self.mirror_of,
            irreps,
            fusion: self.fusion,
        })
    }

    pub fn from_data(d: &CatalogData) -> Self {
        let q = |x: Q| fmt_q(x);
        Self {
            name: d.name.clone(),
            display: Some(d.display.clone()),
            base: BaseFile { rank: d.rank, level: d.level },
            mu: q(d.mu),
            index_sq: d.index_sq.clone(),
            mirror_of: d.mirror_of.clone(),
            irreps: d
                .irreps
                .iter()
                .map(|i| IrrepFile {
                    label: i.label.clone(),
                    dim_sq: q(i.dim_sq),
                    h_mod1: q(i.h_mod1),
                    automorphism: i.automorphism,
                    restriction: i.restriction.clone(),
                })
                .collect(),
            fusion: d.fusion.clone(),
        }
    }
}

/// Raw catalog text, from `$HOLONET_CATALOG_DIR/<name>.json` when the
/// variable is set, the bundled copy otherwise.
pub fn catalog_text(name: &str) -> Result<String> {
    if let Some(dir) = std::env::var_os(CATALOG_DIR_ENV) {
        let path = PathBuf::from(dir).join(format!("{name}.json"));
        return std::fs::read_to_string(&path)
            .map_err(|source| HolonetError::Io { path: path.display().to_string(), source });
    }
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| text.to_string())
        .ok_or_else(|| HolonetError::UnknownCatalog(name.to_string()))
}

/// Parses a catalog without checking its invariants.
pub fn load_catalog(name: &str) -> Result<ExtensionCatalog> {
    let file = CatalogFile::parse(name, &catalog_text(name)?)?;
    Ok(ExtensionCatalog::from_data(file.into_data()?)?)
}

/// Like [`load_catalog`] but reusing an already computed base datum.
pub fn load_catalog_with_base(name: &str, base: ModularDatum) -> Result<ExtensionCatalog> {
    let file = CatalogFile::parse(name, &catalog_text(name)?)?;
    Ok(ExtensionCatalog::with_base(file.into_data()?, base)?)
}

/// Runs the full catalog verification, including the mirror cross-check
/// against the catalog's source inclusion when it names one.
pub fn check_catalog(cat: &ExtensionCatalog, tol: f64) -> Result<VerificationReport> {
    let inclusion = match &cat.data().mirror_of {
        Some(name) => Some(Inclusion::builtin(name)?),
        None => None,
    };
    Ok(verify_catalog(cat, inclusion.as_ref(), tol))
}

/// Loads a catalog and refuses it unless every invariant holds.
pub fn load_verified_catalog(name: &str, tol: f64) -> Result<(ExtensionCatalog, VerificationReport)> {
    let cat = load_catalog(name)?;
    let report = check_catalog(&cat, tol)?;
    if !report.passed() {
        let failures: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
        return Err(HolonetError::InvalidCatalog { name: name.to_string(), failures: failures.join("; ") });
    }
    Ok((cat, report))
}
