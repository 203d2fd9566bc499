//! Command-line theory specifications such as `mirror:su10_2*su5_1*spin7_1`.

use holonet_core::modular::{LevelOne, ModularDatum, Theory};
use holonet_core::Error;

use crate::{load_catalog, Result};

/// Builds one factor:
/// `mirror:<catalog>` is a bundled extension catalog,
/// `wzw:su<n>_<k>` forces the computed WZW datum,
/// `su<m>_1`, `spin<N>_1`, `so<N>_1`, `e6_1` are the level-one tables,
/// and `su<n>_<k>` with `k > 1` is the computed WZW datum.
pub fn parse_factor(spec: &str) -> Result<Box<dyn Theory>> {
    let spec = spec.trim();
    if let Some(name) = spec.strip_prefix("mirror:") {
        return Ok(Box::new(load_catalog(name)?));
    }
    if let Some(rest) = spec.strip_prefix("wzw:") {
        let (n, k) = parse_su(rest)?;
        return Ok(Box::new(ModularDatum::wzw(n, k)?));
    }
    if let Ok(kind) = LevelOne::parse(spec) {
        return Ok(Box::new(kind.datum()?));
    }
    let (n, k) = parse_su(spec)?;
    Ok(Box::new(ModularDatum::wzw(n, k)?))
}

fn parse_su(spec: &str) -> Result<(usize, u32)> {
    let bad = || Error::Usage(format!("cannot parse theory {spec:?}; expected su<n>_<k>"));
    let body = spec.to_ascii_lowercase();
    let body = body.strip_prefix("su").ok_or_else(bad)?;
    let (n, k) = body.split_once('_').ok_or_else(bad)?;
    Ok((n.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?))
}

/// Splits `a*b*c` into factors.
pub fn parse_product(spec: &str) -> Result<Vec<Box<dyn Theory>>> {
    spec.split('*').filter(|s| !s.trim().is_empty()).map(parse_factor).collect()
}
