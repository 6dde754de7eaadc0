//! Golden catalogs shipped with the crate. Setting `RATIO_LAB_CATALOG_DIR` makes
//! every lookup read `<dir>/<name>.json` instead.

use std::path::PathBuf;

use ratio_lab_core::search::Catalog;
use ratio_lab_core::{Error, Result};

use crate::json::catalog_from_str;

pub const ENV_DIR: &str = "RATIO_LAB_CATALOG_DIR";

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        const BUNDLED: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../catalogs/", $name, ".json"))),)*
        ];
    };
}

bundled!(
    "sporadic-5",
    "sporadic-7",
    "sporadic-9",
    "type-a-3",
    "triple-3",
    "quadruple-3",
    "type-b-4",
    "type-a-5",
    "type-b-5",
    "type-a-6",
    "type-b-6",
    "minimum-7",
    "minimum-8",
);

pub fn names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

fn override_dir() -> Option<PathBuf> {
    std::env::var_os(ENV_DIR).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Raw JSON of a golden catalog, `None` if there is none by that name.
pub fn raw(name: &str) -> Result<Option<String>> {
    if let Some(dir) = override_dir() {
        let path = dir.join(format!("{name}.json"));
        return match std::fs::read_to_string(&path) {
            Ok(s) => Ok(Some(s)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::Parse(format!("{}: {e}", path.display()))),
        };
    }
    Ok(BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| s.to_string()))
}

pub fn load(name: &str) -> Result<Option<Catalog>> {
    raw(name)?.map(|s| catalog_from_str(&s)).transpose()
}

/// Loads a catalog that must exist.
pub fn require(name: &str) -> Result<Catalog> {
    load(name)?.ok_or_else(|| Error::UnknownPreset(format!("no golden catalog named {name}")))
}

/// All 52 sporadic lists, lengths 5, 7 and 9 together.
pub fn sporadic_all() -> Result<Catalog> {
    let mut hits = Vec::new();
    for n in [5, 7, 9] {
        let c = require(&format!("sporadic-{n}"))?;
        hits.extend(c.entries.into_iter().map(|e| (e.list, e.norm)));
    }
    Ok(Catalog::new("sporadic", "union of sporadic-5, sporadic-7 and sporadic-9", hits))
}
