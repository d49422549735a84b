//! Built-in suites shipped with the crate.

use super::{parse_config, SuiteConfig};

pub struct CatalogEntry {
    pub name: &'static str,
    pub json: &'static str,
}

macro_rules! entry {
    ($name:literal) => {
        CatalogEntry {
            name: $name,
            json: include_str!(concat!("../../configs/", $name, ".json")),
        }
    };
}

static CATALOG: &[CatalogEntry] = &[
    entry!("identities"),
    entry!("profile"),
    entry!("ac-flat-p2"),
    entry!("ac-flat"),
    entry!("ac-sphere"),
    entry!("tensors"),
    entry!("equipartition"),
    entry!("volume"),
    entry!("poincare"),
    entry!("forms"),
    entry!("gl-filament"),
];

/// All built-in suites, cheapest first.
pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

/// The built-in suite `name`, parsed.
pub fn builtin(name: &str) -> Option<SuiteConfig> {
    CATALOG
        .iter()
        .find(|e| e.name == name)
        .map(|e| parse_config(e.json).expect("built-in configs parse"))
}
