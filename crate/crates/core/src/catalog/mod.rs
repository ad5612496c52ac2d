//! Self-verifying example bundles.

mod entry;
pub mod format;
mod representation;

use alloc::vec::Vec;

pub use entry::{CatalogEntry, REPRESENTATION_LEVELS};
pub use representation::{gc_patterns, weyl_dimension, Representation};

use crate::{Error, Result};

const BUILTIN: [(&str, &str); 5] = [
    ("p1", include_str!("../../catalog/p1.json")),
    ("p1xp1", include_str!("../../catalog/p1xp1.json")),
    ("elliptic", include_str!("../../catalog/elliptic.json")),
    ("gl3-flag", include_str!("../../catalog/gl3-flag.json")),
    ("elliptic-quotient-demo", include_str!("../../catalog/elliptic-quotient-demo.json")),
];

/// Raw JSON text of a built-in entry.
pub fn builtin_source(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Loads and verifies a built-in entry.
pub fn load_example(name: &str) -> Result<CatalogEntry> {
    let src = builtin_source(name).ok_or_else(|| Error::UnknownEntry(name.into()))?;
    CatalogEntry::from_json(src)
}

/// Built-in names with their one-line descriptions, in a fixed order.
pub fn list_examples() -> Vec<(&'static str, alloc::string::String)> {
    BUILTIN
        .iter()
        .map(|(n, src)| {
            let file: format::EntryFile = serde_json::from_str(src).expect("built-in entry parses");
            (*n, file.description)
        })
        .collect()
}
