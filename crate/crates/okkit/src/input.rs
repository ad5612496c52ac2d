use std::path::Path;

use okkit_core::catalog::{builtin_source, load_example, CatalogEntry};

use crate::error::{CliError, CliResult};

/// Resolves a catalog name or the path of an entry file.
///
/// Built-in names win; anything else is read from disk.
pub fn load_input(input: &str) -> CliResult<CatalogEntry> {
    if builtin_source(input).is_some() {
        return Ok(load_example(input)?);
    }
    let path = Path::new(input);
    if !path.exists() {
        return Err(okkit_core::Error::UnknownEntry(input.to_string()).into());
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(CatalogEntry::from_json(&text)?)
}
