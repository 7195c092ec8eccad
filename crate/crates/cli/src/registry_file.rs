//! Loading and saving the user registry file (a JSON array of palette
//! entries) on top of the builtin palettes.

use std::io::ErrorKind;
use std::path::Path;

use hclcolor::palettes::Registry;

use crate::api::{ApiError, ApiResult};

/// Builtin palettes plus the entries of `path`. A missing file counts as
/// empty; an unreadable file is an I/O error, a malformed one a validation
/// error.
pub fn load(path: Option<&Path>) -> ApiResult<Registry> {
    let mut registry = Registry::builtin();
    let Some(path) = path else {
        return Ok(registry);
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == ErrorKind::NotFound => return Ok(registry),
        Err(e) => return Err(ApiError::Io(format!("{}: {e}", path.display()))),
    };
    if !text.trim().is_empty() {
        registry
            .import_json(&text)
            .map_err(|e| ApiError::field("registry", format!("{}: {e}", path.display())))?;
    }
    Ok(registry)
}

/// Writes the registered (non-builtin) palettes to `path`.
pub fn save(registry: &Registry, path: &Path) -> ApiResult<()> {
    let mut text = registry.export_json();
    text.push('\n');
    std::fs::write(path, text).map_err(|e| ApiError::Io(format!("{}: {e}", path.display())))
}
