//! Named palettes: the builtin table plus palettes registered at run time.
//!
//! Names match ignoring case and any non-alphanumeric character, so `"set2"`
//! finds `"Set 2"`. A process-wide registry is available through [`lookup`],
//! [`list`] and [`register`]; [`Registry`] values can also be used directly.

use std::sync::{LazyLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::generate::{self, Output};
use super::params::{PaletteParams, PaletteType};

const BUILTIN_JSON: &str = include_str!("../../data/palettes.json");

/// Maximum number of suggestions attached to a not-found error.
const MAX_SUGGESTIONS: usize = 3;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    #[default]
    Builtin,
    Registered,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaletteRecord {
    pub name: String,
    #[serde(flatten)]
    pub params: PaletteParams,
    #[serde(default)]
    pub source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// Entry of the on-disk registry file: a record without bookkeeping fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub name: String,
    #[serde(flatten)]
    pub params: PaletteParams,
}

/// Lowercase alphanumeric key used for name matching.
pub fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| c.is_alphanumeric())
        .flat_map(char::to_lowercase)
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct Registry {
    records: Vec<PaletteRecord>,
}

impl Registry {
    /// An empty registry.
    pub fn new() -> Self {
        Registry::default()
    }

    /// The builtin palettes.
    pub fn builtin() -> Self {
        static BUILTIN: LazyLock<Vec<PaletteRecord>> = LazyLock::new(|| {
            let mut records: Vec<PaletteRecord> =
                serde_json::from_str(BUILTIN_JSON).expect("builtin palette table is valid JSON");
            for r in &mut records {
                r.source = Source::Builtin;
            }
            records
        });
        Registry {
            records: BUILTIN.clone(),
        }
    }

    pub fn records(&self) -> &[PaletteRecord] {
        &self.records
    }

    fn position(&self, name: &str) -> Option<usize> {
        let key = normalize_name(name);
        self.records.iter().position(|r| normalize_name(&r.name) == key)
    }

    /// Finds a palette; unknown names yield the closest known names.
    pub fn lookup(&self, name: &str) -> Result<&PaletteRecord> {
        match self.position(name) {
            Some(i) => Ok(&self.records[i]),
            None => Err(Error::NotFound {
                name: name.to_string(),
                suggestions: self.suggestions(name),
            }),
        }
    }

    fn suggestions(&self, name: &str) -> Vec<String> {
        let key = normalize_name(name);
        let mut scored: Vec<(f64, &str)> = self
            .records
            .iter()
            .map(|r| (strsim::jaro_winkler(&key, &normalize_name(&r.name)), r.name.as_str()))
            .collect();
        // Stable sort keeps table order among ties.
        scored.sort_by(|a, b| b.0.total_cmp(&a.0));
        scored
            .into_iter()
            .take(MAX_SUGGESTIONS)
            .map(|(_, n)| n.to_string())
            .collect()
    }

    /// Records of the given type (all if `None`), grouped in listing order.
    pub fn list(&self, filter: Option<PaletteType>) -> Vec<&PaletteRecord> {
        PaletteType::GROUPS
            .iter()
            .filter(|g| filter.is_none_or(|f| f.matches(**g)))
            .flat_map(|g| self.records.iter().filter(move |r| r.params.kind == *g))
            .collect()
    }

    /// Adds or replaces a palette. A replaced record keeps its position.
    pub fn register(&mut self, name: &str, params: PaletteParams) -> Result<&PaletteRecord> {
        if normalize_name(name).is_empty() {
            return Err(Error::invalid("palette name must contain a letter or digit"));
        }
        let params = params.normalized();
        params.resolve()?;
        let record = PaletteRecord {
            name: name.trim().to_string(),
            params,
            source: Source::Registered,
            provenance: None,
        };
        let i = match self.position(name) {
            Some(i) => {
                self.records[i] = record;
                i
            }
            None => {
                self.records.push(record);
                self.records.len() - 1
            }
        };
        Ok(&self.records[i])
    }

    /// Registered (non-builtin) palettes in registry-file form.
    pub fn export_registered(&self) -> Vec<RegistryEntry> {
        self.records
            .iter()
            .filter(|r| r.source == Source::Registered)
            .map(|r| RegistryEntry {
                name: r.name.clone(),
                params: r.params.clone(),
            })
            .collect()
    }

    /// Registers every entry of a registry file (a JSON array of entries).
    pub fn import_json(&mut self, json: &str) -> Result<usize> {
        let entries: Vec<RegistryEntry> =
            serde_json::from_str(json).map_err(|e| Error::invalid(format!("registry file: {e}")))?;
        let n = entries.len();
        for e in entries {
            self.register(&e.name, e.params)?;
        }
        Ok(n)
    }

    pub fn export_json(&self) -> String {
        serde_json::to_string_pretty(&self.export_registered()).expect("registry entries serialize")
    }

    /// Generates `n` colors of a named palette, with optional parameter
    /// overrides.
    pub fn generate(
        &self,
        name: &str,
        n: usize,
        overrides: Option<&PaletteParams>,
        out: &Output,
    ) -> Result<Vec<String>> {
        let base = &self.lookup(name)?.params;
        let params = match overrides {
            Some(o) => base.overlay(o),
            None => base.clone(),
        };
        generate::generate(n, &params, out)
    }
}

static GLOBAL: LazyLock<RwLock<Registry>> = LazyLock::new(|| RwLock::new(Registry::builtin()));

/// Runs `f` with shared access to the process-wide registry.
pub fn with_registry<T>(f: impl FnOnce(&Registry) -> T) -> T {
    f(&GLOBAL.read().unwrap_or_else(|e| e.into_inner()))
}

/// Runs `f` with exclusive access to the process-wide registry.
pub fn with_registry_mut<T>(f: impl FnOnce(&mut Registry) -> T) -> T {
    f(&mut GLOBAL.write().unwrap_or_else(|e| e.into_inner()))
}

pub fn lookup(name: &str) -> Result<PaletteRecord> {
    with_registry(|r| r.lookup(name).cloned())
}

pub fn list(filter: Option<PaletteType>) -> Vec<PaletteRecord> {
    with_registry(|r| r.list(filter).into_iter().cloned().collect())
}

pub fn register(name: &str, params: PaletteParams) -> Result<PaletteRecord> {
    with_registry_mut(|r| r.register(name, params).cloned())
}

/// Generates `n` colors of a named palette from the process-wide registry.
pub fn palette(name: &str, n: usize, overrides: Option<&PaletteParams>, out: &Output) -> Result<Vec<String>> {
    with_registry(|r| r.generate(name, n, overrides, out))
}
