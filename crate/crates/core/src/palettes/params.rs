//! Palette parameter records.
//!
//! Every field except the type is optional so that a record can act both as
//! a complete palette definition and as a set of overrides on top of a named
//! palette. [`PaletteParams::resolve`] fills in the per-type defaults.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PaletteType {
    #[serde(rename = "qualitative")]
    Qualitative,
    #[serde(rename = "sequential-single", alias = "sequential (single-hue)")]
    SequentialSingle,
    #[serde(rename = "sequential-multi", alias = "sequential (multi-hue)")]
    SequentialMulti,
    #[serde(rename = "diverging")]
    Diverging,
    #[serde(rename = "divergingx")]
    Divergingx,
    /// Accepted on input only; resolved to single- or multi-hue by whether
    /// `h2` is given.
    #[serde(rename = "sequential")]
    Sequential,
}

impl PaletteType {
    /// Listing order of the registry groups.
    pub const GROUPS: [PaletteType; 5] = [
        PaletteType::Qualitative,
        PaletteType::SequentialSingle,
        PaletteType::SequentialMulti,
        PaletteType::Diverging,
        PaletteType::Divergingx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PaletteType::Qualitative => "qualitative",
            PaletteType::SequentialSingle => "sequential-single",
            PaletteType::SequentialMulti => "sequential-multi",
            PaletteType::Diverging => "diverging",
            PaletteType::Divergingx => "divergingx",
            PaletteType::Sequential => "sequential",
        }
    }

    /// Human-readable group title.
    pub fn title(self) -> &'static str {
        match self {
            PaletteType::Qualitative => "Qualitative",
            PaletteType::SequentialSingle => "Sequential (single-hue)",
            PaletteType::SequentialMulti => "Sequential (multi-hue)",
            PaletteType::Diverging => "Diverging",
            PaletteType::Divergingx => "Divergingx",
            PaletteType::Sequential => "Sequential",
        }
    }

    pub fn is_sequential(self) -> bool {
        matches!(
            self,
            PaletteType::Sequential | PaletteType::SequentialSingle | PaletteType::SequentialMulti
        )
    }

    /// Whether `self` as a filter selects palettes of type `other`.
    pub fn matches(self, other: PaletteType) -> bool {
        self == other || (self == PaletteType::Sequential && other.is_sequential())
    }
}

impl fmt::Display for PaletteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PaletteType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        Ok(match key.as_str() {
            "qualitative" | "qual" => PaletteType::Qualitative,
            "sequential" | "seq" => PaletteType::Sequential,
            "sequentialsingle" | "sequentialsinglehue" | "single" => PaletteType::SequentialSingle,
            "sequentialmulti" | "sequentialmultihue" | "multi" => PaletteType::SequentialMulti,
            "diverging" | "div" => PaletteType::Diverging,
            "divergingx" | "divx" => PaletteType::Divergingx,
            _ => {
                return Err(Error::invalid(format!(
                    "unknown palette type {s:?} (expected qualitative, sequential, \
                     sequential-single, sequential-multi, diverging or divergingx)"
                )))
            }
        })
    }
}

/// HCL palette parameters.
///
/// Divergingx palettes additionally use the third-anchor fields `h3`, `c3`,
/// `l3`, the right-arm peak `cmax2` and the powers `p3`, `p4`; `cmax` doubles
/// as the left-arm peak (`cmax1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaletteParams {
    #[serde(rename = "type")]
    pub kind: PaletteType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", alias = "cmax1")]
    pub cmax: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cmax2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p4: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixup: Option<bool>,
}

macro_rules! overlay_fields {
    ($dst:ident, $src:ident; $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f; } )*
    };
}

impl PaletteParams {
    pub fn new(kind: PaletteType) -> Self {
        PaletteParams {
            kind,
            h1: None,
            h2: None,
            h3: None,
            c1: None,
            c2: None,
            c3: None,
            cmax: None,
            cmax2: None,
            l1: None,
            l2: None,
            l3: None,
            p1: None,
            p2: None,
            p3: None,
            p4: None,
            fixup: None,
        }
    }

    pub fn qualitative(h1: f64, h2: Option<f64>, c1: f64, l1: f64) -> Self {
        PaletteParams {
            h1: Some(h1),
            h2,
            c1: Some(c1),
            l1: Some(l1),
            ..PaletteParams::new(PaletteType::Qualitative)
        }
    }

    /// Returns `self` with every field that is set in `overrides` replaced.
    /// The type of `self` is kept.
    pub fn overlay(&self, overrides: &PaletteParams) -> PaletteParams {
        let mut out = self.clone();
        let o = overrides;
        overlay_fields!(out, o; h1, h2, h3, c1, c2, c3, cmax, cmax2, l1, l2, l3, p1, p2, p3, p4, fixup);
        out
    }

    /// Resolves the generic `sequential` type into single- or multi-hue.
    pub fn normalized(mut self) -> Self {
        if self.kind == PaletteType::Sequential {
            self.kind = if self.h2.is_some() {
                PaletteType::SequentialMulti
            } else {
                PaletteType::SequentialSingle
            };
        }
        self
    }

    /// Checks that every given value is finite and powers are positive.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("h1", self.h1),
            ("h2", self.h2),
            ("h3", self.h3),
            ("c1", self.c1),
            ("c2", self.c2),
            ("c3", self.c3),
            ("cmax", self.cmax),
            ("cmax2", self.cmax2),
            ("l1", self.l1),
            ("l2", self.l2),
            ("l3", self.l3),
            ("p1", self.p1),
            ("p2", self.p2),
            ("p3", self.p3),
            ("p4", self.p4),
        ];
        for (name, v) in fields {
            if let Some(v) = v {
                if !v.is_finite() {
                    return Err(Error::invalid(format!("{name} must be finite, got {v}")));
                }
                if name.starts_with('p') && v <= 0.0 {
                    return Err(Error::invalid(format!("{name} must be positive, got {v}")));
                }
                if name.starts_with('c') && v < 0.0 {
                    return Err(Error::invalid(format!("{name} must be non-negative, got {v}")));
                }
            }
        }
        Ok(())
    }
}

/// Fully-specified parameters of a qualitative palette.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qualitative {
    pub h1: f64,
    pub h2: Option<f64>,
    pub c: f64,
    pub l: f64,
}

/// Fully-specified parameters of a sequential palette (or one diverging arm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sequential {
    pub h1: f64,
    pub h2: f64,
    pub c1: f64,
    pub c2: f64,
    pub cmax: Option<f64>,
    pub l1: f64,
    pub l2: f64,
    pub p1: f64,
    pub p2: f64,
}

/// Fully-specified parameters of a balanced diverging palette.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diverging {
    pub h1: f64,
    pub h2: f64,
    pub c1: f64,
    pub cmax: Option<f64>,
    pub l1: f64,
    pub l2: f64,
    pub p1: f64,
    pub p2: f64,
}

/// Fully-specified parameters of a flexible diverging palette: two
/// sequential arms meeting at `(h2, c2, l2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Divergingx {
    pub h1: f64,
    /// Midpoint hue; when absent each arm keeps its own constant hue.
    pub h2: Option<f64>,
    pub h3: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub cmax1: Option<f64>,
    pub cmax2: Option<f64>,
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
}

impl Divergingx {
    pub fn left_arm(&self) -> Sequential {
        Sequential {
            h1: self.h1,
            h2: self.h2.unwrap_or(self.h1),
            c1: self.c1,
            c2: self.c2,
            cmax: self.cmax1,
            l1: self.l1,
            l2: self.l2,
            p1: self.p1,
            p2: self.p2,
        }
    }

    pub fn right_arm(&self) -> Sequential {
        Sequential {
            h1: self.h3,
            h2: self.h2.unwrap_or(self.h3),
            c1: self.c3,
            c2: self.c2,
            cmax: self.cmax2,
            l1: self.l3,
            l2: self.l2,
            p1: self.p3,
            p2: self.p4,
        }
    }
}

/// Parameters with all defaults applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Resolved {
    Qualitative(Qualitative),
    Sequential(Sequential),
    Diverging(Diverging),
    Divergingx(Divergingx),
}

// Defaults of the unnamed palette functions.
const SEQ_DEFAULT: (f64, f64, f64, f64, f64) = (260.0, 80.0, 30.0, 90.0, 1.5);
const DIV_DEFAULT: (f64, f64, f64, f64, f64, f64) = (260.0, 0.0, 80.0, 30.0, 90.0, 1.5);

/// Default flexible diverging parameters: the Cividis approximation.
pub const CIVIDIS: Divergingx = Divergingx {
    h1: 255.0,
    h2: None,
    h3: 75.0,
    c1: 30.0,
    c2: 0.0,
    c3: 95.0,
    cmax1: Some(47.0),
    cmax2: None,
    l1: 13.0,
    l2: 52.0,
    l3: 92.0,
    p1: 1.1,
    p2: 1.0,
    p3: 1.0,
    p4: 1.0,
};

impl PaletteParams {
    pub fn fixup_or_default(&self) -> bool {
        self.fixup.unwrap_or(true)
    }

    /// Applies the per-type defaults.
    pub fn resolve(&self) -> Result<Resolved> {
        self.validate()?;
        let p = self;
        Ok(match p.kind {
            PaletteType::Qualitative => Resolved::Qualitative(Qualitative {
                h1: p.h1.unwrap_or(0.0),
                h2: p.h2,
                c: p.c1.unwrap_or(80.0),
                l: p.l1.unwrap_or(60.0),
            }),
            PaletteType::Sequential | PaletteType::SequentialSingle | PaletteType::SequentialMulti => {
                let (h, c, l1, l2, pw) = SEQ_DEFAULT;
                let h1 = p.h1.unwrap_or(h);
                let p1 = p.p1.unwrap_or(pw);
                Resolved::Sequential(Sequential {
                    h1,
                    h2: p.h2.unwrap_or(h1),
                    c1: p.c1.unwrap_or(c),
                    c2: p.c2.unwrap_or(0.0),
                    cmax: p.cmax,
                    l1: p.l1.unwrap_or(l1),
                    l2: p.l2.unwrap_or(l2),
                    p1,
                    p2: p.p2.unwrap_or(p1),
                })
            }
            PaletteType::Diverging => {
                let (h1, h2, c, l1, l2, pw) = DIV_DEFAULT;
                let p1 = p.p1.unwrap_or(pw);
                Resolved::Diverging(Diverging {
                    h1: p.h1.unwrap_or(h1),
                    h2: p.h2.unwrap_or(h2),
                    c1: p.c1.unwrap_or(c),
                    cmax: p.cmax,
                    l1: p.l1.unwrap_or(l1),
                    l2: p.l2.unwrap_or(l2),
                    p1,
                    p2: p.p2.unwrap_or(p1),
                })
            }
            PaletteType::Divergingx => {
                // A record that names none of the anchors gets the Cividis
                // defaults; otherwise missing values chain from the given ones.
                let d = CIVIDIS;
                let bare = p.h1.is_none() && p.h3.is_none() && p.c1.is_none() && p.l1.is_none();
                if bare {
                    let p1 = p.p1.unwrap_or(d.p1);
                    let p2 = p.p2.unwrap_or(d.p2);
                    Resolved::Divergingx(Divergingx {
                        h1: d.h1,
                        h2: p.h2,
                        h3: d.h3,
                        c1: d.c1,
                        c2: p.c2.unwrap_or(d.c2),
                        c3: p.c3.unwrap_or(d.c3),
                        cmax1: p.cmax.or(d.cmax1),
                        cmax2: p.cmax2.or(d.cmax2),
                        l1: d.l1,
                        l2: p.l2.unwrap_or(d.l2),
                        l3: p.l3.unwrap_or(d.l3),
                        p1,
                        p2,
                        p3: p.p3.unwrap_or(d.p3),
                        p4: p.p4.unwrap_or(d.p4),
                    })
                } else {
                    let need = |v: Option<f64>, name: &str| {
                        v.ok_or_else(|| Error::invalid(format!("divergingx palettes need {name}")))
                    };
                    let (h1, c1, l1) = (need(p.h1, "h1")?, need(p.c1, "c1")?, need(p.l1, "l1")?);
                    let p1 = p.p1.unwrap_or(1.0);
                    let p2 = p.p2.unwrap_or(p1);
                    Resolved::Divergingx(Divergingx {
                        h1,
                        h2: p.h2,
                        h3: need(p.h3, "h3")?,
                        c1,
                        c2: p.c2.unwrap_or(0.0),
                        c3: p.c3.unwrap_or(c1),
                        cmax1: p.cmax,
                        cmax2: p.cmax2,
                        l1,
                        l2: p.l2.unwrap_or(l1),
                        l3: p.l3.unwrap_or(l1),
                        p1,
                        p2,
                        p3: p.p3.unwrap_or(p1),
                        p4: p.p4.unwrap_or(p2),
                    })
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_json_shape() {
        let p: PaletteParams =
            serde_json::from_str(r#"{"type":"qualitative","h1":0,"c1":60,"l1":70,"fixup":true}"#).unwrap();
        assert_eq!(
            p,
            PaletteParams {
                fixup: Some(true),
                ..PaletteParams::qualitative(0.0, None, 60.0, 70.0)
            }
        );
        let back = serde_json::to_string(&p).unwrap();
        assert_eq!(
            back,
            r#"{"type":"qualitative","h1":0.0,"c1":60.0,"l1":70.0,"fixup":true}"#
        );
    }

    #[test]
    fn unknown_field_rejected() {
        assert!(serde_json::from_str::<PaletteParams>(r#"{"type":"qualitative","hue":3}"#).is_err());
    }

    #[test]
    fn sequential_normalization() {
        let single = PaletteParams::new(PaletteType::Sequential).normalized();
        assert_eq!(single.kind, PaletteType::SequentialSingle);
        let multi = PaletteParams {
            h2: Some(10.0),
            ..PaletteParams::new(PaletteType::Sequential)
        }
        .normalized();
        assert_eq!(multi.kind, PaletteType::SequentialMulti);
    }

    #[test]
    fn overlay_replaces_only_set_fields() {
        let base = PaletteParams::qualitative(0.0, None, 60.0, 70.0);
        let o = PaletteParams {
            l1: Some(80.0),
            ..PaletteParams::new(PaletteType::Diverging)
        };
        let m = base.overlay(&o);
        assert_eq!(m.kind, PaletteType::Qualitative);
        assert_eq!((m.c1, m.l1), (Some(60.0), Some(80.0)));
    }

    #[test]
    fn sequential_defaults() {
        let r = PaletteParams::new(PaletteType::Sequential).resolve().unwrap();
        let Resolved::Sequential(s) = r else { panic!() };
        assert_eq!(
            (s.h1, s.h2, s.c1, s.c2, s.l1, s.l2, s.p1, s.p2),
            (260.0, 260.0, 80.0, 0.0, 30.0, 90.0, 1.5, 1.5)
        );
    }

    #[test]
    fn invalid_power() {
        let p = PaletteParams {
            p1: Some(0.0),
            ..PaletteParams::new(PaletteType::Sequential)
        };
        assert!(matches!(p.resolve(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn type_names_parse() {
        assert_eq!(
            "Sequential (multi-hue)".parse::<PaletteType>().unwrap(),
            PaletteType::SequentialMulti
        );
        assert_eq!("divergingx".parse::<PaletteType>().unwrap(), PaletteType::Divergingx);
        assert!("rainbow".parse::<PaletteType>().is_err());
    }
}
