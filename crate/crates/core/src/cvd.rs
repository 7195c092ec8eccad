//! Color-vision-deficiency emulation with the Machado et al. (2009)
//! transformation matrices.
//!
//! The matrices are tabulated at severities 0, 0.1, …, 1; other severities are
//! interpolated entrywise. They are applied to gamma-encoded sRGB channels on
//! the 0–255 scale; results are clamped and truncated to integer codes.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hex::{parse_colors, Hex};
use crate::par::{self, Execution};

const MATRICES_JSON: &str = include_str!("../data/cvd_matrices.json");

/// Tabulated severity levels per kind.
const LEVELS: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CvdKind {
    /// Green cone cells defective.
    Deutan,
    /// Red cone cells defective.
    Protan,
    /// Blue cone cells defective.
    Tritan,
}

impl CvdKind {
    pub const ALL: [CvdKind; 3] = [CvdKind::Deutan, CvdKind::Protan, CvdKind::Tritan];

    pub fn name(self) -> &'static str {
        match self {
            CvdKind::Deutan => "deutan",
            CvdKind::Protan => "protan",
            CvdKind::Tritan => "tritan",
        }
    }
}

impl fmt::Display for CvdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CvdKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "deutan" | "deuteranope" | "deuteranomaly" => Ok(CvdKind::Deutan),
            "protan" | "protanope" | "protanomaly" => Ok(CvdKind::Protan),
            "tritan" | "tritanope" | "tritanomaly" => Ok(CvdKind::Tritan),
            _ => Err(Error::invalid(format!(
                "unknown deficiency {s:?} (expected deutan, protan or tritan)"
            ))),
        }
    }
}

type Table = [[[f64; 9]; LEVELS]; 3];

#[derive(Deserialize)]
struct RawTable {
    deutan: Vec<[f64; 9]>,
    protan: Vec<[f64; 9]>,
    tritan: Vec<[f64; 9]>,
}

static TABLE: LazyLock<Table> = LazyLock::new(|| {
    let raw: RawTable = serde_json::from_str(MATRICES_JSON).expect("CVD matrix table is valid JSON");
    let take = |v: Vec<[f64; 9]>| -> [[f64; 9]; LEVELS] { v.try_into().expect("11 severity levels per kind") };
    [take(raw.deutan), take(raw.protan), take(raw.tritan)]
});

fn tabulated(kind: CvdKind, level: usize) -> [f64; 9] {
    let k = match kind {
        CvdKind::Deutan => 0,
        CvdKind::Protan => 1,
        CvdKind::Tritan => 2,
    };
    TABLE[k][level]
}

/// A 3×3 matrix (row-major) mapping `(R, G, B)` to the simulated channels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CvdMatrix {
    pub kind: CvdKind,
    pub severity: f64,
    pub m: [[f64; 3]; 3],
}

impl CvdMatrix {
    pub fn apply(&self, rgb: [f64; 3]) -> [f64; 3] {
        let m = &self.m;
        [0, 1, 2].map(|r| m[r][0] * rgb[0] + m[r][1] * rgb[1] + m[r][2] * rgb[2])
    }

    /// Transforms one 8-bit color: clamp to `[0, 255]`, truncate.
    pub fn apply_u8(&self, rgb: [u8; 3]) -> [u8; 3] {
        self.apply(rgb.map(f64::from)).map(|v| v.clamp(0.0, 255.0) as u8)
    }
}

/// The transformation matrix for `kind` at `severity` in `[0, 1]`.
pub fn cvd_matrix(kind: CvdKind, severity: f64) -> Result<CvdMatrix> {
    if !(0.0..=1.0).contains(&severity) {
        return Err(Error::invalid(format!("severity must lie in [0, 1], got {severity}")));
    }
    let x = severity * (LEVELS - 1) as f64;
    let lo = x.floor() as usize;
    let hi = x.ceil() as usize;
    let w = x - lo as f64;
    let (a, b) = (tabulated(kind, lo), tabulated(kind, hi));
    let mut m = [[0.0; 3]; 3];
    for (i, v) in m.iter_mut().flatten().enumerate() {
        *v = if lo == hi { a[i] } else { (1.0 - w) * a[i] + w * b[i] };
    }
    Ok(CvdMatrix { kind, severity, m })
}

/// Simulates a deficiency on hex colors; alpha bytes pass through.
pub fn simulate_cvd<S: AsRef<str>>(colors: &[S], m: &CvdMatrix) -> Result<Vec<String>> {
    Ok(simulate_hex(&parse_colors(colors)?, m)
        .iter()
        .map(Hex::to_string)
        .collect())
}

pub fn simulate_hex(colors: &[Hex], m: &CvdMatrix) -> Vec<Hex> {
    colors
        .iter()
        .map(|h| Hex {
            rgb: m.apply_u8(h.rgb),
            alpha: h.alpha,
        })
        .collect()
}

/// Simulates a deficiency in place on an interleaved RGBA8 pixel buffer.
/// Rows of `width` pixels are distributed over threads with
/// [`Execution::Parallel`]; output is identical either way.
pub fn simulate_rgba8(pixels: &mut [u8], width: usize, m: &CvdMatrix, exec: Execution) {
    let row = width.max(1) * 4;
    par::for_each_chunk_mut(pixels, row, exec, |chunk| {
        for px in chunk.chunks_exact_mut(4) {
            let out = m.apply_u8([px[0], px[1], px[2]]);
            px[..3].copy_from_slice(&out);
        }
    });
}

pub fn deutan<S: AsRef<str>>(colors: &[S], severity: f64) -> Result<Vec<String>> {
    simulate_cvd(colors, &cvd_matrix(CvdKind::Deutan, severity)?)
}

pub fn protan<S: AsRef<str>>(colors: &[S], severity: f64) -> Result<Vec<String>> {
    simulate_cvd(colors, &cvd_matrix(CvdKind::Protan, severity)?)
}

pub fn tritan<S: AsRef<str>>(colors: &[S], severity: f64) -> Result<Vec<String>> {
    simulate_cvd(colors, &cvd_matrix(CvdKind::Tritan, severity)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_checksum() {
        // Guards the transcription: sum of all entries and of |entries|,
        // rounded to 1e-6 (the precision of the table).
        let mut sum = 0.0;
        let mut abs = 0.0;
        for kind in CvdKind::ALL {
            for level in 0..LEVELS {
                for v in tabulated(kind, level) {
                    sum += v;
                    abs += v.abs();
                }
            }
        }
        assert_eq!((sum * 1e6).round() / 1e6, 99.000004);
        assert_eq!((abs * 1e6).round() / 1e6, 108.73598);
    }

    #[test]
    fn rows_sum_to_one() {
        for kind in CvdKind::ALL {
            for level in 0..LEVELS {
                let m = tabulated(kind, level);
                for r in 0..3 {
                    let s: f64 = m[3 * r..3 * r + 3].iter().sum();
                    assert!((s - 1.0).abs() < 0.01, "{kind} level {level} row {r}: {s}");
                }
            }
        }
    }

    #[test]
    fn severity_zero_is_identity() {
        for kind in CvdKind::ALL {
            let m = cvd_matrix(kind, 0.0).unwrap().m;
            assert_eq!(m, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        }
    }

    #[test]
    fn interpolation_midpoint() {
        let mid = cvd_matrix(CvdKind::Deutan, 0.55).unwrap().m;
        let a = tabulated(CvdKind::Deutan, 5);
        let b = tabulated(CvdKind::Deutan, 6);
        for (i, v) in mid.iter().flatten().enumerate() {
            assert!((v - 0.5 * (a[i] + b[i])).abs() < 1e-12);
        }
    }

    #[test]
    fn severity_range() {
        assert!(cvd_matrix(CvdKind::Protan, 1.01).is_err());
        assert!(cvd_matrix(CvdKind::Protan, -0.1).is_err());
        assert!(cvd_matrix(CvdKind::Protan, f64::NAN).is_err());
    }

    #[test]
    fn deutan_rainbow() {
        let input = [
            "#FF0000FF",
            "#FF6600FF",
            "#FFCC00FF",
            "#CCFF00FF",
            "#66FF00FF",
            "#00FF00FF",
            "#00FF66FF",
            "#00FFCCFF",
            "#00CCFFFF",
            "#0066FFFF",
            "#0000FFFF",
        ];
        let want = [
            "#5D4700FF",
            "#B58C01FF",
            "#FFD005FF",
            "#FFE408FF",
            "#FFC809FF",
            "#DBAB0AFF",
            "#C4B06DFF",
            "#ACB5D0FF",
            "#7595FFFF",
            "#1D50FBFF",
            "#000CF7FF",
        ];
        assert_eq!(deutan(&input, 1.0).unwrap(), want);
    }

    #[test]
    fn parse_error_index() {
        assert!(matches!(
            protan(&["#000000", "#12"], 1.0),
            Err(Error::Parse { index: Some(1), .. })
        ));
    }

    #[test]
    fn rgba_buffer_matches_hex_path() {
        let m = cvd_matrix(CvdKind::Tritan, 0.7).unwrap();
        let mut px = vec![10, 200, 30, 255, 255, 0, 128, 7];
        let expect: Vec<u8> = px
            .chunks(4)
            .flat_map(|p| {
                let o = m.apply_u8([p[0], p[1], p[2]]);
                [o[0], o[1], o[2], p[3]]
            })
            .collect();
        simulate_rgba8(&mut px, 2, &m, Execution::Sequential);
        assert_eq!(px, expect);
    }
}
