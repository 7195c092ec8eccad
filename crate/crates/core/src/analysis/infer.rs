//! Palette-type inference from the luminance trajectory.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::spectrum::SpectrumTrace;

/// Luminance ranges below this count as constant (qualitative).
pub const FLAT_RANGE: f64 = 10.0;
/// Steps against the trend up to this size are treated as noise.
pub const MONOTONE_NOISE: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InferredType {
    Qualitative,
    Sequential,
    Diverging,
}

impl InferredType {
    pub fn name(self) -> &'static str {
        match self {
            InferredType::Qualitative => "qualitative",
            InferredType::Sequential => "sequential",
            InferredType::Diverging => "diverging",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    /// `max(L) − min(L)`.
    pub luminance_range: f64,
    /// +1 increasing, −1 decreasing, 0 otherwise (within the noise margin).
    pub trend: i8,
    /// Index of the interior extremum of a diverging trajectory.
    pub extremum: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaletteTypeGuess {
    #[serde(rename = "type")]
    pub kind: InferredType,
    /// No rule matched cleanly; `kind` is a fallback.
    pub low_confidence: bool,
    pub evidence: Evidence,
}

fn monotone(l: &[f64], sign: f64) -> bool {
    l.windows(2).all(|w| sign * (w[1] - w[0]) >= -MONOTONE_NOISE)
}

/// Index `k` (interior) such that `l[..=k]` rises and `l[k..]` falls, or the
/// mirror image for a valley.
fn single_extremum(l: &[f64]) -> Option<usize> {
    let n = l.len();
    let argmax = (0..n).max_by(|&a, &b| l[a].total_cmp(&l[b]))?;
    let argmin = (0..n).min_by(|&a, &b| l[a].total_cmp(&l[b]))?;
    let interior = |k: usize| k > 0 && k + 1 < n;
    if interior(argmax) && monotone(&l[..=argmax], 1.0) && monotone(&l[argmax..], -1.0) {
        return Some(argmax);
    }
    if interior(argmin) && monotone(&l[..=argmin], -1.0) && monotone(&l[argmin..], 1.0) {
        return Some(argmin);
    }
    None
}

/// Classifies a palette from its luminance trajectory:
/// nearly constant → qualitative; monotone → sequential; one interior
/// extremum with monotone arms → diverging; anything else is reported as a
/// low-confidence sequential palette.
pub fn infer_type(trace: &SpectrumTrace) -> Result<PaletteTypeGuess> {
    let l = &trace.luminance;
    if l.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: l.len(),
        });
    }
    let max = l.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = l.iter().copied().fold(f64::INFINITY, f64::min);
    let range = max - min;
    let trend = if monotone(l, 1.0) {
        1
    } else if monotone(l, -1.0) {
        -1
    } else {
        0
    };
    let extremum = single_extremum(l);
    let evidence = Evidence {
        luminance_range: range,
        trend,
        extremum,
    };
    let (kind, low_confidence) = if range < FLAT_RANGE {
        (InferredType::Qualitative, false)
    } else if trend != 0 {
        (InferredType::Sequential, false)
    } else if extremum.is_some() {
        (InferredType::Diverging, false)
    } else {
        (InferredType::Sequential, true)
    };
    Ok(PaletteTypeGuess {
        kind,
        low_confidence,
        evidence,
    })
}
