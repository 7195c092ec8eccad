//! HCL spectrum of a palette: per-color hue, chroma and luminance with the
//! hue smoothed and unwrapped so it can be drawn as a continuous line.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hex::{parse_colors, Hex};
use crate::space::{convert, Space};

/// Below this chroma a color's hue is considered unreliable and replaced by
/// interpolation from its neighbors.
pub const LOW_CHROMA: f64 = 8.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTrace {
    pub n: usize,
    /// Normalized `#RRGGBB[AA]` codes of the input.
    pub colors: Vec<String>,
    /// Smoothed, unwrapped hue; within `[−360, 360]` unless the palette
    /// winds more than once around the hue circle.
    pub hue: Vec<f64>,
    pub chroma: Vec<f64>,
    pub luminance: Vec<f64>,
    /// sRGB channels in `[0, 1]`.
    pub red: Vec<f64>,
    pub green: Vec<f64>,
    pub blue: Vec<f64>,
    /// Heuristic: some channel sits at 0x00 or 0xFF, so the color may have
    /// been clamped into the gamut.
    pub fixup_fired: Vec<bool>,
    /// All colors are (near) gray; hues are reported as 0.
    pub degenerate: bool,
}

/// Whether a hex code lies on the sRGB cube's surface.
pub fn on_gamut_surface(h: &Hex) -> bool {
    h.rgb.iter().any(|&v| v == 0 || v == 255)
}

/// Replaces unreliable hues by interpolation and unwraps the sequence.
///
/// Returns `None` when no hue is reliable.
pub fn smooth_hues(hue: &[f64], chroma: &[f64]) -> Option<Vec<f64>> {
    let reliable: Vec<usize> = (0..hue.len()).filter(|&i| chroma[i] >= LOW_CHROMA).collect();
    let first = *reliable.first()?;

    // Unwrap the reliable hues so that consecutive ones differ by at most 180.
    let mut anchors: Vec<(usize, f64)> = Vec::with_capacity(reliable.len());
    anchors.push((first, hue[first]));
    for &i in &reliable[1..] {
        let prev = anchors.last().expect("non-empty").1;
        let mut h = hue[i];
        while h - prev > 180.0 {
            h -= 360.0;
        }
        while h - prev < -180.0 {
            h += 360.0;
        }
        anchors.push((i, h));
    }

    // Linear interpolation in the index between anchors; constant beyond.
    let mut out = vec![0.0; hue.len()];
    let mut k = 0;
    for (i, v) in out.iter_mut().enumerate() {
        while k + 1 < anchors.len() && anchors[k + 1].0 <= i {
            k += 1;
        }
        let (i0, h0) = anchors[k];
        *v = if i <= i0 || k + 1 == anchors.len() {
            h0
        } else {
            let (i1, h1) = anchors[k + 1];
            h0 + (h1 - h0) * (i - i0) as f64 / (i1 - i0) as f64
        };
    }

    // Shift by whole turns into [0, 360] if the sequence fits, otherwise
    // so that the maximum lands in (0, 360]. Any sequence spanning at most
    // one turn then lies in [−360, 360].
    let lo = out.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = out.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let base = (lo / 360.0).floor() * 360.0;
    let shift = if hi - base <= 360.0 {
        base
    } else {
        ((hi - 360.0) / 360.0).ceil() * 360.0
    };
    Some(out.into_iter().map(|h| h - shift).collect())
}

/// Computes the HCL spectrum of hex colors (or color names).
pub fn spectrum<S: AsRef<str>>(colors: &[S]) -> Result<SpectrumTrace> {
    if colors.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let hexes = parse_colors(colors)?;
    spectrum_hex(&hexes)
}

pub fn spectrum_hex(hexes: &[Hex]) -> Result<SpectrumTrace> {
    let n = hexes.len();
    let mut t = SpectrumTrace {
        n,
        colors: hexes.iter().map(Hex::to_string).collect(),
        hue: Vec::with_capacity(n),
        chroma: Vec::with_capacity(n),
        luminance: Vec::with_capacity(n),
        red: Vec::with_capacity(n),
        green: Vec::with_capacity(n),
        blue: Vec::with_capacity(n),
        fixup_fired: hexes.iter().map(on_gamut_surface).collect(),
        degenerate: false,
    };
    for h in hexes {
        let srgb = h.to_color();
        let [l, c, hue] = convert(&srgb, Space::PolarLuv)?.coords;
        t.luminance.push(l);
        t.chroma.push(c);
        t.hue.push(hue);
        t.red.push(srgb.coords[0]);
        t.green.push(srgb.coords[1]);
        t.blue.push(srgb.coords[2]);
    }
    match smooth_hues(&t.hue, &t.chroma) {
        Some(h) => t.hue = h,
        None => {
            t.hue = vec![0.0; n];
            t.degenerate = true;
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn white_single() {
        let t = spectrum(&["#FFFFFF"]).unwrap();
        assert_eq!(t.n, 1);
        assert!(t.chroma[0] < 0.05, "{}", t.chroma[0]);
        assert!((t.luminance[0] - 100.0).abs() < 1e-6);
        assert!(t.degenerate);
        assert_eq!(t.hue, [0.0]);
    }

    #[test]
    fn unwraps_across_zero() {
        let h = smooth_hues(&[350.0, 10.0, 30.0], &[50.0; 3]).unwrap();
        // 350, 370, 390 climbs above 360 and is shifted down one turn.
        assert_eq!(h, [-10.0, 10.0, 30.0]);
        let down = smooth_hues(&[90.0, 30.0, 330.0], &[50.0; 3]).unwrap();
        assert_eq!(down, [90.0, 30.0, -30.0]);
    }

    #[test]
    fn interpolates_low_chroma() {
        let h = smooth_hues(&[100.0, 0.0, 200.0, 0.0], &[50.0, 1.0, 50.0, 1.0]).unwrap();
        assert_eq!(h, [100.0, 150.0, 200.0, 200.0]);
    }

    #[test]
    fn empty_is_error() {
        assert!(spectrum::<&str>(&[]).is_err());
    }
}
