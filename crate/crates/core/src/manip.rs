//! Color manipulation: desaturation, lightening/darkening, maximum chroma and
//! additive mixing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hex::{parse_colors, srgb_in_gamut, Hex};
use crate::space::{convert, Color, Space};

/// Search interval and resolution of [`max_chroma`].
const CHROMA_CEILING: f64 = 200.0;
const BISECTION_STEPS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ManipSpace {
    /// Adjust HCL luminance, keep chroma and hue.
    Hcl,
    /// Adjust HLS lightness.
    Hls,
    /// Luminance from the HCL adjustment, chroma from the HLS adjustment.
    Combined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Adjustment {
    Relative,
    Absolute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LightenMethod {
    pub space: ManipSpace,
    pub adjustment: Adjustment,
}

impl LightenMethod {
    pub const fn new(space: ManipSpace, adjustment: Adjustment) -> Self {
        LightenMethod { space, adjustment }
    }

    /// Default for [`lighten`]: HCL, relative.
    pub const LIGHTEN: LightenMethod = LightenMethod::new(ManipSpace::Hcl, Adjustment::Relative);
    /// Default for [`darken`]: combined, relative.
    pub const DARKEN: LightenMethod = LightenMethod::new(ManipSpace::Combined, Adjustment::Relative);
}

impl FromStr for ManipSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hcl" => Ok(ManipSpace::Hcl),
            "hls" => Ok(ManipSpace::Hls),
            "combined" => Ok(ManipSpace::Combined),
            _ => Err(Error::invalid(format!(
                "unknown space {s:?} (expected hcl, hls or combined)"
            ))),
        }
    }
}

impl FromStr for Adjustment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "relative" => Ok(Adjustment::Relative),
            "absolute" => Ok(Adjustment::Absolute),
            _ => Err(Error::invalid(format!(
                "unknown adjustment {s:?} (expected relative or absolute)"
            ))),
        }
    }
}

impl fmt::Display for ManipSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ManipSpace::Hcl => "hcl",
            ManipSpace::Hls => "hls",
            ManipSpace::Combined => "combined",
        })
    }
}

impl fmt::Display for Adjustment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Adjustment::Relative => "relative",
            Adjustment::Absolute => "absolute",
        })
    }
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must lie in [0, 1], got {v}")))
    }
}

/// Encodes with fixup, keeping the alpha byte of `like`.
fn encode_like(c: &Color, like: &Hex) -> Result<Hex> {
    let h = Hex::from_color(c, true)?.expect("fixup always encodes");
    Ok(h.with_alpha(like.alpha))
}

fn map_hexes<S: AsRef<str>>(colors: &[S], f: impl Fn(&Hex) -> Result<Hex>) -> Result<Vec<String>> {
    parse_colors(colors)?
        .iter()
        .map(|h| f(h).map(|h| h.to_string()))
        .collect()
}

fn polar(h: &Hex) -> Result<[f64; 3]> {
    Ok(convert(&h.to_color(), Space::PolarLuv)?.coords)
}

/// Scales HCL chroma by `1 − amount`; `amount = 1` yields grays.
pub fn desaturate<S: AsRef<str>>(colors: &[S], amount: f64) -> Result<Vec<String>> {
    check_unit("amount", amount)?;
    map_hexes(colors, |h| {
        if amount == 0.0 {
            return Ok(*h);
        }
        let [l, c, hue] = polar(h)?;
        encode_like(&Color::hcl(l, c * (1.0 - amount), hue), h)
    })
}

/// New lightness on a scale whose maximum is `full` (100 for HCL, 1 for HLS).
fn shift(v: f64, amount: f64, adj: Adjustment, lighten: bool, full: f64) -> f64 {
    let out = match (adj, lighten) {
        (Adjustment::Relative, true) => full - (full - v) * (1.0 - amount),
        (Adjustment::Absolute, true) => v + full * amount,
        (Adjustment::Relative, false) => v * (1.0 - amount),
        (Adjustment::Absolute, false) => v - full * amount,
    };
    out.clamp(0.0, full)
}

fn adjust(h: &Hex, amount: f64, method: LightenMethod, lighten: bool) -> Result<Hex> {
    if amount == 0.0 {
        return Ok(*h);
    }
    let hcl_path = || -> Result<[f64; 3]> {
        let [l, c, hue] = polar(h)?;
        Ok([shift(l, amount, method.adjustment, lighten, 100.0), c, hue])
    };
    let hls_path = || -> Result<Color> {
        let [hue, l, s] = convert(&h.to_color(), Space::Hls)?.coords;
        Ok(Color::new(
            Space::Hls,
            [hue, shift(l, amount, method.adjustment, lighten, 1.0), s],
        ))
    };
    let out = match method.space {
        ManipSpace::Hcl => {
            let [l, c, hue] = hcl_path()?;
            Color::hcl(l, c, hue)
        }
        ManipSpace::Hls => hls_path()?,
        ManipSpace::Combined => {
            let [l, _, hue] = hcl_path()?;
            let c = convert(&hls_path()?, Space::PolarLuv)?.coords[1];
            Color::hcl(l, c, hue)
        }
    };
    encode_like(&out, h)
}

/// Lightens colors by `amount` in `[0, 1]`.
pub fn lighten<S: AsRef<str>>(colors: &[S], amount: f64, method: LightenMethod) -> Result<Vec<String>> {
    check_unit("amount", amount)?;
    map_hexes(colors, |h| adjust(h, amount, method, true))
}

/// Darkens colors by `amount` in `[0, 1]`.
pub fn darken<S: AsRef<str>>(colors: &[S], amount: f64, method: LightenMethod) -> Result<Vec<String>> {
    check_unit("amount", amount)?;
    map_hexes(colors, |h| adjust(h, amount, method, false))
}

fn hcl_in_gamut(l: f64, c: f64, h: f64) -> bool {
    convert(&Color::hcl(l, c, h), Space::Srgb).is_ok_and(|s| srgb_in_gamut(s.coords))
}

/// Approximate maximum chroma of hue `h` at luminance `l` such that the
/// color still has an 8-bit sRGB code, floored to two decimals.
pub fn max_chroma(h: f64, l: f64) -> Result<f64> {
    if !h.is_finite() || !(0.0..=100.0).contains(&l) {
        return Err(Error::invalid(format!(
            "max_chroma needs a finite hue and luminance in [0, 100], got h={h}, l={l}"
        )));
    }
    // Black and white have no chroma.
    if l <= 0.0 || l >= 100.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, CHROMA_CEILING);
    if hcl_in_gamut(l, hi, h) {
        return Ok(hi);
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if hcl_in_gamut(l, mid, h) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo * 100.0).floor() / 100.0)
}

/// [`max_chroma`] over two vectors, recycling the shorter one.
pub fn max_chroma_vec(h: &[f64], l: &[f64]) -> Result<Vec<f64>> {
    if h.is_empty() || l.is_empty() {
        return Err(Error::invalid("max_chroma needs at least one hue and one luminance"));
    }
    let n = h.len().max(l.len());
    (0..n).map(|i| max_chroma(h[i % h.len()], l[i % l.len()])).collect()
}

/// Additive mixture `(1 − alpha)·a + alpha·b` in the space of `a`, which
/// must be `RGB` or `XYZ`; `b` is converted to that space first.
pub fn mixcolor(alpha: f64, a: &Color, b: &Color) -> Result<Color> {
    check_unit("alpha", alpha)?;
    if !matches!(a.space, Space::Rgb | Space::Xyz) {
        return Err(Error::invalid(format!(
            "mixcolor needs an additive space (RGB or XYZ), got {}",
            a.space
        )));
    }
    let b = convert(b, a.space)?;
    let mut coords = [0.0; 3];
    for (k, out) in coords.iter_mut().enumerate() {
        *out = (1.0 - alpha) * a.coords[k] + alpha * b.coords[k];
    }
    Ok(Color::new(a.space, coords))
}
