//! Palette construction: HCL coordinates along the trajectories, then hex
//! encoding with optional gamut fixup, reversal and alpha.

use crate::error::{Error, Result};
use crate::hex::{encode_channel, Hex, MISSING};
use crate::space::{convert, Color, Space};

use super::params::{Diverging, Divergingx, PaletteParams, Qualitative, Resolved, Sequential};
use super::trajectory::Trajectory;

/// Post-processing applied after the colors are computed.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Output {
    /// Reverse the order of the colors.
    pub rev: bool,
    /// Opacity in `[0, 1]` appended to every hex code.
    pub alpha: Option<f64>,
}

/// Intensities `1, …, 0` for `n` colors; a single color sits at `i = 1`.
pub fn sequential_intensities(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![1.0],
        _ => (0..n).map(|k| (n - 1 - k) as f64 / (n - 1) as f64).collect(),
    }
}

/// Signed positions `1, …, −1` of a diverging palette, as `(left_arm, i)`
/// where `i = |t|`. Arms mirror each other exactly; the center of an odd
/// palette is `(true, 0)` and a single color is the center.
pub fn diverging_positions(n: usize) -> Vec<(bool, f64)> {
    match n {
        0 => Vec::new(),
        1 => vec![(true, 0.0)],
        _ => (0..n)
            .map(|k| {
                let num = (n - 1) as i64 - 2 * k as i64;
                (num >= 0, num.unsigned_abs() as f64 / (n - 1) as f64)
            })
            .collect(),
    }
}

pub fn qualitative_coords(n: usize, q: &Qualitative) -> Vec<Color> {
    if n == 0 {
        return Vec::new();
    }
    let h2 = q.h2.unwrap_or(q.h1 + 360.0 * (n - 1) as f64 / n as f64);
    let step = if n > 1 { (h2 - q.h1) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(|k| Color::hcl(q.l, q.c, q.h1 + k as f64 * step)).collect()
}

impl Sequential {
    pub fn hue(&self) -> Trajectory {
        Trajectory::linear(self.h1, self.h2, 1.0)
    }

    pub fn chroma(&self) -> Trajectory {
        Trajectory::chroma(self.c1, self.cmax, self.c2, self.p1)
    }

    pub fn luminance(&self) -> Trajectory {
        Trajectory::linear(self.l1, self.l2, self.p2)
    }

    /// The HCL color at intensity `i`.
    pub fn at(&self, i: f64) -> Color {
        Color::hcl(self.luminance().value(i), self.chroma().value(i), self.hue().value(i))
    }
}

pub fn sequential_coords(n: usize, s: &Sequential) -> Vec<Color> {
    sequential_intensities(n).into_iter().map(|i| s.at(i)).collect()
}

impl Diverging {
    /// The arm shared by both sides, up to the hue.
    fn arm(&self, hue: f64) -> Sequential {
        Sequential {
            h1: hue,
            h2: hue,
            c1: self.c1,
            c2: 0.0,
            cmax: self.cmax,
            l1: self.l1,
            l2: self.l2,
            p1: self.p1,
            p2: self.p2,
        }
    }

    pub fn at(&self, left: bool, i: f64) -> Color {
        // The center (i = 0) takes the second hue; its chroma is zero.
        let hue = if left && i > 0.0 { self.h1 } else { self.h2 };
        self.arm(hue).at(i)
    }
}

pub fn diverging_coords(n: usize, d: &Diverging) -> Vec<Color> {
    diverging_positions(n)
        .into_iter()
        .map(|(left, i)| d.at(left, i))
        .collect()
}

impl Divergingx {
    pub fn at(&self, left: bool, i: f64) -> Color {
        if left {
            self.left_arm().at(i)
        } else {
            self.right_arm().at(i)
        }
    }
}

pub fn divergingx_coords(n: usize, d: &Divergingx) -> Vec<Color> {
    diverging_positions(n)
        .into_iter()
        .map(|(left, i)| d.at(left, i))
        .collect()
}

pub fn coords(n: usize, r: &Resolved) -> Vec<Color> {
    match r {
        Resolved::Qualitative(q) => qualitative_coords(n, q),
        Resolved::Sequential(s) => sequential_coords(n, s),
        Resolved::Diverging(d) => diverging_coords(n, d),
        Resolved::Divergingx(d) => divergingx_coords(n, d),
    }
}

/// The 8-bit alpha code of an opacity in `[0, 1]`.
pub fn alpha_byte(alpha: f64) -> Result<u8> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::invalid(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    Ok(encode_channel(alpha, true).unwrap_or(255))
}

/// Hex-encodes colors; without fixup out-of-gamut colors become [`MISSING`].
pub fn encode(colors: &[Color], fixup: bool, out: &Output) -> Result<Vec<String>> {
    let alpha = out.alpha.map(alpha_byte).transpose()?;
    let mut hexes = colors
        .iter()
        .map(|c| {
            Ok(match Hex::from_color(c, fixup)? {
                Some(h) => h.with_alpha(alpha).to_string(),
                None => MISSING.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if out.rev {
        hexes.reverse();
    }
    Ok(hexes)
}

/// Generates `n` colors from ad-hoc parameters.
pub fn generate(n: usize, params: &PaletteParams, out: &Output) -> Result<Vec<String>> {
    let resolved = params.resolve()?;
    encode(&coords(n, &resolved), params.fixup_or_default(), out)
}

pub fn qualitative_palette(n: usize, q: &Qualitative) -> Vec<String> {
    encode_fixed(&qualitative_coords(n, q))
}

pub fn sequential_palette(n: usize, s: &Sequential) -> Vec<String> {
    encode_fixed(&sequential_coords(n, s))
}

pub fn diverging_palette(n: usize, d: &Diverging) -> Vec<String> {
    encode_fixed(&diverging_coords(n, d))
}

pub fn divergingx_palette(n: usize, d: &Divergingx) -> Vec<String> {
    encode_fixed(&divergingx_coords(n, d))
}

fn encode_fixed(colors: &[Color]) -> Vec<String> {
    encode(colors, true, &Output::default()).expect("generated coordinates are finite")
}

/// Piecewise-linear interpolation through `(x, y)` knots sorted by
/// descending `x`; `x` outside the knots is clamped.
fn interpolate_desc(knots: &[(f64, f64)], x: f64) -> f64 {
    let (first, last) = (knots[0], knots[knots.len() - 1]);
    if x >= first.0 {
        return first.1;
    }
    if x <= last.0 {
        return last.1;
    }
    for w in knots.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x <= x0 && x >= x1 {
            return y0 + (y1 - y0) * (x0 - x) / (x0 - x1);
        }
    }
    unreachable!("knots cover the clamped range")
}

/// HCL coordinates of the hand-built Cividis approximation: luminance
/// `92 − 79 i`, chroma interpolated through `(1, 30), (0.9, 50), (0.5, 0),
/// (0, 95)` and hue 255 for `i ≥ 0.5`, 75 below.
pub fn cividis_manual_coords(n: usize) -> Vec<Color> {
    const CHROMA: [(f64, f64); 4] = [(1.0, 30.0), (0.9, 50.0), (0.5, 0.0), (0.0, 95.0)];
    sequential_intensities(n)
        .into_iter()
        .map(|i| {
            let h = if i < 0.5 { 75.0 } else { 255.0 };
            Color::hcl(92.0 - (92.0 - 13.0) * i, interpolate_desc(&CHROMA, i), h)
        })
        .collect()
}

pub fn cividis_manual(n: usize) -> Result<Vec<String>> {
    if n < 2 {
        return Err(Error::invalid(format!("cividis_manual needs n >= 2, got {n}")));
    }
    Ok(encode_fixed(&cividis_manual_coords(n)))
}

/// Qualitative palette over `[start, end]` (default: the full wheel) with
/// chroma 50 and luminance 70 unless overridden.
pub fn rainbow_hcl(n: usize, c: Option<f64>, l: Option<f64>, start: Option<f64>, end: Option<f64>) -> Vec<String> {
    let q = Qualitative {
        h1: start.unwrap_or(0.0),
        h2: end,
        c: c.unwrap_or(50.0),
        l: l.unwrap_or(70.0),
    };
    qualitative_palette(n, &q)
}

/// Red to light yellow sequential palette.
pub fn heat_hcl(n: usize) -> Vec<String> {
    sequential_palette(
        n,
        &Sequential {
            h1: 0.0,
            h2: 90.0,
            c1: 100.0,
            c2: 30.0,
            cmax: None,
            l1: 50.0,
            l2: 90.0,
            p1: 0.2,
            p2: 1.0,
        },
    )
}

/// Green over yellow to light gray sequential palette.
pub fn terrain_hcl(n: usize) -> Vec<String> {
    sequential_palette(
        n,
        &Sequential {
            h1: 130.0,
            h2: 0.0,
            c1: 80.0,
            c2: 0.0,
            cmax: None,
            l1: 60.0,
            l2: 95.0,
            p1: 0.1,
            p2: 1.0,
        },
    )
}

/// Diverging palette in HSV space: hue `h1` on the left arm, `h2` on the
/// right, saturation `|t|^power` with `t` running from −1 to 1 through
/// white, value `v`.
pub fn diverging_hsv(n: usize, h1: f64, h2: f64, v: f64, power: f64) -> Result<Vec<String>> {
    if !(0.0..=1.0).contains(&v) || !(power > 0.0 && power.is_finite()) || !h1.is_finite() || !h2.is_finite() {
        return Err(Error::invalid(
            "diverging_hsv needs finite hues, v in [0, 1] and power > 0",
        ));
    }
    let colors: Vec<Color> = diverging_positions(n)
        .into_iter()
        .map(|(left, i)| {
            let h = if left && i > 0.0 { h1 } else { h2 };
            Color::new(Space::Hsv, [h.rem_euclid(360.0), i.powf(power), v])
        })
        .collect();
    colors
        .iter()
        .map(|c| {
            let srgb = convert(c, Space::Srgb)?;
            Ok(Hex::from_srgb(srgb.coords, true)
                .expect("fixup always encodes")
                .to_string())
        })
        .collect()
}
