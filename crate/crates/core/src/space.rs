//! Color spaces and the conversion graph between them.
//!
//! Every conversion is routed through a small graph:
//!
//! ```text
//!   polarLUV <-> LUV <-+
//!                      +-> XYZ <-> RGB <-> sRGB <-> {HSV, HLS}
//!   polarLAB <-> LAB <-+
//! ```
//!
//! Coordinates are stored in the native order of each space: `R,G,B` for
//! `RGB`/`sRGB`, `H,S,V` for `HSV`, `H,L,S` for `HLS`, `X,Y,Z` for `XYZ`,
//! `L,U,V` for `LUV`, `L,A,B` for `LAB` and `L,C,H` for the polar spaces.
//! XYZ is scaled so that the reference white has `Y = 100`.

use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    #[serde(rename = "RGB")]
    Rgb,
    #[serde(rename = "sRGB")]
    Srgb,
    #[serde(rename = "HSV")]
    Hsv,
    #[serde(rename = "HLS")]
    Hls,
    #[serde(rename = "XYZ")]
    Xyz,
    #[serde(rename = "LUV")]
    Luv,
    #[serde(rename = "LAB")]
    Lab,
    #[serde(rename = "polarLUV")]
    PolarLuv,
    #[serde(rename = "polarLAB")]
    PolarLab,
}

impl Space {
    pub const ALL: [Space; 9] = [
        Space::Rgb,
        Space::Srgb,
        Space::Hsv,
        Space::Hls,
        Space::Xyz,
        Space::Luv,
        Space::Lab,
        Space::PolarLuv,
        Space::PolarLab,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Space::Rgb => "RGB",
            Space::Srgb => "sRGB",
            Space::Hsv => "HSV",
            Space::Hls => "HLS",
            Space::Xyz => "XYZ",
            Space::Luv => "LUV",
            Space::Lab => "LAB",
            Space::PolarLuv => "polarLUV",
            Space::PolarLab => "polarLAB",
        }
    }

    /// Names of the three coordinates, in storage order.
    pub fn axes(self) -> [&'static str; 3] {
        match self {
            Space::Rgb | Space::Srgb => ["R", "G", "B"],
            Space::Hsv => ["H", "S", "V"],
            Space::Hls => ["H", "L", "S"],
            Space::Xyz => ["X", "Y", "Z"],
            Space::Luv => ["L", "U", "V"],
            Space::Lab => ["L", "A", "B"],
            Space::PolarLuv | Space::PolarLab => ["L", "C", "H"],
        }
    }

    fn is_rgb_family(self) -> bool {
        matches!(self, Space::Rgb | Space::Srgb | Space::Hsv | Space::Hls)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let space = match key.as_str() {
            "rgb" => Space::Rgb,
            "srgb" => Space::Srgb,
            "hsv" => Space::Hsv,
            "hls" => Space::Hls,
            "xyz" => Space::Xyz,
            "luv" => Space::Luv,
            "lab" => Space::Lab,
            "polarluv" | "hcl" => Space::PolarLuv,
            "polarlab" => Space::PolarLab,
            _ => {
                return Err(Error::invalid(format!(
                    "unknown color space {s:?}; expected one of RGB, sRGB, HSV, HLS, XYZ, LUV, LAB, polarLUV, polarLAB"
                )))
            }
        };
        Ok(space)
    }
}

/// A triplet of coordinates tagged with the space it lives in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Color {
    pub space: Space,
    pub coords: [f64; 3],
}

impl Color {
    pub const fn new(space: Space, coords: [f64; 3]) -> Self {
        Color { space, coords }
    }

    pub const fn srgb(r: f64, g: f64, b: f64) -> Self {
        Color::new(Space::Srgb, [r, g, b])
    }

    pub const fn rgb(r: f64, g: f64, b: f64) -> Self {
        Color::new(Space::Rgb, [r, g, b])
    }

    /// HCL color, i.e. polar LUV. Note the argument order `(l, c, h)`.
    pub const fn hcl(l: f64, c: f64, h: f64) -> Self {
        Color::new(Space::PolarLuv, [l, c, h])
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    /// Converts to `target` under the process-wide white point.
    pub fn to(&self, target: Space) -> Result<Color> {
        convert(self, target)
    }
}

/// Reference white in XYZ, normalized so that `Y = 100`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WhitePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl WhitePoint {
    pub const D65: WhitePoint = WhitePoint {
        x: 95.047,
        y: 100.0,
        z: 108.883,
    };

    /// Builds a white point, rescaling so that `Y = 100`.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) || x <= 0.0 || y <= 0.0 || z <= 0.0 {
            return Err(Error::invalid(format!(
                "white point components must be positive and finite, got ({x}, {y}, {z})"
            )));
        }
        let k = 100.0 / y;
        Ok(WhitePoint {
            x: x * k,
            y: 100.0,
            z: z * k,
        })
    }

    fn uv_prime(&self) -> (f64, f64) {
        let t = self.x + 15.0 * self.y + 3.0 * self.z;
        (4.0 * self.x / t, 9.0 * self.y / t)
    }
}

impl Default for WhitePoint {
    fn default() -> Self {
        WhitePoint::D65
    }
}

// Writes must be serialized by the caller; reads between writes are safe.
static WHITE_POINT: RwLock<WhitePoint> = RwLock::new(WhitePoint::D65);

pub fn whitepoint() -> WhitePoint {
    *WHITE_POINT.read().unwrap_or_else(|e| e.into_inner())
}

pub fn set_whitepoint(wp: WhitePoint) -> Result<()> {
    let wp = WhitePoint::new(wp.x, wp.y, wp.z)?;
    *WHITE_POINT.write().unwrap_or_else(|e| e.into_inner()) = wp;
    Ok(())
}

// Linear RGB -> XYZ (unit white luminance) and its inverse, sRGB primaries.
// These six-digit coefficients are the ones the published hex and sRGB
// reference values were produced with; a matrix derived exactly from the
// primaries moves sRGB results by ~1e-5.
const RGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.412453, 0.357580, 0.180423],
    [0.212671, 0.715160, 0.072169],
    [0.019334, 0.119193, 0.950227],
];
const XYZ_TO_RGB: [[f64; 3]; 3] = [
    [3.240479, -1.537150, -0.498535],
    [-0.969256, 1.875992, 0.041556],
    [0.055648, -0.204043, 1.057311],
];

const XYZ_SCALE: f64 = 100.0;

// CIE 1976 constants.
const CIE_EPSILON: f64 = 216.0 / 24389.0;
const CIE_KAPPA: f64 = 24389.0 / 27.0;

fn mat_mul(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// sRGB transfer function: linear light to gamma-encoded.
pub fn gamma_encode(u: f64) -> f64 {
    if u == 1.0 {
        1.0
    } else if u > 0.0031308 {
        1.055 * u.powf(1.0 / 2.4) - 0.055
    } else {
        12.92 * u
    }
}

/// Inverse sRGB transfer function: gamma-encoded to linear light.
pub fn gamma_decode(u: f64) -> f64 {
    if u == 1.0 {
        1.0
    } else if u > 0.04045 {
        ((u + 0.055) / 1.055).powf(2.4)
    } else {
        u / 12.92
    }
}

fn srgb_to_rgb(c: [f64; 3]) -> [f64; 3] {
    c.map(gamma_decode)
}

fn rgb_to_srgb(c: [f64; 3]) -> [f64; 3] {
    c.map(gamma_encode)
}

fn rgb_to_xyz(c: [f64; 3]) -> [f64; 3] {
    mat_mul(&RGB_TO_XYZ, c).map(|v| v * XYZ_SCALE)
}

fn xyz_to_rgb(c: [f64; 3]) -> [f64; 3] {
    mat_mul(&XYZ_TO_RGB, c.map(|v| v / XYZ_SCALE))
}

fn srgb_to_hsv([r, g, b]: [f64; 3]) -> [f64; 3] {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;
    let v = max;
    let s = if max > 0.0 { delta / max } else { 0.0 };
    let h = rgb_hue(r, g, b, max, delta);
    [h, s, v]
}

fn srgb_to_hls([r, g, b]: [f64; 3]) -> [f64; 3] {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;
    let l = (max + min) / 2.0;
    let s = if delta == 0.0 {
        0.0
    } else if l <= 0.5 {
        delta / (max + min)
    } else {
        delta / (2.0 - max - min)
    };
    let h = rgb_hue(r, g, b, max, delta);
    [h, l, s]
}

fn rgb_hue(r: f64, g: f64, b: f64, max: f64, delta: f64) -> f64 {
    if delta == 0.0 {
        return 0.0;
    }
    let h = if r == max {
        (g - b) / delta
    } else if g == max {
        2.0 + (b - r) / delta
    } else {
        4.0 + (r - g) / delta
    };
    (h * 60.0).rem_euclid(360.0)
}

fn hsv_to_srgb([h, s, v]: [f64; 3]) -> [f64; 3] {
    if s == 0.0 {
        return [v, v, v];
    }
    let h = h.rem_euclid(360.0) / 60.0;
    let sector = h.floor();
    let f = h - sector;
    let p = v * (1.0 - s);
    let q = v * (1.0 - s * f);
    let t = v * (1.0 - s * (1.0 - f));
    match sector as i32 {
        0 => [v, t, p],
        1 => [q, v, p],
        2 => [p, v, t],
        3 => [p, q, v],
        4 => [t, p, v],
        _ => [v, p, q],
    }
}

fn hls_to_srgb([h, l, s]: [f64; 3]) -> [f64; 3] {
    if s == 0.0 {
        return [l, l, l];
    }
    let m2 = if l <= 0.5 { l * (1.0 + s) } else { l + s - l * s };
    let m1 = 2.0 * l - m2;
    let channel = |hue: f64| {
        let hue = hue.rem_euclid(360.0);
        if hue < 60.0 {
            m1 + (m2 - m1) * hue / 60.0
        } else if hue < 180.0 {
            m2
        } else if hue < 240.0 {
            m1 + (m2 - m1) * (240.0 - hue) / 60.0
        } else {
            m1
        }
    };
    [channel(h + 120.0), channel(h), channel(h - 120.0)]
}

fn xyz_to_luv([x, y, z]: [f64; 3], wp: &WhitePoint) -> [f64; 3] {
    let yr = y / wp.y;
    let l = if yr > CIE_EPSILON {
        116.0 * yr.cbrt() - 16.0
    } else {
        CIE_KAPPA * yr
    };
    let t = x + 15.0 * y + 3.0 * z;
    if t == 0.0 {
        return [l, 0.0, 0.0];
    }
    let (un, vn) = wp.uv_prime();
    let u = 4.0 * x / t;
    let v = 9.0 * y / t;
    [l, 13.0 * l * (u - un), 13.0 * l * (v - vn)]
}

fn luv_to_xyz([l, u, v]: [f64; 3], wp: &WhitePoint) -> [f64; 3] {
    if l <= 0.0 {
        return [0.0, 0.0, 0.0];
    }
    let y = wp.y
        * if l > CIE_KAPPA * CIE_EPSILON {
            ((l + 16.0) / 116.0).powi(3)
        } else {
            l / CIE_KAPPA
        };
    let (un, vn) = wp.uv_prime();
    let up = u / (13.0 * l) + un;
    let vp = v / (13.0 * l) + vn;
    let x = 9.0 * y * up / (4.0 * vp);
    let z = -x / 3.0 - 5.0 * y + 3.0 * y / vp;
    [x, y, z]
}

fn lab_f(t: f64) -> f64 {
    if t > CIE_EPSILON {
        t.cbrt()
    } else {
        (CIE_KAPPA * t + 16.0) / 116.0
    }
}

fn lab_f_inv(t: f64) -> f64 {
    let t3 = t * t * t;
    if t3 > CIE_EPSILON {
        t3
    } else {
        (116.0 * t - 16.0) / CIE_KAPPA
    }
}

fn xyz_to_lab([x, y, z]: [f64; 3], wp: &WhitePoint) -> [f64; 3] {
    let fx = lab_f(x / wp.x);
    let fy = lab_f(y / wp.y);
    let fz = lab_f(z / wp.z);
    [116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)]
}

fn lab_to_xyz([l, a, b]: [f64; 3], wp: &WhitePoint) -> [f64; 3] {
    let fy = (l + 16.0) / 116.0;
    let fx = fy + a / 500.0;
    let fz = fy - b / 200.0;
    let yr = if l > CIE_KAPPA * CIE_EPSILON {
        fy * fy * fy
    } else {
        l / CIE_KAPPA
    };
    [wp.x * lab_f_inv(fx), wp.y * yr, wp.z * lab_f_inv(fz)]
}

fn to_polar([l, a, b]: [f64; 3]) -> [f64; 3] {
    let c = a.hypot(b);
    let h = if c == 0.0 {
        0.0
    } else {
        b.atan2(a).to_degrees().rem_euclid(360.0)
    };
    [l, c, h]
}

fn from_polar([l, c, h]: [f64; 3]) -> [f64; 3] {
    let rad = h.to_radians();
    [l, c * rad.cos(), c * rad.sin()]
}

/// Lightness-only colors bypass the XYZ matrix so that achromatic input lands
/// exactly on the gray axis; the six-digit matrix pair is off by ~1e-5 there.
fn achromatic_linear(l: f64) -> f64 {
    if l <= 0.0 {
        0.0
    } else if l > CIE_KAPPA * CIE_EPSILON {
        ((l + 16.0) / 116.0).powi(3)
    } else {
        l / CIE_KAPPA
    }
}

/// Converts to linear RGB.
fn to_rgb(color: &Color, wp: &WhitePoint) -> [f64; 3] {
    let c = color.coords;
    match color.space {
        Space::Rgb => c,
        Space::Srgb => srgb_to_rgb(c),
        Space::Hsv => srgb_to_rgb(hsv_to_srgb(c)),
        Space::Hls => srgb_to_rgb(hls_to_srgb(c)),
        Space::Xyz => xyz_to_rgb(c),
        Space::Luv if c[1] == 0.0 && c[2] == 0.0 => [achromatic_linear(c[0]); 3],
        Space::Luv => xyz_to_rgb(luv_to_xyz(c, wp)),
        Space::Lab if c[1] == 0.0 && c[2] == 0.0 => [achromatic_linear(c[0]); 3],
        Space::Lab => xyz_to_rgb(lab_to_xyz(c, wp)),
        Space::PolarLuv => to_rgb(&Color::new(Space::Luv, from_polar(c)), wp),
        Space::PolarLab => to_rgb(&Color::new(Space::Lab, from_polar(c)), wp),
    }
}

fn to_xyz(color: &Color, wp: &WhitePoint) -> [f64; 3] {
    let c = color.coords;
    match color.space {
        Space::Xyz => c,
        Space::Luv => luv_to_xyz(c, wp),
        Space::Lab => lab_to_xyz(c, wp),
        Space::PolarLuv => luv_to_xyz(from_polar(c), wp),
        Space::PolarLab => lab_to_xyz(from_polar(c), wp),
        _ => rgb_to_xyz(to_rgb(color, wp)),
    }
}

fn from_srgb(c: [f64; 3], target: Space, wp: &WhitePoint) -> [f64; 3] {
    match target {
        Space::Srgb => c,
        Space::Hsv => srgb_to_hsv(c),
        Space::Hls => srgb_to_hls(c),
        _ => from_rgb(srgb_to_rgb(c), target, wp),
    }
}

fn from_rgb(c: [f64; 3], target: Space, wp: &WhitePoint) -> [f64; 3] {
    match target {
        Space::Rgb => c,
        Space::Srgb | Space::Hsv | Space::Hls => from_srgb(rgb_to_srgb(c), target, wp),
        _ => from_xyz(rgb_to_xyz(c), target, wp),
    }
}

fn from_xyz(c: [f64; 3], target: Space, wp: &WhitePoint) -> [f64; 3] {
    match target {
        Space::Xyz => c,
        Space::Luv => xyz_to_luv(c, wp),
        Space::Lab => xyz_to_lab(c, wp),
        Space::PolarLuv => to_polar(xyz_to_luv(c, wp)),
        Space::PolarLab => to_polar(xyz_to_lab(c, wp)),
        _ => from_rgb(xyz_to_rgb(c), target, wp),
    }
}

fn canonical(color: &Color) -> Color {
    let mut c = *color;
    match c.space {
        Space::PolarLuv | Space::PolarLab => c.coords[2] = c.coords[2].rem_euclid(360.0),
        Space::Hsv | Space::Hls => c.coords[0] = c.coords[0].rem_euclid(360.0),
        _ => {}
    }
    c
}

/// Converts `color` into `target` using an explicit white point.
///
/// Out-of-gamut results are returned unclamped.
pub fn convert_with(color: &Color, target: Space, wp: &WhitePoint) -> Result<Color> {
    if !color.is_finite() {
        return Err(Error::invalid(format!(
            "non-finite {} coordinates {:?}",
            color.space, color.coords
        )));
    }
    if color.space == target {
        return Ok(*color);
    }
    let src = canonical(color);
    let coords = if src.space.is_rgb_family() && target.is_rgb_family() {
        let srgb = match src.space {
            Space::Srgb => src.coords,
            Space::Rgb => rgb_to_srgb(src.coords),
            Space::Hsv => hsv_to_srgb(src.coords),
            Space::Hls => hls_to_srgb(src.coords),
            _ => unreachable!(),
        };
        from_srgb(srgb, target, wp)
    } else if target.is_rgb_family() {
        from_rgb(to_rgb(&src, wp), target, wp)
    } else {
        from_xyz(to_xyz(&src, wp), target, wp)
    };
    Ok(Color::new(target, coords))
}

/// Converts `color` into `target` under the process-wide white point.
pub fn convert(color: &Color, target: Space) -> Result<Color> {
    convert_with(color, target, &whitepoint())
}

/// Converts a batch of colors, optionally in parallel. Output order matches input.
pub fn convert_batch(colors: &[Color], target: Space, exec: Execution) -> Result<Vec<Color>> {
    let wp = whitepoint();
    par::map(colors, exec, |c| convert_with(c, target, &wp))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hcl_to_srgb_reference_values() {
        let cases = [
            (0.0, [0.8931564, 0.5853740, 0.6465459]),
            (120.0, [0.5266113, 0.7224335, 0.4590469]),
            (240.0, [0.4907804, 0.6911937, 0.8673877]),
        ];
        for (h, want) in cases {
            let got = convert(&Color::hcl(70.0, 50.0, h), Space::Srgb).unwrap();
            for (g, w) in got.coords.iter().zip(want) {
                assert_abs_diff_eq!(*g, w, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn srgb_to_hsv_reference_values() {
        let y = Color::srgb(0.8931564, 0.5853740, 0.6465459);
        let hsv = convert(&y, Space::Hsv).unwrap();
        assert_abs_diff_eq!(hsv.coords[0], 348.0750, epsilon = 1e-4);
        assert_abs_diff_eq!(hsv.coords[1], 0.3446008, epsilon = 1e-4);
        assert_abs_diff_eq!(hsv.coords[2], 0.8931564, epsilon = 1e-4);
    }

    #[test]
    fn identity_conversion() {
        for space in Space::ALL {
            let c = Color::new(space, [0.3, 0.2, 0.1]);
            assert_eq!(convert(&c, space).unwrap(), c);
        }
    }

    #[test]
    fn white_has_full_luminance_no_chroma() {
        let hcl = convert(&Color::srgb(1.0, 1.0, 1.0), Space::PolarLuv).unwrap();
        assert_abs_diff_eq!(hcl.coords[0], 100.0, epsilon = 1e-4);
        assert!(hcl.coords[1] < 0.05, "chroma {}", hcl.coords[1]);
    }

    #[test]
    fn white_in_xyz() {
        // Row sums of the six-digit matrix: X and Z sit ~1e-2 below D65.
        let xyz = convert(&Color::srgb(1.0, 1.0, 1.0), Space::Xyz).unwrap();
        assert_abs_diff_eq!(xyz.coords[0], 95.047, epsilon = 1e-2);
        assert_abs_diff_eq!(xyz.coords[1], 100.0, epsilon = 1e-3);
        assert_abs_diff_eq!(xyz.coords[2], 108.883, epsilon = 1e-2);
    }

    #[test]
    fn gamma_endpoints_exact() {
        assert_eq!(gamma_encode(0.0), 0.0);
        assert_eq!(gamma_encode(1.0), 1.0);
        assert_eq!(gamma_decode(0.0), 0.0);
        assert_eq!(gamma_decode(1.0), 1.0);
    }

    #[test]
    fn non_finite_rejected() {
        let err = convert(&Color::srgb(f64::NAN, 0.0, 0.0), Space::Hsv).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn whitepoint_validation_and_normalization() {
        assert!(WhitePoint::new(95.0, 0.0, 108.0).is_err());
        assert!(WhitePoint::new(-1.0, 100.0, 108.0).is_err());
        let wp = WhitePoint::new(0.95047, 1.0, 1.08883).unwrap();
        assert_abs_diff_eq!(wp.x, 95.047, epsilon = 1e-9);
        assert_eq!(wp.y, 100.0);
    }

    #[test]
    fn hsv_hls_known_points() {
        let red = Color::srgb(1.0, 0.0, 0.0);
        assert_eq!(convert(&red, Space::Hsv).unwrap().coords, [0.0, 1.0, 1.0]);
        assert_eq!(convert(&red, Space::Hls).unwrap().coords, [0.0, 0.5, 1.0]);
        let back = convert(&Color::new(Space::Hls, [240.0, 0.5, 1.0]), Space::Srgb).unwrap();
        assert_eq!(back.coords, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn space_names_parse() {
        for s in Space::ALL {
            assert_eq!(s.name().parse::<Space>().unwrap(), s);
        }
        assert_eq!("HCL".parse::<Space>().unwrap(), Space::PolarLuv);
        assert!("cmyk".parse::<Space>().is_err());
    }
}
