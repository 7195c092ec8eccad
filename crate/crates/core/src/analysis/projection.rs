//! Projections of a palette into a two-dimensional HCL plane.
//!
//! Qualitative palettes are shown in the hue–chroma plane, sequential and
//! diverging palettes in the chroma–luminance plane (diverging palettes as two
//! half-planes with signed chroma). The coordinate collapsed by the projection
//! is modeled as a linear function of the two displayed coordinates, fitted by
//! least squares to the palette; the background grid shows the in-gamut colors
//! of that fitted surface.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hex::Hex;
use crate::manip::max_chroma;
use crate::par::{self, Execution};
use crate::space::Color;

use super::infer::{InferredType, PaletteTypeGuess};
use super::spectrum::{SpectrumTrace, LOW_CHROMA};

/// A collapsed coordinate whose range stays below this is treated as constant.
pub const NEAR_CONSTANT: f64 = 4.0;
/// A displayed coordinate whose range is below this is dropped from the fit.
pub const MIN_SPREAD: f64 = 5.0;
/// Marker for grid cells outside the sRGB gamut.
pub const EMPTY_CELL: &str = "";

/// Largest number of steps accepted per grid axis.
pub const MAX_STEPS: usize = 401;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Plane {
    /// x = hue, y = chroma; luminance is collapsed.
    HueChroma,
    /// x = (signed) chroma, y = luminance; hue is collapsed.
    ChromaLuminance,
}

/// `intercept + slope_x·x + slope_y·y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub intercept: f64,
    pub slope_x: f64,
    pub slope_y: f64,
}

impl LinearFit {
    pub const fn constant(v: f64) -> Self {
        LinearFit {
            intercept: v,
            slope_x: 0.0,
            slope_y: 0.0,
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.intercept + self.slope_x * x + self.slope_y * y
    }

    pub fn is_constant(&self) -> bool {
        self.slope_x == 0.0 && self.slope_y == 0.0
    }

    /// Least-squares fit of `z` on `x` and `y`.
    ///
    /// A nearly constant `z` yields its mean; regressors with little spread
    /// are dropped, so the fit never extrapolates along a direction the data
    /// does not cover.
    pub fn fit(x: &[f64], y: &[f64], z: &[f64]) -> Self {
        let n = z.len();
        if n == 0 {
            return LinearFit::constant(0.0);
        }
        let mean = |v: &[f64]| v.iter().sum::<f64>() / n as f64;
        let spread = |v: &[f64]| {
            v.iter().copied().fold(f64::NEG_INFINITY, f64::max) - v.iter().copied().fold(f64::INFINITY, f64::min)
        };
        let (mx, my, mz) = (mean(x), mean(y), mean(z));
        if spread(z) < NEAR_CONSTANT {
            return LinearFit::constant(mz);
        }
        let use_x = spread(x) >= MIN_SPREAD;
        let use_y = spread(y) >= MIN_SPREAD;
        let (mut sxx, mut syy, mut sxy, mut sxz, mut syz) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for k in 0..n {
            let (dx, dy, dz) = (x[k] - mx, y[k] - my, z[k] - mz);
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
            sxz += dx * dz;
            syz += dy * dz;
        }
        let (bx, by) = match (use_x, use_y) {
            (true, true) => {
                let det = sxx * syy - sxy * sxy;
                if det > 1e-9 * sxx * syy {
                    ((syy * sxz - sxy * syz) / det, (sxx * syz - sxy * sxz) / det)
                } else {
                    (sxz / sxx, 0.0)
                }
            }
            (true, false) => (sxz / sxx, 0.0),
            (false, true) => (0.0, syz / syy),
            (false, false) => (0.0, 0.0),
        };
        LinearFit {
            intercept: mz - bx * mx - by * my,
            slope_x: bx,
            slope_y: by,
        }
    }
}

/// Evenly spaced axis values, both ends included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(name: &str, min: f64, max: f64, steps: usize) -> Result<Self> {
        if !(2..=MAX_STEPS).contains(&steps) {
            return Err(Error::invalid(format!(
                "grid steps must lie in [2, {MAX_STEPS}], got {steps}"
            )));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::invalid(format!(
                "axis {name}: need finite min < max, got [{min}, {max}]"
            )));
        }
        let values = (0..steps)
            .map(|k| min + (max - min) * k as f64 / (steps - 1) as f64)
            .collect();
        Ok(Axis {
            name: name.to_string(),
            values,
        })
    }
}

/// A raster of an HCL plane. `cells[row][col]` is the hex code of the color
/// at `(x.values[col], y.values[row])`, or [`EMPTY_CELL`] out of gamut.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneGrid {
    pub plane: Plane,
    pub x: Axis,
    pub y: Axis,
    /// Model of the collapsed coordinate: luminance for the hue–chroma
    /// plane, hue for the chroma–luminance plane where `x < 0`.
    pub left: LinearFit,
    /// Hue model for `x ≥ 0` in the chroma–luminance plane; equals `left`
    /// otherwise.
    pub right: LinearFit,
    pub cells: Vec<Vec<String>>,
}

impl PlaneGrid {
    /// HCL coordinates `[l, c, h]` represented by a plane point.
    pub fn coords_at(plane: Plane, left: &LinearFit, right: &LinearFit, x: f64, y: f64) -> [f64; 3] {
        match plane {
            Plane::HueChroma => [left.eval(x, y).clamp(0.0, 100.0), y, x],
            Plane::ChromaLuminance => {
                let fit = if x < 0.0 { left } else { right };
                let c = x.abs();
                [y, c, fit.eval(c, y)]
            }
        }
    }

    /// Rasterizes a plane; rows are computed in parallel with
    /// [`Execution::Parallel`].
    pub fn build(plane: Plane, x: Axis, y: Axis, left: LinearFit, right: LinearFit, exec: Execution) -> Self {
        let cells = par::map(&y.values, exec, |&yv| {
            x.values
                .iter()
                .map(|&xv| {
                    let [l, c, h] = PlaneGrid::coords_at(plane, &left, &right, xv, yv);
                    match Hex::from_color(&Color::hcl(l, c, h), false) {
                        Ok(Some(hex)) => hex.to_string(),
                        _ => EMPTY_CELL.to_string(),
                    }
                })
                .collect()
        });
        PlaneGrid {
            plane,
            x,
            y,
            left,
            right,
            cells,
        }
    }

    /// HCL coordinates `[l, c, h]` of a cell.
    pub fn cell_coords(&self, row: usize, col: usize) -> [f64; 3] {
        PlaneGrid::coords_at(
            self.plane,
            &self.left,
            &self.right,
            self.x.values[col],
            self.y.values[row],
        )
    }
}

/// The palette drawn in plane coordinates, with the HCL coordinates it
/// represents (the collapsed one taken from the fitted model).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub hue: Vec<f64>,
    pub chroma: Vec<f64>,
    pub luminance: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    #[serde(rename = "type")]
    pub kind: InferredType,
    pub grid: PlaneGrid,
    pub polyline: Polyline,
}

/// Grid resolution of [`hcl_projection`].
const HUE_STEPS: usize = 73;
const CHROMA_STEPS: usize = 41;
const LUMINANCE_STEPS: usize = 51;

/// Upper end of the chroma axis: at least 100, rounded up to a multiple of 10.
fn chroma_extent(trace: &SpectrumTrace) -> f64 {
    let max = trace.chroma.iter().copied().fold(0.0, f64::max);
    ((max / 10.0).ceil() * 10.0).max(100.0)
}

/// Indices whose hue is reliable, or all indices if none is.
fn reliable(trace: &SpectrumTrace, idx: impl Iterator<Item = usize>) -> Vec<usize> {
    let all: Vec<usize> = idx.collect();
    let good: Vec<usize> = all.iter().copied().filter(|&i| trace.chroma[i] >= LOW_CHROMA).collect();
    if good.is_empty() {
        all
    } else {
        good
    }
}

fn hue_fit(trace: &SpectrumTrace, idx: &[usize]) -> LinearFit {
    let pick = |v: &[f64]| idx.iter().map(|&i| v[i]).collect::<Vec<_>>();
    let fit = LinearFit::fit(&pick(&trace.chroma), &pick(&trace.luminance), &pick(&trace.hue));
    // Keep the constant part in [0, 360).
    let turn = (fit.intercept / 360.0).floor() * 360.0;
    if fit.is_constant() {
        LinearFit::constant(fit.intercept - turn)
    } else {
        fit
    }
}

/// Projection of a palette (given by its spectrum) onto the HCL plane that
/// suits its type.
pub fn hcl_projection(trace: &SpectrumTrace, guess: &PaletteTypeGuess, exec: Execution) -> Result<Projection> {
    let n = trace.n;
    if n == 0 {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let cmax = chroma_extent(trace);
    let mut poly = Polyline {
        x: Vec::with_capacity(n),
        y: Vec::with_capacity(n),
        hue: Vec::with_capacity(n),
        chroma: trace.chroma.clone(),
        luminance: trace.luminance.clone(),
    };
    let grid = match guess.kind {
        InferredType::Qualitative => {
            let hue: Vec<f64> = trace.hue.iter().map(|h| h.rem_euclid(360.0)).collect();
            let fit = LinearFit::fit(&hue, &trace.chroma, &trace.luminance);
            for (i, (&h, &c)) in hue.iter().zip(&trace.chroma).enumerate() {
                poly.x.push(h);
                poly.y.push(c);
                poly.hue.push(h);
                poly.luminance[i] = fit.eval(h, c).clamp(0.0, 100.0);
            }
            PlaneGrid::build(
                Plane::HueChroma,
                Axis::new("hue", 0.0, 360.0, HUE_STEPS)?,
                Axis::new("chroma", 0.0, cmax, CHROMA_STEPS)?,
                fit,
                fit,
                exec,
            )
        }
        InferredType::Sequential => {
            let fit = hue_fit(trace, &reliable(trace, 0..n));
            for i in 0..n {
                poly.x.push(trace.chroma[i]);
                poly.y.push(trace.luminance[i]);
                poly.hue.push(fit.eval(trace.chroma[i], trace.luminance[i]));
            }
            PlaneGrid::build(
                Plane::ChromaLuminance,
                Axis::new("chroma", 0.0, cmax, CHROMA_STEPS)?,
                Axis::new("luminance", 0.0, 100.0, LUMINANCE_STEPS)?,
                fit,
                fit,
                exec,
            )
        }
        InferredType::Diverging => {
            // First half on the left (negative chroma), second half and an
            // odd palette's center on the right.
            let half = n / 2;
            let left = hue_fit(trace, &reliable(trace, 0..half));
            let right = hue_fit(trace, &reliable(trace, half..n));
            for i in 0..n {
                let (c, l) = (trace.chroma[i], trace.luminance[i]);
                let (x, fit) = if i < half { (-c, &left) } else { (c, &right) };
                poly.x.push(x);
                poly.y.push(l);
                poly.hue.push(fit.eval(c, l));
            }
            PlaneGrid::build(
                Plane::ChromaLuminance,
                Axis::new("chroma", -cmax, cmax, 2 * CHROMA_STEPS - 1)?,
                Axis::new("luminance", 0.0, 100.0, LUMINANCE_STEPS)?,
                left,
                right,
                exec,
            )
        }
    };
    Ok(Projection {
        kind: guess.kind,
        grid,
        polyline: poly,
    })
}

/// Color-picker query: one plane of HCL space at a fixed third coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PickQuery {
    pub plane: Plane,
    /// Luminance for [`Plane::HueChroma`], hue for [`Plane::ChromaLuminance`].
    pub value: f64,
    /// Upper end of the chroma axis.
    #[serde(default = "PickQuery::default_cmax")]
    pub cmax: f64,
    #[serde(default = "PickQuery::default_steps")]
    pub x_steps: usize,
    #[serde(default = "PickQuery::default_steps")]
    pub y_steps: usize,
}

impl PickQuery {
    fn default_cmax() -> f64 {
        180.0
    }

    fn default_steps() -> usize {
        37
    }

    pub fn new(plane: Plane, value: f64) -> Self {
        PickQuery {
            plane,
            value,
            cmax: Self::default_cmax(),
            x_steps: Self::default_steps(),
            y_steps: Self::default_steps(),
        }
    }
}

/// Plane slice for the color picker plus its gamut boundary: the maximum
/// chroma per hue column (hue–chroma plane) or per luminance row
/// (chroma–luminance plane).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PickResult {
    pub grid: PlaneGrid,
    pub boundary: Vec<f64>,
}

pub fn pick(q: &PickQuery, exec: Execution) -> Result<PickResult> {
    if !q.value.is_finite() {
        return Err(Error::invalid("value must be finite"));
    }
    if !(q.cmax.is_finite() && q.cmax > 0.0) {
        return Err(Error::invalid(format!("cmax must be positive, got {}", q.cmax)));
    }
    let fixed = LinearFit::constant(q.value);
    match q.plane {
        Plane::HueChroma => {
            if !(0.0..=100.0).contains(&q.value) {
                return Err(Error::invalid(format!(
                    "luminance must lie in [0, 100], got {}",
                    q.value
                )));
            }
            let x = Axis::new("hue", 0.0, 360.0, q.x_steps)?;
            let y = Axis::new("chroma", 0.0, q.cmax, q.y_steps)?;
            let boundary = x
                .values
                .iter()
                .map(|&h| max_chroma(h, q.value))
                .collect::<Result<Vec<_>>>()?;
            let grid = PlaneGrid::build(Plane::HueChroma, x, y, fixed, fixed, exec);
            Ok(PickResult { grid, boundary })
        }
        Plane::ChromaLuminance => {
            let x = Axis::new("chroma", 0.0, q.cmax, q.x_steps)?;
            let y = Axis::new("luminance", 0.0, 100.0, q.y_steps)?;
            let boundary = y
                .values
                .iter()
                .map(|&l| max_chroma(q.value, l))
                .collect::<Result<Vec<_>>>()?;
            let grid = PlaneGrid::build(Plane::ChromaLuminance, x, y, fixed, fixed, exec);
            Ok(PickResult { grid, boundary })
        }
    }
}
