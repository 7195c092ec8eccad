//! Coordinate paths as functions of the intensity `i` in `[0, 1]`.
//!
//! Full intensity `i = 1` sits at the `start` value and `i = 0` at `end`.
//! A power transform replaces `i` with `i^power` before the path is evaluated.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Shape {
    Constant {
        value: f64,
    },
    Linear {
        start: f64,
        end: f64,
    },
    /// Rises (or falls) from `start` to `peak` at intensity `j`, then to `end`.
    Triangular {
        start: f64,
        peak: f64,
        end: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub shape: Shape,
    pub power: f64,
}

impl Trajectory {
    pub fn constant(value: f64) -> Self {
        Trajectory {
            shape: Shape::Constant { value },
            power: 1.0,
        }
    }

    pub fn linear(start: f64, end: f64, power: f64) -> Self {
        Trajectory {
            shape: Shape::Linear { start, end },
            power,
        }
    }

    /// A triangular path, or a linear one when `peak` is `None`.
    pub fn chroma(start: f64, peak: Option<f64>, end: f64, power: f64) -> Self {
        let shape = match peak {
            Some(peak) => Shape::Triangular { start, peak, end },
            None => Shape::Linear { start, end },
        };
        Trajectory { shape, power }
    }

    /// The intensity at which a triangular path reaches its peak.
    ///
    /// `None` when the peak does not fall strictly inside `(0, 1)`, e.g. when
    /// it coincides with one of the ends; the path is then linear.
    pub fn peak_intensity(start: f64, peak: f64, end: f64) -> Option<f64> {
        let j = 1.0 / (1.0 + (peak - start).abs() / (peak - end).abs());
        (j > 0.0 && j < 1.0).then_some(j)
    }

    pub fn value(&self, intensity: f64) -> f64 {
        let i = intensity.clamp(0.0, 1.0).powf(self.power);
        match self.shape {
            Shape::Constant { value } => value,
            Shape::Linear { start, end } => end - (end - start) * i,
            Shape::Triangular { start, peak, end } => match Self::peak_intensity(start, peak, end) {
                Some(j) if i <= j => end - (end - peak) * i / j,
                Some(j) => peak - (peak - start) * (i - j) / (1.0 - j),
                None => end - (end - start) * i,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_ignores_intensity() {
        assert_eq!(Trajectory::constant(80.0).value(0.5), 80.0);
    }

    #[test]
    fn linear_endpoints() {
        let t = Trajectory::linear(80.0, 10.0, 1.0);
        assert_eq!(t.value(1.0), 80.0);
        assert_eq!(t.value(0.0), 10.0);
    }

    #[test]
    fn triangular_peak() {
        // j = (1 + 20/70)^-1 = 7/9
        let j = Trajectory::peak_intensity(60.0, 80.0, 10.0).unwrap();
        assert_abs_diff_eq!(j, 7.0 / 9.0, epsilon = 1e-15);
        let t = Trajectory::chroma(60.0, Some(80.0), 10.0, 1.0);
        assert_abs_diff_eq!(t.value(7.0 / 9.0), 80.0, epsilon = 1e-12);
        assert_eq!(t.value(1.0), 60.0);
        assert_eq!(t.value(0.0), 10.0);
    }

    #[test]
    fn degenerate_peak_is_linear() {
        let lin = Trajectory::linear(60.0, 10.0, 1.0);
        for peak in [10.0, 60.0] {
            let t = Trajectory::chroma(60.0, Some(peak), 10.0, 1.0);
            for k in 0..=10 {
                let i = k as f64 / 10.0;
                assert_abs_diff_eq!(t.value(i), lin.value(i), epsilon = 1e-12);
            }
        }
        let flat = Trajectory::chroma(10.0, Some(10.0), 10.0, 1.0);
        assert_eq!(flat.value(0.3), 10.0);
    }

    #[test]
    fn power_bends_path() {
        let t = Trajectory::linear(80.0, 10.0, 1.6);
        let expected = 10.0 - (10.0 - 80.0) * 0.5f64.powf(1.6);
        assert_abs_diff_eq!(t.value(0.5), expected, epsilon = 1e-12);
    }
}
