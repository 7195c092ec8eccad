//! Perceptual color toolkit built around the HCL (polar CIELUV) color space.
//!
//! - [`space`]: nine color spaces and conversions between them.
//! - [`hex`]: `#RRGGBB[AA]` codes and the 8-bit gamut test.
//! - [`palettes`]: qualitative, sequential and diverging palettes from
//!   parametric HCL trajectories, plus a registry of named palettes.
//! - [`cvd`]: color-vision-deficiency emulation.
//! - [`manip`]: desaturation, lightening/darkening, maximum chroma, mixing.
//! - [`analysis`]: HCL spectra, palette-type inference, projections and SVG.
//! - [`par`]: data-parallel helpers with a sequential fallback.

pub mod analysis;
pub mod cvd;
pub mod error;
pub mod hex;
pub mod manip;
pub mod named;
pub mod palettes;
pub mod par;
pub mod space;

pub use error::{Error, Result};
pub use hex::{hex_decode, hex_encode, in_gamut, parse_color, parse_colors, Hex, MISSING};
pub use par::Execution;
pub use space::{convert, convert_batch, convert_with, set_whitepoint, whitepoint, Color, Space, WhitePoint};
