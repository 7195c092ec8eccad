//! Palette analysis: HCL spectra, type inference, plane projections and SVG
//! output.

pub mod infer;
pub mod projection;
pub mod spectrum;
pub mod svg;

pub use infer::{infer_type, Evidence, InferredType, PaletteTypeGuess};
pub use projection::{hcl_projection, pick, LinearFit, PickQuery, PickResult, Plane, PlaneGrid, Polyline, Projection};
pub use spectrum::{spectrum, spectrum_hex, SpectrumTrace};
pub use svg::{spectrum_svg, swatch_svg, NamedPalette, SwatchGroup, SwatchLayout};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::par::Execution;

/// Spectrum, inferred type and projection of a palette.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub trace: SpectrumTrace,
    pub inferred: PaletteTypeGuess,
    pub projection: Projection,
}

/// Full analysis of at least three colors.
pub fn analyze<S: AsRef<str>>(colors: &[S], exec: Execution) -> Result<Analysis> {
    let trace = spectrum(colors)?;
    let inferred = infer_type(&trace)?;
    let projection = hcl_projection(&trace, &inferred, exec)?;
    Ok(Analysis {
        trace,
        inferred,
        projection,
    })
}
