//! HCL palette construction and the named-palette registry.

pub mod generate;
pub mod params;
pub mod registry;
pub mod trajectory;

pub use generate::{
    cividis_manual, coords, diverging_hsv, diverging_palette, divergingx_palette, encode, generate, heat_hcl,
    qualitative_palette, rainbow_hcl, sequential_palette, terrain_hcl, Output,
};
pub use params::{Diverging, Divergingx, PaletteParams, PaletteType, Qualitative, Resolved, Sequential, CIVIDIS};
pub use registry::{normalize_name, PaletteRecord, Registry, RegistryEntry, Source};
pub use trajectory::{Shape, Trajectory};
