//! Hex color codes (`#RRGGBB` / `#RRGGBBAA`) and the 8-bit gamut test.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::named;
use crate::space::{convert, Color, Space};

/// Placeholder emitted for colors that cannot be encoded without fixup.
pub const MISSING: &str = "NA";

/// An 8-bit sRGB color with an optional alpha byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hex {
    pub rgb: [u8; 3],
    pub alpha: Option<u8>,
}

impl Hex {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Hex {
            rgb: [r, g, b],
            alpha: None,
        }
    }

    pub fn with_alpha(self, alpha: Option<u8>) -> Self {
        Hex { alpha, ..self }
    }

    /// Channels divided by 255, as an sRGB color.
    pub fn to_color(&self) -> Color {
        let [r, g, b] = self.rgb.map(|v| f64::from(v) / 255.0);
        Color::srgb(r, g, b)
    }

    /// Encodes a color. With `fixup` channels are clamped to `[0, 1]` first;
    /// without it `None` is returned when a channel has no 8-bit code.
    pub fn from_color(color: &Color, fixup: bool) -> Result<Option<Hex>> {
        let srgb = convert(color, Space::Srgb)?;
        Ok(Hex::from_srgb(srgb.coords, fixup))
    }

    pub fn from_srgb(channels: [f64; 3], fixup: bool) -> Option<Hex> {
        let mut rgb = [0u8; 3];
        for (out, &x) in rgb.iter_mut().zip(&channels) {
            *out = encode_channel(x, fixup)?;
        }
        Some(Hex { rgb, alpha: None })
    }
}

/// Maps a channel in `[0, 1]` to its 8-bit code, `round(255 x)` with halves
/// rounded up.
///
/// Without fixup the channel is accepted when that code lands in `0..=255`
/// after truncation toward zero, i.e. `x` in `(-1.5/255, 255.5/255)`. This is
/// the gamut test shared by hex encoding, [`in_gamut`] and the maximum-chroma
/// search.
pub fn encode_channel(x: f64, fixup: bool) -> Option<u8> {
    if x.is_nan() {
        return None;
    }
    let x = if fixup { x.clamp(0.0, 1.0) } else { x };
    let scaled = (255.0 * x + 0.5).trunc();
    // Truncation maps (-1, 0) to -0.0, which the range accepts.
    (0.0..=255.0).contains(&scaled).then_some(scaled as u8)
}

/// Whether sRGB channels can be hex-encoded without fixup.
pub fn srgb_in_gamut(channels: [f64; 3]) -> bool {
    channels.iter().all(|&x| encode_channel(x, false).is_some())
}

/// Whether `color` can be hex-encoded without fixup.
pub fn in_gamut(color: &Color) -> Result<bool> {
    Ok(srgb_in_gamut(convert(color, Space::Srgb)?.coords))
}

impl fmt::Display for Hex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r, g, b] = self.rgb;
        write!(f, "#{r:02X}{g:02X}{b:02X}")?;
        if let Some(a) = self.alpha {
            write!(f, "{a:02X}")?;
        }
        Ok(())
    }
}

impl FromStr for Hex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = || Error::Parse {
            token: s.to_string(),
            index: None,
        };
        let digits = s.strip_prefix('#').ok_or_else(parse_err)?;
        if !(digits.len() == 6 || digits.len() == 8) || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(parse_err());
        }
        let byte = |i: usize| u8::from_str_radix(&digits[i..i + 2], 16).map_err(|_| parse_err());
        let rgb = [byte(0)?, byte(2)?, byte(4)?];
        let alpha = if digits.len() == 8 { Some(byte(6)?) } else { None };
        Ok(Hex { rgb, alpha })
    }
}

/// Encodes a color as `#RRGGBB`; `None` is the missing-value marker.
pub fn hex_encode(color: &Color, fixup: bool) -> Result<Option<String>> {
    Ok(Hex::from_color(color, fixup)?.map(|h| h.to_string()))
}

/// Decodes `#RRGGBB` or `#RRGGBBAA` into sRGB; the alpha byte is dropped.
pub fn hex_decode(s: &str) -> Result<Color> {
    Ok(s.parse::<Hex>()?.to_color())
}

/// Parses a hex code or a CSS/X11 color name.
pub fn parse_color(s: &str) -> Result<Hex> {
    let t = s.trim();
    if t.starts_with('#') {
        return t.parse();
    }
    named::lookup(t).ok_or_else(|| Error::Parse {
        token: s.to_string(),
        index: None,
    })
}

/// Parses a list of colors, tagging errors with their position.
pub fn parse_colors<S: AsRef<str>>(colors: &[S]) -> Result<Vec<Hex>> {
    colors
        .iter()
        .enumerate()
        .map(|(i, c)| parse_color(c.as_ref()).map_err(|e| e.at_index(i)))
        .collect()
}
