//! Self-contained SVG 1.1 documents for palette swatches and HCL spectra.
//!
//! Output is deterministic: elements are emitted in input order and every
//! coordinate is printed with two decimals.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hex::{Hex, MISSING};

use super::spectrum::SpectrumTrace;

/// A named list of colors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedPalette {
    pub name: String,
    pub colors: Vec<String>,
}

impl NamedPalette {
    pub fn new(name: impl Into<String>, colors: Vec<String>) -> Self {
        NamedPalette {
            name: name.into(),
            colors,
        }
    }
}

/// A labeled block of palettes, one swatch row each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwatchGroup {
    #[serde(default)]
    pub title: Option<String>,
    pub palettes: Vec<NamedPalette>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SwatchLayout {
    /// Width of the color strip of each row.
    pub width: f64,
    pub row_height: f64,
    /// Width reserved for palette names left of the strip.
    pub label_width: f64,
    /// Height of a group title line.
    pub title_height: f64,
    pub font_size: f64,
}

impl Default for SwatchLayout {
    fn default() -> Self {
        SwatchLayout {
            width: 400.0,
            row_height: 24.0,
            label_width: 140.0,
            title_height: 24.0,
            font_size: 12.0,
        }
    }
}

/// Formats a coordinate with two decimals, without negative zero.
pub fn num(v: f64) -> String {
    let r = (v * 100.0).round() / 100.0;
    format!("{:.2}", if r == 0.0 { 0.0 } else { r })
}

pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// `fill` attributes for a color code; alpha becomes `fill-opacity` and the
/// missing marker an outlined empty cell.
fn fill_attrs(color: &str) -> Result<String> {
    if color == MISSING {
        return Ok(r##"fill="none" stroke="#999999""##.to_string());
    }
    let hex: Hex = color.parse()?;
    let rgb = Hex { alpha: None, ..hex };
    Ok(match hex.alpha {
        Some(a) => format!(r#"fill="{rgb}" fill-opacity="{}""#, num(f64::from(a) / 255.0)),
        None => format!(r#"fill="{rgb}""#),
    })
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif">"#,
        w = num(width),
        h = num(height)
    );
}

/// One row of equal-width rectangles per palette with its name on the left;
/// groups are separated by their titles.
pub fn swatch_svg(groups: &[SwatchGroup], layout: &SwatchLayout) -> Result<String> {
    if groups.iter().all(|g| g.palettes.is_empty()) {
        return Err(Error::invalid("swatch needs at least one palette"));
    }
    let lay = layout;
    if !(lay.width > 0.0 && lay.row_height > 0.0 && lay.label_width >= 0.0 && lay.title_height >= 0.0) {
        return Err(Error::invalid("swatch layout sizes must be positive"));
    }
    let mut body = String::new();
    let mut y = 0.0;
    for group in groups {
        if let Some(title) = &group.title {
            let _ = writeln!(
                body,
                r#"<text x="0.00" y="{}" font-size="{}" font-weight="bold">{}</text>"#,
                num(y + 0.75 * lay.title_height),
                num(lay.font_size),
                escape(title)
            );
            y += lay.title_height;
        }
        for p in &group.palettes {
            let _ = writeln!(body, r#"<g class="palette">"#);
            let _ = writeln!(
                body,
                r#"<text x="{}" y="{}" font-size="{}" text-anchor="end">{}</text>"#,
                num(lay.label_width - 6.0),
                num(y + 0.5 * lay.row_height + 0.35 * lay.font_size),
                num(lay.font_size),
                escape(&p.name)
            );
            let w = lay.width / p.colors.len().max(1) as f64;
            for (k, c) in p.colors.iter().enumerate() {
                let _ = writeln!(
                    body,
                    r#"<rect x="{}" y="{}" width="{}" height="{}" {}/>"#,
                    num(lay.label_width + k as f64 * w),
                    num(y + 1.0),
                    num(w),
                    num(lay.row_height - 2.0),
                    fill_attrs(c)?
                );
            }
            let _ = writeln!(body, "</g>");
            y += lay.row_height;
        }
    }
    let mut out = String::new();
    header(&mut out, lay.label_width + lay.width, y);
    out.push_str(&body);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Colors of the spectrum lines.
pub const HUE_COLOR: &str = "#D33F6A";
pub const CHROMA_COLOR: &str = "#00A000";
pub const LUMINANCE_COLOR: &str = "#4A6FE3";
pub const RGB_COLORS: [&str; 3] = ["#E00000", "#00A000", "#0000E0"];

const WIDTH: f64 = 640.0;
const PANEL_HEIGHT: f64 = 260.0;
const STRIP_HEIGHT: f64 = 30.0;
const MARGIN_LEFT: f64 = 50.0;
const MARGIN_RIGHT: f64 = 50.0;
const MARGIN_TOP: f64 = 30.0;
const GAP: f64 = 40.0;

struct Panel {
    top: f64,
    height: f64,
}

impl Panel {
    fn left() -> f64 {
        MARGIN_LEFT
    }

    fn right() -> f64 {
        WIDTH - MARGIN_RIGHT
    }

    /// x of color `i` of `n`: the center of its cell in the swatch strip.
    fn x(i: usize, n: usize) -> f64 {
        let w = (Self::right() - Self::left()) / n as f64;
        Self::left() + (i as f64 + 0.5) * w
    }

    fn y(&self, v: f64, lo: f64, hi: f64) -> f64 {
        self.top + self.height * (1.0 - (v - lo) / (hi - lo))
    }

    fn frame(&self, out: &mut String, title: &str) {
        let _ = writeln!(
            out,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#333333"/>"##,
            num(Self::left()),
            num(self.top),
            num(Self::right() - Self::left()),
            num(self.height)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">{}</text>"#,
            num(0.5 * (Self::left() + Self::right())),
            num(self.top - 10.0),
            escape(title)
        );
    }

    fn ticks(&self, out: &mut String, lo: f64, hi: f64, step: f64, right_side: bool) {
        let (x, anchor, dx) = if right_side {
            (Self::right(), "start", 4.0)
        } else {
            (Self::left(), "end", -4.0)
        };
        let mut v = (lo / step).ceil() * step;
        while v <= hi + 1e-9 {
            let y = self.y(v, lo, hi);
            let _ = writeln!(
                out,
                r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#333333"/>"##,
                num(x),
                num(x + dx),
                y = num(y)
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="10" text-anchor="{anchor}">{}</text>"#,
                num(x + 2.0 * dx),
                num(y + 3.5),
                num(v).trim_end_matches(".00")
            );
            v += step;
        }
    }

    fn line(&self, out: &mut String, values: &[f64], lo: f64, hi: f64, color: &str, label: &str) {
        let n = values.len();
        let pts: Vec<String> = values
            .iter()
            .enumerate()
            .map(|(i, &v)| format!("{},{}", num(Self::x(i, n)), num(self.y(v, lo, hi))))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="{label}" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            pts.join(" ")
        );
        if n == 1 {
            let _ = writeln!(
                out,
                r#"<circle class="{label}" cx="{}" cy="{}" r="3" fill="{color}"/>"#,
                num(Self::x(0, 1)),
                num(self.y(values[0], lo, hi))
            );
        }
    }
}

fn legend(out: &mut String, y: f64, entries: &[(&str, &str)]) {
    for (k, (label, color)) in entries.iter().enumerate() {
        let x = Panel::left() + 10.0 + 90.0 * k as f64;
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="2"/>"#,
            num(x),
            num(x + 20.0),
            y = num(y)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10">{label}</text>"#,
            num(x + 24.0),
            num(y + 3.5)
        );
    }
}

/// Line chart of hue (right axis), chroma and luminance (left axis) over the
/// palette, with a swatch strip; optionally a second panel with the sRGB
/// channel trajectories.
pub fn spectrum_svg(trace: &SpectrumTrace, include_rgb: bool) -> Result<String> {
    let n = trace.n;
    if n == 0 {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let cmax = trace.chroma.iter().copied().fold(100.0, f64::max);
    let (hlo, hhi) = if trace.hue.iter().any(|&h| h < 0.0) {
        (-360.0, 360.0)
    } else {
        (0.0, 360.0)
    };

    let mut body = String::new();
    let hcl = Panel {
        top: MARGIN_TOP,
        height: PANEL_HEIGHT,
    };
    hcl.frame(&mut body, "HCL spectrum");
    hcl.ticks(&mut body, 0.0, cmax, 20.0, false);
    hcl.ticks(&mut body, hlo, hhi, 90.0, true);
    hcl.line(&mut body, &trace.hue, hlo, hhi, HUE_COLOR, "hue");
    hcl.line(&mut body, &trace.chroma, 0.0, cmax, CHROMA_COLOR, "chroma");
    hcl.line(&mut body, &trace.luminance, 0.0, cmax, LUMINANCE_COLOR, "luminance");
    legend(
        &mut body,
        hcl.top + 12.0,
        &[
            ("Hue", HUE_COLOR),
            ("Chroma", CHROMA_COLOR),
            ("Luminance", LUMINANCE_COLOR),
        ],
    );

    // Swatch strip below the first panel.
    let strip_top = hcl.top + hcl.height + 8.0;
    let w = (Panel::right() - Panel::left()) / n as f64;
    for (k, c) in trace.colors.iter().enumerate() {
        let _ = writeln!(
            body,
            r#"<rect x="{}" y="{}" width="{}" height="{}" {}/>"#,
            num(Panel::left() + k as f64 * w),
            num(strip_top),
            num(w),
            num(STRIP_HEIGHT),
            fill_attrs(c)?
        );
    }
    let mut bottom = strip_top + STRIP_HEIGHT;

    if include_rgb {
        let rgb = Panel {
            top: bottom + GAP,
            height: PANEL_HEIGHT,
        };
        rgb.frame(&mut body, "RGB spectrum");
        rgb.ticks(&mut body, 0.0, 1.0, 0.2, false);
        rgb.line(&mut body, &trace.red, 0.0, 1.0, RGB_COLORS[0], "red");
        rgb.line(&mut body, &trace.green, 0.0, 1.0, RGB_COLORS[1], "green");
        rgb.line(&mut body, &trace.blue, 0.0, 1.0, RGB_COLORS[2], "blue");
        legend(
            &mut body,
            rgb.top + 12.0,
            &[
                ("Red", RGB_COLORS[0]),
                ("Green", RGB_COLORS[1]),
                ("Blue", RGB_COLORS[2]),
            ],
        );
        bottom = rgb.top + rgb.height;
    }

    let mut out = String::new();
    header(&mut out, WIDTH, bottom + 20.0);
    out.push_str(&body);
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::spectrum;

    fn one(colors: &[&str]) -> Vec<SwatchGroup> {
        vec![SwatchGroup {
            title: None,
            palettes: vec![NamedPalette::new("p", colors.iter().map(|s| s.to_string()).collect())],
        }]
    }

    #[test]
    fn five_rects() {
        let cols = ["#E16A86", "#909800", "#00AD9A", "#9183E6", "#12345680"];
        let svg = swatch_svg(&one(&cols), &SwatchLayout::default()).unwrap();
        assert_eq!(svg.matches("<rect ").count(), 5);
        for c in &cols[..4] {
            assert!(svg.contains(&format!(r#"fill="{c}""#)));
        }
        assert!(svg.contains(r##"fill="#123456" fill-opacity="0.50""##));
        assert_eq!(svg, swatch_svg(&one(&cols), &SwatchLayout::default()).unwrap());
    }

    #[test]
    fn empty_is_error() {
        assert!(swatch_svg(&[], &SwatchLayout::default()).is_err());
        assert!(swatch_svg(&one(&["#12"]), &SwatchLayout::default()).is_err());
    }

    #[test]
    fn escapes_names() {
        let g = vec![SwatchGroup {
            title: Some("A & B".into()),
            palettes: vec![NamedPalette::new("<x>", vec!["#000000".into()])],
        }];
        let svg = swatch_svg(&g, &SwatchLayout::default()).unwrap();
        assert!(svg.contains("A &amp; B") && svg.contains("&lt;x&gt;"));
    }

    #[test]
    fn spectrum_panels() {
        let t = spectrum(&["#E16A86", "#909800", "#00AD9A", "#9183E6"]).unwrap();
        let one = spectrum_svg(&t, false).unwrap();
        let two = spectrum_svg(&t, true).unwrap();
        assert_eq!(one.matches("<polyline").count(), 3);
        assert_eq!(two.matches("<polyline").count(), 6);
        assert_eq!(two, spectrum_svg(&t, true).unwrap());
        assert_eq!(num(-0.001), "0.00");
    }
}
