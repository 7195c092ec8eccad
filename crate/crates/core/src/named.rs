//! A small table of CSS/X11 color names.

use crate::hex::Hex;

const NAMES: &[(&str, [u8; 3])] = &[
    ("black", [0x00, 0x00, 0x00]),
    ("white", [0xFF, 0xFF, 0xFF]),
    ("red", [0xFF, 0x00, 0x00]),
    ("green", [0x00, 0xFF, 0x00]),
    ("blue", [0x00, 0x00, 0xFF]),
    ("cyan", [0x00, 0xFF, 0xFF]),
    ("magenta", [0xFF, 0x00, 0xFF]),
    ("yellow", [0xFF, 0xFF, 0x00]),
    ("gray", [0xBE, 0xBE, 0xBE]),
    ("grey", [0xBE, 0xBE, 0xBE]),
    ("lightgray", [0xD3, 0xD3, 0xD3]),
    ("lightgrey", [0xD3, 0xD3, 0xD3]),
    ("darkgray", [0xA9, 0xA9, 0xA9]),
    ("darkgrey", [0xA9, 0xA9, 0xA9]),
    ("orange", [0xFF, 0xA5, 0x00]),
    ("darkorange", [0xFF, 0x8C, 0x00]),
    ("purple", [0xA0, 0x20, 0xF0]),
    ("brown", [0xA5, 0x2A, 0x2A]),
    ("pink", [0xFF, 0xC0, 0xCB]),
    ("navy", [0x00, 0x00, 0x80]),
    ("navyblue", [0x00, 0x00, 0x80]),
    ("darkblue", [0x00, 0x00, 0x8B]),
    ("darkred", [0x8B, 0x00, 0x00]),
    ("darkgreen", [0x00, 0x64, 0x00]),
    ("forestgreen", [0x22, 0x8B, 0x22]),
    ("steelblue", [0x46, 0x82, 0xB4]),
    ("skyblue", [0x87, 0xCE, 0xEB]),
    ("lightblue", [0xAD, 0xD8, 0xE6]),
    ("gold", [0xFF, 0xD7, 0x00]),
    ("khaki", [0xF0, 0xE6, 0x8C]),
    ("tomato", [0xFF, 0x63, 0x47]),
    ("salmon", [0xFA, 0x80, 0x72]),
    ("violet", [0xEE, 0x82, 0xEE]),
    ("turquoise", [0x40, 0xE0, 0xD0]),
    ("beige", [0xF5, 0xF5, 0xDC]),
    ("maroon", [0xB0, 0x30, 0x60]),
    ("olivedrab", [0x6B, 0x8E, 0x23]),
    ("chartreuse", [0x7F, 0xFF, 0x00]),
    ("firebrick", [0xB2, 0x22, 0x22]),
    ("orchid", [0xDA, 0x70, 0xD6]),
    ("plum", [0xDD, 0xA0, 0xDD]),
    ("tan", [0xD2, 0xB4, 0x8C]),
    ("wheat", [0xF5, 0xDE, 0xB3]),
    ("ivory", [0xFF, 0xFF, 0xF0]),
    ("coral", [0xFF, 0x7F, 0x50]),
    ("sienna", [0xA0, 0x52, 0x2D]),
];

/// Looks up a color name, ignoring case, spaces and underscores.
pub fn lookup(name: &str) -> Option<Hex> {
    let key: String = name
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .flat_map(char::to_lowercase)
        .collect();
    NAMES
        .iter()
        .find(|(n, _)| *n == key)
        .map(|&(_, [r, g, b])| Hex::new(r, g, b))
}
