//! CSS color parsing: named colors, `#rgb`/`#rrggbb` hex, and `rgb(r,g,b)`.

/// Named CSS colors accepted in stroke/fill attributes.
const NAMED: &[(&str, [u8; 3])] = &[
    ("aliceblue", [240, 248, 255]),
    ("aqua", [0, 255, 255]),
    ("azure", [240, 255, 255]),
    ("beige", [245, 245, 220]),
    ("black", [0, 0, 0]),
    ("blue", [0, 0, 255]),
    ("brown", [165, 42, 42]),
    ("chocolate", [210, 105, 30]),
    ("coral", [255, 127, 80]),
    ("crimson", [220, 20, 60]),
    ("cyan", [0, 255, 255]),
    ("darkblue", [0, 0, 139]),
    ("darkgray", [169, 169, 169]),
    ("darkgreen", [0, 100, 0]),
    ("darkgrey", [169, 169, 169]),
    ("darkorange", [255, 140, 0]),
    ("darkred", [139, 0, 0]),
    ("darkviolet", [148, 0, 211]),
    ("fuchsia", [255, 0, 255]),
    ("gold", [255, 215, 0]),
    ("gray", [128, 128, 128]),
    ("green", [0, 128, 0]),
    ("grey", [128, 128, 128]),
    ("indigo", [75, 0, 130]),
    ("ivory", [255, 255, 240]),
    ("khaki", [240, 230, 140]),
    ("lavender", [230, 230, 250]),
    ("lightblue", [173, 216, 230]),
    ("lightgray", [211, 211, 211]),
    ("lightgreen", [144, 238, 144]),
    ("lightgrey", [211, 211, 211]),
    ("lime", [0, 255, 0]),
    ("magenta", [255, 0, 255]),
    ("maroon", [128, 0, 0]),
    ("navy", [0, 0, 128]),
    ("olive", [128, 128, 0]),
    ("orange", [255, 165, 0]),
    ("orchid", [218, 112, 214]),
    ("pink", [255, 192, 203]),
    ("plum", [221, 160, 221]),
    ("purple", [128, 0, 128]),
    ("red", [255, 0, 0]),
    ("salmon", [250, 128, 114]),
    ("silver", [192, 192, 192]),
    ("snow", [255, 250, 250]),
    ("tan", [210, 180, 140]),
    ("teal", [0, 128, 128]),
    ("turquoise", [64, 224, 208]),
    ("violet", [238, 130, 238]),
    ("white", [255, 255, 255]),
    ("yellow", [255, 255, 0]),
];

fn channels_to_unit(c: [u8; 3]) -> [f64; 3] {
    [c[0] as f64 / 255.0, c[1] as f64 / 255.0, c[2] as f64 / 255.0]
}

/// Parse a CSS color value into unit-range RGB. Returns `None` for anything
/// unrecognized (the caller records an element-level error).
pub fn parse_color(value: &str) -> Option<[f64; 3]> {
    let v = value.trim();
    if let Some(hex) = v.strip_prefix('#') {
        return parse_hex(hex);
    }
    if let Some(body) = v.strip_prefix("rgb(").and_then(|s| s.strip_suffix(')')) {
        let mut parts = body.split(',').map(str::trim);
        let mut chan = [0u8; 3];
        for slot in &mut chan {
            *slot = parts.next()?.parse().ok()?;
        }
        if parts.next().is_some() {
            return None;
        }
        return Some(channels_to_unit(chan));
    }
    let lower = v.to_ascii_lowercase();
    NAMED
        .iter()
        .find(|(name, _)| *name == lower)
        .map(|(_, c)| channels_to_unit(*c))
}

fn parse_hex(hex: &str) -> Option<[f64; 3]> {
    let expand = |n: u8| n * 16 + n;
    match hex.len() {
        3 => {
            let mut chan = [0u8; 3];
            for (i, ch) in hex.chars().enumerate() {
                chan[i] = expand(ch.to_digit(16)? as u8);
            }
            Some(channels_to_unit(chan))
        }
        6 => {
            let mut chan = [0u8; 3];
            for i in 0..3 {
                chan[i] = u8::from_str_radix(&hex[2 * i..2 * i + 2], 16).ok()?;
            }
            Some(channels_to_unit(chan))
        }
        _ => None,
    }
}
