//! Parser for the SVG path `d` attribute. Supported commands: M, L, C, Q, A,
//! Z and their relative forms; anything else is an element-level error.

use crate::bezier::{arc_to_beziers, elevate_quadratic, elevate_segment, CubicBezier, Style};
use crate::geom::{pt, Point};

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Self {
        Scanner { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_separators(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\n' | b'\r' | b',' => self.pos += 1,
                _ => break,
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_separators();
        self.pos >= self.bytes.len()
    }

    fn next_command(&mut self) -> Option<u8> {
        self.skip_separators();
        let b = *self.bytes.get(self.pos)?;
        if b.is_ascii_alphabetic() {
            self.pos += 1;
            Some(b)
        } else {
            None
        }
    }

    /// True when the next token continues the current command's argument list.
    fn peek_number(&mut self) -> bool {
        self.skip_separators();
        matches!(self.bytes.get(self.pos), Some(b'0'..=b'9' | b'+' | b'-' | b'.'))
    }

    fn next_number(&mut self) -> Result<f64, String> {
        self.skip_separators();
        let start = self.pos;
        if matches!(self.bytes.get(self.pos), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        let mut saw_digit = false;
        while matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
            self.pos += 1;
            saw_digit = true;
        }
        if matches!(self.bytes.get(self.pos), Some(b'.')) {
            self.pos += 1;
            while matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
                self.pos += 1;
                saw_digit = true;
            }
        }
        if saw_digit && matches!(self.bytes.get(self.pos), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.bytes.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
                while matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
                    self.pos += 1;
                }
            } else {
                self.pos = mark; // bare 'e' belongs to something else
            }
        }
        if !saw_digit {
            return Err(format!("expected number at offset {}", start));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format!("unparseable number at offset {start}"))
    }

    /// Arc flags are a single `0`/`1` character, possibly unseparated.
    fn next_flag(&mut self) -> Result<bool, String> {
        self.skip_separators();
        match self.bytes.get(self.pos) {
            Some(b'0') => {
                self.pos += 1;
                Ok(false)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(true)
            }
            _ => Err(format!("expected arc flag at offset {}", self.pos)),
        }
    }
}

/// Convert a path expression into cubics. Errors describe the first offending
/// token; the caller skips the whole element and records the message.
pub fn parse_path_data(d: &str, style: Style) -> Result<Vec<CubicBezier>, String> {
    let mut sc = Scanner::new(d);
    let mut curves = Vec::new();
    let mut current = pt(0.0, 0.0);
    let mut subpath_start = pt(0.0, 0.0);
    let mut have_position = false;

    let mut emit_line = |curves: &mut Vec<CubicBezier>, from: Point, to: Point| {
        if from.distance(to) > 0.0 {
            if let Ok(c) = elevate_segment(from, to, style) {
                curves.push(c);
            }
        }
    };

    while !sc.at_end() {
        let cmd = sc
            .next_command()
            .ok_or_else(|| format!("expected command letter at offset {}", sc.pos))?;
        let absolute = cmd.is_ascii_uppercase();
        let resolve = |current: Point, p: Point| if absolute { p } else { current + p };

        match cmd.to_ascii_uppercase() {
            b'M' => {
                let x = sc.next_number()?;
                let y = sc.next_number()?;
                current = resolve(current, pt(x, y));
                subpath_start = current;
                have_position = true;
                // Extra pairs after a moveto are implicit linetos.
                while sc.peek_number() {
                    let x = sc.next_number()?;
                    let y = sc.next_number()?;
                    let target = resolve(current, pt(x, y));
                    emit_line(&mut curves, current, target);
                    current = target;
                }
            }
            b'L' => {
                if !have_position {
                    return Err("lineto before any moveto".into());
                }
                loop {
                    let x = sc.next_number()?;
                    let y = sc.next_number()?;
                    let target = resolve(current, pt(x, y));
                    emit_line(&mut curves, current, target);
                    current = target;
                    if !sc.peek_number() {
                        break;
                    }
                }
            }
            b'C' => {
                if !have_position {
                    return Err("curveto before any moveto".into());
                }
                loop {
                    let mut ps = [pt(0.0, 0.0); 3];
                    for p in &mut ps {
                        let x = sc.next_number()?;
                        let y = sc.next_number()?;
                        *p = resolve(current, pt(x, y));
                    }
                    if current.distance(ps[2]) > 0.0 || current.distance(ps[0]) > 0.0 {
                        curves.push(
                            CubicBezier::new(current, ps[0], ps[1], ps[2], style)
                                .map_err(|e| e.to_string())?,
                        );
                    }
                    current = ps[2];
                    if !sc.peek_number() {
                        break;
                    }
                }
            }
            b'Q' => {
                if !have_position {
                    return Err("quadratic before any moveto".into());
                }
                loop {
                    let x1 = sc.next_number()?;
                    let y1 = sc.next_number()?;
                    let x = sc.next_number()?;
                    let y = sc.next_number()?;
                    let q1 = resolve(current, pt(x1, y1));
                    let target = resolve(current, pt(x, y));
                    if current.distance(target) > 0.0 || current.distance(q1) > 0.0 {
                        curves.push(
                            elevate_quadratic(current, q1, target, style)
                                .map_err(|e| e.to_string())?,
                        );
                    }
                    current = target;
                    if !sc.peek_number() {
                        break;
                    }
                }
            }
            b'A' => {
                if !have_position {
                    return Err("arc before any moveto".into());
                }
                loop {
                    let rx = sc.next_number()?;
                    let ry = sc.next_number()?;
                    let rot = sc.next_number()?;
                    let large = sc.next_flag()?;
                    let sweep = sc.next_flag()?;
                    let x = sc.next_number()?;
                    let y = sc.next_number()?;
                    let target = resolve(current, pt(x, y));
                    let arcs = arc_to_beziers(current, rx, ry, rot, large, sweep, target, style)
                        .map_err(|e| e.to_string())?;
                    curves.extend(arcs);
                    current = target;
                    if !sc.peek_number() {
                        break;
                    }
                }
            }
            b'Z' => {
                emit_line(&mut curves, current, subpath_start);
                current = subpath_start;
            }
            other => {
                return Err(format!("unsupported path command '{}'", other as char));
            }
        }
    }
    Ok(curves)
}
