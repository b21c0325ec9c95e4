//! SVG front end: parse a document into [`VectorDocument`] with every
//! supported primitive normalized to cubic Béziers.
//!
//! Supported elements: `line`, `polyline`, `polygon`, `rect`, `circle`,
//! `ellipse`, `path` (M/L/C/Q/A/Z and relatives), and `g` grouping with
//! `translate`/`scale`/`rotate` transforms. Anything else is skipped and
//! counted as a warning; elements with unparseable attributes are skipped
//! with the error recorded.

pub mod color;
pub mod path_data;

use roxmltree::{Document, Node};

use crate::bezier::{circle_to_beziers, elevate_segment, ellipse_to_beziers, CubicBezier, Style};
use crate::document::VectorDocument;
use crate::error::{Error, Result};
use crate::geom::{pt, Affine, Point};

pub use path_data::parse_path_data;

/// A skipped element or recovered element-level error.
#[derive(Debug, Clone)]
pub struct ParseWarning {
    pub element: String,
    pub line: u32,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct ParsedSvg {
    pub document: VectorDocument,
    pub warnings: Vec<ParseWarning>,
}

impl ParsedSvg {
    pub fn warning_count(&self) -> usize {
        self.warnings.len()
    }
}

/// Stroke presentation attributes as inherited through groups.
#[derive(Debug, Clone, Copy, Default)]
struct StyleAttrs {
    stroke: Option<[f64; 3]>,
    stroke_none: bool,
    fill: Option<[f64; 3]>,
    width: Option<f64>,
}

impl StyleAttrs {
    /// Effective curve style: stroke color wins; fill-only shapes use their
    /// fill color; otherwise black. Missing width means 1.
    fn resolve(&self) -> Style {
        let color = if self.stroke_none {
            self.fill.unwrap_or([0.0, 0.0, 0.0])
        } else {
            self.stroke.or(self.fill).unwrap_or([0.0, 0.0, 0.0])
        };
        Style { color, width: self.width.unwrap_or(1.0) }
    }
}

struct Walker<'a> {
    doc: &'a Document<'a>,
    curves: Vec<CubicBezier>,
    warnings: Vec<ParseWarning>,
    width: Option<f64>,
    height: Option<f64>,
}

/// Parse an SVG document string.
///
/// Canvas extent comes from the root `width`/`height` attributes; when they
/// are absent it falls back to the extent of the joint curve bounding box.
pub fn parse_svg(text: &str) -> Result<ParsedSvg> {
    let doc = Document::parse(text).map_err(|e| {
        let pos = e.pos();
        Error::Xml { line: pos.row, col: pos.col, msg: e.to_string() }
    })?;
    let root = doc.root_element();
    if root.tag_name().name() != "svg" {
        return Err(Error::Xml {
            line: 1,
            col: 1,
            msg: format!("root element is <{}>, expected <svg>", root.tag_name().name()),
        });
    }

    let mut walker = Walker {
        doc: &doc,
        curves: Vec::new(),
        warnings: Vec::new(),
        width: None,
        height: None,
    };
    walker.width = root.attribute("width").and_then(parse_length);
    walker.height = root.attribute("height").and_then(parse_length);

    for child in root.children() {
        walker.visit(child, Affine::IDENTITY, StyleAttrs::default());
    }

    let (width, height) = match (walker.width, walker.height) {
        (Some(w), Some(h)) => (w, h),
        _ => {
            let bbox = crate::geom::BoundingBox::from_points(
                walker.curves.iter().flat_map(|c| c.control_points()),
            );
            match bbox {
                Some(b) => (
                    walker.width.unwrap_or_else(|| b.x_max.max(b.width())),
                    walker.height.unwrap_or_else(|| b.y_max.max(b.height())),
                ),
                None => (walker.width.unwrap_or(0.0), walker.height.unwrap_or(0.0)),
            }
        }
    };

    Ok(ParsedSvg {
        document: VectorDocument::new(walker.curves, width, height),
        warnings: walker.warnings,
    })
}

/// Strip a trailing unit suffix ("px", "pt", ...) and parse the number.
fn parse_length(s: &str) -> Option<f64> {
    let trimmed = s.trim();
    let end = trimmed
        .find(|c: char| !(c.is_ascii_digit() || c == '.' || c == '+' || c == '-' || c == 'e' || c == 'E'))
        .unwrap_or(trimmed.len());
    trimmed[..end].parse().ok()
}

impl Walker<'_> {
    fn line_of(&self, node: Node) -> u32 {
        self.doc.text_pos_at(node.range().start).row
    }

    fn warn(&mut self, node: Node, message: impl Into<String>) {
        self.warnings.push(ParseWarning {
            element: node.tag_name().name().to_string(),
            line: self.line_of(node),
            message: message.into(),
        });
    }

    fn visit(&mut self, node: Node, transform: Affine, inherited: StyleAttrs) {
        if !node.is_element() {
            return;
        }
        let mut style = inherited;
        if let Err(msg) = merge_style_attrs(&node, &mut style) {
            self.warn(node, msg);
            return;
        }
        let local_transform = match node.attribute("transform") {
            Some(t) => match parse_transform(t) {
                Ok(m) => m.then(transform),
                Err(msg) => {
                    self.warn(node, msg);
                    return;
                }
            },
            None => transform,
        };

        let name = node.tag_name().name();
        let shape_result: std::result::Result<Option<Vec<CubicBezier>>, String> = match name {
            "g" | "svg" => {
                for child in node.children() {
                    self.visit(child, local_transform, style);
                }
                Ok(None)
            }
            "line" => build_line(&node, style.resolve()).map(Some),
            "polyline" => build_poly(&node, style.resolve(), false).map(Some),
            "polygon" => build_poly(&node, style.resolve(), true).map(Some),
            "rect" => build_rect(&node, style.resolve()).map(Some),
            "circle" => build_circle(&node, style.resolve()).map(Some),
            "ellipse" => build_ellipse(&node, style.resolve()).map(Some),
            "path" => match node.attribute("d") {
                Some(d) => parse_path_data(d, style.resolve()).map(Some),
                None => Ok(Some(Vec::new())),
            },
            _ => {
                self.warn(node, "unsupported element skipped");
                Ok(None)
            }
        };

        match shape_result {
            Ok(Some(curves)) => {
                self.curves
                    .extend(curves.into_iter().map(|c| c.apply_affine(&local_transform)));
            }
            Ok(None) => {}
            Err(msg) => self.warn(node, msg),
        }
    }
}

fn merge_style_attrs(node: &Node, style: &mut StyleAttrs) -> std::result::Result<(), String> {
    let mut apply = |key: &str, value: &str| -> std::result::Result<(), String> {
        match key {
            "stroke" => {
                if value.trim() == "none" {
                    style.stroke = None;
                    style.stroke_none = true;
                } else {
                    style.stroke = Some(
                        color::parse_color(value).ok_or_else(|| format!("bad stroke color '{value}'"))?,
                    );
                    style.stroke_none = false;
                }
            }
            "fill" => {
                if value.trim() == "none" {
                    style.fill = None;
                } else {
                    style.fill = Some(
                        color::parse_color(value).ok_or_else(|| format!("bad fill color '{value}'"))?,
                    );
                }
            }
            "stroke-width" => {
                let w: f64 = value
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad stroke-width '{value}'"))?;
                if !w.is_finite() || w < 0.0 {
                    return Err(format!("stroke-width {w} out of range"));
                }
                style.width = Some(w);
            }
            _ => {}
        }
        Ok(())
    };

    for key in ["stroke", "fill", "stroke-width"] {
        if let Some(v) = node.attribute(key) {
            apply(key, v)?;
        }
    }
    // The style attribute overrides presentation attributes.
    if let Some(css) = node.attribute("style") {
        for decl in css.split(';') {
            if let Some((k, v)) = decl.split_once(':') {
                apply(k.trim(), v.trim())?;
            }
        }
    }
    Ok(())
}

/// Parse a transform list of `translate`, `scale` and `rotate` functions.
/// Skew and raw matrices are out of scope and rejected.
fn parse_transform(s: &str) -> std::result::Result<Affine, String> {
    let mut result = Affine::IDENTITY;
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.find('(').ok_or_else(|| format!("bad transform '{s}'"))?;
        let close = rest.find(')').ok_or_else(|| format!("bad transform '{s}'"))?;
        let name = rest[..open].trim();
        let args: Vec<f64> = rest[open + 1..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| format!("bad transform number '{t}'")))
            .collect::<std::result::Result<_, _>>()?;
        let m = match (name, args.as_slice()) {
            ("translate", [tx]) => Affine::translation(pt(*tx, 0.0)),
            ("translate", [tx, ty]) => Affine::translation(pt(*tx, *ty)),
            ("scale", [sx]) => Affine::scale(*sx, *sx),
            ("scale", [sx, sy]) => Affine::scale(*sx, *sy),
            ("rotate", [deg]) => Affine::rotation(deg.to_radians()),
            ("rotate", [deg, cx, cy]) => Affine::rotation_about(deg.to_radians(), pt(*cx, *cy)),
            _ => return Err(format!("unsupported transform '{name}' with {} args", args.len())),
        };
        // Transform lists apply left-to-right to the content.
        result = m.then(result);
        rest = rest[close + 1..].trim_start_matches([',', ' ', '\t', '\n']).trim();
    }
    Ok(result)
}

fn req_attr(node: &Node, name: &str) -> std::result::Result<f64, String> {
    match node.attribute(name) {
        Some(v) => v.trim().parse().map_err(|_| format!("bad numeric attribute {name}='{v}'")),
        None => Err(format!("missing attribute {name}")),
    }
}

fn opt_attr(node: &Node, name: &str, default: f64) -> std::result::Result<f64, String> {
    match node.attribute(name) {
        Some(v) => v.trim().parse().map_err(|_| format!("bad numeric attribute {name}='{v}'")),
        None => Ok(default),
    }
}

fn build_line(node: &Node, style: Style) -> std::result::Result<Vec<CubicBezier>, String> {
    let a = pt(opt_attr(node, "x1", 0.0)?, opt_attr(node, "y1", 0.0)?);
    let b = pt(opt_attr(node, "x2", 0.0)?, opt_attr(node, "y2", 0.0)?);
    if a.distance(b) == 0.0 {
        return Ok(Vec::new());
    }
    Ok(vec![elevate_segment(a, b, style).map_err(|e| e.to_string())?])
}

fn parse_points(s: &str) -> std::result::Result<Vec<Point>, String> {
    let nums: Vec<f64> = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("bad point value '{t}'")))
        .collect::<std::result::Result<_, _>>()?;
    if nums.len() % 2 != 0 {
        return Err("odd number of point coordinates".into());
    }
    Ok(nums.chunks(2).map(|c| pt(c[0], c[1])).collect())
}

fn build_poly(node: &Node, style: Style, close: bool) -> std::result::Result<Vec<CubicBezier>, String> {
    let points = parse_points(node.attribute("points").unwrap_or(""))?;
    let mut curves = Vec::new();
    for w in points.windows(2) {
        if w[0].distance(w[1]) > 0.0 {
            curves.push(elevate_segment(w[0], w[1], style).map_err(|e| e.to_string())?);
        }
    }
    if close && points.len() >= 2 {
        let (first, last) = (points[0], *points.last().unwrap());
        if first.distance(last) > 0.0 {
            curves.push(elevate_segment(last, first, style).map_err(|e| e.to_string())?);
        }
    }
    Ok(curves)
}

fn build_rect(node: &Node, style: Style) -> std::result::Result<Vec<CubicBezier>, String> {
    let x = opt_attr(node, "x", 0.0)?;
    let y = opt_attr(node, "y", 0.0)?;
    let w = req_attr(node, "width")?;
    let h = req_attr(node, "height")?;
    if w <= 0.0 || h <= 0.0 {
        return Err(format!("rect with non-positive size {w}x{h}"));
    }
    let corners = [pt(x, y), pt(x + w, y), pt(x + w, y + h), pt(x, y + h)];
    let mut curves = Vec::with_capacity(4);
    for i in 0..4 {
        curves.push(
            elevate_segment(corners[i], corners[(i + 1) % 4], style).map_err(|e| e.to_string())?,
        );
    }
    Ok(curves)
}

fn build_circle(node: &Node, style: Style) -> std::result::Result<Vec<CubicBezier>, String> {
    let cx = opt_attr(node, "cx", 0.0)?;
    let cy = opt_attr(node, "cy", 0.0)?;
    let r = req_attr(node, "r")?;
    circle_to_beziers(pt(cx, cy), r, style)
        .map(|q| q.to_vec())
        .map_err(|e| e.to_string())
}

fn build_ellipse(node: &Node, style: Style) -> std::result::Result<Vec<CubicBezier>, String> {
    let cx = opt_attr(node, "cx", 0.0)?;
    let cy = opt_attr(node, "cy", 0.0)?;
    let rx = req_attr(node, "rx")?;
    let ry = req_attr(node, "ry")?;
    ellipse_to_beziers(pt(cx, cy), rx, ry, style)
        .map(|q| q.to_vec())
        .map_err(|e| e.to_string())
}
