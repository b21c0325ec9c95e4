//! Canonical annotation files, dataset manifests, and a best-effort adapter
//! for SESYD-style ground-truth XML.
//!
//! One annotation file accompanies each SVG:
//!
//! ```json
//! {
//!   "classes": ["door", "window"],
//!   "objects": [ { "class": "door", "bbox": [10.0, 10.0, 60.0, 90.0] } ]
//! }
//! ```
//!
//! `classes` is optional per file; the dataset-level class list is taken from
//! the first file that carries one, and every other occurrence must agree.
//! The manifest is a plain text file, one `split svg annot` triple per line
//! with paths relative to the manifest location.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::document::{Annotation, ClassList, GroundTruthBox, VectorDocument};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnnotationObject {
    pub class: String,
    /// [x_min, y_min, x_max, y_max] in the SVG's coordinate units.
    pub bbox: [f64; 4],
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct AnnotationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<String>>,
    #[serde(default)]
    pub objects: Vec<AnnotationObject>,
}

impl AnnotationFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        crate::fsutil::write_atomic(path, serde_json::to_string_pretty(self)?.as_bytes())
    }
}

/// Attach the file's objects to a parsed document, validating class names
/// against the dataset class list and box geometry.
pub fn attach_annotations(
    mut doc: VectorDocument,
    file: &AnnotationFile,
    classes: &ClassList,
) -> Result<VectorDocument> {
    let mut annotations = Vec::with_capacity(file.objects.len());
    for obj in &file.objects {
        let class_id = classes
            .id_of(&obj.class)
            .ok_or_else(|| Error::Data(format!("unknown class name '{}'", obj.class)))?;
        let [x0, y0, x1, y1] = obj.bbox;
        annotations.push(Annotation { bbox: GroundTruthBox::new(x0, y0, x1, y1)?, class_id });
    }
    doc.annotations = annotations;
    Ok(doc)
}

pub fn load_annotations(
    doc: VectorDocument,
    path: &Path,
    classes: &ClassList,
) -> Result<VectorDocument> {
    let file = AnnotationFile::load(path)?;
    attach_annotations(doc, &file, classes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Split::Train => write!(f, "train"),
            Split::Val => write!(f, "val"),
            Split::Test => write!(f, "test"),
        }
    }
}

impl FromStr for Split {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "train" => Ok(Split::Train),
            "val" => Ok(Split::Val),
            "test" => Ok(Split::Test),
            other => Err(Error::Data(format!("unknown split tag '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ManifestEntry {
    pub split: Split,
    pub svg: PathBuf,
    pub annot: PathBuf,
}

#[derive(Debug, Clone)]
pub struct Manifest {
    /// Directory the entry paths are relative to.
    pub root: PathBuf,
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Data(format!("cannot read manifest {}: {e}", path.display())))?;
        let root = path.parent().unwrap_or_else(|| Path::new(".")).to_path_buf();
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let (split, svg, annot) = match (fields.next(), fields.next(), fields.next()) {
                (Some(s), Some(svg), Some(annot)) => (s, svg, annot),
                _ => {
                    return Err(Error::Data(format!(
                        "manifest line {} needs `split svg annot`: '{line}'",
                        lineno + 1
                    )))
                }
            };
            entries.push(ManifestEntry {
                split: split.parse()?,
                svg: PathBuf::from(svg),
                annot: PathBuf::from(annot),
            });
        }
        Ok(Manifest { root, entries })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                e.split,
                e.svg.display(),
                e.annot.display()
            ));
        }
        crate::fsutil::write_atomic(path, out.as_bytes())
    }

    pub fn split_entries(&self, split: Split) -> impl Iterator<Item = &ManifestEntry> {
        self.entries.iter().filter(move |e| e.split == split)
    }

    /// Dataset class list: the first annotation file carrying `classes` wins;
    /// any other occurrence must agree exactly.
    pub fn resolve_classes(&self) -> Result<ClassList> {
        let mut classes: Option<Vec<String>> = None;
        for entry in &self.entries {
            let file = AnnotationFile::load(&self.root.join(&entry.annot))?;
            if let Some(c) = file.classes {
                match &classes {
                    None => classes = Some(c),
                    Some(existing) if *existing == c => {}
                    Some(_) => {
                        return Err(Error::Data(format!(
                            "annotation {} disagrees with the dataset class list",
                            entry.annot.display()
                        )))
                    }
                }
            }
        }
        classes
            .map(ClassList)
            .ok_or_else(|| Error::Data("no annotation file defines `classes`".into()))
    }
}

/// Best-effort conversion of one SESYD-style ground-truth XML document into
/// the canonical annotation format.
///
/// The exact SESYD schema varies between releases, so this scans every
/// element for a recognizable class attribute (`label`, `class`, `model`,
/// `name`, `type`) and a box given either as corner attributes, as
/// `x/y/width/height`, or as child `point` elements. Trailing digits in class
/// names (instance suffixes like `armchair009`) are stripped.
pub fn convert_sesyd_ground_truth(xml: &str) -> Result<AnnotationFile> {
    let doc = roxmltree::Document::parse(xml).map_err(|e| {
        let pos = e.pos();
        Error::Xml { line: pos.row, col: pos.col, msg: e.to_string() }
    })?;

    let attr_f64 = |node: &roxmltree::Node, names: &[&str]| -> Option<f64> {
        names
            .iter()
            .find_map(|n| node.attribute(*n))
            .and_then(|v| v.trim().parse().ok())
    };

    let mut objects = Vec::new();
    for node in doc.descendants().filter(|n| n.is_element()) {
        let class_raw = ["label", "class", "model", "name", "type"]
            .iter()
            .find_map(|a| node.attribute(*a));
        let Some(class_raw) = class_raw else { continue };
        let class = normalize_class_name(class_raw);
        if class.is_empty() {
            continue;
        }

        let bbox = extract_corner_box(&node, &attr_f64)
            .or_else(|| extract_xywh_box(&node, &attr_f64))
            .or_else(|| extract_point_box(&node));
        let Some([x0, y0, x1, y1]) = bbox else { continue };
        if x1 > x0 && y1 > y0 {
            objects.push(AnnotationObject { class, bbox: [x0, y0, x1, y1] });
        }
    }

    let mut classes: Vec<String> = objects.iter().map(|o| o.class.clone()).collect();
    classes.sort();
    classes.dedup();
    Ok(AnnotationFile { classes: Some(classes), objects })
}

fn normalize_class_name(raw: &str) -> String {
    let trimmed = raw.trim();
    let stripped = trimmed.trim_end_matches(|c: char| c.is_ascii_digit());
    if stripped.is_empty() { trimmed.to_string() } else { stripped.to_string() }
}

fn extract_corner_box(
    node: &roxmltree::Node,
    attr: &impl Fn(&roxmltree::Node, &[&str]) -> Option<f64>,
) -> Option<[f64; 4]> {
    let x0 = attr(node, &["x0", "xmin", "x_min", "left"])?;
    let y0 = attr(node, &["y0", "ymin", "y_min", "top"])?;
    let x1 = attr(node, &["x1", "xmax", "x_max", "right"])?;
    let y1 = attr(node, &["y1", "ymax", "y_max", "bottom"])?;
    Some([x0.min(x1), y0.min(y1), x0.max(x1), y0.max(y1)])
}

fn extract_xywh_box(
    node: &roxmltree::Node,
    attr: &impl Fn(&roxmltree::Node, &[&str]) -> Option<f64>,
) -> Option<[f64; 4]> {
    let x = attr(node, &["x"])?;
    let y = attr(node, &["y"])?;
    let w = attr(node, &["width", "w"])?;
    let h = attr(node, &["height", "h"])?;
    (w > 0.0 && h > 0.0).then_some([x, y, x + w, y + h])
}

fn extract_point_box(node: &roxmltree::Node) -> Option<[f64; 4]> {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for child in node.descendants().filter(|n| n.is_element()) {
        let name = child.tag_name().name().to_ascii_lowercase();
        if name == "point" || name == "pt" {
            if let (Some(x), Some(y)) = (
                child.attribute("x").and_then(|v| v.trim().parse::<f64>().ok()),
                child.attribute("y").and_then(|v| v.trim().parse::<f64>().ok()),
            ) {
                xs.push(x);
                ys.push(y);
            }
        }
    }
    if xs.len() < 2 {
        return None;
    }
    let fold = |v: &[f64], init: f64, f: fn(f64, f64) -> f64| v.iter().copied().fold(init, f);
    Some([
        fold(&xs, f64::INFINITY, f64::min),
        fold(&ys, f64::INFINITY, f64::min),
        fold(&xs, f64::NEG_INFINITY, f64::max),
        fold(&ys, f64::NEG_INFINITY, f64::max),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes() -> ClassList {
        ClassList(vec!["door".into(), "window".into()])
    }

    #[test]
    fn attach_two_boxes() {
        let file = AnnotationFile {
            classes: None,
            objects: vec![
                AnnotationObject { class: "door".into(), bbox: [0.0, 0.0, 1.0, 1.0] },
                AnnotationObject { class: "window".into(), bbox: [2.0, 2.0, 3.0, 4.0] },
            ],
        };
        let doc = attach_annotations(VectorDocument::default(), &file, &classes()).unwrap();
        assert_eq!(doc.annotations.len(), 2);
        assert_eq!(doc.annotations[1].class_id, 1);
    }

    #[test]
    fn empty_annotation_list_is_valid_background_document() {
        let file = AnnotationFile::default();
        let doc = attach_annotations(VectorDocument::default(), &file, &classes()).unwrap();
        assert!(doc.annotations.is_empty());
    }

    #[test]
    fn unknown_class_is_rejected() {
        let file = AnnotationFile {
            classes: None,
            objects: vec![AnnotationObject { class: "roof".into(), bbox: [0.0, 0.0, 1.0, 1.0] }],
        };
        assert!(attach_annotations(VectorDocument::default(), &file, &classes()).is_err());
    }

    #[test]
    fn degenerate_box_is_rejected() {
        let file = AnnotationFile {
            classes: None,
            objects: vec![AnnotationObject { class: "door".into(), bbox: [1.0, 0.0, 1.0, 2.0] }],
        };
        assert!(attach_annotations(VectorDocument::default(), &file, &classes()).is_err());
    }

    #[test]
    fn sesyd_corner_attributes() {
        let xml = r#"<gt><object label="armchair003" x0="10" y0="20" x1="50" y1="60"/></gt>"#;
        let file = convert_sesyd_ground_truth(xml).unwrap();
        assert_eq!(file.objects.len(), 1);
        assert_eq!(file.objects[0].class, "armchair");
        assert_eq!(file.objects[0].bbox, [10.0, 20.0, 50.0, 60.0]);
        assert_eq!(file.classes.as_deref(), Some(&["armchair".to_string()][..]));
    }

    #[test]
    fn sesyd_point_children() {
        let xml = r#"<gt><model name="table01">
            <point x="0" y="0"/><point x="4" y="0"/><point x="4" y="3"/><point x="0" y="3"/>
        </model></gt>"#;
        let file = convert_sesyd_ground_truth(xml).unwrap();
        assert_eq!(file.objects.len(), 1);
        assert_eq!(file.objects[0].bbox, [0.0, 0.0, 4.0, 3.0]);
    }
}
