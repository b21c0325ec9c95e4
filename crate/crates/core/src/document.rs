//! The parsed vector document: a flat list of cubic Bézier curves, the canvas
//! extent, and optional ground-truth object boxes.

use serde::{Deserialize, Serialize};

use crate::bezier::CubicBezier;
use crate::error::{Error, Result};
use crate::geom::BoundingBox;

/// An annotated object box. Strictly positive area, unlike proposal boxes
/// which may degenerate to segments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundTruthBox(BoundingBox);

impl GroundTruthBox {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> Result<Self> {
        let b = BoundingBox::new(x_min, y_min, x_max, y_max)?;
        if !(b.width() > 0.0 && b.height() > 0.0) {
            return Err(Error::Data(format!(
                "ground-truth box [{x_min}, {y_min}, {x_max}, {y_max}] has non-positive area"
            )));
        }
        Ok(GroundTruthBox(b))
    }

    pub fn bbox(&self) -> &BoundingBox {
        &self.0
    }
}

/// One annotated object: its box and its class id in `[0, C)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Annotation {
    pub bbox: GroundTruthBox,
    pub class_id: usize,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct VectorDocument {
    pub curves: Vec<CubicBezier>,
    /// Canvas extent in document units.
    pub width: f64,
    pub height: f64,
    pub annotations: Vec<Annotation>,
}

impl VectorDocument {
    pub fn new(curves: Vec<CubicBezier>, width: f64, height: f64) -> Self {
        VectorDocument { curves, width, height, annotations: Vec::new() }
    }

    /// Canvas diagonal; the reference length for merge tolerances and
    /// cluster expansion.
    pub fn diagonal(&self) -> f64 {
        self.width.hypot(self.height)
    }

    /// Joint bounding box of all curve control points.
    pub fn curve_bbox(&self) -> Option<BoundingBox> {
        BoundingBox::from_points(self.curves.iter().flat_map(|c| c.control_points()))
    }

    /// Replace every curve with its image under an affine map; annotations
    /// map to the bounding rectangle of their transformed corners.
    pub fn apply_affine(&self, m: &crate::geom::Affine) -> Result<VectorDocument> {
        let curves = self.curves.iter().map(|c| c.apply_affine(m)).collect();
        let mut annotations = Vec::with_capacity(self.annotations.len());
        for a in &self.annotations {
            let moved = BoundingBox::from_points(a.bbox.bbox().corners().map(|p| m.apply(p)))
                .expect("four corners");
            annotations.push(Annotation {
                bbox: GroundTruthBox::new(moved.x_min, moved.y_min, moved.x_max, moved.y_max)?,
                class_id: a.class_id,
            });
        }
        Ok(VectorDocument {
            curves,
            width: self.width,
            height: self.height,
            annotations,
        })
    }
}

/// Ordered class names; index defines the class id.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassList(pub Vec<String>);

impl ClassList {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|c| c == name)
    }

    pub fn name_of(&self, id: usize) -> Option<&str> {
        self.0.get(id).map(String::as_str)
    }
}
