//! Axis-aligned box geometry in continuous corner coordinates.
//!
//! Boxes are `[x1, y1, x2, y2]` with `x1 <= x2`, `y1 <= y2`. Coordinates are
//! real-valued, so a box covers the region `[x1, x2) x [y1, y2)` of the plane
//! and its area is `(x2 - x1) * (y2 - y1)` with no pixel +1 correction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned bounding box. Construction validates ordering and finiteness;
/// degenerate boxes with zero width or height are allowed and have area 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 4]", try_from = "[f64; 4]")]
pub struct BBox {
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
}

impl BBox {
    /// Rejects reversed corners instead of silently swapping them: a reversed
    /// box in input data is a bug worth surfacing, not repairing.
    pub fn new(x1: f64, y1: f64, x2: f64, y2: f64) -> Result<Self> {
        if !(x1.is_finite() && y1.is_finite() && x2.is_finite() && y2.is_finite()) {
            return Err(Error::InvalidBox {
                x1,
                y1,
                x2,
                y2,
                reason: "coordinates must be finite",
            });
        }
        if x2 < x1 || y2 < y1 {
            return Err(Error::InvalidBox {
                x1,
                y1,
                x2,
                y2,
                reason: "corners out of order (x2 < x1 or y2 < y1)",
            });
        }
        Ok(BBox { x1, y1, x2, y2 })
    }

    /// Builds a box from center, width and height.
    pub fn from_cxcywh(cx: f64, cy: f64, w: f64, h: f64) -> Result<Self> {
        BBox::new(cx - w / 2.0, cy - h / 2.0, cx + w / 2.0, cy + h / 2.0)
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn y1(&self) -> f64 {
        self.y1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn y2(&self) -> f64 {
        self.y2
    }

    pub fn width(&self) -> f64 {
        self.x2 - self.x1
    }

    pub fn height(&self) -> f64 {
        self.y2 - self.y1
    }

    pub fn area(&self) -> f64 {
        (self.x2 - self.x1) * (self.y2 - self.y1)
    }

    pub fn center(&self) -> (f64, f64) {
        ((self.x1 + self.x2) / 2.0, (self.y1 + self.y2) / 2.0)
    }

    pub fn corners(&self) -> [f64; 4] {
        [self.x1, self.y1, self.x2, self.y2]
    }

    /// Clamps the box to `[0, w] x [0, h]`.
    pub fn clip(&self, w: f64, h: f64) -> BBox {
        BBox {
            x1: self.x1.clamp(0.0, w),
            y1: self.y1.clamp(0.0, h),
            x2: self.x2.clamp(0.0, w),
            y2: self.y2.clamp(0.0, h),
        }
    }
}

impl From<BBox> for [f64; 4] {
    fn from(b: BBox) -> [f64; 4] {
        b.corners()
    }
}

impl TryFrom<[f64; 4]> for BBox {
    type Error = Error;

    fn try_from(c: [f64; 4]) -> Result<Self> {
        BBox::new(c[0], c[1], c[2], c[3])
    }
}

/// Intersection-over-union of two boxes. An empty union (both boxes
/// degenerate) is defined as iou 0, so zero-area boxes never divide by zero.
pub fn iou(a: &BBox, b: &BBox) -> f64 {
    let iw = (a.x2.min(b.x2) - a.x1.max(b.x1)).max(0.0);
    let ih = (a.y2.min(b.y2) - a.y1.max(b.y1)).max(0.0);
    let inter = iw * ih;
    let union = a.area() + b.area() - inter;
    if union <= 0.0 {
        return 0.0;
    }
    inter / union
}

/// Pairwise iou, `result[i][j] = iou(a[i], b[j])`. Delegates to [`iou`] per
/// element so the matrix is bit-identical to elementwise calls.
pub fn iou_matrix(boxes_a: &[BBox], boxes_b: &[BBox]) -> Vec<Vec<f64>> {
    boxes_a
        .iter()
        .map(|a| boxes_b.iter().map(|b| iou(a, b)).collect())
        .collect()
}
