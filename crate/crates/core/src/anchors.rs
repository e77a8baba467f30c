//! Multi-level anchor grids and per-anchor localization targets.
//!
//! A layout places one cell per `stride x stride` tile of the image, with one
//! anchor per (scale, aspect ratio) pair centered on each cell. Anchor ids are
//! dense and their order is part of the file-format contract: level-major,
//! then row-major over cells, then scale-major over (scale, ratio) pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{iou, BBox};

pub const DEFAULT_POSITIVE_THRESHOLD: f64 = 0.5;
pub const DEFAULT_NEGATIVE_THRESHOLD: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub stride: u32,
    pub base_size: f64,
}

/// Anchor pyramid description. `aspect_ratios` are height/width; anchors are
/// not clipped to the image unless `clip` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnchorLayout {
    /// (width, height) in pixels.
    pub image_size: (u32, u32),
    pub levels: Vec<Level>,
    pub scales: Vec<f64>,
    pub aspect_ratios: Vec<f64>,
    pub clip: bool,
}

impl Default for AnchorLayout {
    /// Four-level pyramid for 256 px images: strides 8..64, base size twice
    /// the stride, three sub-octave scales, aspect ratios 1:2 / 1:1 / 2:1.
    fn default() -> Self {
        AnchorLayout {
            image_size: (256, 256),
            levels: [8u32, 16, 32, 64]
                .iter()
                .map(|&stride| Level {
                    stride,
                    base_size: (stride * 2) as f64,
                })
                .collect(),
            scales: vec![1.0, f64::powf(2.0, 1.0 / 3.0), f64::powf(2.0, 2.0 / 3.0)],
            aspect_ratios: vec![0.5, 1.0, 2.0],
            clip: false,
        }
    }
}

impl AnchorLayout {
    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::EmptyLayout("no levels"));
        }
        if self.scales.is_empty() {
            return Err(Error::EmptyLayout("no scales"));
        }
        if self.aspect_ratios.is_empty() {
            return Err(Error::EmptyLayout("no aspect ratios"));
        }
        if self.image_size.0 == 0 || self.image_size.1 == 0 {
            return Err(Error::InvalidLayout(format!(
                "image size {}x{} must be positive",
                self.image_size.0, self.image_size.1
            )));
        }
        for w in self.levels.windows(2) {
            if w[1].stride <= w[0].stride {
                return Err(Error::InvalidLayout(format!(
                    "strides must be strictly increasing, got {} then {}",
                    w[0].stride, w[1].stride
                )));
            }
        }
        for level in &self.levels {
            if level.stride == 0 {
                return Err(Error::InvalidLayout("stride must be positive".into()));
            }
            if !(level.base_size.is_finite() && level.base_size > 0.0) {
                return Err(Error::InvalidLayout(format!(
                    "base size {} must be positive and finite",
                    level.base_size
                )));
            }
        }
        for &s in &self.scales {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::InvalidLayout(format!(
                    "scale {s} must be positive and finite"
                )));
            }
        }
        for &r in &self.aspect_ratios {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::InvalidLayout(format!(
                    "aspect ratio {r} must be positive and finite"
                )));
            }
        }
        Ok(())
    }

    /// Cells along (x, y) for one level: `ceil(size / stride)`.
    pub fn grid_shape(&self, level: usize) -> (usize, usize) {
        let stride = self.levels[level].stride;
        let cols = (self.image_size.0 as usize).div_ceil(stride as usize);
        let rows = (self.image_size.1 as usize).div_ceil(stride as usize);
        (cols, rows)
    }

    /// Exact anchor count: sum over levels of cells x scales x ratios.
    pub fn anchor_count(&self) -> usize {
        let per_cell = self.scales.len() * self.aspect_ratios.len();
        (0..self.levels.len())
            .map(|l| {
                let (cols, rows) = self.grid_shape(l);
                cols * rows * per_cell
            })
            .sum()
    }
}

/// A generated grid. `anchors[id]` is the box for dense anchor id `id`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorGrid {
    pub layout: AnchorLayout,
    pub anchors: Vec<BBox>,
}

/// Materializes every anchor of the layout in id order. Cell centers sit at
/// `((i + 0.5) * stride, (j + 0.5) * stride)`; an anchor for (scale, ratio)
/// has width `base * scale * sqrt(1 / ratio)` and height
/// `base * scale * sqrt(ratio)`, so ratio is height/width exactly.
pub fn generate_anchors(layout: &AnchorLayout) -> Result<AnchorGrid> {
    layout.validate()?;
    let mut anchors = Vec::with_capacity(layout.anchor_count());
    let (img_w, img_h) = (layout.image_size.0 as f64, layout.image_size.1 as f64);
    for (l, level) in layout.levels.iter().enumerate() {
        let (cols, rows) = layout.grid_shape(l);
        let stride = level.stride as f64;
        for j in 0..rows {
            for i in 0..cols {
                let cx = (i as f64 + 0.5) * stride;
                let cy = (j as f64 + 0.5) * stride;
                for &scale in &layout.scales {
                    for &ratio in &layout.aspect_ratios {
                        let w = level.base_size * scale * (1.0 / ratio).sqrt();
                        let h = level.base_size * scale * ratio.sqrt();
                        let b = BBox::from_cxcywh(cx, cy, w, h)?;
                        anchors.push(if layout.clip { b.clip(img_w, img_h) } else { b });
                    }
                }
            }
        }
    }
    debug_assert_eq!(anchors.len(), layout.anchor_count());
    Ok(AnchorGrid {
        layout: layout.clone(),
        anchors,
    })
}

// ── Scenes and targets ──────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub bbox: BBox,
    pub class_id: u32,
}

/// One image with its ground-truth boxes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub image_id: u64,
    /// (width, height) in pixels.
    pub image_size: (u32, u32),
    pub ground_truths: Vec<GroundTruth>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Assignment {
    Positive,
    Negative,
    Ignore,
}

/// Per-anchor localization targets for one scene. `aiou[k]` is the iou
/// between anchor `k` and its best ground-truth box; this is the quantity a
/// localization-confidence head is trained to predict.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorTargets {
    pub aiou: Vec<f64>,
    pub matched_gt: Vec<Option<usize>>,
    pub assignment: Vec<Assignment>,
}

/// Computes max-iou targets with positive/negative thresholds. Ties in the
/// argmax go to the lowest ground-truth index; a scene without ground truth
/// yields all-zero targets marked negative.
pub fn compute_aiou_targets(
    grid: &AnchorGrid,
    scene: &Scene,
    positive_threshold: f64,
    negative_threshold: f64,
) -> Result<AnchorTargets> {
    if !(0.0..=1.0).contains(&negative_threshold)
        || !(0.0..=1.0).contains(&positive_threshold)
        || negative_threshold > positive_threshold
    {
        return Err(Error::InvalidConfig(format!(
            "thresholds must satisfy 0 <= negative ({negative_threshold}) <= positive ({positive_threshold}) <= 1"
        )));
    }
    let n = grid.anchors.len();
    if scene.ground_truths.is_empty() {
        return Ok(AnchorTargets {
            aiou: vec![0.0; n],
            matched_gt: vec![None; n],
            assignment: vec![Assignment::Negative; n],
        });
    }
    let mut aiou = Vec::with_capacity(n);
    let mut matched_gt = Vec::with_capacity(n);
    let mut assignment = Vec::with_capacity(n);
    for anchor in &grid.anchors {
        let mut best = 0.0;
        let mut best_gt = 0;
        for (g, gt) in scene.ground_truths.iter().enumerate() {
            let v = iou(anchor, &gt.bbox);
            if v > best {
                best = v;
                best_gt = g;
            }
        }
        aiou.push(best);
        matched_gt.push(Some(best_gt));
        assignment.push(if best >= positive_threshold {
            Assignment::Positive
        } else if best < negative_threshold {
            Assignment::Negative
        } else {
            Assignment::Ignore
        });
    }
    Ok(AnchorTargets {
        aiou,
        matched_gt,
        assignment,
    })
}
