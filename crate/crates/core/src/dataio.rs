//! File formats: annotations, proposals, detections, reports.
//!
//! Annotations follow the familiar dataset-JSON subset (images, annotations
//! with `[x, y, w, h]` boxes, categories). Proposal records also carry
//! `[x, y, w, h]` boxes; detection records store corner boxes so that a
//! save/load round trip reproduces every float bit-exactly. Readers are
//! tolerant of unknown fields, writers emit stable key order and shortest
//! round-trip floats, so identical inputs produce identical bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::anchors::{AnchorGrid, GroundTruth, Scene};
use crate::error::{Error, Result};
use crate::evaluation::EvalReport;
use crate::geometry::BBox;
use crate::scoring::Proposal;
use crate::simulation::ComparisonRow;
use crate::suppression::Detection;

/// Header block stamped into every machine-readable output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    pub config_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| {
        let (line, column) = (e.line(), e.column());
        let offset = text
            .lines()
            .take(line.saturating_sub(1))
            .map(|l| l.len() + 1)
            .sum::<usize>()
            + column.saturating_sub(1);
        Error::MalformedJson {
            offset,
            line,
            column,
            message: e.to_string(),
        }
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

// ── Annotations ─────────────────────────────────────────────────────────────

#[derive(Debug, Serialize, Deserialize)]
struct ImageRecord {
    id: u64,
    width: u32,
    height: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct AnnotationRecord {
    #[serde(default)]
    id: Option<u64>,
    image_id: u64,
    category_id: u32,
    bbox: [f64; 4],
}

#[derive(Debug, Serialize, Deserialize)]
struct CategoryRecord {
    id: u32,
    #[serde(default)]
    name: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct AnnotationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
    images: Vec<ImageRecord>,
    annotations: Vec<AnnotationRecord>,
    categories: Vec<CategoryRecord>,
}

fn xywh_to_bbox(index: usize, bbox: [f64; 4]) -> Result<BBox> {
    let [x, y, w, h] = bbox;
    if !(x.is_finite() && y.is_finite() && w.is_finite() && h.is_finite()) || w < 0.0 || h < 0.0 {
        return Err(Error::Schema {
            index,
            message: format!("bbox [{x}, {y}, {w}, {h}] is not a valid [x, y, w, h] box"),
        });
    }
    BBox::new(x, y, x + w, y + h).map_err(|e| Error::Schema {
        index,
        message: e.to_string(),
    })
}

/// Loads scenes from an annotation file. Boxes are converted from
/// `[x, y, w, h]` to corners and clipped to the image bounds; every
/// `image_id`/`category_id` must resolve or the offending record is named.
/// Scenes come back sorted by image id, including images with no boxes.
pub fn load_annotations(path: &Path) -> Result<Vec<Scene>> {
    let file: AnnotationFile = read_json(path)?;
    let mut categories = BTreeSet::new();
    for c in &file.categories {
        categories.insert(c.id);
    }
    let mut scenes: BTreeMap<u64, Scene> = BTreeMap::new();
    for (index, img) in file.images.iter().enumerate() {
        if img.width == 0 || img.height == 0 {
            return Err(Error::Schema {
                index,
                message: format!("image {} has empty size", img.id),
            });
        }
        let prev = scenes.insert(
            img.id,
            Scene {
                image_id: img.id,
                image_size: (img.width, img.height),
                ground_truths: Vec::new(),
            },
        );
        if prev.is_some() {
            return Err(Error::Schema {
                index,
                message: format!("duplicate image id {}", img.id),
            });
        }
    }
    for (index, ann) in file.annotations.iter().enumerate() {
        if !categories.contains(&ann.category_id) {
            return Err(Error::DanglingRef {
                index,
                what: "category_id",
                id: ann.category_id as i64,
            });
        }
        let scene = scenes.get_mut(&ann.image_id).ok_or(Error::DanglingRef {
            index,
            what: "image_id",
            id: ann.image_id as i64,
        })?;
        let bbox = xywh_to_bbox(index, ann.bbox)?;
        let (w, h) = (scene.image_size.0 as f64, scene.image_size.1 as f64);
        scene.ground_truths.push(GroundTruth {
            bbox: bbox.clip(w, h),
            class_id: ann.category_id,
        });
    }
    Ok(scenes.into_values().collect())
}

pub fn save_annotations(path: &Path, scenes: &[Scene], metadata: Option<&Metadata>) -> Result<()> {
    let mut classes: BTreeSet<u32> = BTreeSet::new();
    let mut annotations = Vec::new();
    let mut next_id = 1u64;
    for scene in scenes {
        for gt in &scene.ground_truths {
            classes.insert(gt.class_id);
            annotations.push(AnnotationRecord {
                id: Some(next_id),
                image_id: scene.image_id,
                category_id: gt.class_id,
                bbox: [gt.bbox.x1(), gt.bbox.y1(), gt.bbox.width(), gt.bbox.height()],
            });
            next_id += 1;
        }
    }
    let file = AnnotationFile {
        metadata: metadata.cloned(),
        images: scenes
            .iter()
            .map(|s| ImageRecord {
                id: s.image_id,
                width: s.image_size.0,
                height: s.image_size.1,
            })
            .collect(),
        annotations,
        categories: classes
            .into_iter()
            .map(|id| CategoryRecord {
                id,
                name: Some(format!("class_{id}")),
            })
            .collect(),
    };
    write_json(path, &file)
}

// ── Proposals ───────────────────────────────────────────────────────────────

#[derive(Debug, Serialize, Deserialize)]
struct ProposalRecord {
    image_id: u64,
    anchor_id: u64,
    /// `[x, y, w, h]`, matching the annotation convention.
    bbox: [f64; 4],
    scores: Vec<f64>,
    locscore: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ProposalFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
    proposals: Vec<ProposalRecord>,
}

pub fn save_proposals(
    path: &Path,
    proposals: &[Proposal],
    metadata: Option<&Metadata>,
) -> Result<()> {
    let file = ProposalFile {
        metadata: metadata.cloned(),
        proposals: proposals
            .iter()
            .map(|p| ProposalRecord {
                image_id: p.image_id,
                anchor_id: p.anchor_id,
                bbox: [p.bbox.x1(), p.bbox.y1(), p.bbox.width(), p.bbox.height()],
                scores: p.class_scores.clone(),
                locscore: p.locscore,
            })
            .collect(),
    };
    write_json(path, &file)
}

pub fn load_proposals(path: &Path) -> Result<Vec<Proposal>> {
    let file: ProposalFile = read_json(path)?;
    file.proposals
        .into_iter()
        .enumerate()
        .map(|(index, r)| {
            let bbox = xywh_to_bbox(index, r.bbox)?;
            Proposal::new(r.image_id, r.anchor_id, bbox, r.scores, r.locscore).map_err(|e| {
                Error::Schema {
                    index,
                    message: e.to_string(),
                }
            })
        })
        .collect()
}

// ── Detections ──────────────────────────────────────────────────────────────

#[derive(Debug, Serialize, Deserialize)]
struct DetectionRecord {
    image_id: u64,
    category_id: u32,
    /// Corner `[x1, y1, x2, y2]`: keeps the save/load round trip bit-exact.
    bbox: [f64; 4],
    score: f64,
    cqs: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct DetectionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
    detections: Vec<DetectionRecord>,
}

/// Writes detections sorted by (image id, confidence descending); the sort
/// is stable, so equal-confidence records keep their input order.
pub fn save_detections(
    path: &Path,
    detections: &[Detection],
    metadata: Option<&Metadata>,
) -> Result<()> {
    let mut ordered: Vec<&Detection> = detections.iter().collect();
    ordered.sort_by(|a, b| {
        a.image_id
            .cmp(&b.image_id)
            .then_with(|| b.confidence.total_cmp(&a.confidence))
    });
    let file = DetectionFile {
        metadata: metadata.cloned(),
        detections: ordered
            .into_iter()
            .map(|d| DetectionRecord {
                image_id: d.image_id,
                category_id: d.class_id,
                bbox: d.bbox.corners(),
                score: d.confidence,
                cqs: d.cqs,
            })
            .collect(),
    };
    write_json(path, &file)
}

pub fn load_detections(path: &Path) -> Result<Vec<Detection>> {
    let file: DetectionFile = read_json(path)?;
    file.detections
        .into_iter()
        .enumerate()
        .map(|(index, r)| {
            let bbox = BBox::new(r.bbox[0], r.bbox[1], r.bbox[2], r.bbox[3]).map_err(|e| {
                Error::Schema {
                    index,
                    message: e.to_string(),
                }
            })?;
            for (name, v) in [("score", r.score), ("cqs", r.cqs)] {
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::Schema {
                        index,
                        message: format!("{name} {v} outside [0, 1]"),
                    });
                }
            }
            Ok(Detection {
                image_id: r.image_id,
                class_id: r.category_id,
                bbox,
                confidence: r.score,
                cqs: r.cqs,
            })
        })
        .collect()
}

// ── Anchors and reports ─────────────────────────────────────────────────────

#[derive(Debug, Serialize)]
struct AnchorFile<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    metadata: Option<&'a Metadata>,
    layout: &'a crate::anchors::AnchorLayout,
    anchors: &'a [BBox],
}

pub fn save_anchors(path: &Path, grid: &AnchorGrid, metadata: Option<&Metadata>) -> Result<()> {
    write_json(
        path,
        &AnchorFile {
            metadata,
            layout: &grid.layout,
            anchors: &grid.anchors,
        },
    )
}

#[derive(Debug, Serialize)]
struct ReportFile<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    metadata: Option<&'a Metadata>,
    report: &'a EvalReport,
}

pub fn save_report_json(path: &Path, report: &EvalReport, metadata: Option<&Metadata>) -> Result<()> {
    write_json(path, &ReportFile { metadata, report })
}

fn csv_header(metadata: Option<&Metadata>) -> String {
    let mut out = String::new();
    if let Some(m) = metadata {
        out.push_str(&format!("# tool_version={}\n", m.tool_version));
        out.push_str(&format!("# config_hash={}\n", m.config_hash));
        if let Some(seed) = m.seed {
            out.push_str(&format!("# seed={seed}\n"));
        }
    }
    out
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Flat metric table, one `metric,value` row per scalar. Undefined metrics
/// (e.g. a size bucket with no ground truth) leave the value empty.
pub fn save_report_csv(path: &Path, report: &EvalReport, metadata: Option<&Metadata>) -> Result<()> {
    let mut out = csv_header(metadata);
    out.push_str("metric,value\n");
    out.push_str(&format!("ap,{}\n", report.ap));
    out.push_str(&format!("ap50,{}\n", opt(report.ap50)));
    out.push_str(&format!("ap75,{}\n", opt(report.ap75)));
    out.push_str(&format!("ap_small,{}\n", opt(report.ap_small)));
    out.push_str(&format!("ap_medium,{}\n", opt(report.ap_medium)));
    out.push_str(&format!("ap_large,{}\n", opt(report.ap_large)));
    for (class_id, ap) in &report.per_class_ap {
        out.push_str(&format!("ap_class_{class_id},{ap}\n"));
    }
    fs::write(path, out)?;
    Ok(())
}

/// One row per compared suppression config, with the AP deltas against the
/// baseline row.
pub fn save_comparison_csv(
    path: &Path,
    rows: &[ComparisonRow],
    metadata: Option<&Metadata>,
) -> Result<()> {
    let mut out = csv_header(metadata);
    out.push_str("mode,epsilon,top_k,per_class,score_floor,ap,ap50,ap75,ap_small,ap_medium,ap_large,delta_ap\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            row.label,
            row.nms.epsilon,
            row.nms.top_k,
            row.nms.per_class,
            row.nms.score_floor,
            row.report.ap,
            opt(row.report.ap50),
            opt(row.report.ap75),
            opt(row.report.ap_small),
            opt(row.report.ap_medium),
            opt(row.report.ap_large),
            row.delta_ap,
        ));
    }
    fs::write(path, out)?;
    Ok(())
}
