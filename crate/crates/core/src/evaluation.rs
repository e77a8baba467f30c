//! Average-precision evaluation of detections against ground truth.
//!
//! Matching is greedy: detections are visited in confidence order and each
//! claims the unmatched same-class ground-truth box with the highest iou at
//! or above the threshold. Precision/recall points come from the pooled
//! ranking across images; average precision integrates the monotone
//! precision envelope, either exactly (all-point) or sampled on a fixed
//! recall grid (101-point, 11-point).

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::anchors::Scene;
use crate::error::{Error, Result};
use crate::geometry::iou;
use crate::suppression::Detection;

/// Boxes below this area are "small", above [`MEDIUM_MAX_AREA`] "large".
pub const SMALL_MAX_AREA: f64 = 32.0 * 32.0;
pub const MEDIUM_MAX_AREA: f64 = 96.0 * 96.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    /// Exact area under the monotone precision envelope.
    AllPoint,
    /// Mean envelope precision on the recall grid 0.00, 0.01, ..., 1.00.
    #[serde(rename = "points_101")]
    Points101,
    /// Mean envelope precision on the recall grid 0.0, 0.1, ..., 1.0.
    #[serde(rename = "points_11")]
    Points11,
}

impl FromStr for Interpolation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all_point" | "all-point" => Ok(Interpolation::AllPoint),
            "points_101" | "points-101" | "101" => Ok(Interpolation::Points101),
            "points_11" | "points-11" | "11" => Ok(Interpolation::Points11),
            _ => Err(Error::UnknownVariant {
                what: "interpolation",
                got: s.to_string(),
                expected: "all-point, points-101, points-11",
            }),
        }
    }
}

/// The standard ten-threshold sweep 0.50, 0.55, ..., 0.95.
pub fn coco_iou_thresholds() -> Vec<f64> {
    (0..10).map(|i| 0.5 + 0.05 * i as f64).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvalConfig {
    pub iou_thresholds: Vec<f64>,
    pub interpolation: Interpolation,
    /// Per-image detection cap, applied by confidence before matching.
    pub max_dets_per_image: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            iou_thresholds: coco_iou_thresholds(),
            interpolation: Interpolation::Points101,
            max_dets_per_image: 100,
        }
    }
}

impl EvalConfig {
    /// Single 0.5 threshold with exact integration, the classic 20-class
    /// challenge protocol (its historical 11-point variant stays available
    /// through [`Interpolation::Points11`]).
    pub fn voc() -> Self {
        EvalConfig {
            iou_thresholds: vec![0.5],
            interpolation: Interpolation::AllPoint,
            max_dets_per_image: 100,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.iou_thresholds.is_empty() {
            return Err(Error::InvalidConfig("no iou thresholds".into()));
        }
        for &t in &self.iou_thresholds {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::InvalidConfig(format!(
                    "iou threshold {t} outside [0, 1]"
                )));
            }
        }
        for w in self.iou_thresholds.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidConfig(
                    "iou thresholds must be strictly increasing".into(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SizeBucket {
    All,
    Small,
    Medium,
    Large,
}

impl SizeBucket {
    fn contains(self, area: f64) -> bool {
        match self {
            SizeBucket::All => true,
            SizeBucket::Small => area < SMALL_MAX_AREA,
            SizeBucket::Medium => (SMALL_MAX_AREA..=MEDIUM_MAX_AREA).contains(&area),
            SizeBucket::Large => area > MEDIUM_MAX_AREA,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrCurve {
    pub class_id: u32,
    pub iou_threshold: f64,
    /// Raw cumulative (recall, precision) points in ranking order.
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    /// Mean AP over classes and iou thresholds.
    pub ap: f64,
    /// Mean AP over classes at threshold 0.5, when that threshold is swept.
    pub ap50: Option<f64>,
    pub ap75: Option<f64>,
    /// Bucket APs are `None` when no ground truth falls in the bucket.
    pub ap_small: Option<f64>,
    pub ap_medium: Option<f64>,
    pub ap_large: Option<f64>,
    pub per_class_ap: BTreeMap<u32, f64>,
    pub pr_curves: Vec<PrCurve>,
}

// ── Greedy matching ─────────────────────────────────────────────────────────

/// Match outcome per detection: `Some(true)` tp, `Some(false)` fp, `None`
/// excluded from the ranking (bucket ignore).
fn greedy_match(
    det_ious: &[Vec<f64>], // [det in confidence order][gt]
    det_in_bucket: &[bool],
    gt_in_bucket: &[bool],
    iou_thr: f64,
) -> Vec<Option<bool>> {
    let n_gt = gt_in_bucket.len();
    let mut gt_taken = vec![false; n_gt];
    let mut flags = Vec::with_capacity(det_ious.len());
    for (d, ious) in det_ious.iter().enumerate() {
        let mut best: Option<usize> = None;
        let mut best_ignored: Option<usize> = None;
        for g in 0..n_gt {
            if gt_taken[g] || ious[g] < iou_thr {
                continue;
            }
            // in-bucket matches are preferred outright, COCO-style
            if gt_in_bucket[g] {
                if best.is_none() || ious[g] > ious[best.unwrap()] {
                    best = Some(g);
                }
            } else if best_ignored.is_none() || ious[g] > ious[best_ignored.unwrap()] {
                best_ignored = Some(g);
            }
        }
        if let Some(g) = best {
            gt_taken[g] = true;
            flags.push(Some(true));
        } else if let Some(g) = best_ignored {
            gt_taken[g] = true;
            flags.push(None);
        } else if det_in_bucket[d] {
            flags.push(Some(false));
        } else {
            flags.push(None);
        }
    }
    flags
}

/// Per-detection true/false-positive flags for one scene, in input order.
/// Detections are ranked internally by confidence (ties keep input order);
/// each one greedily claims the unmatched same-class ground truth with the
/// highest iou at or above `iou_thr`, equal ious going to the lower index.
pub fn match_detections(dets: &[Detection], scene: &Scene, iou_thr: f64) -> Vec<bool> {
    let mut order: Vec<usize> = (0..dets.len()).collect();
    order.sort_by(|&a, &b| dets[b].confidence.total_cmp(&dets[a].confidence));
    let det_ious: Vec<Vec<f64>> = order
        .iter()
        .map(|&d| {
            scene
                .ground_truths
                .iter()
                .map(|gt| {
                    if gt.class_id == dets[d].class_id {
                        iou(&dets[d].bbox, &gt.bbox)
                    } else {
                        -1.0
                    }
                })
                .collect()
        })
        .collect();
    let gt_all = vec![true; scene.ground_truths.len()];
    let det_all = vec![true; dets.len()];
    let ranked = greedy_match(&det_ious, &det_all, &gt_all, iou_thr);
    let mut flags = vec![false; dets.len()];
    for (k, &d) in order.iter().enumerate() {
        flags[d] = ranked[k].unwrap_or(false);
    }
    flags
}

// ── Average precision ───────────────────────────────────────────────────────

fn ranked_counts(samples: &[(f64, bool)], n_gt: usize) -> (Vec<f64>, Vec<f64>) {
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| samples[b].0.total_cmp(&samples[a].0));
    let mut recalls = Vec::with_capacity(samples.len());
    let mut precisions = Vec::with_capacity(samples.len());
    let mut tp = 0u64;
    let mut fp = 0u64;
    for &i in &order {
        if samples[i].1 {
            tp += 1;
        } else {
            fp += 1;
        }
        recalls.push(tp as f64 / n_gt as f64);
        precisions.push(tp as f64 / (tp + fp) as f64);
    }
    (recalls, precisions)
}

fn precision_envelope(precisions: &[f64]) -> Vec<f64> {
    let mut env = precisions.to_vec();
    for i in (0..env.len().saturating_sub(1)).rev() {
        if env[i + 1] > env[i] {
            env[i] = env[i + 1];
        }
    }
    env
}

fn integrate(recalls: &[f64], env: &[f64], interpolation: Interpolation) -> f64 {
    match interpolation {
        Interpolation::AllPoint => {
            let mut ap = 0.0;
            let mut prev = 0.0;
            for (i, &r) in recalls.iter().enumerate() {
                ap += (r - prev) * env[i];
                prev = r;
            }
            ap
        }
        Interpolation::Points101 => grid_mean(recalls, env, 100),
        Interpolation::Points11 => grid_mean(recalls, env, 10),
    }
}

fn grid_mean(recalls: &[f64], env: &[f64], steps: usize) -> f64 {
    let mut sum = 0.0;
    let mut i = 0;
    for k in 0..=steps {
        let s = k as f64 / steps as f64;
        while i < recalls.len() && recalls[i] < s {
            i += 1;
        }
        if i < env.len() {
            sum += env[i];
        }
    }
    sum / (steps + 1) as f64
}

/// Average precision from `(confidence, is_tp)` samples against `n_gt`
/// ground-truth boxes. A class with no ground truth has no defined AP and is
/// an error here; callers skip such classes instead.
pub fn average_precision(
    samples: &[(f64, bool)],
    n_gt: usize,
    interpolation: Interpolation,
) -> Result<f64> {
    if n_gt == 0 {
        return Err(Error::UndefinedAp);
    }
    let (recalls, precisions) = ranked_counts(samples, n_gt);
    let env = precision_envelope(&precisions);
    Ok(integrate(&recalls, &env, interpolation))
}

// ── Full evaluation ─────────────────────────────────────────────────────────

struct ClassSceneMatch {
    /// (confidence, iou row per gt of this class) in confidence order.
    det_conf: Vec<f64>,
    det_ious: Vec<Vec<f64>>,
    det_areas: Vec<f64>,
    gt_areas: Vec<f64>,
}

/// Evaluates pooled detections against scenes. Detections must reference
/// known image ids; images without detections simply contribute ground truth.
/// Classes that never appear in the ground truth are skipped, and every mean
/// weights the remaining classes equally.
pub fn evaluate(dets: &[Detection], scenes: &[Scene], cfg: &EvalConfig) -> Result<EvalReport> {
    cfg.validate()?;
    let mut scene_by_id: BTreeMap<u64, &Scene> = BTreeMap::new();
    for scene in scenes {
        if scene_by_id.insert(scene.image_id, scene).is_some() {
            return Err(Error::InvalidConfig(format!(
                "duplicate image id {} in scenes",
                scene.image_id
            )));
        }
    }
    let unknown: BTreeSet<u64> = dets
        .iter()
        .map(|d| d.image_id)
        .filter(|id| !scene_by_id.contains_key(id))
        .collect();
    if !unknown.is_empty() {
        return Err(Error::UnknownImageIds(unknown.into_iter().collect()));
    }

    // per-image confidence cap, stable for equal confidences
    let mut per_image: BTreeMap<u64, Vec<&Detection>> = BTreeMap::new();
    for det in dets {
        per_image.entry(det.image_id).or_default().push(det);
    }
    for image_dets in per_image.values_mut() {
        image_dets.sort_by(|a, b| b.confidence.total_cmp(&a.confidence));
        image_dets.truncate(cfg.max_dets_per_image);
    }

    let classes: BTreeSet<u32> = scenes
        .iter()
        .flat_map(|s| s.ground_truths.iter().map(|g| g.class_id))
        .collect();

    // iou matrices once per (class, scene); thresholds reuse them
    let mut matches: BTreeMap<u32, Vec<ClassSceneMatch>> = BTreeMap::new();
    let mut n_gt: BTreeMap<u32, usize> = BTreeMap::new();
    for (&image_id, scene) in &scene_by_id {
        let image_dets = per_image.get(&image_id).map(Vec::as_slice).unwrap_or(&[]);
        for &class_id in &classes {
            let gts: Vec<_> = scene
                .ground_truths
                .iter()
                .filter(|g| g.class_id == class_id)
                .collect();
            *n_gt.entry(class_id).or_default() += gts.len();
            let class_dets: Vec<&&Detection> = image_dets
                .iter()
                .filter(|d| d.class_id == class_id)
                .collect();
            if gts.is_empty() && class_dets.is_empty() {
                continue;
            }
            matches.entry(class_id).or_default().push(ClassSceneMatch {
                det_conf: class_dets.iter().map(|d| d.confidence).collect(),
                det_ious: class_dets
                    .iter()
                    .map(|d| gts.iter().map(|g| iou(&d.bbox, &g.bbox)).collect())
                    .collect(),
                det_areas: class_dets.iter().map(|d| d.bbox.area()).collect(),
                gt_areas: gts.iter().map(|g| g.bbox.area()).collect(),
            });
        }
    }

    let bucket_ap = |bucket: SizeBucket| -> Result<(Option<f64>, Vec<Vec<f64>>)> {
        let mut cells: Vec<Vec<f64>> = Vec::new();
        let mut sum = 0.0;
        let mut count = 0usize;
        for &class_id in &classes {
            let scenes_of_class = match matches.get(&class_id) {
                Some(m) => m.as_slice(),
                None => &[],
            };
            let bucket_gt: usize = scenes_of_class
                .iter()
                .map(|m| m.gt_areas.iter().filter(|&&a| bucket.contains(a)).count())
                .sum();
            if bucket_gt == 0 {
                cells.push(Vec::new());
                continue;
            }
            let mut row = Vec::with_capacity(cfg.iou_thresholds.len());
            for &thr in &cfg.iou_thresholds {
                let mut samples: Vec<(f64, bool)> = Vec::new();
                for m in scenes_of_class {
                    let det_in: Vec<bool> =
                        m.det_areas.iter().map(|&a| bucket.contains(a)).collect();
                    let gt_in: Vec<bool> = m.gt_areas.iter().map(|&a| bucket.contains(a)).collect();
                    let flags = greedy_match(&m.det_ious, &det_in, &gt_in, thr);
                    for (k, flag) in flags.iter().enumerate() {
                        if let Some(is_tp) = flag {
                            samples.push((m.det_conf[k], *is_tp));
                        }
                    }
                }
                row.push(average_precision(&samples, bucket_gt, cfg.interpolation)?);
            }
            sum += row.iter().sum::<f64>();
            count += row.len();
            cells.push(row);
        }
        if count == 0 {
            Ok((None, cells))
        } else {
            Ok((Some(sum / count as f64), cells))
        }
    };

    let (ap_all, all_cells) = bucket_ap(SizeBucket::All)?;
    let (ap_small, _) = bucket_ap(SizeBucket::Small)?;
    let (ap_medium, _) = bucket_ap(SizeBucket::Medium)?;
    let (ap_large, _) = bucket_ap(SizeBucket::Large)?;

    let threshold_index = |t: f64| {
        cfg.iou_thresholds
            .iter()
            .position(|&x| (x - t).abs() < 1e-9)
    };
    let mean_at = |ti: usize| {
        let vals: Vec<f64> = all_cells
            .iter()
            .filter(|row| !row.is_empty())
            .map(|row| row[ti])
            .collect();
        if vals.is_empty() {
            None
        } else {
            Some(vals.iter().sum::<f64>() / vals.len() as f64)
        }
    };

    let mut per_class_ap = BTreeMap::new();
    let mut pr_curves = Vec::new();
    for (ci, &class_id) in classes.iter().enumerate() {
        let row = &all_cells[ci];
        if row.is_empty() {
            continue;
        }
        per_class_ap.insert(class_id, row.iter().sum::<f64>() / row.len() as f64);
        if let Some(scenes_of_class) = matches.get(&class_id) {
            for &thr in &cfg.iou_thresholds {
                let mut samples: Vec<(f64, bool)> = Vec::new();
                for m in scenes_of_class {
                    let det_in = vec![true; m.det_conf.len()];
                    let gt_in = vec![true; m.gt_areas.len()];
                    let flags = greedy_match(&m.det_ious, &det_in, &gt_in, thr);
                    for (k, flag) in flags.iter().enumerate() {
                        samples.push((m.det_conf[k], flag.unwrap_or(false)));
                    }
                }
                let (recalls, precisions) = ranked_counts(&samples, n_gt[&class_id]);
                pr_curves.push(PrCurve {
                    class_id,
                    iou_threshold: thr,
                    points: recalls.into_iter().zip(precisions).collect(),
                });
            }
        }
    }

    Ok(EvalReport {
        ap: ap_all.unwrap_or(0.0),
        ap50: threshold_index(0.5).and_then(&mean_at),
        ap75: threshold_index(0.75).and_then(&mean_at),
        ap_small,
        ap_medium,
        ap_large,
        per_class_ap,
        pr_curves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anchors::GroundTruth;
    use crate::geometry::BBox;

    fn bb(x1: f64, y1: f64, x2: f64, y2: f64) -> BBox {
        BBox::new(x1, y1, x2, y2).unwrap()
    }

    fn det(image_id: u64, class_id: u32, bbox: BBox, confidence: f64) -> Detection {
        Detection {
            image_id,
            class_id,
            bbox,
            confidence,
            cqs: confidence,
        }
    }

    fn scene(image_id: u64, gts: Vec<(BBox, u32)>) -> Scene {
        Scene {
            image_id,
            image_size: (640, 640),
            ground_truths: gts
                .into_iter()
                .map(|(bbox, class_id)| GroundTruth { bbox, class_id })
                .collect(),
        }
    }

    #[test]
    fn single_true_positive_has_ap_one_in_all_modes() {
        for interp in [
            Interpolation::AllPoint,
            Interpolation::Points101,
            Interpolation::Points11,
        ] {
            assert_eq!(average_precision(&[(0.9, true)], 1, interp).unwrap(), 1.0);
        }
    }

    #[test]
    fn false_positive_above_true_positive_halves_all_point_ap() {
        let samples = [(0.9, false), (0.8, true)];
        assert_eq!(
            average_precision(&samples, 1, Interpolation::AllPoint).unwrap(),
            0.5
        );
    }

    #[test]
    fn false_positive_below_true_positive_keeps_ap_one() {
        let samples = [(0.9, true), (0.8, false)];
        assert_eq!(
            average_precision(&samples, 1, Interpolation::AllPoint).unwrap(),
            1.0
        );
    }

    #[test]
    fn zero_ground_truth_is_undefined() {
        let err = average_precision(&[(0.9, true)], 0, Interpolation::AllPoint).unwrap_err();
        assert!(err.to_string().contains("undefined AP"));
    }

    #[test]
    fn no_detections_with_ground_truth_is_zero() {
        for interp in [
            Interpolation::AllPoint,
            Interpolation::Points101,
            Interpolation::Points11,
        ] {
            assert_eq!(average_precision(&[], 3, interp).unwrap(), 0.0);
        }
    }

    #[test]
    fn grid_interpolations_bracket_the_exact_area() {
        // 2 tps among 4 dets over 2 gts: exact area computable by hand
        let samples = [(0.9, true), (0.7, false), (0.6, true), (0.5, false)];
        let exact = average_precision(&samples, 2, Interpolation::AllPoint).unwrap();
        assert!((exact - (0.5 * 1.0 + 0.5 * (2.0 / 3.0))).abs() < 1e-12);
        let p101 = average_precision(&samples, 2, Interpolation::Points101).unwrap();
        assert!((p101 - exact).abs() < 0.02);
    }

    #[test]
    fn matching_prefers_highest_iou_not_first() {
        let sc = scene(
            1,
            vec![(bb(0.0, 0.0, 10.0, 10.0), 0), (bb(0.0, 0.0, 10.0, 9.0), 0)],
        );
        let dets = vec![det(1, 0, bb(0.0, 0.0, 10.0, 9.2), 0.9)];
        let flags = match_detections(&dets, &sc, 0.5);
        assert_eq!(flags, vec![true]);
    }

    #[test]
    fn each_ground_truth_matches_at_most_once() {
        let sc = scene(1, vec![(bb(0.0, 0.0, 10.0, 10.0), 0)]);
        let dets = vec![
            det(1, 0, bb(0.0, 0.0, 10.0, 10.0), 0.9),
            det(1, 0, bb(0.0, 0.0, 10.0, 9.9), 0.8),
        ];
        assert_eq!(match_detections(&dets, &sc, 0.5), vec![true, false]);
    }

    #[test]
    fn class_mismatch_never_matches() {
        let sc = scene(1, vec![(bb(0.0, 0.0, 10.0, 10.0), 1)]);
        let dets = vec![det(1, 0, bb(0.0, 0.0, 10.0, 10.0), 0.9)];
        assert_eq!(match_detections(&dets, &sc, 0.5), vec![false]);
    }

    #[test]
    fn matching_order_is_by_confidence_not_input_position() {
        let sc = scene(1, vec![(bb(0.0, 0.0, 10.0, 10.0), 0)]);
        let dets = vec![
            det(1, 0, bb(0.0, 0.0, 10.0, 8.0), 0.5),
            det(1, 0, bb(0.0, 0.0, 10.0, 10.0), 0.9),
        ];
        assert_eq!(match_detections(&dets, &sc, 0.5), vec![false, true]);
    }

    #[test]
    fn evaluate_reports_perfect_ap_for_exact_detections() {
        let scenes = vec![
            scene(1, vec![(bb(0.0, 0.0, 40.0, 40.0), 0)]),
            scene(2, vec![(bb(10.0, 10.0, 120.0, 120.0), 1)]),
        ];
        let dets = vec![
            det(1, 0, bb(0.0, 0.0, 40.0, 40.0), 0.9),
            det(2, 1, bb(10.0, 10.0, 120.0, 120.0), 0.8),
        ];
        let report = evaluate(&dets, &scenes, &EvalConfig::default()).unwrap();
        assert_eq!(report.ap, 1.0);
        assert_eq!(report.ap50, Some(1.0));
        assert_eq!(report.ap75, Some(1.0));
        assert_eq!(report.per_class_ap.len(), 2);
        // 40x40 = 1600 is medium, 110x110 is large, nothing small
        assert_eq!(report.ap_small, None);
        assert_eq!(report.ap_medium, Some(1.0));
        assert_eq!(report.ap_large, Some(1.0));
    }

    #[test]
    fn unknown_image_ids_are_reported() {
        let scenes = vec![scene(1, vec![(bb(0.0, 0.0, 10.0, 10.0), 0)])];
        let dets = vec![
            det(9, 0, bb(0.0, 0.0, 10.0, 10.0), 0.9),
            det(4, 0, bb(0.0, 0.0, 10.0, 10.0), 0.9),
        ];
        let err = evaluate(&dets, &scenes, &EvalConfig::default()).unwrap_err();
        match err {
            Error::UnknownImageIds(ids) => assert_eq!(ids, vec![4, 9]),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn zero_gt_classes_are_excluded_from_means() {
        let scenes = vec![scene(1, vec![(bb(0.0, 0.0, 40.0, 40.0), 2)])];
        let dets = vec![
            det(1, 2, bb(0.0, 0.0, 40.0, 40.0), 0.9),
            // class 5 has no ground truth anywhere: ignored entirely
            det(1, 5, bb(50.0, 50.0, 60.0, 60.0), 0.99),
        ];
        let report = evaluate(&dets, &scenes, &EvalConfig::default()).unwrap();
        assert_eq!(report.ap, 1.0);
        assert!(!report.per_class_ap.contains_key(&5));
    }

    #[test]
    fn max_dets_cap_applies_per_image_by_confidence() {
        let scenes = vec![scene(1, vec![(bb(0.0, 0.0, 40.0, 40.0), 0)])];
        let mut dets = vec![det(1, 0, bb(0.0, 0.0, 40.0, 40.0), 0.5)];
        for i in 0..10 {
            dets.push(det(1, 0, bb(100.0, 100.0, 140.0, 140.0), 0.6 + i as f64 * 0.01));
        }
        let cfg = EvalConfig {
            max_dets_per_image: 10,
            ..EvalConfig::default()
        };
        // the tp at 0.5 confidence is squeezed out by ten higher fps
        let report = evaluate(&dets, &scenes, &cfg).unwrap();
        assert_eq!(report.ap, 0.0);
    }

    #[test]
    fn detections_matched_to_out_of_bucket_gt_are_ignored() {
        // one small gt, one large gt; the large-gt detection must not count
        // as fp in the small bucket
        let scenes = vec![scene(
            1,
            vec![
                (bb(0.0, 0.0, 10.0, 10.0), 0),
                (bb(100.0, 100.0, 300.0, 300.0), 0),
            ],
        )];
        let dets = vec![
            det(1, 0, bb(0.0, 0.0, 10.0, 10.0), 0.8),
            det(1, 0, bb(100.0, 100.0, 300.0, 300.0), 0.9),
        ];
        let report = evaluate(&dets, &scenes, &EvalConfig::default()).unwrap();
        assert_eq!(report.ap_small, Some(1.0));
        assert_eq!(report.ap_large, Some(1.0));
        assert_eq!(report.ap_medium, None);
    }

    #[test]
    fn pr_curves_cover_every_class_threshold_cell() {
        let scenes = vec![scene(1, vec![(bb(0.0, 0.0, 40.0, 40.0), 0)])];
        let dets = vec![det(1, 0, bb(0.0, 0.0, 40.0, 40.0), 0.9)];
        let report = evaluate(&dets, &scenes, &EvalConfig::default()).unwrap();
        assert_eq!(report.pr_curves.len(), 10);
        assert_eq!(report.pr_curves[0].points, vec![(1.0, 1.0)]);
    }

    #[test]
    fn custom_thresholds_without_50_leave_ap50_empty() {
        let scenes = vec![scene(1, vec![(bb(0.0, 0.0, 40.0, 40.0), 0)])];
        let dets = vec![det(1, 0, bb(0.0, 0.0, 40.0, 40.0), 0.9)];
        let cfg = EvalConfig {
            iou_thresholds: vec![0.3, 0.6],
            ..EvalConfig::default()
        };
        let report = evaluate(&dets, &scenes, &cfg).unwrap();
        assert_eq!(report.ap50, None);
        assert_eq!(report.ap, 1.0);
    }
}
