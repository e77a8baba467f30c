//! Greedy non-maximum suppression, plain and location-aware.
//!
//! The location-aware variants rank candidates by the calibrated quality
//! score (classification probability times localization confidence) instead
//! of classification probability alone, so a well-localized box wins its
//! cluster even when a sloppier duplicate is more confident. The cluster
//! variant additionally reports the maximum classification probability seen
//! across the suppressed cluster, which keeps the survivor competitive in
//! downstream rankings that consume plain confidence.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{iou, BBox};
use crate::scoring::{cqs, Proposal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NmsMode {
    /// Rank by classification probability, no cluster update.
    Baseline,
    /// Rank by calibrated quality score, report the survivor's own
    /// classification probability.
    Laar,
    /// Rank by calibrated quality score, report the maximum classification
    /// probability over the survivor's suppression cluster.
    LaarCluster,
}

impl NmsMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            NmsMode::Baseline => "baseline",
            NmsMode::Laar => "laar",
            NmsMode::LaarCluster => "laar_cluster",
        }
    }
}

impl FromStr for NmsMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "baseline" => Ok(NmsMode::Baseline),
            "laar" => Ok(NmsMode::Laar),
            "laar_cluster" | "laar-cluster" => Ok(NmsMode::LaarCluster),
            _ => Err(Error::UnknownVariant {
                what: "nms mode",
                got: s.to_string(),
                expected: "baseline, laar, laar-cluster",
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NmsConfig {
    /// Suppression overlap threshold; a neighbor is removed when its iou with
    /// the selected box strictly exceeds this.
    pub epsilon: f64,
    pub mode: NmsMode,
    /// Detections kept per image after merging classes.
    pub top_k: usize,
    /// Suppress within each class independently; when false, the dominant
    /// class of each proposal competes in one class-agnostic pass.
    pub per_class: bool,
    /// Proposals scoring below this for the class under consideration are
    /// dropped before suppression. Set to 0 to disable (exactness tests).
    pub score_floor: f64,
}

impl Default for NmsConfig {
    fn default() -> Self {
        NmsConfig {
            epsilon: 0.5,
            mode: NmsMode::LaarCluster,
            top_k: 100,
            per_class: true,
            score_floor: 0.01,
        }
    }
}

impl NmsConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::InvalidConfig(format!(
                "epsilon {} outside [0, 1]",
                self.epsilon
            )));
        }
        if !(0.0..=1.0).contains(&self.score_floor) {
            return Err(Error::InvalidConfig(format!(
                "score floor {} outside [0, 1]",
                self.score_floor
            )));
        }
        Ok(())
    }
}

/// One kept box. `confidence` is the reported classification probability
/// (cluster-raised in cluster mode); `cqs` is the survivor's own calibrated
/// quality score regardless of mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    pub image_id: u64,
    pub class_id: u32,
    pub bbox: BBox,
    pub confidence: f64,
    pub cqs: f64,
}

struct Candidate {
    bbox: BBox,
    class_id: u32,
    p_class: f64,
    p_loc: f64,
}

/// Greedy loop shared by every mode. Candidates keep input order, and the
/// argmax scan only replaces on a strictly greater score, so ranking ties
/// break toward the lower original proposal index.
fn greedy(
    image_id: u64,
    candidates: &[Candidate],
    cfg: &NmsConfig,
) -> Vec<Detection> {
    let rank = |c: &Candidate| match cfg.mode {
        NmsMode::Baseline => c.p_class,
        NmsMode::Laar | NmsMode::LaarCluster => cqs(c.p_class, c.p_loc),
    };
    let scores: Vec<f64> = candidates.iter().map(rank).collect();
    let mut alive: Vec<bool> = vec![true; candidates.len()];
    let mut remaining = candidates.len();
    let mut out = Vec::new();
    while remaining > 0 {
        let mut m = usize::MAX;
        for (i, &a) in alive.iter().enumerate() {
            if a && (m == usize::MAX || scores[i] > scores[m]) {
                m = i;
            }
        }
        alive[m] = false;
        remaining -= 1;
        let selected = &candidates[m];
        let mut reported = selected.p_class;
        for (j, a) in alive.iter_mut().enumerate() {
            if !*a {
                continue;
            }
            if iou(&selected.bbox, &candidates[j].bbox) > cfg.epsilon {
                *a = false;
                remaining -= 1;
                if cfg.mode == NmsMode::LaarCluster {
                    reported = reported.max(candidates[j].p_class);
                }
            }
        }
        out.push(Detection {
            image_id,
            class_id: selected.class_id,
            bbox: selected.bbox,
            confidence: reported,
            cqs: cqs(selected.p_class, selected.p_loc),
        });
    }
    out
}

fn image_id_of(proposals: &[Proposal]) -> Result<u64> {
    let id = proposals[0].image_id;
    if proposals.iter().any(|p| p.image_id != id) {
        return Err(Error::InvalidConfig(
            "proposals from multiple images passed to single-image suppression".into(),
        ));
    }
    Ok(id)
}

/// Suppression for a single class. Proposals scoring below the floor for
/// `class_id` do not participate. Output follows selection order, i.e.
/// descending rank score.
pub fn laar_nms(proposals: &[Proposal], class_id: u32, cfg: &NmsConfig) -> Result<Vec<Detection>> {
    cfg.validate()?;
    if proposals.is_empty() {
        return Ok(Vec::new());
    }
    let image_id = image_id_of(proposals)?;
    if proposals
        .iter()
        .any(|p| p.class_scores.len() <= class_id as usize)
    {
        return Err(Error::InvalidConfig(format!(
            "class id {class_id} out of range for proposal score vectors"
        )));
    }
    let candidates: Vec<Candidate> = proposals
        .iter()
        .filter_map(|p| {
            let p_class = p.class_scores[class_id as usize];
            if p_class < cfg.score_floor {
                return None;
            }
            Some(Candidate {
                bbox: p.bbox,
                class_id,
                p_class,
                p_loc: p.locscore,
            })
        })
        .collect();
    Ok(greedy(image_id, &candidates, cfg))
}

/// Full single-image suppression: per-class passes (or one class-agnostic
/// pass over dominant classes), merged, sorted by reported confidence
/// descending and truncated to `top_k`.
pub fn suppress_image(proposals: &[Proposal], cfg: &NmsConfig) -> Result<Vec<Detection>> {
    cfg.validate()?;
    if proposals.is_empty() {
        return Ok(Vec::new());
    }
    let image_id = image_id_of(proposals)?;
    let n_classes = proposals[0].class_scores.len();
    if proposals.iter().any(|p| p.class_scores.len() != n_classes) {
        return Err(Error::InvalidConfig(
            "proposals disagree on the number of classes".into(),
        ));
    }
    let mut merged: Vec<Detection> = Vec::new();
    if cfg.per_class {
        for class_id in 0..n_classes as u32 {
            merged.extend(laar_nms(proposals, class_id, cfg)?);
        }
    } else {
        let candidates: Vec<Candidate> = proposals
            .iter()
            .filter_map(|p| {
                let class_id = p.argmax_class();
                let p_class = p.max_class_score();
                if p_class < cfg.score_floor {
                    return None;
                }
                Some(Candidate {
                    bbox: p.bbox,
                    class_id,
                    p_class,
                    p_loc: p.locscore,
                })
            })
            .collect();
        merged = greedy(image_id, &candidates, cfg);
    }
    // stable sort keeps per-class selection order among equal keys
    merged.sort_by(|a, b| {
        b.confidence
            .total_cmp(&a.confidence)
            .then_with(|| a.class_id.cmp(&b.class_id))
    });
    merged.truncate(cfg.top_k);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bb(x1: f64, y1: f64, x2: f64, y2: f64) -> BBox {
        BBox::new(x1, y1, x2, y2).unwrap()
    }

    fn proposal(bbox: BBox, scores: Vec<f64>, locscore: f64) -> Proposal {
        Proposal::new(7, 0, bbox, scores, locscore).unwrap()
    }

    fn cfg(mode: NmsMode) -> NmsConfig {
        NmsConfig {
            mode,
            score_floor: 0.0,
            ..NmsConfig::default()
        }
    }

    /// Two overlapping boxes (iou exactly 0.7): a confident sloppy one and a
    /// better-localized hesitant one.
    fn cluster_pair() -> Vec<Proposal> {
        vec![
            proposal(bb(0.0, 0.0, 10.0, 10.0), vec![0.9], 0.4),
            proposal(bb(0.0, 0.0, 10.0, 7.0), vec![0.6], 0.8),
        ]
    }

    #[test]
    fn cluster_pair_has_iou_point_seven() {
        let p = cluster_pair();
        assert_eq!(iou(&p[0].bbox, &p[1].bbox), 0.7);
    }

    #[test]
    fn cluster_mode_keeps_better_box_with_raised_confidence() {
        let out = laar_nms(&cluster_pair(), 0, &cfg(NmsMode::LaarCluster)).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].bbox, bb(0.0, 0.0, 10.0, 7.0));
        assert_eq!(out[0].confidence, 0.9);
        assert_eq!(out[0].cqs, 0.6 * 0.8);
    }

    #[test]
    fn laar_mode_keeps_better_box_with_its_own_confidence() {
        let out = laar_nms(&cluster_pair(), 0, &cfg(NmsMode::Laar)).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].bbox, bb(0.0, 0.0, 10.0, 7.0));
        assert_eq!(out[0].confidence, 0.6);
    }

    #[test]
    fn baseline_mode_keeps_the_confident_box() {
        let out = laar_nms(&cluster_pair(), 0, &cfg(NmsMode::Baseline)).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].bbox, bb(0.0, 0.0, 10.0, 10.0));
        assert_eq!(out[0].confidence, 0.9);
    }

    #[test]
    fn empty_input_yields_empty_output() {
        assert!(laar_nms(&[], 0, &cfg(NmsMode::Laar)).unwrap().is_empty());
        assert!(suppress_image(&[], &NmsConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn single_proposal_survives_with_own_confidence() {
        let p = vec![proposal(bb(0.0, 0.0, 4.0, 4.0), vec![0.3], 0.9)];
        let out = laar_nms(&p, 0, &cfg(NmsMode::LaarCluster)).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].confidence, 0.3);
    }

    #[test]
    fn suppression_is_strict_so_epsilon_one_keeps_duplicates() {
        let b = bb(0.0, 0.0, 5.0, 5.0);
        let props = vec![
            proposal(b, vec![0.9], 1.0),
            proposal(b, vec![0.8], 1.0),
        ];
        let mut c = cfg(NmsMode::Baseline);
        c.epsilon = 1.0;
        let out = laar_nms(&props, 0, &c).unwrap();
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn rank_ties_break_toward_lower_index() {
        let props = vec![
            proposal(bb(0.0, 0.0, 5.0, 5.0), vec![0.8], 1.0),
            proposal(bb(0.0, 0.0, 5.0, 5.0), vec![0.8], 1.0),
        ];
        let out = laar_nms(&props, 0, &cfg(NmsMode::Laar)).unwrap();
        assert_eq!(out[0].bbox, props[0].bbox);
    }

    #[test]
    fn per_class_keeps_disjoint_classes_independent() {
        let props = vec![
            proposal(bb(0.0, 0.0, 5.0, 5.0), vec![0.9, 0.0], 0.8),
            proposal(bb(20.0, 20.0, 25.0, 25.0), vec![0.0, 0.7], 0.9),
        ];
        let out = suppress_image(&props, &NmsConfig::default()).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].class_id, 0);
        assert_eq!(out[1].class_id, 1);
    }

    #[test]
    fn class_agnostic_mode_suppresses_across_classes() {
        let props = vec![
            proposal(bb(0.0, 0.0, 10.0, 10.0), vec![0.9, 0.0], 0.9),
            proposal(bb(0.0, 0.0, 10.0, 9.0), vec![0.0, 0.8], 0.9),
        ];
        let per_class = suppress_image(&props, &NmsConfig::default()).unwrap();
        assert_eq!(per_class.len(), 2);
        let agnostic = suppress_image(
            &props,
            &NmsConfig {
                per_class: false,
                ..NmsConfig::default()
            },
        )
        .unwrap();
        assert_eq!(agnostic.len(), 1);
        assert_eq!(agnostic[0].class_id, 0);
    }

    #[test]
    fn top_k_truncates_after_merging() {
        let props = vec![
            proposal(bb(0.0, 0.0, 5.0, 5.0), vec![0.9, 0.0], 1.0),
            proposal(bb(20.0, 0.0, 25.0, 5.0), vec![0.0, 0.8], 1.0),
            proposal(bb(40.0, 0.0, 45.0, 5.0), vec![0.7, 0.0], 1.0),
        ];
        let c = NmsConfig {
            top_k: 2,
            score_floor: 0.0,
            ..NmsConfig::default()
        };
        let out = suppress_image(&props, &c).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].confidence, 0.9);
        assert_eq!(out[1].confidence, 0.8);
        let c = NmsConfig { top_k: 0, ..c };
        assert!(suppress_image(&props, &c).unwrap().is_empty());
    }

    #[test]
    fn score_floor_drops_weak_candidates() {
        let props = vec![
            proposal(bb(0.0, 0.0, 5.0, 5.0), vec![0.9], 1.0),
            proposal(bb(20.0, 0.0, 25.0, 5.0), vec![0.005], 1.0),
        ];
        let out = suppress_image(&props, &NmsConfig::default()).unwrap();
        assert_eq!(out.len(), 1);
        let mut no_floor = NmsConfig::default();
        no_floor.score_floor = 0.0;
        assert_eq!(suppress_image(&props, &no_floor).unwrap().len(), 2);
    }

    #[test]
    fn cluster_confidence_is_max_over_whole_cluster() {
        let props = vec![
            proposal(bb(0.0, 0.0, 10.0, 10.0), vec![0.5], 0.2),
            proposal(bb(0.0, 0.0, 10.0, 9.5), vec![0.85], 0.3),
            proposal(bb(0.0, 0.0, 10.0, 9.0), vec![0.6], 0.95),
        ];
        let out = laar_nms(&props, 0, &cfg(NmsMode::LaarCluster)).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].bbox, props[2].bbox);
        assert_eq!(out[0].confidence, 0.85);
    }

    #[test]
    fn out_of_range_class_id_is_an_error() {
        let props = vec![proposal(bb(0.0, 0.0, 5.0, 5.0), vec![0.9], 1.0)];
        assert!(laar_nms(&props, 3, &cfg(NmsMode::Laar)).is_err());
    }

    #[test]
    fn mixed_image_ids_are_rejected() {
        let mut props = vec![
            proposal(bb(0.0, 0.0, 5.0, 5.0), vec![0.9], 1.0),
            proposal(bb(9.0, 9.0, 15.0, 15.0), vec![0.8], 1.0),
        ];
        props[1].image_id = 99;
        assert!(suppress_image(&props, &NmsConfig::default()).is_err());
    }

    #[test]
    fn mode_strings_parse_both_hyphen_forms() {
        assert_eq!("laar-cluster".parse::<NmsMode>().unwrap(), NmsMode::LaarCluster);
        assert_eq!("laar_cluster".parse::<NmsMode>().unwrap(), NmsMode::LaarCluster);
        assert!("soft".parse::<NmsMode>().is_err());
    }
}
