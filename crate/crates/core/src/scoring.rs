//! Calibrated quality scores and the loss terms behind them.
//!
//! A proposal carries two heads: per-class probabilities and a localization
//! confidence (an estimate of the anchor's best iou with ground truth). The
//! calibrated quality score is their product; it is what location-aware
//! suppression ranks by. Loss functions here return analytic gradients so
//! they can be checked against finite differences.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::BBox;

/// Predictions are clamped into `[BCE_EPS, 1 - BCE_EPS]` before the
/// cross-entropy terms, keeping value and gradient finite at 0 and 1.
pub const BCE_EPS: f64 = 1e-7;

/// Calibrated quality score: classification probability times localization
/// confidence. Both inputs live in `[0, 1]`, so the product does too and
/// never exceeds either factor.
pub fn cqs(p_class: f64, p_loc: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p_class) && (0.0..=1.0).contains(&p_loc));
    p_class * p_loc
}

/// One scored candidate box for one image. `locscore` is clamped into
/// `[0, 1]` at construction; class scores must already be probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Proposal {
    pub image_id: u64,
    pub anchor_id: u64,
    pub bbox: BBox,
    pub class_scores: Vec<f64>,
    pub locscore: f64,
}

impl Proposal {
    pub fn new(
        image_id: u64,
        anchor_id: u64,
        bbox: BBox,
        class_scores: Vec<f64>,
        locscore: f64,
    ) -> Result<Self> {
        if class_scores.is_empty() {
            return Err(Error::InvalidConfig("proposal has no class scores".into()));
        }
        for &s in &class_scores {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::InvalidConfig(format!(
                    "class score {s} outside [0, 1]"
                )));
            }
        }
        if !locscore.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "locscore {locscore} must be finite"
            )));
        }
        Ok(Proposal {
            image_id,
            anchor_id,
            bbox,
            class_scores,
            locscore: locscore.clamp(0.0, 1.0),
        })
    }

    pub fn max_class_score(&self) -> f64 {
        self.class_scores.iter().copied().fold(0.0, f64::max)
    }

    /// Highest-scoring class, ties to the lowest class id.
    pub fn argmax_class(&self) -> u32 {
        let mut best = 0usize;
        for (c, &s) in self.class_scores.iter().enumerate() {
            if s > self.class_scores[best] {
                best = c;
            }
        }
        best as u32
    }
}

// ── Localization-confidence losses ──────────────────────────────────────────

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocLossKind {
    Bce,
    SmoothL1,
}

impl FromStr for LocLossKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bce" => Ok(LocLossKind::Bce),
            "smooth_l1" | "smooth-l1" => Ok(LocLossKind::SmoothL1),
            _ => Err(Error::UnknownVariant {
                what: "loss kind",
                got: s.to_string(),
                expected: "bce, smooth_l1",
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossValue {
    pub value: f64,
    /// d(value) / d(pred).
    pub grad: f64,
}

fn smooth_l1(d: f64) -> (f64, f64) {
    // beta = 1: quadratic inside the unit band, linear outside, C1 at the seam
    if d.abs() < 1.0 {
        (0.5 * d * d, d)
    } else {
        (d.abs() - 0.5, d.clamp(-1.0, 1.0))
    }
}

/// Loss between a predicted localization confidence and its iou target,
/// with the analytic gradient with respect to the prediction.
pub fn locscore_loss(pred: f64, target: f64, kind: LocLossKind) -> LossValue {
    match kind {
        LocLossKind::Bce => {
            let p = pred.clamp(BCE_EPS, 1.0 - BCE_EPS);
            LossValue {
                value: -(target * p.ln() + (1.0 - target) * (1.0 - p).ln()),
                grad: (p - target) / (p * (1.0 - p)),
            }
        }
        LocLossKind::SmoothL1 => {
            let (value, grad) = smooth_l1(pred - target);
            LossValue { value, grad }
        }
    }
}

/// Smooth-L1 box regression loss: sum of the per-coordinate terms, with the
/// per-coordinate gradient vector.
pub fn smooth_l1_box_loss(pred: &[f64; 4], target: &[f64; 4]) -> (f64, [f64; 4]) {
    let mut value = 0.0;
    let mut grad = [0.0; 4];
    for i in 0..4 {
        let (v, g) = smooth_l1(pred[i] - target[i]);
        value += v;
        grad[i] = g;
    }
    (value, grad)
}

// ── Batch reduction ─────────────────────────────────────────────────────────

/// How a batch of per-anchor locscore losses is aggregated. The conventional
/// choice for dense detection heads is to normalize by the number of positive
/// anchors even when the loss is summed over all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    /// Sum over all anchors divided by the positive count.
    MeanOverPositives,
    /// Plain mean over every anchor in the batch.
    MeanOverAll,
    Sum,
}

pub fn reduce_locscore_loss(
    preds: &[f64],
    targets: &[f64],
    positives: &[bool],
    kind: LocLossKind,
    reduction: Reduction,
) -> Result<f64> {
    if preds.len() != targets.len() || preds.len() != positives.len() {
        return Err(Error::InvalidConfig(format!(
            "mismatched batch lengths: {} preds, {} targets, {} masks",
            preds.len(),
            targets.len(),
            positives.len()
        )));
    }
    let sum: f64 = preds
        .iter()
        .zip(targets)
        .map(|(&p, &t)| locscore_loss(p, t, kind).value)
        .sum();
    match reduction {
        Reduction::Sum => Ok(sum),
        Reduction::MeanOverAll => {
            if preds.is_empty() {
                Ok(0.0)
            } else {
                Ok(sum / preds.len() as f64)
            }
        }
        Reduction::MeanOverPositives => {
            let n_pos = positives.iter().filter(|&&p| p).count();
            if n_pos == 0 {
                Ok(0.0)
            } else {
                Ok(sum / n_pos as f64)
            }
        }
    }
}

// ── Combined objective ──────────────────────────────────────────────────────

/// Non-negative weights for the classification, box regression and
/// localization-confidence terms. Defaults to equal unit weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossWeights {
    pub classification: f64,
    pub box_regression: f64,
    pub locscore: f64,
}

impl LossWeights {
    pub fn new(classification: f64, box_regression: f64, locscore: f64) -> Result<Self> {
        for (name, w) in [
            ("classification", classification),
            ("box_regression", box_regression),
            ("locscore", locscore),
        ] {
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} weight {w} must be non-negative and finite"
                )));
            }
        }
        Ok(LossWeights {
            classification,
            box_regression,
            locscore,
        })
    }
}

impl Default for LossWeights {
    fn default() -> Self {
        LossWeights {
            classification: 1.0,
            box_regression: 1.0,
            locscore: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LossReport {
    pub classification: f64,
    pub box_regression: f64,
    pub locscore: f64,
    pub total: f64,
    /// d(total) / d(locscore prediction), when the term was computed here.
    pub grad_locscore: Option<f64>,
    /// d(total) / d(box prediction), when the term was computed here.
    pub grad_box: Option<[f64; 4]>,
}

/// Weighted sum of pre-computed loss terms, in fixed order
/// `w_cl * l_cl + w_bb * l_bb + w_lc * l_lc`. Negative terms are rejected:
/// every component is a loss and a negative value indicates a bug upstream.
pub fn combined_loss(
    l_classification: f64,
    l_box: f64,
    l_locscore: f64,
    weights: &LossWeights,
) -> Result<LossReport> {
    for (name, l) in [
        ("classification", l_classification),
        ("box_regression", l_box),
        ("locscore", l_locscore),
    ] {
        if !l.is_finite() || l < 0.0 {
            return Err(Error::NegativeLossComponent(format!("{name} = {l}")));
        }
    }
    let total = weights.classification * l_classification
        + weights.box_regression * l_box
        + weights.locscore * l_locscore;
    Ok(LossReport {
        classification: l_classification,
        box_regression: l_box,
        locscore: l_locscore,
        total,
        grad_locscore: None,
        grad_box: None,
    })
}

/// Convenience wrapper that evaluates the box and locscore terms from raw
/// predictions, then combines them, carrying chain-rule gradients through the
/// weights.
#[allow(clippy::too_many_arguments)]
pub fn full_loss_report(
    l_classification: f64,
    locscore_pred: f64,
    locscore_target: f64,
    locscore_kind: LocLossKind,
    box_pred: &[f64; 4],
    box_target: &[f64; 4],
    weights: &LossWeights,
) -> Result<LossReport> {
    let lc = locscore_loss(locscore_pred, locscore_target, locscore_kind);
    let (bb, bb_grad) = smooth_l1_box_loss(box_pred, box_target);
    let mut report = combined_loss(l_classification, bb, lc.value, weights)?;
    report.grad_locscore = Some(weights.locscore * lc.grad);
    report.grad_box = Some(bb_grad.map(|g| weights.box_regression * g));
    Ok(report)
}
