//! Location-aware anchor reasoning for box detection pipelines.
//!
//! The crate covers the full loop around a detector's box head without
//! touching any network weights: anchor grid generation and ground-truth
//! assignment, localization-confidence scoring and losses, score-aware
//! non-maximum suppression, ranked-detection evaluation, and a seeded
//! simulator that produces controllable proposal sets for end-to-end
//! comparisons.
//!
//! Everything is deterministic: random draws go through explicit seeds with
//! per-image substreams, serialized maps are ordered, and ties break toward
//! the lowest index. Run the same config twice and you get the same bytes.

pub mod anchors;
pub mod dataio;
pub mod error;
pub mod evaluation;
pub mod geometry;
pub mod scoring;
pub mod simulation;
pub mod suppression;

pub use anchors::{
    compute_aiou_targets, generate_anchors, AnchorGrid, AnchorLayout, AnchorTargets, Assignment,
    GroundTruth, Level, Scene, DEFAULT_NEGATIVE_THRESHOLD, DEFAULT_POSITIVE_THRESHOLD,
};
pub use error::{Error, ErrorCategory, Result};
pub use evaluation::{
    average_precision, coco_iou_thresholds, evaluate, match_detections, EvalConfig, EvalReport,
    Interpolation, PrCurve,
};
pub use geometry::{iou, iou_matrix, BBox};
pub use scoring::{
    combined_loss, cqs, full_loss_report, locscore_loss, reduce_locscore_loss, smooth_l1_box_loss,
    LocLossKind, LossReport, LossValue, LossWeights, Proposal, Reduction,
};
pub use simulation::{
    image_stream_seed, run_comparison, simulate, ComparisonRow, Provenance, ProposalSource,
    SimConfig, SimOutput,
};
pub use suppression::{laar_nms, suppress_image, Detection, NmsConfig, NmsMode};
