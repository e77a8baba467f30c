//! Python bindings: thin wrappers over laar-core types and operations.
//! Construction validates through the core APIs, numeric behavior is
//! identical to the Rust side, and nothing is re-implemented here.

use std::str::FromStr;

use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyType;

use laar_core as core;
use laar_core::ErrorCategory;

fn to_py_err(e: core::Error) -> PyErr {
    match e {
        core::Error::Io(io) => PyOSError::new_err(io.to_string()),
        e if e.category() == ErrorCategory::Internal => PyRuntimeError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPyResult<T> {
    fn into_py(self) -> PyResult<T>;
}

impl<T> IntoPyResult<T> for core::Result<T> {
    fn into_py(self) -> PyResult<T> {
        self.map_err(to_py_err)
    }
}

// ── Geometry ────────────────────────────────────────────────────────────────

#[pyclass(name = "BBox", frozen, from_py_object)]
#[derive(Clone)]
struct PyBBox {
    inner: core::BBox,
}

#[pymethods]
impl PyBBox {
    #[new]
    fn new(x1: f64, y1: f64, x2: f64, y2: f64) -> PyResult<Self> {
        Ok(PyBBox {
            inner: core::BBox::new(x1, y1, x2, y2).into_py()?,
        })
    }

    #[classmethod]
    fn from_cxcywh(_cls: &Bound<'_, PyType>, cx: f64, cy: f64, w: f64, h: f64) -> PyResult<Self> {
        Ok(PyBBox {
            inner: core::BBox::from_cxcywh(cx, cy, w, h).into_py()?,
        })
    }

    #[getter]
    fn x1(&self) -> f64 {
        self.inner.x1()
    }
    #[getter]
    fn y1(&self) -> f64 {
        self.inner.y1()
    }
    #[getter]
    fn x2(&self) -> f64 {
        self.inner.x2()
    }
    #[getter]
    fn y2(&self) -> f64 {
        self.inner.y2()
    }
    #[getter]
    fn width(&self) -> f64 {
        self.inner.width()
    }
    #[getter]
    fn height(&self) -> f64 {
        self.inner.height()
    }

    fn area(&self) -> f64 {
        self.inner.area()
    }

    fn center(&self) -> (f64, f64) {
        self.inner.center()
    }

    fn corners(&self) -> [f64; 4] {
        self.inner.corners()
    }

    fn clip(&self, width: f64, height: f64) -> Self {
        PyBBox {
            inner: self.inner.clip(width, height),
        }
    }

    fn __repr__(&self) -> String {
        let [x1, y1, x2, y2] = self.inner.corners();
        format!("BBox({x1}, {y1}, {x2}, {y2})")
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

#[pyfunction]
fn iou(a: &PyBBox, b: &PyBBox) -> f64 {
    core::iou(&a.inner, &b.inner)
}

#[pyfunction]
fn iou_matrix(a: Vec<PyBBox>, b: Vec<PyBBox>) -> Vec<Vec<f64>> {
    let av: Vec<core::BBox> = a.into_iter().map(|x| x.inner).collect();
    let bv: Vec<core::BBox> = b.into_iter().map(|x| x.inner).collect();
    core::iou_matrix(&av, &bv)
}

// ── Anchors ─────────────────────────────────────────────────────────────────

#[pyclass(name = "AnchorLayout", from_py_object)]
#[derive(Clone)]
struct PyAnchorLayout {
    inner: core::AnchorLayout,
}

#[pymethods]
impl PyAnchorLayout {
    /// Levels are (stride, base_size) pairs. Defaults mirror the Rust side.
    #[new]
    #[pyo3(signature = (image_size=None, levels=None, scales=None, aspect_ratios=None, clip=false))]
    fn new(
        image_size: Option<(u32, u32)>,
        levels: Option<Vec<(u32, f64)>>,
        scales: Option<Vec<f64>>,
        aspect_ratios: Option<Vec<f64>>,
        clip: bool,
    ) -> PyResult<Self> {
        let default = core::AnchorLayout::default();
        let inner = core::AnchorLayout {
            image_size: image_size.unwrap_or(default.image_size),
            levels: levels
                .map(|ls| {
                    ls.into_iter()
                        .map(|(stride, base_size)| core::Level { stride, base_size })
                        .collect()
                })
                .unwrap_or(default.levels),
            scales: scales.unwrap_or(default.scales),
            aspect_ratios: aspect_ratios.unwrap_or(default.aspect_ratios),
            clip,
        };
        inner.validate().into_py()?;
        Ok(PyAnchorLayout { inner })
    }

    #[getter]
    fn image_size(&self) -> (u32, u32) {
        self.inner.image_size
    }

    #[getter]
    fn levels(&self) -> Vec<(u32, f64)> {
        self.inner
            .levels
            .iter()
            .map(|l| (l.stride, l.base_size))
            .collect()
    }

    #[getter]
    fn scales(&self) -> Vec<f64> {
        self.inner.scales.clone()
    }

    #[getter]
    fn aspect_ratios(&self) -> Vec<f64> {
        self.inner.aspect_ratios.clone()
    }

    fn anchor_count(&self) -> usize {
        self.inner.anchor_count()
    }
}

#[pyclass(name = "AnchorGrid", frozen)]
struct PyAnchorGrid {
    inner: core::AnchorGrid,
}

#[pymethods]
impl PyAnchorGrid {
    #[getter]
    fn layout(&self) -> PyAnchorLayout {
        PyAnchorLayout {
            inner: self.inner.layout.clone(),
        }
    }

    #[getter]
    fn anchors(&self) -> Vec<PyBBox> {
        self.inner
            .anchors
            .iter()
            .map(|&inner| PyBBox { inner })
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.anchors.len()
    }
}

#[pyfunction]
fn generate_anchors(layout: &PyAnchorLayout) -> PyResult<PyAnchorGrid> {
    Ok(PyAnchorGrid {
        inner: core::generate_anchors(&layout.inner).into_py()?,
    })
}

#[pyclass(name = "GroundTruth", frozen, from_py_object)]
#[derive(Clone)]
struct PyGroundTruth {
    inner: core::GroundTruth,
}

#[pymethods]
impl PyGroundTruth {
    #[new]
    fn new(bbox: PyBBox, class_id: u32) -> Self {
        PyGroundTruth {
            inner: core::GroundTruth {
                bbox: bbox.inner,
                class_id,
            },
        }
    }

    #[getter]
    fn bbox(&self) -> PyBBox {
        PyBBox {
            inner: self.inner.bbox,
        }
    }

    #[getter]
    fn class_id(&self) -> u32 {
        self.inner.class_id
    }
}

#[pyclass(name = "Scene", frozen, from_py_object)]
#[derive(Clone)]
struct PyScene {
    inner: core::Scene,
}

#[pymethods]
impl PyScene {
    #[new]
    fn new(image_id: u64, image_size: (u32, u32), ground_truths: Vec<PyGroundTruth>) -> Self {
        PyScene {
            inner: core::Scene {
                image_id,
                image_size,
                ground_truths: ground_truths.into_iter().map(|g| g.inner).collect(),
            },
        }
    }

    #[getter]
    fn image_id(&self) -> u64 {
        self.inner.image_id
    }

    #[getter]
    fn image_size(&self) -> (u32, u32) {
        self.inner.image_size
    }

    #[getter]
    fn ground_truths(&self) -> Vec<PyGroundTruth> {
        self.inner
            .ground_truths
            .iter()
            .map(|g| PyGroundTruth { inner: g.clone() })
            .collect()
    }
}

/// Returns (aiou, matched_gt, assignment) lists indexed by anchor id;
/// assignment entries are "positive", "negative" or "ignore".
#[pyfunction]
#[pyo3(signature = (grid, scene, positive_threshold=0.5, negative_threshold=0.4))]
fn compute_aiou_targets(
    grid: &PyAnchorGrid,
    scene: &PyScene,
    positive_threshold: f64,
    negative_threshold: f64,
) -> PyResult<(Vec<f64>, Vec<Option<usize>>, Vec<&'static str>)> {
    let t = core::compute_aiou_targets(
        &grid.inner,
        &scene.inner,
        positive_threshold,
        negative_threshold,
    )
    .into_py()?;
    let assignment = t
        .assignment
        .iter()
        .map(|a| match a {
            core::Assignment::Positive => "positive",
            core::Assignment::Negative => "negative",
            core::Assignment::Ignore => "ignore",
        })
        .collect();
    Ok((t.aiou, t.matched_gt, assignment))
}

// ── Scoring ─────────────────────────────────────────────────────────────────

#[pyfunction]
fn cqs(p_class: f64, p_loc: f64) -> f64 {
    core::cqs(p_class, p_loc)
}

fn parse_loss_kind(kind: &str) -> PyResult<core::LocLossKind> {
    core::LocLossKind::from_str(kind).into_py()
}

/// Returns (value, grad) of the localization-confidence loss.
#[pyfunction]
#[pyo3(signature = (pred, target, kind="bce"))]
fn locscore_loss(pred: f64, target: f64, kind: &str) -> PyResult<(f64, f64)> {
    let v = core::locscore_loss(pred, target, parse_loss_kind(kind)?);
    Ok((v.value, v.grad))
}

/// Returns (value, grad) of the four-coordinate smooth-L1 box loss.
#[pyfunction]
fn smooth_l1_box_loss(pred: [f64; 4], target: [f64; 4]) -> (f64, [f64; 4]) {
    core::smooth_l1_box_loss(&pred, &target)
}

#[pyfunction]
#[pyo3(signature = (l_classification, l_box, l_locscore, weights=(1.0, 1.0, 1.0)))]
fn combined_loss(
    l_classification: f64,
    l_box: f64,
    l_locscore: f64,
    weights: (f64, f64, f64),
) -> PyResult<f64> {
    let w = core::LossWeights::new(weights.0, weights.1, weights.2).into_py()?;
    Ok(core::combined_loss(l_classification, l_box, l_locscore, &w)
        .into_py()?
        .total)
}

#[pyclass(name = "Proposal", frozen, from_py_object)]
#[derive(Clone)]
struct PyProposal {
    inner: core::Proposal,
}

#[pymethods]
impl PyProposal {
    #[new]
    fn new(
        image_id: u64,
        anchor_id: u64,
        bbox: PyBBox,
        class_scores: Vec<f64>,
        locscore: f64,
    ) -> PyResult<Self> {
        Ok(PyProposal {
            inner: core::Proposal::new(image_id, anchor_id, bbox.inner, class_scores, locscore)
                .into_py()?,
        })
    }

    #[getter]
    fn image_id(&self) -> u64 {
        self.inner.image_id
    }
    #[getter]
    fn anchor_id(&self) -> u64 {
        self.inner.anchor_id
    }
    #[getter]
    fn bbox(&self) -> PyBBox {
        PyBBox {
            inner: self.inner.bbox,
        }
    }
    #[getter]
    fn class_scores(&self) -> Vec<f64> {
        self.inner.class_scores.clone()
    }
    #[getter]
    fn locscore(&self) -> f64 {
        self.inner.locscore
    }

    fn max_class_score(&self) -> f64 {
        self.inner.max_class_score()
    }

    fn argmax_class(&self) -> u32 {
        self.inner.argmax_class()
    }
}

// ── Suppression ─────────────────────────────────────────────────────────────

#[pyclass(name = "NmsConfig", frozen, from_py_object)]
#[derive(Clone)]
struct PyNmsConfig {
    inner: core::NmsConfig,
}

#[pymethods]
impl PyNmsConfig {
    #[new]
    #[pyo3(signature = (epsilon=0.5, mode="laar_cluster", top_k=100, per_class=true, score_floor=0.01))]
    fn new(
        epsilon: f64,
        mode: &str,
        top_k: usize,
        per_class: bool,
        score_floor: f64,
    ) -> PyResult<Self> {
        let inner = core::NmsConfig {
            epsilon,
            mode: core::NmsMode::from_str(mode).into_py()?,
            top_k,
            per_class,
            score_floor,
        };
        inner.validate().into_py()?;
        Ok(PyNmsConfig { inner })
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.inner.epsilon
    }
    #[getter]
    fn mode(&self) -> &'static str {
        self.inner.mode.as_str()
    }
    #[getter]
    fn top_k(&self) -> usize {
        self.inner.top_k
    }
    #[getter]
    fn per_class(&self) -> bool {
        self.inner.per_class
    }
    #[getter]
    fn score_floor(&self) -> f64 {
        self.inner.score_floor
    }
}

#[pyclass(name = "Detection", frozen, from_py_object)]
#[derive(Clone)]
struct PyDetection {
    inner: core::Detection,
}

#[pymethods]
impl PyDetection {
    #[getter]
    fn image_id(&self) -> u64 {
        self.inner.image_id
    }
    #[getter]
    fn class_id(&self) -> u32 {
        self.inner.class_id
    }
    #[getter]
    fn bbox(&self) -> PyBBox {
        PyBBox {
            inner: self.inner.bbox,
        }
    }
    #[getter]
    fn confidence(&self) -> f64 {
        self.inner.confidence
    }
    #[getter]
    fn cqs(&self) -> f64 {
        self.inner.cqs
    }

    fn __repr__(&self) -> String {
        format!(
            "Detection(image_id={}, class_id={}, confidence={}, cqs={})",
            self.inner.image_id, self.inner.class_id, self.inner.confidence, self.inner.cqs
        )
    }
}

fn wrap_detections(dets: Vec<core::Detection>) -> Vec<PyDetection> {
    dets.into_iter().map(|inner| PyDetection { inner }).collect()
}

#[pyfunction]
fn laar_nms(
    proposals: Vec<PyProposal>,
    class_id: u32,
    config: &PyNmsConfig,
) -> PyResult<Vec<PyDetection>> {
    let props: Vec<core::Proposal> = proposals.into_iter().map(|p| p.inner).collect();
    Ok(wrap_detections(
        core::laar_nms(&props, class_id, &config.inner).into_py()?,
    ))
}

#[pyfunction]
fn suppress_image(proposals: Vec<PyProposal>, config: &PyNmsConfig) -> PyResult<Vec<PyDetection>> {
    let props: Vec<core::Proposal> = proposals.into_iter().map(|p| p.inner).collect();
    Ok(wrap_detections(
        core::suppress_image(&props, &config.inner).into_py()?,
    ))
}

// ── Evaluation ──────────────────────────────────────────────────────────────

#[pyclass(name = "EvalConfig", frozen, from_py_object)]
#[derive(Clone)]
struct PyEvalConfig {
    inner: core::EvalConfig,
}

#[pymethods]
impl PyEvalConfig {
    #[new]
    #[pyo3(signature = (iou_thresholds=None, interpolation="points_101", max_dets_per_image=100))]
    fn new(
        iou_thresholds: Option<Vec<f64>>,
        interpolation: &str,
        max_dets_per_image: usize,
    ) -> PyResult<Self> {
        let inner = core::EvalConfig {
            iou_thresholds: iou_thresholds.unwrap_or_else(core::coco_iou_thresholds),
            interpolation: core::Interpolation::from_str(interpolation).into_py()?,
            max_dets_per_image,
        };
        inner.validate().into_py()?;
        Ok(PyEvalConfig { inner })
    }

    #[getter]
    fn iou_thresholds(&self) -> Vec<f64> {
        self.inner.iou_thresholds.clone()
    }
    #[getter]
    fn max_dets_per_image(&self) -> usize {
        self.inner.max_dets_per_image
    }
}

#[pyclass(name = "EvalReport", frozen)]
struct PyEvalReport {
    inner: core::EvalReport,
}

#[pymethods]
impl PyEvalReport {
    #[getter]
    fn ap(&self) -> f64 {
        self.inner.ap
    }
    #[getter]
    fn ap50(&self) -> Option<f64> {
        self.inner.ap50
    }
    #[getter]
    fn ap75(&self) -> Option<f64> {
        self.inner.ap75
    }
    #[getter]
    fn ap_small(&self) -> Option<f64> {
        self.inner.ap_small
    }
    #[getter]
    fn ap_medium(&self) -> Option<f64> {
        self.inner.ap_medium
    }
    #[getter]
    fn ap_large(&self) -> Option<f64> {
        self.inner.ap_large
    }
    #[getter]
    fn per_class_ap(&self) -> std::collections::BTreeMap<u32, f64> {
        self.inner.per_class_ap.clone()
    }

    /// PR curves as (class_id, iou_threshold, [(recall, precision), ...]).
    #[getter]
    fn pr_curves(&self) -> Vec<(u32, f64, Vec<(f64, f64)>)> {
        self.inner
            .pr_curves
            .iter()
            .map(|c| (c.class_id, c.iou_threshold, c.points.clone()))
            .collect()
    }
}

#[pyfunction]
fn evaluate(
    detections: Vec<PyDetection>,
    scenes: Vec<PyScene>,
    config: &PyEvalConfig,
) -> PyResult<PyEvalReport> {
    let dets: Vec<core::Detection> = detections.into_iter().map(|d| d.inner).collect();
    let scene_vec: Vec<core::Scene> = scenes.into_iter().map(|s| s.inner).collect();
    Ok(PyEvalReport {
        inner: core::evaluate(&dets, &scene_vec, &config.inner).into_py()?,
    })
}

// ── Simulation ──────────────────────────────────────────────────────────────

#[pyclass(name = "SimConfig", frozen, from_py_object)]
#[derive(Clone)]
struct PySimConfig {
    inner: core::SimConfig,
}

#[pymethods]
impl PySimConfig {
    #[new]
    #[pyo3(signature = (seed=42, images=50, classes=3, gts_per_image=(1, 4), image_size=(256, 256),
                        box_scale_range=(24.0, 96.0), jitter_sigma=0.15, score_alignment=0.3,
                        locscore_noise_sigma=0.05, proposals_per_gt=6, background_fp_rate=2.0))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        seed: u64,
        images: usize,
        classes: usize,
        gts_per_image: (usize, usize),
        image_size: (u32, u32),
        box_scale_range: (f64, f64),
        jitter_sigma: f64,
        score_alignment: f64,
        locscore_noise_sigma: f64,
        proposals_per_gt: usize,
        background_fp_rate: f64,
    ) -> PyResult<Self> {
        let inner = core::SimConfig {
            seed,
            images,
            classes,
            gts_per_image,
            image_size,
            box_scale_range,
            jitter_sigma,
            score_alignment,
            locscore_noise_sigma,
            proposals_per_gt,
            background_fp_rate,
        };
        inner.validate().into_py()?;
        Ok(PySimConfig { inner })
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }
    #[getter]
    fn images(&self) -> usize {
        self.inner.images
    }
}

#[pyclass(name = "SimOutput", frozen)]
struct PySimOutput {
    inner: core::SimOutput,
}

#[pymethods]
impl PySimOutput {
    #[getter]
    fn scenes(&self) -> Vec<PyScene> {
        self.inner
            .scenes
            .iter()
            .map(|s| PyScene { inner: s.clone() })
            .collect()
    }

    #[getter]
    fn proposals(&self) -> Vec<PyProposal> {
        self.inner
            .proposals
            .iter()
            .map(|p| PyProposal { inner: p.clone() })
            .collect()
    }

    /// Provenance per proposal: (true_iou_with_gt, true_aiou, source),
    /// where source is a gt index or None for background boxes.
    #[getter]
    fn provenance(&self) -> Vec<(f64, f64, Option<usize>)> {
        self.inner
            .provenance
            .iter()
            .map(|p| {
                let source = match p.source {
                    core::ProposalSource::JitteredGt { gt_index } => Some(gt_index),
                    core::ProposalSource::Background => None,
                };
                (p.true_iou_with_gt, p.true_aiou, source)
            })
            .collect()
    }
}

#[pyfunction]
fn simulate(config: &PySimConfig, grid: &PyAnchorGrid) -> PyResult<PySimOutput> {
    Ok(PySimOutput {
        inner: core::simulate(&config.inner, &grid.inner).into_py()?,
    })
}

#[pyfunction]
fn image_stream_seed(master_seed: u64, image_index: u64) -> u64 {
    core::image_stream_seed(master_seed, image_index)
}

/// Rows of (label, ap, delta_ap) comparing suppression configs on one
/// simulated dataset.
#[pyfunction]
fn run_comparison(
    config: &PySimConfig,
    grid: &PyAnchorGrid,
    modes: Vec<PyNmsConfig>,
    eval_config: &PyEvalConfig,
) -> PyResult<Vec<(String, f64, f64)>> {
    let mode_cfgs: Vec<core::NmsConfig> = modes.into_iter().map(|m| m.inner).collect();
    let rows = core::run_comparison(&config.inner, &grid.inner, &mode_cfgs, &eval_config.inner)
        .into_py()?;
    Ok(rows
        .into_iter()
        .map(|r| (r.label, r.report.ap, r.delta_ap))
        .collect())
}

// ── Module ──────────────────────────────────────────────────────────────────

#[pymodule]
fn laar_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBBox>()?;
    m.add_class::<PyAnchorLayout>()?;
    m.add_class::<PyAnchorGrid>()?;
    m.add_class::<PyGroundTruth>()?;
    m.add_class::<PyScene>()?;
    m.add_class::<PyProposal>()?;
    m.add_class::<PyNmsConfig>()?;
    m.add_class::<PyDetection>()?;
    m.add_class::<PyEvalConfig>()?;
    m.add_class::<PyEvalReport>()?;
    m.add_class::<PySimConfig>()?;
    m.add_class::<PySimOutput>()?;
    m.add_function(wrap_pyfunction!(iou, m)?)?;
    m.add_function(wrap_pyfunction!(iou_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(generate_anchors, m)?)?;
    m.add_function(wrap_pyfunction!(compute_aiou_targets, m)?)?;
    m.add_function(wrap_pyfunction!(cqs, m)?)?;
    m.add_function(wrap_pyfunction!(locscore_loss, m)?)?;
    m.add_function(wrap_pyfunction!(smooth_l1_box_loss, m)?)?;
    m.add_function(wrap_pyfunction!(combined_loss, m)?)?;
    m.add_function(wrap_pyfunction!(laar_nms, m)?)?;
    m.add_function(wrap_pyfunction!(suppress_image, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(image_stream_seed, m)?)?;
    m.add_function(wrap_pyfunction!(run_comparison, m)?)?;
    Ok(())
}
