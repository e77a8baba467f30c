//! Seeded synthetic detector output for controlled suppression experiments.
//!
//! Each image draws from its own substream derived from the master seed, so
//! regeneration is bit-identical and images could be generated in any order.
//! Ground-truth boxes are jittered in (cx, cy, log w, log h) space to form
//! proposals; the `score_alignment` dial alpha blends how much the
//! classification score reflects true box quality versus uniform noise, and
//! `locscore_noise_sigma` controls how honest the localization confidence is
//! about the snapped anchor's true overlap. Background false positives
//! arrive as a Poisson stream of random boxes.
//!
//! PRNG: ChaCha8 seeded per image with
//! `splitmix64(seed ^ (image_index + 1) * 0x9E3779B97F4A7C15)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::anchors::{AnchorGrid, GroundTruth, Scene};
use crate::error::{Error, Result};
use crate::evaluation::{evaluate, EvalConfig, EvalReport};
use crate::geometry::{iou, BBox};
use crate::scoring::Proposal;
use crate::suppression::{suppress_image, NmsConfig, NmsMode};

/// Gaussian noise added to every classification score, scaled like the
/// uniform term so the fully aligned limit (alpha = 1) stays noise-free.
pub const SCORE_NOISE_SIGMA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimConfig {
    pub seed: u64,
    pub images: usize,
    pub classes: usize,
    /// Inclusive range of ground-truth boxes per image.
    pub gts_per_image: (usize, usize),
    /// (width, height) in pixels.
    pub image_size: (u32, u32),
    /// Inclusive range of ground-truth side lengths in pixels.
    pub box_scale_range: (f64, f64),
    /// Standard deviation of the jitter, as a fraction of box size for the
    /// center and directly in log-size space for width and height.
    pub jitter_sigma: f64,
    /// Alpha in [0, 1]: 1 means scores reflect true iou, 0 means pure noise.
    pub score_alignment: f64,
    /// Standard deviation of the noise on the localization confidence.
    pub locscore_noise_sigma: f64,
    pub proposals_per_gt: usize,
    /// Poisson mean of background false positives per image.
    pub background_fp_rate: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            seed: 42,
            images: 50,
            classes: 3,
            gts_per_image: (1, 4),
            image_size: (256, 256),
            box_scale_range: (24.0, 96.0),
            jitter_sigma: 0.15,
            score_alignment: 0.3,
            locscore_noise_sigma: 0.05,
            proposals_per_gt: 6,
            background_fp_rate: 2.0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.classes == 0 {
            return Err(Error::InvalidConfig("classes must be at least 1".into()));
        }
        if self.image_size.0 == 0 || self.image_size.1 == 0 {
            return Err(Error::InvalidConfig("image size must be positive".into()));
        }
        if self.gts_per_image.0 > self.gts_per_image.1 {
            return Err(Error::InvalidConfig(format!(
                "gts_per_image range ({}, {}) is reversed",
                self.gts_per_image.0, self.gts_per_image.1
            )));
        }
        let (lo, hi) = self.box_scale_range;
        let side = self.image_size.0.min(self.image_size.1) as f64;
        if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || lo > hi || hi > side {
            return Err(Error::InvalidConfig(format!(
                "box_scale_range ({lo}, {hi}) must satisfy 0 < lo <= hi <= {side}"
            )));
        }
        if !(0.0..=1.0).contains(&self.score_alignment) {
            return Err(Error::InvalidConfig(format!(
                "score_alignment {} outside [0, 1]",
                self.score_alignment
            )));
        }
        if !(self.locscore_noise_sigma.is_finite() && self.locscore_noise_sigma >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "locscore_noise_sigma {} must be non-negative",
                self.locscore_noise_sigma
            )));
        }
        if !(self.jitter_sigma.is_finite() && self.jitter_sigma >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "jitter_sigma {} must be non-negative",
                self.jitter_sigma
            )));
        }
        if !(self.background_fp_rate.is_finite() && self.background_fp_rate >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "background_fp_rate {} must be non-negative",
                self.background_fp_rate
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ProposalSource {
    /// Jitter of the ground-truth box at this index in its scene.
    JitteredGt { gt_index: usize },
    Background,
}

/// Ground truth about a proposal that the detector heads only estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// Exact iou between the proposal box and its ground-truth box (best
    /// overlap for background proposals, 0 without ground truth).
    pub true_iou_with_gt: f64,
    /// Exact max-iou target of the recorded anchor over the scene's ground
    /// truth, i.e. what a perfect localization head would output.
    pub true_aiou: f64,
    pub source: ProposalSource,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOutput {
    pub scenes: Vec<Scene>,
    pub proposals: Vec<Proposal>,
    /// Aligned with `proposals` by index.
    pub provenance: Vec<Provenance>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Substream seed for one image; pinned so files regenerate bit-identically.
pub fn image_stream_seed(master_seed: u64, image_index: u64) -> u64 {
    splitmix64(master_seed ^ (image_index + 1).wrapping_mul(0x9E3779B97F4A7C15))
}

// ── Nearest-anchor snapping ─────────────────────────────────────────────────

struct LevelIndex {
    offset: usize,
    cols: usize,
    rows: usize,
    stride: f64,
    per_cell: usize,
}

struct AnchorIndex {
    levels: Vec<LevelIndex>,
}

impl AnchorIndex {
    fn new(grid: &AnchorGrid) -> Self {
        let per_cell = grid.layout.scales.len() * grid.layout.aspect_ratios.len();
        let mut offset = 0;
        let mut levels = Vec::with_capacity(grid.layout.levels.len());
        for (l, level) in grid.layout.levels.iter().enumerate() {
            let (cols, rows) = grid.layout.grid_shape(l);
            levels.push(LevelIndex {
                offset,
                cols,
                rows,
                stride: level.stride as f64,
                per_cell,
            });
            offset += cols * rows * per_cell;
        }
        AnchorIndex { levels }
    }

    /// Anchor with the highest iou against `bbox` among all (scale, ratio)
    /// anchors within two cells of the box center at every level; ties go to
    /// the lowest anchor id. When nothing overlaps (a box far outside the
    /// image), falls back to the candidate with the nearest center.
    fn nearest(&self, grid: &AnchorGrid, bbox: &BBox) -> usize {
        let (cx, cy) = bbox.center();
        let mut best_id = usize::MAX;
        let mut best_iou = -1.0;
        for level in &self.levels {
            let ci = ((cx / level.stride).floor() as i64).clamp(0, level.cols as i64 - 1);
            let cj = ((cy / level.stride).floor() as i64).clamp(0, level.rows as i64 - 1);
            for dj in -2..=2i64 {
                let j = cj + dj;
                if j < 0 || j >= level.rows as i64 {
                    continue;
                }
                for di in -2..=2i64 {
                    let i = ci + di;
                    if i < 0 || i >= level.cols as i64 {
                        continue;
                    }
                    let cell = level.offset + (j as usize * level.cols + i as usize) * level.per_cell;
                    for id in cell..cell + level.per_cell {
                        let v = iou(&grid.anchors[id], bbox);
                        if v > best_iou || (v == best_iou && id < best_id) {
                            best_iou = v;
                            best_id = id;
                        }
                    }
                }
            }
        }
        if best_iou > 0.0 {
            return best_id;
        }
        // nothing overlaps: nearest center among the same candidates
        let mut best_id = usize::MAX;
        let mut best_d2 = f64::INFINITY;
        for level in &self.levels {
            let ci = ((cx / level.stride).floor() as i64).clamp(0, level.cols as i64 - 1);
            let cj = ((cy / level.stride).floor() as i64).clamp(0, level.rows as i64 - 1);
            for dj in -2..=2i64 {
                let j = cj + dj;
                if j < 0 || j >= level.rows as i64 {
                    continue;
                }
                for di in -2..=2i64 {
                    let i = ci + di;
                    if i < 0 || i >= level.cols as i64 {
                        continue;
                    }
                    let cell = level.offset + (j as usize * level.cols + i as usize) * level.per_cell;
                    for id in cell..cell + level.per_cell {
                        let (ax, ay) = grid.anchors[id].center();
                        let d2 = (ax - cx) * (ax - cx) + (ay - cy) * (ay - cy);
                        if d2 < best_d2 || (d2 == best_d2 && id < best_id) {
                            best_d2 = d2;
                            best_id = id;
                        }
                    }
                }
            }
        }
        best_id
    }
}

// ── Generation ──────────────────────────────────────────────────────────────

fn max_gt_iou(bbox: &BBox, gts: &[GroundTruth]) -> f64 {
    gts.iter().map(|g| iou(bbox, &g.bbox)).fold(0.0, f64::max)
}

/// Generates scenes, proposals and their provenance. Output is a pure
/// function of the config and grid; see the module docs for the stream
/// layout that guarantees it.
pub fn simulate(cfg: &SimConfig, grid: &AnchorGrid) -> Result<SimOutput> {
    cfg.validate()?;
    if grid.anchors.is_empty() {
        return Err(Error::EmptyLayout("grid has no anchors"));
    }
    let index = AnchorIndex::new(grid);
    let (img_w, img_h) = (cfg.image_size.0 as f64, cfg.image_size.1 as f64);
    let alpha = cfg.score_alignment;
    let normal = StandardNormal;

    let mut scenes = Vec::with_capacity(cfg.images);
    let mut proposals = Vec::new();
    let mut provenance = Vec::new();

    for image_index in 0..cfg.images {
        let image_id = image_index as u64 + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(image_stream_seed(cfg.seed, image_index as u64));

        let n_gt = rng.random_range(cfg.gts_per_image.0..=cfg.gts_per_image.1);
        let mut ground_truths = Vec::with_capacity(n_gt);
        // drawn (cx, cy, w, h) per box; jitter perturbs these, not values
        // re-derived from corners, so zero jitter reproduces the box exactly
        let mut gt_params = Vec::with_capacity(n_gt);
        for _ in 0..n_gt {
            let class_id = rng.random_range(0..cfg.classes as u32);
            let w = rng.random_range(cfg.box_scale_range.0..=cfg.box_scale_range.1);
            let h = rng.random_range(cfg.box_scale_range.0..=cfg.box_scale_range.1);
            let cx = rng.random_range(w / 2.0..=img_w - w / 2.0);
            let cy = rng.random_range(h / 2.0..=img_h - h / 2.0);
            ground_truths.push(GroundTruth {
                bbox: BBox::from_cxcywh(cx, cy, w, h)?,
                class_id,
            });
            gt_params.push((cx, cy, w, h));
        }

        // jittered proposals, one block per ground-truth box
        for (gt_index, gt) in ground_truths.iter().enumerate() {
            let (gcx, gcy, gw, gh) = gt_params[gt_index];
            for _ in 0..cfg.proposals_per_gt {
                let z1: f64 = normal.sample(&mut rng);
                let z2: f64 = normal.sample(&mut rng);
                let z3: f64 = normal.sample(&mut rng);
                let z4: f64 = normal.sample(&mut rng);
                let u: f64 = rng.random_range(0.0..1.0);
                let zn: f64 = normal.sample(&mut rng);
                let z_lc: f64 = normal.sample(&mut rng);

                let bbox = BBox::from_cxcywh(
                    gcx + cfg.jitter_sigma * gw * z1,
                    gcy + cfg.jitter_sigma * gh * z2,
                    gw * (cfg.jitter_sigma * z3).exp(),
                    gh * (cfg.jitter_sigma * z4).exp(),
                )?;
                let anchor_id = index.nearest(grid, &bbox);
                let true_iou = iou(&bbox, &gt.bbox);
                let score = (alpha * true_iou
                    + (1.0 - alpha) * u
                    + (1.0 - alpha) * SCORE_NOISE_SIGMA * zn)
                    .clamp(0.0, 1.0);
                let locscore = (iou(&grid.anchors[anchor_id], &gt.bbox)
                    + cfg.locscore_noise_sigma * z_lc)
                    .clamp(0.0, 1.0);

                let mut class_scores = vec![0.0; cfg.classes];
                class_scores[gt.class_id as usize] = score;
                proposals.push(Proposal::new(
                    image_id,
                    anchor_id as u64,
                    bbox,
                    class_scores,
                    locscore,
                )?);
                provenance.push(Provenance {
                    true_iou_with_gt: true_iou,
                    true_aiou: max_gt_iou(&grid.anchors[anchor_id], &ground_truths),
                    source: ProposalSource::JitteredGt { gt_index },
                });
            }
        }

        // background false positives
        let n_bg = if cfg.background_fp_rate > 0.0 {
            let poisson = Poisson::new(cfg.background_fp_rate)
                .map_err(|e| Error::InvalidConfig(format!("background_fp_rate: {e}")))?;
            poisson.sample(&mut rng) as usize
        } else {
            0
        };
        for _ in 0..n_bg {
            let w = rng.random_range(cfg.box_scale_range.0..=cfg.box_scale_range.1);
            let h = rng.random_range(cfg.box_scale_range.0..=cfg.box_scale_range.1);
            let cx = rng.random_range(w / 2.0..=img_w - w / 2.0);
            let cy = rng.random_range(h / 2.0..=img_h - h / 2.0);
            let class_id = rng.random_range(0..cfg.classes as u32);
            let u: f64 = rng.random_range(0.0..1.0);
            let z_lc: f64 = normal.sample(&mut rng);

            let bbox = BBox::from_cxcywh(cx, cy, w, h)?;
            let anchor_id = index.nearest(grid, &bbox);
            let true_iou = max_gt_iou(&bbox, &ground_truths);
            let true_aiou = max_gt_iou(&grid.anchors[anchor_id], &ground_truths);
            let score = ((1.0 - alpha) * u + alpha * true_iou).clamp(0.0, 1.0);
            let locscore = (true_aiou + cfg.locscore_noise_sigma * z_lc).clamp(0.0, 1.0);

            let mut class_scores = vec![0.0; cfg.classes];
            class_scores[class_id as usize] = score;
            proposals.push(Proposal::new(
                image_id,
                anchor_id as u64,
                bbox,
                class_scores,
                locscore,
            )?);
            provenance.push(Provenance {
                true_iou_with_gt: true_iou,
                true_aiou,
                source: ProposalSource::Background,
            });
        }

        scenes.push(Scene {
            image_id,
            image_size: cfg.image_size,
            ground_truths,
        });
    }

    Ok(SimOutput {
        scenes,
        proposals,
        provenance,
    })
}

// ── Mode comparison ─────────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub label: String,
    pub nms: NmsConfig,
    pub report: EvalReport,
    /// AP difference against the baseline row (the first baseline-mode
    /// config, or the first row when none is baseline).
    pub delta_ap: f64,
}

/// Runs one simulation and evaluates every suppression config on the same
/// proposals, so rows differ only in suppression behavior.
pub fn run_comparison(
    cfg: &SimConfig,
    grid: &AnchorGrid,
    modes: &[NmsConfig],
    eval_cfg: &EvalConfig,
) -> Result<Vec<ComparisonRow>> {
    if modes.is_empty() {
        return Err(Error::InvalidConfig("no nms modes to compare".into()));
    }
    let sim = simulate(cfg, grid)?;
    let mut grouped: Vec<(u64, Vec<&Proposal>)> = Vec::new();
    for p in &sim.proposals {
        match grouped.last_mut() {
            Some((id, group)) if *id == p.image_id => group.push(p),
            _ => grouped.push((p.image_id, vec![p])),
        }
    }
    let mut reports = Vec::with_capacity(modes.len());
    for nms in modes {
        let mut dets = Vec::new();
        for (_, group) in &grouped {
            let owned: Vec<Proposal> = group.iter().map(|&p| p.clone()).collect();
            dets.extend(suppress_image(&owned, nms)?);
        }
        reports.push(evaluate(&dets, &sim.scenes, eval_cfg)?);
    }
    let baseline = modes
        .iter()
        .position(|m| m.mode == NmsMode::Baseline)
        .unwrap_or(0);
    let baseline_ap = reports[baseline].ap;
    Ok(modes
        .iter()
        .zip(reports)
        .map(|(nms, report)| ComparisonRow {
            label: nms.mode.as_str().to_string(),
            nms: *nms,
            delta_ap: report.ap - baseline_ap,
            report,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anchors::{generate_anchors, AnchorLayout, Level};

    fn test_layout() -> AnchorLayout {
        AnchorLayout {
            image_size: (256, 256),
            levels: vec![
                Level {
                    stride: 8,
                    base_size: 16.0,
                },
                Level {
                    stride: 16,
                    base_size: 32.0,
                },
                Level {
                    stride: 32,
                    base_size: 64.0,
                },
                Level {
                    stride: 64,
                    base_size: 128.0,
                },
            ],
            scales: vec![1.0, 1.2599210498948732, 1.5874010519682],
            aspect_ratios: vec![0.5, 1.0, 2.0],
            clip: false,
        }
    }

    fn small_cfg() -> SimConfig {
        SimConfig {
            images: 8,
            ..SimConfig::default()
        }
    }

    #[test]
    fn same_seed_regenerates_identical_output() {
        let grid = generate_anchors(&test_layout()).unwrap();
        let cfg = small_cfg();
        let a = simulate(&cfg, &grid).unwrap();
        let b = simulate(&cfg, &grid).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn different_seeds_differ() {
        let grid = generate_anchors(&test_layout()).unwrap();
        let a = simulate(&small_cfg(), &grid).unwrap();
        let b = simulate(
            &SimConfig {
                seed: 43,
                ..small_cfg()
            },
            &grid,
        )
        .unwrap();
        assert_ne!(a.proposals, b.proposals);
    }

    #[test]
    fn provenance_is_exact_against_recomputation() {
        let grid = generate_anchors(&test_layout()).unwrap();
        let out = simulate(&small_cfg(), &grid).unwrap();
        assert_eq!(out.proposals.len(), out.provenance.len());
        for (p, prov) in out.proposals.iter().zip(&out.provenance) {
            let scene = &out.scenes[(p.image_id - 1) as usize];
            let anchor = &grid.anchors[p.anchor_id as usize];
            assert_eq!(prov.true_aiou, max_gt_iou(anchor, &scene.ground_truths));
            match prov.source {
                ProposalSource::JitteredGt { gt_index } => {
                    let gt = &scene.ground_truths[gt_index];
                    assert_eq!(prov.true_iou_with_gt, iou(&p.bbox, &gt.bbox));
                }
                ProposalSource::Background => {
                    assert_eq!(
                        prov.true_iou_with_gt,
                        max_gt_iou(&p.bbox, &scene.ground_truths)
                    );
                }
            }
        }
    }

    #[test]
    fn ground_truth_boxes_stay_inside_the_image() {
        let grid = generate_anchors(&test_layout()).unwrap();
        let out = simulate(&small_cfg(), &grid).unwrap();
        for scene in &out.scenes {
            assert!(!scene.ground_truths.is_empty());
            for gt in &scene.ground_truths {
                assert!(gt.bbox.x1() >= 0.0 && gt.bbox.y1() >= 0.0);
                assert!(gt.bbox.x2() <= 256.0 && gt.bbox.y2() <= 256.0);
            }
        }
    }

    #[test]
    fn noise_free_aligned_limit_is_exact() {
        let grid = generate_anchors(&test_layout()).unwrap();
        let cfg = SimConfig {
            jitter_sigma: 0.0,
            score_alignment: 1.0,
            locscore_noise_sigma: 0.0,
            background_fp_rate: 0.0,
            images: 6,
            ..SimConfig::default()
        };
        let out = simulate(&cfg, &grid).unwrap();
        assert!(!out.proposals.is_empty());
        for (p, prov) in out.proposals.iter().zip(&out.provenance) {
            let scene = &out.scenes[(p.image_id - 1) as usize];
            let ProposalSource::JitteredGt { gt_index } = prov.source else {
                panic!("no background expected");
            };
            let gt = &scene.ground_truths[gt_index];
            assert_eq!(p.bbox, gt.bbox);
            assert_eq!(p.class_scores[gt.class_id as usize], 1.0);
            assert_eq!(p.locscore, iou(&grid.anchors[p.anchor_id as usize], &gt.bbox));
        }
    }

    #[test]
    fn zero_alignment_decorrelates_score_from_quality() {
        let grid = generate_anchors(&test_layout()).unwrap();
        let cfg = SimConfig {
            score_alignment: 0.0,
            images: 500,
            proposals_per_gt: 8,
            gts_per_image: (3, 5),
            background_fp_rate: 0.0,
            ..SimConfig::default()
        };
        let out = simulate(&cfg, &grid).unwrap();
        assert!(out.proposals.len() >= 10_000);
        let xs: Vec<f64> = out.proposals.iter().map(|p| p.max_class_score()).collect();
        let ys: Vec<f64> = out.provenance.iter().map(|v| v.true_iou_with_gt).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let vx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let vy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
        let r = cov / (vx.sqrt() * vy.sqrt());
        assert!(r.abs() < 0.1, "correlation {r} not near zero");
    }

    #[test]
    fn zero_background_rate_emits_no_background() {
        let grid = generate_anchors(&test_layout()).unwrap();
        let cfg = SimConfig {
            background_fp_rate: 0.0,
            ..small_cfg()
        };
        let out = simulate(&cfg, &grid).unwrap();
        assert!(out
            .provenance
            .iter()
            .all(|p| matches!(p.source, ProposalSource::JitteredGt { .. })));
    }

    #[test]
    fn comparison_shares_one_simulation_across_modes() {
        let grid = generate_anchors(&test_layout()).unwrap();
        let cfg = SimConfig {
            images: 12,
            ..SimConfig::default()
        };
        let modes = vec![
            NmsConfig {
                mode: NmsMode::Baseline,
                ..NmsConfig::default()
            },
            NmsConfig::default(),
        ];
        let rows = run_comparison(&cfg, &grid, &modes, &EvalConfig::default()).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].delta_ap, 0.0);
        assert_eq!(rows[0].label, "baseline");
        assert_eq!(rows[1].label, "laar_cluster");
        assert_eq!(rows[1].delta_ap, rows[1].report.ap - rows[0].report.ap);
    }

    #[test]
    fn single_baseline_comparison_has_zero_delta() {
        let grid = generate_anchors(&test_layout()).unwrap();
        let cfg = SimConfig {
            images: 4,
            ..SimConfig::default()
        };
        let modes = vec![NmsConfig {
            mode: NmsMode::Baseline,
            ..NmsConfig::default()
        }];
        let rows = run_comparison(&cfg, &grid, &modes, &EvalConfig::default()).unwrap();
        assert_eq!(rows[0].delta_ap, 0.0);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(SimConfig {
            classes: 0,
            ..SimConfig::default()
        }
        .validate()
        .is_err());
        assert!(SimConfig {
            score_alignment: 1.5,
            ..SimConfig::default()
        }
        .validate()
        .is_err());
        assert!(SimConfig {
            box_scale_range: (0.0, 96.0),
            ..SimConfig::default()
        }
        .validate()
        .is_err());
        assert!(SimConfig {
            box_scale_range: (24.0, 400.0),
            ..SimConfig::default()
        }
        .validate()
        .is_err());
        assert!(SimConfig {
            gts_per_image: (4, 1),
            ..SimConfig::default()
        }
        .validate()
        .is_err());
    }
}
