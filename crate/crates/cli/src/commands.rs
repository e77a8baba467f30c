//! The five pipeline commands. Machine output goes to files under the
//! output directory; stdout carries a short human summary.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use laar_core::dataio::{
    load_annotations, load_detections, load_proposals, save_anchors, save_annotations,
    save_comparison_csv, save_detections, save_proposals, save_report_csv, save_report_json,
};
use laar_core::{
    evaluate, generate_anchors, run_comparison, simulate, suppress_image, EvalReport, NmsConfig,
    Proposal, Result,
};

use crate::config::RunConfig;

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.4}")).unwrap_or_else(|| "n/a".into())
}

pub fn cmd_anchors(cfg: &RunConfig, out: &Path) -> Result<()> {
    let grid = generate_anchors(&cfg.layout)?;
    let path = out.join("anchors.json");
    save_anchors(&path, &grid, Some(&cfg.metadata(false)))?;
    println!(
        "wrote {} anchors ({} levels, {} scales x {} ratios) to {}",
        grid.anchors.len(),
        cfg.layout.levels.len(),
        cfg.layout.scales.len(),
        cfg.layout.aspect_ratios.len(),
        path.display()
    );
    Ok(())
}

pub fn cmd_simulate(cfg: &RunConfig, out: &Path) -> Result<()> {
    let grid = generate_anchors(&cfg.layout)?;
    let sim = simulate(&cfg.simulation, &grid)?;
    let meta = cfg.metadata(true);
    let ann_path = out.join("annotations.json");
    let prop_path = out.join("proposals.json");
    save_annotations(&ann_path, &sim.scenes, Some(&meta))?;
    save_proposals(&prop_path, &sim.proposals, Some(&meta))?;
    let boxes: usize = sim.scenes.iter().map(|s| s.ground_truths.len()).sum();
    println!(
        "seed {}: wrote {} scenes ({} boxes) to {} and {} proposals to {}",
        cfg.simulation.seed,
        sim.scenes.len(),
        boxes,
        ann_path.display(),
        sim.proposals.len(),
        prop_path.display()
    );
    Ok(())
}

pub fn cmd_nms(cfg: &RunConfig, out: &Path, proposals_path: &Path) -> Result<()> {
    let proposals = load_proposals(proposals_path)?;
    let total = proposals.len();
    let mut by_image: BTreeMap<u64, Vec<Proposal>> = BTreeMap::new();
    for p in proposals {
        by_image.entry(p.image_id).or_default().push(p);
    }
    let mut detections = Vec::new();
    for group in by_image.values() {
        detections.extend(suppress_image(group, &cfg.nms)?);
    }
    let path = out.join("detections.json");
    save_detections(&path, &detections, Some(&cfg.metadata(false)))?;
    println!(
        "mode {}: kept {} detections from {} proposals across {} images, wrote {}",
        cfg.nms.mode.as_str(),
        detections.len(),
        total,
        by_image.len(),
        path.display()
    );
    Ok(())
}

fn print_report(report: &EvalReport) {
    println!(
        "ap {:.4}  ap50 {}  ap75 {}  small {}  medium {}  large {}",
        report.ap,
        fmt_opt(report.ap50),
        fmt_opt(report.ap75),
        fmt_opt(report.ap_small),
        fmt_opt(report.ap_medium),
        fmt_opt(report.ap_large),
    );
}

pub fn cmd_eval(
    cfg: &RunConfig,
    out: &Path,
    detections_path: &Path,
    annotations_path: &Path,
) -> Result<()> {
    let detections = load_detections(detections_path)?;
    let scenes = load_annotations(annotations_path)?;
    let report = evaluate(&detections, &scenes, &cfg.eval)?;
    let meta = cfg.metadata(false);
    let json_path = out.join("report.json");
    save_report_json(&json_path, &report, Some(&meta))?;
    save_report_csv(&out.join("report.csv"), &report, Some(&meta))?;
    print_report(&report);
    println!("wrote {} and report.csv", json_path.display());
    Ok(())
}

pub fn cmd_compare(cfg: &RunConfig, out: &Path) -> Result<()> {
    let grid = generate_anchors(&cfg.layout)?;
    let mode_cfgs: Vec<NmsConfig> = cfg
        .compare
        .modes
        .iter()
        .map(|&mode| NmsConfig { mode, ..cfg.nms })
        .collect();
    let rows = run_comparison(&cfg.simulation, &grid, &mode_cfgs, &cfg.eval)?;
    let path = out.join("comparison.csv");
    save_comparison_csv(&path, &rows, Some(&cfg.metadata(true)))?;
    for row in &rows {
        println!(
            "{:<14} ap {:.4}  ap50 {}  delta_ap {:+.4}",
            row.label,
            row.report.ap,
            fmt_opt(row.report.ap50),
            row.delta_ap
        );
    }
    println!("wrote {}", path.display());
    Ok(())
}

/// Default location of an input produced by an earlier stage in the same
/// output directory.
pub fn default_input(out: &Path, name: &str, explicit: Option<PathBuf>) -> PathBuf {
    explicit.unwrap_or_else(|| out.join(name))
}
