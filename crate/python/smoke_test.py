#!/usr/bin/env python3
"""Smoke test for the laar_py extension module.

Builds nothing itself: it locates the compiled cdylib under target/,
copies it next to a temp dir as an importable module, and exercises the
public surface end to end. Run from anywhere:

    cargo build -p laar-py
    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path


def load_module():
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / "release" / "liblaar_py.so",
        root / "target" / "debug" / "liblaar_py.so",
    ]
    lib = next((p for p in candidates if p.exists()), None)
    if lib is None:
        sys.exit("liblaar_py.so not found; run `cargo build -p laar-py` first")
    stage = Path(tempfile.mkdtemp(prefix="laar_py_"))
    shutil.copy2(lib, stage / "laar_py.so")
    sys.path.insert(0, str(stage))
    import laar_py

    return laar_py


def check(name, ok):
    status = "ok" if ok else "FAIL"
    print(f"  {status}: {name}")
    if not ok:
        sys.exit(1)


def main():
    m = load_module()
    print(f"loaded laar_py from {m.__file__}")

    # geometry: overlap fixture with a hand-computable value
    a = m.BBox(0.0, 0.0, 10.0, 10.0)
    b = m.BBox(0.0, 0.0, 10.0, 7.0)
    check("iou of nested boxes is 0.7", m.iou(a, b) == 0.7)
    check("iou is symmetric", m.iou(b, a) == m.iou(a, b))
    check("bbox accessors", a.width == 10.0 and a.area() == 100.0)

    try:
        m.BBox(5.0, 5.0, 1.0, 1.0)
        check("inverted box rejected", False)
    except ValueError:
        check("inverted box rejected", True)

    # anchors: count follows cells x scales x ratios per level
    layout = m.AnchorLayout(image_size=(64, 64), levels=[(16, 32)], scales=[1.0], aspect_ratios=[0.5, 1.0, 2.0])
    grid = m.generate_anchors(layout)
    check("anchor count is 4*4*1*3", len(grid) == 48)

    # anchor targets: a gt sitting exactly on the anchor centered at (24, 24)
    gt = m.GroundTruth(m.BBox(8.0, 8.0, 40.0, 40.0), 0)
    scene = m.Scene(1, (64, 64), [gt])
    aiou, matched, assignment = m.compute_aiou_targets(grid, scene)
    check("one anchor matches its gt perfectly", max(aiou) == 1.0)
    check("a perfect match is assigned positive", assignment[aiou.index(1.0)] == "positive")
    check("target vectors cover every anchor", len(aiou) == len(grid) and len(matched) == len(grid))

    # scoring: cqs and losses
    check("cqs is the score product", m.cqs(0.6, 0.8) == 0.6 * 0.8)
    value, grad = m.locscore_loss(0.7, 1.0, kind="bce")
    check("bce loss positive with negative grad at under-prediction", value > 0.0 and grad < 0.0)
    value, grads = m.smooth_l1_box_loss([1.0, 2.0, 3.0, 4.0], [1.0, 2.0, 3.0, 4.0])
    check("box loss vanishes at the target", value == 0.0 and grads == [0.0, 0.0, 0.0, 0.0])
    check("combined loss sums with unit weights", m.combined_loss(0.3, 0.4, 0.3) == 1.0)

    # suppression: hand-traced two-box cluster
    props = [
        m.Proposal(1, 0, m.BBox(0.0, 0.0, 10.0, 7.0), [0.6], 0.8),
        m.Proposal(1, 1, m.BBox(0.0, 0.0, 10.0, 10.0), [0.9], 0.4),
    ]
    dets = m.laar_nms(props, 0, m.NmsConfig(epsilon=0.5, mode="laar_cluster"))
    check("cluster keeps the better-localized box", len(dets) == 1 and dets[0].bbox.y2 == 7.0)
    check("cluster reports the cluster-max confidence", dets[0].confidence == 0.9)
    check("cqs stays the survivor's own product", dets[0].cqs == 0.6 * 0.8)
    dets = m.laar_nms(props, 0, m.NmsConfig(epsilon=0.5, mode="laar"))
    check("plain mode keeps the survivor's own confidence", dets[0].confidence == 0.6)

    # simulation: identical seeds reproduce identical streams
    cfg = m.SimConfig(seed=11, images=4)
    out1 = m.simulate(cfg, grid)
    out2 = m.simulate(cfg, grid)
    key = lambda o: [(p.image_id, p.anchor_id, p.locscore, tuple(p.class_scores)) for p in o.proposals]
    check("simulation is deterministic per seed", key(out1) == key(out2) and len(out1.proposals) > 0)
    check("provenance covers every proposal", len(out1.provenance) == len(out1.proposals))
    check("image streams decorrelate", m.image_stream_seed(11, 0) != m.image_stream_seed(11, 1))

    # evaluation: exact detections score a perfect ap
    scenes = out1.scenes
    dets = []
    for s in scenes:
        for g in s.ground_truths:
            p = m.Proposal(s.image_id, 0, g.bbox, [0.0] * g.class_id + [0.9], 1.0)
            dets.extend(m.suppress_image([p], m.NmsConfig()))
    report = m.evaluate(dets, scenes, m.EvalConfig(interpolation="all_point"))
    check("exact detections give ap 1.0", report.ap == 1.0 and report.ap50 == 1.0)

    # end-to-end comparison through the same entry point the cli uses
    rows = m.run_comparison(
        m.SimConfig(seed=7, images=8),
        grid,
        [m.NmsConfig(mode="baseline"), m.NmsConfig(mode="laar_cluster")],
        m.EvalConfig(),
    )
    check("comparison row labels", [r[0] for r in rows] == ["baseline", "laar_cluster"])
    check("first row is its own reference", rows[0][2] == 0.0)
    check("deltas are ap differences", math.isclose(rows[1][2], rows[1][1] - rows[0][1], rel_tol=0.0, abs_tol=0.0))

    print("smoke test ok")


if __name__ == "__main__":
    main()
