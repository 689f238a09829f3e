"""Command-line front end.

Subcommands: estimate, refine, score, eval, synth, pool-build.  Every
subcommand accepts --show-config to print its numeric defaults as JSON.
Errors exit non-zero with a one-line diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, replace
from pathlib import Path

import numpy as np

from . import files
from .core import scale_layout
from .errors import RoomLayoutError
from .hypgen import SamplingConfig
from .metrics import EvalRecord
from .pipeline import (
    PipelineConfig,
    estimate_layout,
    evaluate_pair,
    resize_heatmap,
    summarize,
)
from .refine import refine_layout
from .render import RenderConfig, render_edges
from .score import ScoreConfig, score_layout
from .synth import SynthConfig, build_pool, corrupt_maps, render_scene, sample_scene


def _add_score_args(p):
    p.add_argument("--lambda", dest="edge_weight", type=float, default=0.5,
                   help="weight of the edge term in the combined score")
    p.add_argument("--full-matching", action="store_true",
                   help="match all five labels instead of walls only")


def _add_render_args(p):
    p.add_argument("--frame-w", type=int, default=224, help="square working size")
    p.add_argument("--line-width", type=int, default=6, help="edge stroke width in px")
    p.add_argument("--sigma", type=float, default=6.0, help="edge blur sigma")


def _add_sampling_args(p):
    p.add_argument("--H", dest="sectors", type=int, default=30,
                   help="number of angular sectors per vanishing point")
    p.add_argument("--D", dest="min_contrast", type=float, default=0.03,
                   help="sector selection contrast threshold")
    p.add_argument("--N", dest="rays_per_sector", type=int, default=3,
                   help="rays sampled per selected sector")
    p.add_argument("--K1", dest="max_from_sampling", type=int, default=2,
                   help="hypotheses kept from ray sampling")
    p.add_argument("--K2", dest="max_from_pool", type=int, default=2,
                   help="hypotheses kept from the pool")


def _configs(args) -> PipelineConfig:
    render = RenderConfig(
        line_width_px=getattr(args, "line_width", 6),
        blur_sigma=getattr(args, "sigma", 6.0),
        frame_w=getattr(args, "frame_w", 224),
    )
    score = ScoreConfig(
        edge_weight=getattr(args, "edge_weight", 0.5),
        wall_only_matching=not getattr(args, "full_matching", False),
    )
    sampling = SamplingConfig(
        sectors=getattr(args, "sectors", 30),
        min_contrast=getattr(args, "min_contrast", 0.03),
        rays_per_sector=getattr(args, "rays_per_sector", 3),
        max_from_sampling=getattr(args, "max_from_sampling", 2),
        max_from_pool=getattr(args, "max_from_pool", 2),
    )
    return PipelineConfig(
        render=render,
        score=score,
        sampling=sampling,
        use_sampling=not getattr(args, "no_sampling", False),
        use_pool=not getattr(args, "no_pool", False),
    )


def _show_config(args):
    cfg = _configs(args)
    print(json.dumps({
        "render": asdict(cfg.render),
        "score": asdict(cfg.score),
        "sampling": asdict(cfg.sampling),
        "use_sampling": cfg.use_sampling,
        "use_pool": cfg.use_pool,
    }, indent=2))


def _atomic_write(path: Path, writer):
    tmp = path.with_name(path.name + ".tmp")
    writer(tmp)
    os.replace(tmp, path)


def _load_semantic(args):
    if args.seg:
        return files.read_segmap(args.seg)
    if args.stack:
        return files.read_semantic_stack(args.stack)
    raise RoomLayoutError("one of --seg or --stack is required")


def _estimate_one(edge_path, semantic, vps_path, pool, cfg, out_path, overlay_path, gt_path):
    edges = files.read_heatmap(edge_path)
    vps = files.read_vps(vps_path) if vps_path else None
    if cfg.use_sampling and vps is None:
        raise RoomLayoutError("--vps is required unless --no-sampling is given")
    result = estimate_layout(edges, semantic, vps, pool, cfg)
    _atomic_write(Path(out_path), lambda p: files.write_layout(p, result.layout))
    if overlay_path:
        rendered = render_edges(result.working.layout, cfg.render)
        h, w = edges.shape
        if h != w:
            side = max(h, w)
            canvas = np.zeros((side, side))
            canvas[:h, :w] = edges  # keep original content, pad square
            base = canvas
        else:
            base = edges
        scaled = resize_heatmap(rendered, base.shape[0])[: h, : w] if h == w else None
        overlay = np.maximum(edges, scaled) if scaled is not None else rendered
        _atomic_write(Path(overlay_path), lambda p: files.write_heatmap(p, overlay))
    record = None
    if gt_path:
        gt = files.read_layout(gt_path)
        record = evaluate_pair(result.layout, gt, cfg.score, cfg.render)
    return result, record


def cmd_estimate(args):
    cfg = _configs(args)
    pool = files.read_pool(args.pool) if args.pool else None
    if cfg.use_pool and pool is None and not cfg.use_sampling:
        raise RoomLayoutError("--pool is required when sampling is disabled")

    if args.scene_dir:
        return _estimate_batch(args, cfg, pool)

    if not args.edge or not args.out:
        raise RoomLayoutError("--edge and -o/--out are required")
    semantic = _load_semantic(args)
    result, record = _estimate_one(
        args.edge, semantic, args.vps, pool, cfg, args.out, args.overlay, args.gt
    )
    info = {
        "type": result.layout.type_id,
        "score": result.working.score,
        "seg_term": result.working.seg_term,
        "edge_term": result.working.edge_term,
        "hypotheses": result.hypothesis_count,
    }
    if record is not None:
        info["eval"] = asdict(record)
    print(json.dumps(info))
    return 0


def _scene_task(task):
    scene, cfg, pool_path, names, out_dir = task
    pool = files.read_pool(pool_path) if pool_path else None
    edges = files.read_heatmap(scene / names["edge"])
    seg = files.read_segmap(scene / names["seg"])
    vps_file = scene / "vps.json"
    vps = files.read_vps(vps_file) if vps_file.exists() else None
    result = estimate_layout(edges, seg, vps, pool, cfg)
    out = Path(out_dir) / f"{scene.name}.json"
    _atomic_write(out, lambda p: files.write_layout(p, result.layout))
    return scene.name


def _estimate_batch(args, cfg, pool):
    scene_root = Path(args.scene_dir)
    scenes = sorted(d for d in scene_root.iterdir() if d.is_dir())
    if not scenes:
        raise RoomLayoutError(f"no scene directories under {scene_root}")
    if not args.out_dir:
        raise RoomLayoutError("--out-dir is required with --scene-dir")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = {"edge": args.edge_name, "seg": args.seg_name}
    tasks = [(s, cfg, args.pool, names, str(out_dir)) for s in scenes]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            for name in ex.map(_scene_task, tasks):
                print(name)
    else:
        for t in tasks:
            print(_scene_task(t))
    return 0


def cmd_refine(args):
    cfg = _configs(args)
    layout = files.read_layout(args.layout)
    seg = files.read_segmap(args.seg)
    edges = files.read_heatmap(args.edge)
    refined = refine_layout(layout, seg, edges, cfg.score, cfg.render)
    _atomic_write(Path(args.out), lambda p: files.write_layout(p, refined.layout))
    print(json.dumps({"score": refined.score, "seg_term": refined.seg_term,
                      "edge_term": refined.edge_term}))
    return 0


def cmd_score(args):
    cfg = _configs(args)
    layout = files.read_layout(args.layout)
    seg = files.read_segmap(args.seg)
    edges = files.read_heatmap(args.edge)
    scored = score_layout(layout, seg, edges, cfg.score, cfg.render)
    print(json.dumps({"score": scored.score, "seg_term": scored.seg_term,
                      "edge_term": scored.edge_term}))
    return 0


def _find_layout(root: Path, stem: str, basename: str):
    flat = root / f"{stem}.json"
    if flat.exists():
        return flat
    nested = root / stem / f"{basename}.json"
    if nested.exists():
        return nested
    return None


def cmd_eval(args):
    cfg = _configs(args)
    gt_root = Path(args.gt)
    pred_root = Path(args.pred)
    stems = sorted(
        {p.stem for p in gt_root.glob("*.json")}
        | {d.name for d in gt_root.iterdir() if d.is_dir() and (d / "gt.json").exists()}
    )
    if not stems:
        raise RoomLayoutError(f"no ground-truth layouts under {gt_root}")
    missing = [
        s for s in stems
        if _find_layout(pred_root, s, "pred") is None or _find_layout(gt_root, s, "gt") is None
    ]
    if missing:
        raise RoomLayoutError("missing prediction/ground-truth pairs: " + ", ".join(missing))

    rows = []
    records = []
    for s in stems:
        pred = files.read_layout(_find_layout(pred_root, s, "pred"))
        gt = files.read_layout(_find_layout(gt_root, s, "gt"))
        rec = evaluate_pair(pred, gt, cfg.score, cfg.render)
        records.append(rec)
        rows.append([s, rec.pixel_error_pct, rec.corner_error_pct,
                     int(rec.type_correct), rec.edge_error, rec.semantic_error_pct])

    means = summarize(records)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(["id", "pixel_error", "corner_error", "type_correct",
                         "edge_error", "semantic_error"])
        writer.writerows(rows)
        writer.writerow(["mean", means["pixel_error_pct"], means["corner_error_pct"],
                         means["type_accuracy_pct"] / 100.0, means["edge_error"],
                         means["semantic_error_pct"]])
    finally:
        if args.out:
            out.close()
    return 0


def _synth_scene_task(task):
    out_root, idx, cfg_kwargs = task
    cfg = SynthConfig(**cfg_kwargs)
    layout, vps = sample_scene(cfg)
    edges, seg = render_scene(layout)
    noisy_edges, noisy_seg = corrupt_maps(edges, seg, cfg)
    d = Path(out_root) / f"{idx:04d}"
    d.mkdir(parents=True, exist_ok=True)
    files.write_layout(d / "gt.json", layout)
    files.write_vps(d / "vps.json", vps)
    files.write_heatmap(d / "edge.pgm", edges)
    files.write_segmap(d / "seg.pgm", seg)
    files.write_heatmap(d / "edge_noisy.pgm", noisy_edges)
    files.write_segmap(d / "seg_noisy.pgm", noisy_seg)
    return d.name


def cmd_synth(args):
    tasks = []
    for i in range(args.count):
        kwargs = dict(
            seed=args.seed + i,
            frame_w=args.frame_w,
            noise_sigma=args.noise,
            occluder_count=args.occluders,
            occluder_max_frac=args.occluder_frac,
            edge_dropout_frac=args.dropout,
        )
        tasks.append((args.out, i, kwargs))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            for name in ex.map(_synth_scene_task, tasks):
                print(name)
    else:
        for t in tasks:
            print(_synth_scene_task(t))
    return 0


def cmd_pool_build(args):
    if args.ingest:
        pool = files.ingest_pool(args.ingest, frame_w=args.frame_w, type_base=args.type_base)
    else:
        pool = build_pool(args.count, SynthConfig(seed=args.seed, frame_w=args.frame_w))
    _atomic_write(Path(args.out), lambda p: files.write_pool(p, pool))
    print(f"{len(pool)} layouts -> {args.out}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="roomlayout",
                                     description="Indoor layout estimation pipeline")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate a layout from edge/semantic maps")
    p.add_argument("--edge", help="edge heat map (PGM)")
    p.add_argument("--seg", help="segmentation map (PGM, labels 1..5)")
    p.add_argument("--stack", help="semantic stack: prefix of <prefix>1..5.pgm or one tall PGM")
    p.add_argument("--vps", help="vanishing points JSON")
    p.add_argument("--pool", help="layout pool JSON")
    p.add_argument("--no-sampling", action="store_true", help="disable ray sampling")
    p.add_argument("--no-pool", action="store_true", help="disable the layout pool")
    p.add_argument("-o", "--out", help="output layout JSON")
    p.add_argument("--overlay", help="write an overlay edge render (PGM)")
    p.add_argument("--gt", help="ground-truth layout JSON for immediate evaluation")
    p.add_argument("--scene-dir", help="batch mode: directory of synth scene folders")
    p.add_argument("--out-dir", help="batch mode: output directory for <id>.json")
    p.add_argument("--edge-name", default="edge.pgm", help="edge file name in scene dirs")
    p.add_argument("--seg-name", default="seg.pgm", help="seg file name in scene dirs")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers in batch mode")
    _add_render_args(p)
    _add_score_args(p)
    _add_sampling_args(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("refine", help="refine an existing layout against maps")
    p.add_argument("--layout", required=True)
    p.add_argument("--seg", required=True)
    p.add_argument("--edge", required=True)
    p.add_argument("-o", "--out", required=True)
    _add_render_args(p)
    _add_score_args(p)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("score", help="score a layout against maps")
    p.add_argument("--layout", required=True)
    p.add_argument("--seg", required=True)
    p.add_argument("--edge", required=True)
    _add_render_args(p)
    _add_score_args(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("eval", help="evaluate predicted layouts against ground truth")
    p.add_argument("--pred", required=True, help="directory of <id>.json predictions")
    p.add_argument("--gt", required=True, help="directory of <id>.json or <id>/gt.json")
    p.add_argument("-o", "--out", help="CSV output path (stdout when omitted)")
    _add_render_args(p)
    _add_score_args(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("synth", help="generate synthetic scenes with ground truth")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--frame-w", type=int, default=224)
    p.add_argument("--noise", type=float, default=0.05, help="edge noise sigma")
    p.add_argument("--occluders", type=int, default=3)
    p.add_argument("--occluder-frac", type=float, default=0.2)
    p.add_argument("--dropout", type=float, default=0.1, help="edge pixel dropout fraction")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("pool-build", help="build or ingest a layout pool")
    p.add_argument("--count", type=int, default=4000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ingest", help="external annotation JSON to rescale into the pool")
    p.add_argument("--type-base", type=int, default=1, choices=(0, 1),
                   help="type-id base used by the annotation file")
    p.add_argument("--frame-w", type=int, default=224)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_pool_build)

    for sp in sub.choices.values():
        sp.add_argument("--show-config", action="store_true",
                        help="print numeric defaults as JSON and exit")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "show_config", False):
        _show_config(args)
        return 0
    try:
        return args.func(args)
    except (RoomLayoutError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: missing file: {exc.filename}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
