"""File formats: binary PGM (P5, maxval 255) maps and JSON layout/VP files.

Heat maps are stored as round(255 * v); segmentation maps store the raw
labels 1..5.  Layout JSON: {"type": int, "points": [[x, y], ...],
"frame": [w, h]}; a pool file is a JSON array of layout objects.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import Layout, VanishingTriple, make_layout, scale_layout, validate
from .errors import ParseError
from .hypgen import LayoutPool, make_pool


def _read_pgm_raw(path) -> np.ndarray:
    data = Path(path).read_bytes()
    if not data.startswith(b"P5"):
        raise ParseError(f"{path}: not a binary PGM (P5) file")
    # header tokens: magic, width, height, maxval; '#' starts a comment
    tokens = []
    i = 2
    while len(tokens) < 3 and i < len(data):
        c = data[i : i + 1]
        if c == b"#":
            while i < len(data) and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j : j + 1].isspace():
                j += 1
            tokens.append(data[i:j])
            i = j
    if len(tokens) < 3:
        raise ParseError(f"{path}: truncated PGM header")
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError as exc:
        raise ParseError(f"{path}: bad PGM header") from exc
    if maxval != 255:
        raise ParseError(f"{path}: unsupported maxval {maxval} (must be 255)")
    i += 1  # single whitespace byte after maxval
    raster = data[i : i + width * height]
    if len(raster) != width * height:
        raise ParseError(f"{path}: PGM raster size mismatch")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width)


def _write_pgm_raw(path, arr: np.ndarray):
    arr = np.asarray(arr, dtype=np.uint8)
    header = f"P5\n{arr.shape[1]} {arr.shape[0]}\n255\n".encode("ascii")
    Path(path).write_bytes(header + arr.tobytes())


def read_heatmap(path) -> np.ndarray:
    """Heat map from PGM, scaled to [0, 1]."""
    return _read_pgm_raw(path).astype(float) / 255.0


def write_heatmap(path, values: np.ndarray):
    arr = np.asarray(values, dtype=float)
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ValueError("heat map values must lie in [0, 1]")
    _write_pgm_raw(path, np.rint(arr * 255.0).astype(np.uint8))


def read_segmap(path) -> np.ndarray:
    arr = _read_pgm_raw(path)
    if arr.min() < 1 or arr.max() > 5:
        raise ParseError(f"{path}: segmentation values must lie in 1..5")
    return arr


def write_segmap(path, labels: np.ndarray):
    arr = np.asarray(labels)
    if arr.min() < 1 or arr.max() > 5:
        raise ValueError("segmentation labels must lie in 1..5")
    _write_pgm_raw(path, arr.astype(np.uint8))


def read_semantic_stack(path_or_prefix) -> np.ndarray:
    """Five belief maps as a (5, w, w) array.

    Accepts either a prefix expanded to <prefix>1.pgm .. <prefix>5.pgm or a
    single concatenated PGM of height 5w.
    """
    p = Path(path_or_prefix)
    if p.is_file():
        tall = read_heatmap(p)
        h, w = tall.shape
        if h != 5 * w:
            raise ParseError(f"{p}: concatenated stack must have height 5*width")
        return tall.reshape(5, w, w)
    channels = []
    for i in range(1, 6):
        cp = Path(f"{path_or_prefix}{i}.pgm")
        if not cp.is_file():
            raise ParseError(f"semantic stack channel missing: {cp}")
        channels.append(read_heatmap(cp))
    stack = np.stack(channels)
    if stack.shape[1] != stack.shape[2]:
        raise ParseError("semantic stack maps must be square")
    return stack


def write_semantic_stack(path, stack: np.ndarray):
    """Write a (5, w, w) stack as one concatenated PGM of height 5w."""
    arr = np.asarray(stack, dtype=float)
    if arr.ndim != 3 or arr.shape[0] != 5:
        raise ValueError("stack must have shape (5, h, w)")
    write_heatmap(path, arr.reshape(5 * arr.shape[1], arr.shape[2]))


def _layout_from_obj(obj, type_base=1) -> Layout:
    try:
        tid = int(obj["type"]) + (1 - type_base)
        points = [(float(p[0]), float(p[1])) for p in obj["points"]]
        frame = (int(obj["frame"][0]), int(obj["frame"][1]))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed layout object: {obj!r}") from exc
    return make_layout(tid, points, frame)


def layout_to_obj(layout: Layout) -> dict:
    return {
        "type": layout.type_id,
        "points": [[x, y] for x, y in layout.points],
        "frame": [layout.frame[0], layout.frame[1]],
    }


def read_layout(path, type_base=1) -> Layout:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return _layout_from_obj(obj, type_base)


def write_layout(path, layout: Layout):
    Path(path).write_text(json.dumps(layout_to_obj(layout)) + "\n")


def read_pool(path, type_base=1) -> LayoutPool:
    try:
        items = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(items, list):
        raise ParseError(f"{path}: pool file must hold a JSON array")
    try:
        return make_pool([_layout_from_obj(o, type_base) for o in items])
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def write_pool(path, pool: LayoutPool):
    Path(path).write_text(json.dumps([layout_to_obj(e) for e in pool.entries]) + "\n")


def ingest_pool(path, frame_w=224, type_base=1) -> LayoutPool:
    """Read external layout annotations and rescale everything to a square frame."""
    try:
        items = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(items, list):
        raise ParseError(f"{path}: pool file must hold a JSON array")
    scaled = []
    for o in items:
        layout = scale_layout(_layout_from_obj(o, type_base), frame_w, frame_w)
        if not validate(layout):
            raise ParseError(f"{path}: entry does not form a valid layout: {o!r}")
        scaled.append(layout)
    return make_pool(scaled)


def read_vps(path) -> VanishingTriple:
    try:
        obj = json.loads(Path(path).read_text())
        return VanishingTriple(
            (float(obj["vp1"][0]), float(obj["vp1"][1])),
            (float(obj["vp2"][0]), float(obj["vp2"][1])),
            (float(obj["vp3"][0]), float(obj["vp3"][1])),
        )
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def write_vps(path, vps: VanishingTriple):
    obj = {
        "vp1": [vps.vp1[0], vps.vp1[1]],
        "vp2": [vps.vp2[0], vps.vp2[1]],
        "vp3": [vps.vp3[0], vps.vp3[1]],
    }
    Path(path).write_text(json.dumps(obj) + "\n")
