"""Render every layout type: label maps and edge maps side by side.

Writes layout_types.png next to this script.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from roomlayout import render_edges, render_seg
from roomlayout.synth import SynthConfig, sample_scene


def scene_of_type(tid, seed=0):
    weights = tuple(1.0 if i == tid - 1 else 0.0 for i in range(11))
    layout, _ = sample_scene(SynthConfig(seed=seed + tid, type_weights=weights))
    return layout


def main():
    fig, axes = plt.subplots(4, 6, figsize=(16, 11))
    for tid in range(1, 12):
        layout = scene_of_type(tid)
        seg = render_seg(layout)
        edges = render_edges(layout)
        ax_seg = axes[(tid - 1) // 3, 2 * ((tid - 1) % 3)]
        ax_edge = axes[(tid - 1) // 3, 2 * ((tid - 1) % 3) + 1]
        ax_seg.imshow(seg, cmap="tab10", vmin=1, vmax=5)
        ax_seg.set_title(f"type {tid}: labels ({len(layout.points)} corners)")
        pts = np.asarray(layout.points)
        ax_seg.plot(pts[:, 0] - 1, pts[:, 1] - 1, "wo", markersize=4)
        ax_edge.imshow(edges, cmap="gray")
        ax_edge.set_title(f"type {tid}: edges")
        ax_seg.set_axis_off()
        ax_edge.set_axis_off()
    axes[3, 4].set_axis_off()
    axes[3, 5].set_axis_off()
    out = pathlib.Path(__file__).with_name("layout_types.png")
    fig.tight_layout()
    fig.savefig(out, dpi=110)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
