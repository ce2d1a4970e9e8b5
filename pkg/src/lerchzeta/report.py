"""Figure rendering for grid exports.

Renders |f| and Re f heatmaps over the (a, c) rectangle next to the
delimited data.  Uses the Agg backend; figures carry no timestamps so
repeated runs produce stable files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_grid_figure(rows, fn_name: str, s_label: str, out_path: str):
    """Render heatmaps from grid rows [(a, c, re, im, err), ...].

    Rows are ordered c outer ascending, a inner ascending.
    """
    a_vals = sorted({float(r[0]) for r in rows})
    c_vals = sorted({float(r[1]) for r in rows})
    na, nc = len(a_vals), len(c_vals)
    z = np.array([complex(float(r[2]), float(r[3])) for r in rows]).reshape(nc, na)

    fig, axes = plt.subplots(1, 2, figsize=(10, 4.2), constrained_layout=True)
    extent = (a_vals[0], a_vals[-1], c_vals[0], c_vals[-1])
    mags = np.abs(z)
    im0 = axes[0].imshow(mags, origin="lower", extent=extent, aspect="auto",
                         cmap="viridis")
    axes[0].set_title(f"|{fn_name}|, s = {s_label}")
    fig.colorbar(im0, ax=axes[0])
    im1 = axes[1].imshow(z.real, origin="lower", extent=extent, aspect="auto",
                         cmap="RdBu_r")
    axes[1].set_title(f"Re {fn_name}, s = {s_label}")
    fig.colorbar(im1, ax=axes[1])
    for ax in axes:
        ax.set_xlabel("a")
        ax.set_ylabel("c")
    fig.savefig(out_path, dpi=130, metadata={"Software": "lerchzeta"})
    plt.close(fig)
    return out_path
