"""
Channel maps
============

The hue (or saturation, or value) of every pixel is pushed through a map of
[0, 1] onto itself. Here are the built-in families side by side, plus the
CSV table export.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from chromasym.color import F1, F2, F3, F4, F5, export_map_csv, harmonic, map_table, modmul

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

###############################################################################
# Sample each family on a fine grid. ``modmul(n)`` wraps the hue n times.
maps = {"f1": F1, "f2": F2, "f3": F3, "f4": F4, "f5": F5, "modmul(3)": modmul(3)}
fig, axes = plt.subplots(2, 3, figsize=(9, 5.5), sharex=True, sharey=True)
for ax, (name, m) in zip(axes.flat, maps.items()):
    x, y = map_table(m, 4096)
    ax.plot(x, y, lw=0.8)
    ax.set_title(name)
    ax.set_ylim(-0.05, 1.05)
fig.tight_layout()
fig.savefig(OUT / "channel_maps.png", dpi=110)

###############################################################################
# f3 and f4 are mirror images: they always sum to one.
x = np.linspace(0, 1, 11)
print("f3 + f4 on a coarse grid:", np.round(F3(x) + F4(x), 12))
print("f5 never exceeds", F5(np.linspace(0, 1, 100001)).max())

###############################################################################
# A generic harmonic map, useful for saturation or value. Its output is
# clamped into [0, 1].
dim = harmonic(0.2, 0.3, 6.0, 0.0, 0.0, 0.1, 2.0, 0.5)
print("harmonic at 0, 0.5, 1:", dim(np.array([0.0, 0.5, 1.0])))

###############################################################################
# The x,y table used by the ``maps`` command.
export_map_csv(F1, OUT / "f1.csv")
print("wrote", OUT / "f1.csv")
