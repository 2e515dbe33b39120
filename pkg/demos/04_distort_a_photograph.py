"""
Distorting a photograph
=======================

Pixel granularity and coarse subsections applied to a real photograph. In
each render one symmetry is realized: subsections in one half keep their
colors, their partners across the symmetry get a hue map.
"""

from pathlib import Path

import numpy as np

from chromasym.color import F1, F2, F3, F5, IDENTITY_MAPS, ChannelMaps, modmul
from chromasym.engine import apply_distortion, symmetric_assignment, verify_symmetry
from chromasym.io import load_image, save_image
from chromasym.partition import Bubble, Grid, PerPixel, Triangular, build_partition
from chromasym.symmetry import GroupElement

HERE = Path(__file__).parent
OUT = HERE / "output"
OUT.mkdir(exist_ok=True)

src = load_image(HERE.parent / "tests" / "fixtures" / "coffee96.png")
src = np.kron(src, np.ones((4, 4, 1), dtype=np.uint8))  # upscale for viewing
h, w = src.shape[:2]
save_image(src, OUT / "photo_source.png")

###############################################################################
# Four renders. The last one also remaps value, darkening the partner side.
renders = [
    ("rot_triangular_f1", GroupElement.ROT, Triangular(2), ChannelMaps(hue=F1)),
    ("refh_grid_f2", GroupElement.REFH, Grid(3, 3), ChannelMaps(hue=F2)),
    ("refv_bubble_f3", GroupElement.REFV, Bubble(4, seed=11, rmin=0.15, rmax=0.35), ChannelMaps(hue=F3)),
    ("rot_perpixel_mod3_f5", GroupElement.ROT, PerPixel(), ChannelMaps(hue=modmul(3), value=F5)),
]
for name, g, spec, lower in renders:
    part = build_partition(spec, w, h)
    a = symmetric_assignment(part, g, IDENTITY_MAPS, lower)
    out = apply_distortion(src, part, a)
    report = verify_symmetry(src, out, part, a, g, tol=1)
    save_image(out, OUT / f"photo_{name}.png")
    print(f"{name:>22}: {part.n_subsections:>6} subsections, verified={report.ok}")

###############################################################################
# Without the identity on the upper side, both halves change.
part = build_partition(Grid(2, 2), w, h)
a = symmetric_assignment(part, GroupElement.REFV, ChannelMaps(hue=F5), ChannelMaps(hue=F2))
save_image(apply_distortion(src, part, a), OUT / "photo_refv_both_sides.png")
