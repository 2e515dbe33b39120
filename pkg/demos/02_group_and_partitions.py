"""
The rectangle group and its subsections
=======================================

Four symmetries fix a rectangle: the identity, a half turn and the two
mirrors. A partition lays out subsections in the north-west quarter and
copies them mirrored into the other three, so every symmetry sends a
subsection onto another subsection of the same shape.
"""

from pathlib import Path

from chromasym.io import save_partition_png
from chromasym.partition import Bubble, Grid, PerPixel, Triangular, build_partition, pair_set
from chromasym.symmetry import ELEMENTS, GroupElement, Section, compose, map_coord

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

###############################################################################
# Composition table: every element squares to the identity, and the two
# mirrors compose to the half turn.
print("      " + "".join(f"{b.label:>6}" for b in ELEMENTS))
for a in ELEMENTS:
    print(f"{a.label:>6}" + "".join(f"{compose(a, b).label:>6}" for b in ELEMENTS))

###############################################################################
# Acting on pixels of an 8x6 image:
for g in ELEMENTS:
    print(f"{g.label:>5}: (0, 0) -> {map_coord(g, 0, 0, 8, 6)}")

###############################################################################
# Partitions at different granularities. Each is written as a label image.
specs = {
    "triangular": Triangular(2),
    "triangular7": Triangular(7),
    "grid": Grid(3, 3),
    "bubble": Bubble(5, seed=2024, rmin=0.1, rmax=0.35),
    "perpixel": PerPixel(),
}
for name, spec in specs.items():
    part = build_partition(spec, 240, 160)
    save_partition_png(part, OUT / f"partition_{name}.png")
    print(f"{name:>12}: {part.n_subsections} subsections")

###############################################################################
# Pairs exchanged by the half turn on a single-cell grid: each quarter is
# paired with the diagonally opposite one.
part = build_partition(Grid(1, 1), 4, 4)
for a, b in pair_set(part, GroupElement.ROT):
    print(Section(a).name, "<->", Section(b).name)
