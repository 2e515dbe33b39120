"""
Simple color symmetry
=====================

Flat-colored rectangles on which a symmetry of the rectangle acts as a
permutation of four colors: orange, blue, yellow, purple. On the first one
the half turn swaps orange and blue and leaves yellow and purple alone.
"""

from pathlib import Path

from chromasym.engine import FIGURE1_PALETTE, color_permutation, make_demo, perm_from_cycles
from chromasym.io import save_image
from chromasym.partition import Bubble, Grid, Triangular
from chromasym.symmetry import GroupElement

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

names = tuple(FIGURE1_PALETTE)
palette = list(FIGURE1_PALETTE.values())
name_of = {v: k for k, v in FIGURE1_PALETTE.items()}


def show(img, g):
    r = color_permutation(img, g)
    top = " ".join(name_of[c] for c in r.top)
    bottom = " ".join(name_of[c] for c in r.bottom)
    print(f"  {g.label:>4}: {top} -> {bottom}   color symmetry: {r.ok}")


###############################################################################
# Triangular subsections, 8 in total. Only the rotation is prescribed.
img = make_demo(Triangular(2), palette, {GroupElement.ROT: perm_from_cycles(names, "ob")}, 400, 300)
save_image(img, OUT / "simple_triangular.png")
print("triangular")
show(img, GroupElement.ROT)

###############################################################################
# A chessboard: the horizontal mirror keeps yellow and purple, the rotation
# moves every color. The two prescriptions commute, so the vertical mirror
# is forced as well.
perms = {
    GroupElement.REFH: perm_from_cycles(names, "ob"),
    GroupElement.ROT: perm_from_cycles(names, "ob", "yp"),
}
img = make_demo(Grid(2, 2), palette, perms, 400, 300)
save_image(img, OUT / "simple_grid.png")
print("grid")
for g in (GroupElement.REFH, GroupElement.ROT, GroupElement.REFV):
    show(img, g)

###############################################################################
# Bubbles with a fixed seed: the vertical mirror keeps two colors.
img = make_demo(
    Bubble(3, seed=7, rmin=0.15, rmax=0.3),
    palette,
    {GroupElement.REFV: perm_from_cycles(names, "yp")},
    400,
    300,
)
save_image(img, OUT / "simple_bubble.png")
print("bubble")
show(img, GroupElement.REFV)
