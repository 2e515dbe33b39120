"""Symmetric subsection labelings of an image.

A layout is generated once for the NW section and mirrored into NE, SW and
SE, so the labeling is symmetric under every element of D2 at once. Global
subsection ids are ``section_index * canonical_count + canonical_id`` with
sections ordered NW, NE, SW, SE.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .symmetry import GroupElement, Section, act_on_section, check_dims

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64 generator; bit-identical to the reference C version."""

    def __init__(self, seed: int) -> None:
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) / float(1 << 53)


# ---------------------------------------------------------------------------
# specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Triangular:
    """Fan of ``triangles`` wedges from the image center over each section."""

    triangles: int = 2

    def __post_init__(self):
        if int(self.triangles) != self.triangles or self.triangles < 1:
            raise ValueError(f"triangles must be a positive integer, got {self.triangles}")


@dataclass(frozen=True)
class Grid:
    rows: int = 2
    cols: int = 2

    def __post_init__(self):
        for name in ("rows", "cols"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v}")


@dataclass(frozen=True)
class Bubble:
    """``count`` disks per section; radii are fractions of the section's short side."""

    count: int = 3
    seed: int = 0
    rmin: float = 0.1
    rmax: float = 0.3

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 1:
            raise ValueError(f"count must be a positive integer, got {self.count}")
        if int(self.seed) != self.seed or not 0 <= self.seed <= _MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not 0.0 < self.rmin <= self.rmax <= 0.5:
            raise ValueError(f"need 0 < rmin <= rmax <= 0.5, got rmin={self.rmin}, rmax={self.rmax}")


@dataclass(frozen=True)
class PerPixel:
    pass


PartitionSpec = Union[Triangular, Grid, Bubble, PerPixel]


@dataclass(frozen=True, eq=False)
class Partition:
    width: int
    height: int
    n_subsections: int
    labels: np.ndarray  # (height, width) int64, read-only

    @property
    def dims(self) -> tuple[int, int]:
        return self.width, self.height

    @property
    def canonical_count(self) -> int:
        return self.n_subsections // 4

    def section_of_label(self, label):
        return np.asarray(label) // self.canonical_count

    def canonical_of_label(self, label):
        return np.asarray(label) % self.canonical_count

    def counts(self) -> np.ndarray:
        """Pixel count of every subsection id."""
        return np.bincount(self.labels.ravel(), minlength=self.n_subsections)

    def partner(self, g: GroupElement, label):
        """Id of the subsection paired with ``label`` under ``g``."""
        c = self.canonical_count
        label = np.asarray(label)
        out = ((label // c) ^ int(g)) * c + label % c
        return int(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# canonical NW layouts
# ---------------------------------------------------------------------------

def _triangular_layout(t: int, sw: int, sh: int) -> np.ndarray:
    # Work in doubled coordinates so pixel centers are integers. The fan apex is
    # the inner corner (2sw, 2sh); the outer boundary runs from (2sw, 0) along the
    # top edge to (0, 0), then down the left edge to (0, 2sh).
    y, x = np.mgrid[0:sh, 0:sw].astype(np.int64)
    dx = 2 * sw - (2 * x + 1)  # > 0
    dy = 2 * sh - (2 * y + 1)  # > 0
    W2, H2 = 2 * sw, 2 * sh
    total = W2 + H2
    hits_top = H2 * dx <= W2 * dy
    # arc length of the ray's boundary hit, as a fraction num/den
    num_top = H2 * dx
    den_top = dy
    num_left = W2 * dx + H2 * dx - W2 * dy
    den_left = dx
    num = np.where(hits_top, num_top, num_left)
    den = np.where(hits_top, den_top, den_left)
    wedge = (num * t) // (den * total)
    return np.minimum(wedge, t - 1)


def _grid_layout(rows: int, cols: int, sw: int, sh: int) -> np.ndarray:
    if rows > sh or cols > sw:
        raise ValueError(f"grid {rows}x{cols} does not fit a {sw}x{sh} section")
    ch, cw = sh // rows, sw // cols
    r = np.minimum(np.arange(sh) // ch, rows - 1)
    c = np.minimum(np.arange(sw) // cw, cols - 1)
    return r[:, None] * cols + c[None, :]


def bubble_disks(spec: Bubble, sw: int, sh: int) -> list[tuple[float, float, float]]:
    """``(cx, cy, radius)`` of each disk in NW section pixel units.

    Per disk the generator yields radius, then center x, then center y.
    Pixel ``(x, y)`` has its center at ``(x + 0.5, y + 0.5)``.
    """
    rng = SplitMix64(int(spec.seed))
    short = min(sw, sh)
    disks = []
    for _ in range(spec.count):
        r = (spec.rmin + rng.next_float() * (spec.rmax - spec.rmin)) * short
        cx = r + rng.next_float() * (sw - 2 * r)
        cy = r + rng.next_float() * (sh - 2 * r)
        disks.append((cx, cy, r))
    return disks


def _bubble_layout(spec: Bubble, sw: int, sh: int) -> np.ndarray:
    if spec.rmax * min(sw, sh) < 0.5:
        raise ValueError(
            f"bubble radii up to {spec.rmax} of a {sw}x{sh} section are below half a pixel"
        )
    y, x = np.mgrid[0:sh, 0:sw]
    px, py = x + 0.5, y + 0.5
    layout = np.zeros((sh, sw), dtype=np.int64)
    # paint in reverse so the lowest disk index wins overlaps
    for k, (cx, cy, r) in reversed(list(enumerate(bubble_disks(spec, sw, sh), start=1))):
        inside = (px - cx) ** 2 + (py - cy) ** 2 <= r * r
        layout[inside] = k
    return layout


def canonical_layout(spec: PartitionSpec, width: int, height: int) -> tuple[np.ndarray, int]:
    """NW-section layout and its number of canonical subsections."""
    check_dims(width, height)
    sw, sh = width // 2, height // 2
    if isinstance(spec, Triangular):
        return _triangular_layout(spec.triangles, sw, sh), spec.triangles
    if isinstance(spec, Grid):
        return _grid_layout(spec.rows, spec.cols, sw, sh), spec.rows * spec.cols
    if isinstance(spec, Bubble):
        return _bubble_layout(spec, sw, sh), spec.count + 1
    if isinstance(spec, PerPixel):
        return np.arange(sw * sh, dtype=np.int64).reshape(sh, sw), sw * sh
    raise TypeError(f"not a partition spec: {spec!r}")


def build_partition(spec: PartitionSpec, width: int, height: int) -> Partition:
    """Label every pixel of a ``width`` x ``height`` image with its subsection."""
    nw, c = canonical_layout(spec, width, height)
    nw = nw.astype(np.int64)
    labels = np.empty((height, width), dtype=np.int64)
    sw, sh = width // 2, height // 2
    labels[:sh, :sw] = nw + Section.NW * c
    labels[:sh, sw:] = nw[:, ::-1] + Section.NE * c
    labels[sh:, :sw] = nw[::-1, :] + Section.SW * c
    labels[sh:, sw:] = nw[::-1, ::-1] + Section.SE * c
    labels.setflags(write=False)
    return Partition(width, height, 4 * c, labels)


# ---------------------------------------------------------------------------
# pairs
# ---------------------------------------------------------------------------

class IdentityElementError(ValueError):
    """The identity element pairs every subsection with itself, so has no pair set."""


@dataclass(frozen=True)
class PairSet:
    """Matching of subsections exchanged by ``element``.

    Each pair is ``(upper, lower)``. ``upper`` lies in NW or NE for the rotation
    and horizontal reflection, and in NW or SW for the vertical reflection.
    """

    element: GroupElement
    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def partner_table(self, n_subsections: int) -> np.ndarray:
        t = np.full(n_subsections, -1, dtype=np.int64)
        for a, b in self.pairs:
            t[a], t[b] = b, a
        return t


def upper_sections(g: GroupElement) -> tuple[Section, Section]:
    g = GroupElement(g)
    if g == GroupElement.E:
        raise IdentityElementError("the identity element has no pair set")
    if g == GroupElement.REFV:
        return Section.NW, Section.SW
    return Section.NW, Section.NE


def pair_set(part: Partition, g: GroupElement) -> PairSet:
    g = GroupElement(g)
    c = part.canonical_count
    pairs = []
    for s in upper_sections(g):
        t = act_on_section(g, s)
        for k in range(c):
            pairs.append((int(s) * c + k, int(t) * c + k))
    return PairSet(g, tuple(pairs))
