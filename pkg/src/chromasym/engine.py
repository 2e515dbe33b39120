"""Apply symmetry-consistent color distortions and check the result.

An image is an ``(H, W, 3)`` or ``(H, W, 4)`` uint8 array. Each subsection of
a :class:`~chromasym.partition.Partition` carries a set of HSV channel maps;
rendering converts every pixel to HSV, applies its subsection's maps and
converts back. Alpha is copied through untouched.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

import numpy as np

from .color import IDENTITY_MAPS, ChannelMaps, hsv_to_rgb_array, rgb_to_hsv_array
from .partition import (
    Partition,
    PartitionSpec,
    build_partition,
    pair_set,
)
from .symmetry import GroupElement, compose, transform_image

THREADS_ENV = "CHROMASYM_THREADS"


# ---------------------------------------------------------------------------
# assignments
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Assignment:
    """Channel maps for every subsection id of a partition.

    Stored as a table of distinct :class:`ChannelMaps` plus, per subsection,
    an index into that table, so pixel-level partitions stay cheap.
    """

    table: tuple[ChannelMaps, ...]
    index: np.ndarray
    element: Optional[GroupElement] = None

    def __post_init__(self):
        idx = np.asarray(self.index, dtype=np.int64)
        if idx.ndim != 1:
            raise ValueError("assignment index must be one-dimensional")
        if idx.size and (idx.min() < 0 or idx.max() >= len(self.table)):
            raise ValueError("assignment index refers outside its map table")
        idx.setflags(write=False)
        object.__setattr__(self, "index", idx)

    @classmethod
    def uniform(cls, n_subsections: int, maps: ChannelMaps = IDENTITY_MAPS, element=None) -> "Assignment":
        return cls((maps,), np.zeros(n_subsections, dtype=np.int64), element)

    @classmethod
    def from_maps(cls, maps: Sequence[ChannelMaps], element=None) -> "Assignment":
        table: dict[ChannelMaps, int] = {}
        idx = [table.setdefault(m, len(table)) for m in maps]
        return cls(tuple(table), np.array(idx, dtype=np.int64), element)

    @classmethod
    def from_dict(
        cls,
        n_subsections: int,
        maps: Mapping[int, ChannelMaps],
        default: ChannelMaps = IDENTITY_MAPS,
        element=None,
    ) -> "Assignment":
        """Assignment from sparse ``{subsection id: maps}``; ids not listed get ``default``."""
        bad = [k for k in maps if not 0 <= int(k) < n_subsections]
        if bad:
            raise ValueError(f"subsection ids {sorted(bad)} outside [0, {n_subsections - 1}]")
        full = [default] * n_subsections
        for k, m in maps.items():
            full[int(k)] = m
        return cls.from_maps(full, element)

    @property
    def n_subsections(self) -> int:
        return int(self.index.size)

    def __getitem__(self, label: int) -> ChannelMaps:
        return self.table[self.index[label]]

    def __len__(self) -> int:
        return self.n_subsections

    def updated(self, labels: Iterable[int], maps: ChannelMaps) -> "Assignment":
        """Copy with ``maps`` assigned to every id in ``labels``."""
        full = [self.table[i] for i in self.index]
        for k in labels:
            if not 0 <= int(k) < self.n_subsections:
                raise ValueError(f"subsection id {k} outside [0, {self.n_subsections - 1}]")
            full[int(k)] = maps
        return Assignment.from_maps(full, self.element)

    def is_identity(self) -> bool:
        return all(self.table[i].is_identity for i in np.unique(self.index))


def symmetric_assignment(
    part: Partition,
    g: GroupElement,
    upper: ChannelMaps,
    lower: ChannelMaps,
    pairs: Optional[Iterable[tuple[int, int]]] = None,
) -> Assignment:
    """Give ``upper`` to one member and ``lower`` to the other of each pair under ``g``.

    With ``pairs=None`` every pair of ``pair_set(part, g)`` is covered;
    otherwise only the listed pairs are, in either orientation, and all other
    subsections keep the identity map.
    """
    g = GroupElement(g)
    ps = pair_set(part, g)
    if pairs is None:
        chosen = list(ps.pairs)
    else:
        known = {frozenset(p): p for p in ps.pairs}
        chosen = []
        for p in pairs:
            key = frozenset(int(v) for v in p)
            if key not in known:
                raise ValueError(f"{tuple(p)} is not a pair under {g.label}")
            chosen.append(known[key])
    maps = {}
    for lp, lq in chosen:
        maps[lp] = upper
        maps[lq] = lower
    return Assignment.from_dict(part.n_subsections, maps, element=g)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def resolve_threads(threads: Optional[int] = None) -> int:
    """Worker count: explicit value, else ``$CHROMASYM_THREADS``, else auto (0)."""
    if threads is None:
        env = os.environ.get(THREADS_ENV, "").strip()
        threads = int(env) if env else 0
    if threads < 0:
        raise ValueError(f"thread count must be >= 0, got {threads}")
    return threads or (os.cpu_count() or 1)


def _check_image(img: np.ndarray, part: Optional[Partition] = None) -> None:
    if img.ndim != 3 or img.shape[2] not in (3, 4) or img.dtype != np.uint8:
        raise ValueError(f"expected an (H, W, 3|4) uint8 image, got {img.shape} {img.dtype}")
    if part is not None and img.shape[:2] != (part.height, part.width):
        raise ValueError(
            f"image is {img.shape[1]}x{img.shape[0]} but partition is {part.width}x{part.height}"
        )


def _render_band(rgb: np.ndarray, slot: np.ndarray, table: Sequence[ChannelMaps]) -> np.ndarray:
    out = rgb.copy()
    for t in np.unique(slot):
        maps = table[t]
        if maps.is_identity:
            continue
        mask = slot == t
        hsv = rgb_to_hsv_array(rgb[mask])
        out[mask] = hsv_to_rgb_array(maps.apply_hsv(hsv))
    return out


def apply_distortion(
    img: np.ndarray,
    part: Partition,
    a: Assignment,
    threads: Optional[int] = None,
) -> np.ndarray:
    """Recolor every pixel with the channel maps of its subsection.

    Identity-mapped pixels are copied directly; HSV round-trip of 8-bit RGB is
    exact, so this equals converting them. Work is split into row bands when
    ``threads`` allows; the result does not depend on the split.
    """
    _check_image(img, part)
    if a.n_subsections != part.n_subsections:
        raise ValueError(
            f"assignment covers {a.n_subsections} subsections, partition has {part.n_subsections}"
        )
    slot = a.index[part.labels]
    out = img.copy()
    rgb = img[..., :3]
    n = min(resolve_threads(threads), img.shape[0])
    if n <= 1:
        out[..., :3] = _render_band(rgb, slot, a.table)
        return out
    bounds = np.linspace(0, img.shape[0], n + 1).astype(int)
    bands = list(zip(bounds[:-1], bounds[1:]))
    with ThreadPoolExecutor(max_workers=n) as pool:
        results = pool.map(lambda b: _render_band(rgb[b[0]:b[1]], slot[b[0]:b[1]], a.table), bands)
        for (lo, hi), res in zip(bands, results):
            out[lo:hi, :, :3] = res
    return out


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

CHANNELS = ("r", "g", "b", "a")


class Violation(NamedTuple):
    x: int
    y: int
    channel: str  # r/g/b/a, or "maps" for a pairing violation
    expected: object
    actual: object


@dataclass
class VerifyReport:
    ok: bool
    violations: list[Violation] = field(default_factory=list)
    max_abs_error: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violation_count": len(self.violations),
            "max_abs_error": self.max_abs_error,
            "violations": [
                {"x": v.x, "y": v.y, "channel": v.channel, "expected": _jsonable(v.expected), "actual": _jsonable(v.actual)}
                for v in self.violations
            ],
        }


def _jsonable(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (int, float, str)):
        return v
    return str(v)


def verify_symmetry(
    src: np.ndarray,
    out: np.ndarray,
    part: Partition,
    a: Assignment,
    g: GroupElement,
    tol: int = 1,
    threads: Optional[int] = None,
) -> VerifyReport:
    """Check that ``out`` is ``src`` recolored by ``a`` and that ``a`` respects ``g``.

    Two conditions must hold at every pixel ``p``:

    1. each channel of ``out[p]`` is within ``tol`` of ``src[p]`` mapped by the
       maps of its subsection (alpha must match within ``tol`` as well);
    2. the maps on the partner of ``p``'s subsection under ``g`` are the maps
       on the subsection containing ``g(p)``.
    """
    _check_image(src, part)
    _check_image(out, part)
    if src.shape != out.shape:
        raise ValueError(f"source {src.shape} and output {out.shape} differ in shape")
    if tol < 0:
        raise ValueError(f"tolerance must be >= 0, got {tol}")
    g = GroupElement(g)

    expected = apply_distortion(src, part, a, threads=threads)
    diff = np.abs(out.astype(np.int64) - expected.astype(np.int64))
    nch = src.shape[2]
    max_err = {CHANNELS[c]: int(diff[..., c].max()) for c in range(nch)}
    violations = [
        Violation(int(x), int(y), CHANNELS[c], int(expected[y, x, c]), int(out[y, x, c]))
        for y, x, c in zip(*np.nonzero(diff > tol))
    ]

    if g != GroupElement.E:
        labels = part.labels
        across_pair = a.index[part.partner(g, labels)]
        at_image = a.index[transform_image(labels, g)]
        for y, x in zip(*np.nonzero(across_pair != at_image)):
            violations.append(
                Violation(int(x), int(y), "maps", str(a.table[across_pair[y, x]]), str(a.table[at_image[y, x]]))
            )

    return VerifyReport(not violations, violations, max_err)


# ---------------------------------------------------------------------------
# induced color permutations
# ---------------------------------------------------------------------------

class PaletteTooLargeError(ValueError):
    pass


MAX_PALETTE = 256


@dataclass
class TransitiveResult:
    """Outcome of :func:`check_transitive`.

    ``top``/``bottom`` form the two-line notation of the induced map: source
    color ``top[i]`` becomes ``bottom[i]``. When a source color goes to several
    output colors, ``bottom[i]`` is the first one seen in raster order and the
    full set is listed in ``conflicts``.
    """

    ok: bool
    top: list[tuple[int, ...]]
    bottom: list[tuple[int, ...]]
    reason: str = ""
    conflicts: dict[tuple[int, ...], list[tuple[int, ...]]] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def as_dict(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        return dict(zip(self.top, self.bottom))


def _pack(img: np.ndarray) -> np.ndarray:
    c = img.reshape(-1, img.shape[-1]).astype(np.int64)
    key = np.zeros(c.shape[0], dtype=np.int64)
    for i in range(c.shape[1]):
        key = key * 256 + c[:, i]
    return key


def _unpack(key: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(int(key % 256))
        key //= 256
    return tuple(reversed(out))


def check_transitive(src: np.ndarray, out: np.ndarray) -> TransitiveResult:
    """Is ``src color at p -> out color at p`` a bijection on the source palette?

    ``src`` must use at most 256 distinct colors. Raises
    :class:`PaletteTooLargeError` otherwise.
    """
    if src.shape != out.shape:
        raise ValueError(f"source {src.shape} and output {out.shape} differ in shape")
    n = src.shape[-1]
    ks, ko = _pack(src), _pack(out)
    palette, first, inv = np.unique(ks, return_index=True, return_inverse=True)
    if palette.size > MAX_PALETTE:
        raise PaletteTooLargeError(f"source uses {palette.size} colors; at most {MAX_PALETTE} allowed")

    top = [_unpack(int(k), n) for k in palette]
    bottom = [_unpack(int(ko[i]), n) for i in first]
    lo = np.full(palette.size, np.iinfo(np.int64).max)
    hi = np.full(palette.size, np.iinfo(np.int64).min)
    np.minimum.at(lo, inv, ko)
    np.maximum.at(hi, inv, ko)
    conflicts = {}
    for i in np.nonzero(lo != hi)[0]:
        images = np.unique(ko[inv == i])
        conflicts[top[i]] = [_unpack(int(v), n) for v in images]
    if conflicts:
        return TransitiveResult(False, top, bottom, "not a function: a source color maps to several colors", conflicts)
    if len(set(bottom)) != len(bottom):
        return TransitiveResult(False, top, bottom, "not injective: distinct source colors share an image")
    return TransitiveResult(True, top, bottom)


def color_permutation(img: np.ndarray, g: GroupElement) -> TransitiveResult:
    """Color map induced on ``img`` by moving every pixel with ``g``."""
    return check_transitive(img, transform_image(img, g))


# ---------------------------------------------------------------------------
# discrete demos
# ---------------------------------------------------------------------------

# Four flat colors in the order orange, blue, yellow, purple.
FIGURE1_PALETTE: dict[str, tuple[int, int, int]] = {
    "o": (245, 130, 32),
    "b": (38, 84, 196),
    "y": (250, 214, 40),
    "p": (128, 48, 160),
}


def perm_from_cycles(names: Sequence[str], *cycles: str) -> tuple[int, ...]:
    """Permutation of ``range(len(names))`` from cycles over names, e.g. ``"ob"``."""
    perm = list(range(len(names)))
    pos = {n: i for i, n in enumerate(names)}
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[pos[a]] = pos[b]
    return tuple(perm)


_NAMES = tuple(FIGURE1_PALETTE)

# Per partition style, a permutation for each element in the spirit of the
# three simple color-symmetry rectangles. Each entry is meant to be declared
# on its own; the entries of one style are not jointly a homomorphism.
DEMO_PERMUTATIONS: dict[str, dict[GroupElement, tuple[int, ...]]] = {
    "triangular": {
        GroupElement.ROT: perm_from_cycles(_NAMES, "ob"),
        GroupElement.REFH: perm_from_cycles(_NAMES, "by", "op"),
        GroupElement.REFV: perm_from_cycles(_NAMES, "pb", "yo"),
    },
    "grid": {
        GroupElement.REFH: perm_from_cycles(_NAMES, "ob"),
        GroupElement.ROT: perm_from_cycles(_NAMES, "oy", "bp"),
        GroupElement.REFV: perm_from_cycles(_NAMES, "op", "by"),
    },
    "bubble": {
        GroupElement.REFV: perm_from_cycles(_NAMES, "ob"),
        GroupElement.ROT: perm_from_cycles(_NAMES, "oy", "bp"),
        GroupElement.REFH: perm_from_cycles(_NAMES, "op", "by"),
    },
}


def _compose_perm(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    # apply q first, then p
    return tuple(p[q[i]] for i in range(len(q)))


def _perm_homomorphism(
    perms: Mapping[GroupElement, Sequence[int]], n: int
) -> dict[GroupElement, tuple[int, ...]]:
    ident = tuple(range(n))
    declared = {}
    for g, p in perms.items():
        g = GroupElement.parse(g) if isinstance(g, str) else GroupElement(g)
        p = tuple(int(v) for v in p)
        if sorted(p) != list(ident):
            raise ValueError(f"permutation for {g.label} is not a permutation of {n} colors: {p}")
        if _compose_perm(p, p) != ident:
            raise ValueError(f"permutation for {g.label} is not an involution, but {g.label} squares to e")
        if g == GroupElement.E and p != ident:
            raise ValueError("the identity element must carry the identity permutation")
        declared[g] = p

    hom = {GroupElement.E: ident}
    changed = True
    while changed:
        changed = False
        for g, pg in declared.items():
            for h, ph in list(hom.items()):
                for gh, p in ((compose(g, h), _compose_perm(pg, ph)), (compose(h, g), _compose_perm(ph, pg))):
                    if gh not in hom:
                        hom[gh] = p
                        changed = True
                    elif hom[gh] != p:
                        raise ValueError(
                            f"declared permutations are inconsistent with the group: {gh.label} would be "
                            f"both {hom[gh]} and {p}"
                        )
    return hom


def make_demo(
    style: PartitionSpec,
    palette: Sequence[Sequence[int]],
    perms: Mapping[GroupElement, Sequence[int]],
    width: int,
    height: int,
) -> np.ndarray:
    """Flat-colored rectangle on which each declared permutation is a color symmetry.

    ``perms[g][i] = j`` means element ``g`` carries ``palette[i]`` to
    ``palette[j]``. Elements not declared are left unconstrained. The
    declared permutations must extend to a homomorphism from the subgroup
    they generate; otherwise ``ValueError``.
    """
    pal = np.array(palette, dtype=np.int64)
    if pal.ndim != 2 or pal.shape[1] not in (3, 4) or len(pal) == 0:
        raise ValueError("palette must be a non-empty list of RGB or RGBA colors")
    if len({tuple(c) for c in pal.tolist()}) != len(pal):
        raise ValueError("palette colors must be distinct")
    if pal.min() < 0 or pal.max() > 255:
        raise ValueError("palette channels must lie in [0, 255]")
    n = len(pal)
    hom = _perm_homomorphism(perms, n)

    # sections fall into cosets of the generated subgroup; each coset gets its
    # own base color per canonical subsection
    reps = []
    seen = set()
    for s in range(4):
        if s not in seen:
            reps.append(s)
            seen.update(s ^ int(h) for h in hom)
    part = build_partition(style, width, height)
    c = part.canonical_count
    color_of = np.empty(part.n_subsections, dtype=np.int64)
    for k in range(c):
        for j, r in enumerate(reps):
            base = (k * len(reps) + j) % n
            for h, p in hom.items():
                color_of[(r ^ int(h)) * c + k] = p[base]
    return pal[color_of[part.labels]].astype(np.uint8)


def demo_permutation_names(result: TransitiveResult, palette: Mapping[str, Sequence[int]]) -> dict:
    """Two-line form of ``result`` with colors replaced by palette names."""
    name_of = {tuple(int(v) for v in c): k for k, c in palette.items()}
    return {
        "top": [name_of.get(c, list(c)) for c in result.top],
        "bottom": [name_of.get(c, list(c)) for c in result.bottom],
    }


__all__ = [
    "Assignment",
    "symmetric_assignment",
    "apply_distortion",
    "verify_symmetry",
    "VerifyReport",
    "Violation",
    "check_transitive",
    "color_permutation",
    "TransitiveResult",
    "PaletteTooLargeError",
    "make_demo",
    "FIGURE1_PALETTE",
    "DEMO_PERMUTATIONS",
    "perm_from_cycles",
    "resolve_threads",
]
