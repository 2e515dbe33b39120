"""The rectangle group D2 (Klein four-group) and its action on pixel grids.

Coordinates are ``(x, y)`` with the origin at the top-left pixel, ``x``
running along columns and ``y`` down the rows. Images must have even width
and height so that both mirror axes fall between pixels and no pixel is
fixed by a non-identity element.

Elements and sections are both encoded as two bits, bit 0 for a flip of
``x`` (east/west) and bit 1 for a flip of ``y`` (north/south). Composition
is then XOR, and the action of ``g`` on section ``s`` is ``s ^ g``.
"""

from __future__ import annotations

import enum
from typing import Union

import numpy as np


class GroupElement(enum.IntEnum):
    E = 0
    REFV = 1  # mirror in the vertical axis: x -> W-1-x
    REFH = 2  # mirror in the horizontal axis: y -> H-1-y
    ROT = 3  # half turn

    @property
    def label(self) -> str:
        return _NAMES[self]

    @classmethod
    def parse(cls, name: Union[str, "GroupElement"]) -> "GroupElement":
        """Look up an element by its config name (``e``, ``rot``, ``refh``, ``refv``)."""
        if isinstance(name, GroupElement):
            return name
        key = str(name).strip().lower()
        for g, n in _NAMES.items():
            if n == key:
                return g
        raise ValueError(f"unknown group element {name!r}; expected one of {sorted(_NAMES.values())}")

    @property
    def flips_x(self) -> bool:
        return bool(self & 1)

    @property
    def flips_y(self) -> bool:
        return bool(self & 2)


_NAMES = {
    GroupElement.E: "e",
    GroupElement.REFV: "refv",
    GroupElement.REFH: "refh",
    GroupElement.ROT: "rot",
}

ELEMENTS = (GroupElement.E, GroupElement.ROT, GroupElement.REFH, GroupElement.REFV)
NON_IDENTITY = (GroupElement.ROT, GroupElement.REFH, GroupElement.REFV)


class Section(enum.IntEnum):
    NW = 0
    NE = 1
    SW = 2
    SE = 3


def compose(a: GroupElement, b: GroupElement) -> GroupElement:
    """Product of two elements (the group is abelian, so order is immaterial)."""
    return GroupElement(int(a) ^ int(b))


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(g)


def act_on_section(g: GroupElement, s: Section) -> Section:
    return Section(int(s) ^ int(g))


def check_dims(width: int, height: int) -> None:
    if width <= 0 or height <= 0:
        raise ValueError(f"image must be non-empty, got {width}x{height}")
    if width % 2 or height % 2:
        raise ValueError(f"width and height must be even, got {width}x{height}")


def map_coord(g: GroupElement, x, y, width: int, height: int):
    """Image of pixel ``(x, y)`` under ``g``. Works element-wise on arrays."""
    check_dims(width, height)
    g = GroupElement(g)
    nx = width - 1 - x if g.flips_x else x
    ny = height - 1 - y if g.flips_y else y
    return nx, ny


def section_of(x, y, width: int, height: int):
    """Section index of pixel ``(x, y)``; returns a ``Section`` for scalars,
    an int array of section indices for arrays."""
    check_dims(width, height)
    s = (np.asarray(x) >= width // 2).astype(np.int64) + 2 * (np.asarray(y) >= height // 2).astype(np.int64)
    if s.ndim == 0:
        return Section(int(s))
    return s


def transform_image(img: np.ndarray, g: GroupElement) -> np.ndarray:
    """Move every pixel of ``img`` (H x W [x C]) to its image under ``g``.

    ``out[map_coord(g, p)] = img[p]``. Since every element is an involution this
    is also ``out[p] = img[map_coord(g, p)]``.
    """
    h, w = img.shape[:2]
    check_dims(w, h)
    out = img
    g = GroupElement(g)
    if g.flips_x:
        out = out[:, ::-1]
    if g.flips_y:
        out = out[::-1, :]
    return np.ascontiguousarray(out)
