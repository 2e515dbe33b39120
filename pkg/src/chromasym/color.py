"""HSV/RGB conversion and the channel maps used to recolor subsections.

All channel math runs in double precision. Hue is a linear coordinate on
[0, 1]; the maps are not assumed periodic at the 0/1 seam.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]

FAMILIES = ("identity", "f1", "f2", "f3", "f4", "f5", "modmul", "harmonic", "poly")

_SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# conversion
# ---------------------------------------------------------------------------

def rgb_to_hsv_array(rgb: np.ndarray) -> np.ndarray:
    """Vectorized hexcone RGB -> HSV.

    ``rgb`` is an integer array with a trailing axis of length 3 holding
    values in [0, 255]. Returns float64 of the same shape with hue in [0, 1),
    saturation and value in [0, 1]. Achromatic pixels get h = s = 0.
    """
    rgb = np.asarray(rgb)
    if rgb.shape[-1] != 3:
        raise ValueError(f"expected trailing axis of length 3, got {rgb.shape}")
    c = rgb.astype(np.int64)
    r, g, b = c[..., 0], c[..., 1], c[..., 2]
    mx = np.maximum(np.maximum(r, g), b)
    mn = np.minimum(np.minimum(r, g), b)
    delta = mx - mn
    chroma = delta > 0
    d = np.where(chroma, delta, 1).astype(np.float64)

    # sector offsets: red max -> (g-b)/d, green max -> 2+(b-r)/d, blue max -> 4+(r-g)/d
    h6 = np.where(
        mx == r,
        (g - b) / d,
        np.where(mx == g, 2.0 + (b - r) / d, 4.0 + (r - g) / d),
    )
    h = np.mod(h6, 6.0) / 6.0
    h = np.where(h >= 1.0, h - 1.0, h)
    h = np.where(chroma, h, 0.0)
    s = np.where(chroma, delta / np.where(mx > 0, mx, 1).astype(np.float64), 0.0)
    v = mx / 255.0
    return np.stack([h, s, v], axis=-1)


def hsv_to_rgb_array(hsv: np.ndarray) -> np.ndarray:
    """Vectorized hexcone HSV -> RGB, rounded half away from zero to uint8."""
    hsv = np.asarray(hsv, dtype=np.float64)
    if hsv.shape[-1] != 3:
        raise ValueError(f"expected trailing axis of length 3, got {hsv.shape}")
    h, s, v = hsv[..., 0], hsv[..., 1], hsv[..., 2]
    h = np.mod(h, 1.0)  # hue 1.0 is hue 0.0
    h6 = h * 6.0
    i = np.floor(h6)
    f = h6 - i
    i = i.astype(np.int64) % 6
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))

    r = np.choose(i, [v, q, p, p, t, v])
    g = np.choose(i, [t, v, v, q, p, p])
    b = np.choose(i, [p, p, t, v, v, q])
    out = np.stack([r, g, b], axis=-1)
    # channels are non-negative, so half-away-from-zero is floor(x + 0.5)
    out = np.floor(out * 255.0 + 0.5)
    return np.clip(out, 0, 255).astype(np.uint8)


def rgb_to_hsv(r: int, g: int, b: int) -> tuple[float, float, float]:
    """Convert one 8-bit RGB triple to HSV."""
    for name, val in (("r", r), ("g", g), ("b", b)):
        if not 0 <= int(val) <= 255:
            raise ValueError(f"{name}={val} outside [0, 255]")
    h, s, v = rgb_to_hsv_array(np.array([r, g, b]))
    return float(h), float(s), float(v)


def hsv_to_rgb(h: float, s: float, v: float) -> tuple[int, int, int]:
    """Convert one HSV triple (each channel in [0, 1]) to 8-bit RGB."""
    for name, val in (("h", h), ("s", s), ("v", v)):
        if not 0.0 <= val <= 1.0:
            raise ValueError(f"{name}={val} outside [0, 1]")
    r, g, b = hsv_to_rgb_array(np.array([h, s, v]))
    return int(r), int(g), int(b)


# ---------------------------------------------------------------------------
# channel maps
# ---------------------------------------------------------------------------

_N_PARAMS = {"identity": 0, "f1": 0, "f2": 0, "f3": 0, "f4": 0, "f5": 0, "modmul": 1, "harmonic": 8}


@dataclass(frozen=True)
class ChannelMap:
    """A map of one HSV channel in [0, 1] onto itself.

    ``family`` is one of :data:`FAMILIES`. Parameters:

    * ``modmul``: ``(n,)`` with n a positive integer, ``x -> n*x mod 1``
    * ``harmonic``: ``(c0, c1, w1, c2, w2, c3, w3, c4)``,
      ``c0 + c1|sin(w1 pi x)| + c2 sin(w2 pi x) + c3 cos(w3 pi x) + c4 x``
    * ``poly``: coefficients in ascending powers, ``c0 + c1 x + c2 x^2 + ...``

    ``harmonic`` and ``poly`` are clamped to [0, 1]; the named families are
    bounded on [0, 1] by construction and are not.
    """

    family: str
    params: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        family = self.family.lower()
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", tuple(self.params))
        if family not in FAMILIES:
            raise ValueError(f"unknown map family {self.family!r}; expected one of {FAMILIES}")
        n = _N_PARAMS.get(family)
        if n is not None and len(self.params) != n:
            raise ValueError(f"{family} takes {n} parameter(s), got {len(self.params)}")
        if family == "modmul":
            (k,) = self.params
            if k != int(k) or int(k) < 1:
                raise ValueError(f"modmul needs a positive integer n, got {k!r}")
            object.__setattr__(self, "params", (int(k),))
        elif family == "poly":
            if not self.params:
                raise ValueError("poly needs at least one coefficient")
        if not all(math.isfinite(p) for p in self.params):
            raise ValueError(f"{family} parameters must be finite: {self.params}")
        if family in ("harmonic", "poly"):
            object.__setattr__(self, "params", tuple(float(p) for p in self.params))

    def __call__(self, x: ArrayLike) -> ArrayLike:
        return eval_map(self, x)

    @property
    def is_identity(self) -> bool:
        return self.family == "identity"

    def to_json(self) -> dict:
        return {"family": self.family, "params": list(self.params)}

    @classmethod
    def from_json(cls, obj: dict) -> "ChannelMap":
        return cls(obj["family"], tuple(obj.get("params", ())))

    def __str__(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}({', '.join(repr(p) for p in self.params)})"


IDENTITY = ChannelMap("identity")
F1 = ChannelMap("f1")
F2 = ChannelMap("f2")
F3 = ChannelMap("f3")
F4 = ChannelMap("f4")
F5 = ChannelMap("f5")


def modmul(n: int) -> ChannelMap:
    return ChannelMap("modmul", (n,))


def harmonic(c0, c1, w1, c2, w2, c3, w3, c4) -> ChannelMap:
    return ChannelMap("harmonic", (c0, c1, w1, c2, w2, c3, w3, c4))


def polynomial(coefficients: Sequence[float]) -> ChannelMap:
    return ChannelMap("poly", tuple(coefficients))


def eval_map(m: ChannelMap, x: ArrayLike) -> ArrayLike:
    """Evaluate channel map ``m`` at ``x`` (scalar or array, values in [0, 1])."""
    fam = m.family
    if fam == "identity":
        return x
    scalar = np.ndim(x) == 0
    xa = np.asarray(x, dtype=np.float64)

    if fam == "f1":
        y = 0.45 * np.abs(np.sin(_SQRT2 * 20.0 * np.pi * xa)) + 0.55 * np.abs(np.sin(20.0 * np.pi * xa))
    elif fam == "f2":
        y = 0.5 * (1.0 + np.sin(40.0 * np.pi * xa))
    elif fam == "f3":
        y = 4.0 * xa * (1.0 - xa)
    elif fam == "f4":
        y = 4.0 * xa * (xa - 1.0) + 1.0
    elif fam == "f5":
        y = 0.15 * (1.0 + np.cos(40.0 * np.pi * xa)) + 0.5 * xa
    elif fam == "modmul":
        y = np.mod(m.params[0] * xa, 1.0)
    elif fam == "harmonic":
        c0, c1, w1, c2, w2, c3, w3, c4 = m.params
        y = (
            c0
            + c1 * np.abs(np.sin(w1 * np.pi * xa))
            + c2 * np.sin(w2 * np.pi * xa)
            + c3 * np.cos(w3 * np.pi * xa)
            + c4 * xa
        )
        y = np.clip(y, 0.0, 1.0)
    else:  # poly
        y = np.zeros_like(xa)
        for c in reversed(m.params):
            y = y * xa + c
        y = np.clip(y, 0.0, 1.0)
    return float(y) if scalar else y


@dataclass(frozen=True)
class ChannelMaps:
    """Maps for the three HSV channels; saturation and value default to identity."""

    hue: ChannelMap = IDENTITY
    saturation: ChannelMap = IDENTITY
    value: ChannelMap = IDENTITY

    @property
    def is_identity(self) -> bool:
        return self.hue.is_identity and self.saturation.is_identity and self.value.is_identity

    def apply_hsv(self, hsv: np.ndarray) -> np.ndarray:
        """Map an (..., 3) HSV array channel-wise; returns a new array."""
        out = np.array(hsv, dtype=np.float64, copy=True)
        for i, m in enumerate((self.hue, self.saturation, self.value)):
            if not m.is_identity:
                out[..., i] = eval_map(m, out[..., i])
        return out

    def to_json(self) -> dict:
        return {"hue": self.hue.to_json(), "sat": self.saturation.to_json(), "val": self.value.to_json()}

    def __str__(self) -> str:
        return f"(h:{self.hue}, s:{self.saturation}, v:{self.value})"


IDENTITY_MAPS = ChannelMaps()


def map_table(m: ChannelMap, n: int = 4096) -> tuple[np.ndarray, np.ndarray]:
    """Sample ``m`` at x = k/n for k = 0..n-1."""
    x = np.arange(n, dtype=np.float64) / n
    return x, np.asarray(eval_map(m, x), dtype=np.float64)


def export_map_csv(m: ChannelMap, path: str | Path, n: int = 4096) -> None:
    """Write the ``x,y`` sample table of ``m`` with nine decimals per value."""
    x, y = map_table(m, n)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y"])
        for xi, yi in zip(x, y):
            w.writerow([f"{xi:.9f}", f"{yi:.9f}"])
