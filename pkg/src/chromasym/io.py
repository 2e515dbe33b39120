"""Image files, partition dumps and distortion configs."""

from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np
from PIL import Image

from .color import ChannelMap, ChannelMaps, hsv_to_rgb_array
from .engine import Assignment
from .partition import Bubble, Grid, Partition, PartitionSpec, PerPixel, Triangular, pair_set
from .symmetry import GroupElement

log = logging.getLogger(__name__)

PathLike = Union[str, Path]


class OddDimensionsWarning(UserWarning):
    pass


@dataclass(frozen=True)
class LoadOptions:
    crop_to_even: bool = True
    strip_alpha: bool = False


def _to_8bit(im: Image.Image) -> np.ndarray:
    mode = im.mode
    if mode in ("I;16", "I;16B", "I;16L", "I;16N"):
        g = (np.asarray(im).astype(np.uint32) >> 8).astype(np.uint8)
        return np.repeat(g[..., None], 3, axis=2)
    if mode == "I":
        a = np.asarray(im)
        if a.min() < 0 or a.max() > 0xFFFF:
            raise ValueError("unsupported bit depth: 32-bit integer image")
        g = (a.astype(np.uint32) >> 8).astype(np.uint8)
        return np.repeat(g[..., None], 3, axis=2)
    if mode == "F":
        raise ValueError("unsupported bit depth: floating-point image")
    # Pillow already reduces 16-bit RGB(A)/LA PNGs to their high bytes.
    has_alpha = mode in ("RGBA", "LA", "PA") or (mode == "P" and "transparency" in im.info)
    return np.asarray(im.convert("RGBA" if has_alpha else "RGB"))


def load_image(path: PathLike, opts: Optional[LoadOptions] = None) -> np.ndarray:
    """Read an image as an (H, W, 3|4) uint8 array.

    Odd widths or heights lose their last column/row when ``crop_to_even`` is
    set (with an :class:`OddDimensionsWarning`), and are an error otherwise.
    """
    opts = opts or LoadOptions()
    with Image.open(path) as im:
        im.load()
        arr = _to_8bit(im)
    if opts.strip_alpha and arr.shape[2] == 4:
        arr = arr[..., :3]
    h, w = arr.shape[:2]
    if h % 2 or w % 2:
        if not opts.crop_to_even:
            raise ValueError(f"{path}: odd dimensions {w}x{h} and cropping disabled")
        msg = f"{path}: cropped {w}x{h} to {w - w % 2}x{h - h % 2}"
        warnings.warn(msg, OddDimensionsWarning, stacklevel=2)
        log.warning(msg)
        arr = arr[: h - h % 2, : w - w % 2]
    return np.array(arr, order="C")


def save_image(img: np.ndarray, path: PathLike) -> None:
    """Write ``img`` as an 8-bit RGB or RGBA PNG with fixed encoder settings."""
    img = np.asarray(img)
    if img.dtype != np.uint8 or img.ndim != 3 or img.shape[2] not in (3, 4):
        raise ValueError(f"expected an (H, W, 3|4) uint8 image, got {img.shape} {img.dtype}")
    mode = "RGBA" if img.shape[2] == 4 else "RGB"
    Image.fromarray(np.ascontiguousarray(img), mode=mode).save(path, format="PNG", compress_level=6, optimize=False)


def _label_palette() -> np.ndarray:
    i = np.arange(256)
    hsv = np.stack(
        [
            (i * 0.6180339887498949) % 1.0,
            0.45 + 0.55 * ((i * 7) % 5) / 4,
            0.55 + 0.45 * ((i * 3) % 4) / 3,
        ],
        axis=-1,
    )
    return hsv_to_rgb_array(hsv)


LABEL_PALETTE = _label_palette()


def render_partition(part: Partition) -> np.ndarray:
    """Color each subsection by ``LABEL_PALETTE[id % 256]``."""
    return LABEL_PALETTE[part.labels % 256]


def save_partition_png(part: Partition, path: PathLike) -> None:
    save_image(render_partition(part), path)


# ---------------------------------------------------------------------------
# configs
# ---------------------------------------------------------------------------

class ConfigError(ValueError):
    """Invalid distortion config; ``errors`` lists every problem found."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class MapRule:
    """Maps for a set of subsections.

    ``subsections == "pairs"`` selects the ``role`` member ("upper" or
    "lower") of every pair under the config's element; a tuple of ints
    selects global subsection ids directly and ignores ``role``.
    """

    subsections: Union[str, tuple[int, ...]]
    maps: ChannelMaps
    role: str = "lower"


@dataclass(frozen=True)
class DistortionConfig:
    element: GroupElement
    partition: PartitionSpec
    rules: tuple[MapRule, ...] = field(default=())
    tolerance: int = 1

    def assignment(self, part: Partition) -> Assignment:
        """Resolve the rules against ``part``; later rules override earlier ones."""
        a = Assignment.uniform(part.n_subsections, element=self.element)
        for rule in self.rules:
            if rule.subsections == "pairs":
                ps = pair_set(part, self.element)
                col = 0 if rule.role == "upper" else 1
                ids = [p[col] for p in ps.pairs]
            else:
                ids = list(rule.subsections)
            a = a.updated(ids, rule.maps)
        return a


_PARTITION_KEYS = {
    "triangular": ("triangles",),
    "grid": ("rows", "cols"),
    "chessboard": ("rows", "cols"),
    "bubble": ("count", "seed", "rmin", "rmax"),
    "perpixel": (),
}


def _parse_partition(obj, errors: list[str]) -> Optional[PartitionSpec]:
    if not isinstance(obj, dict):
        errors.append("partition: expected an object with a 'kind' field")
        return None
    kind = str(obj.get("kind", "")).lower()
    if kind not in _PARTITION_KEYS:
        errors.append(f"partition.kind: unknown kind {obj.get('kind')!r}; expected one of {sorted(_PARTITION_KEYS)}")
        return None
    extra = set(obj) - {"kind", *_PARTITION_KEYS[kind]}
    if extra:
        errors.append(f"partition: unknown field(s) {sorted(extra)} for kind {kind!r}")
    params = {k: obj[k] for k in _PARTITION_KEYS[kind] if k in obj}
    for k, v in params.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            errors.append(f"partition.{k}: expected a number, got {v!r}")
            return None
    cls = {"triangular": Triangular, "grid": Grid, "chessboard": Grid, "bubble": Bubble, "perpixel": PerPixel}[kind]
    try:
        return cls(**params)
    except (TypeError, ValueError) as exc:
        errors.append(f"partition: {exc}")
        return None


def _parse_map(obj, where: str, errors: list[str]) -> ChannelMap:
    if obj is None:
        return ChannelMap("identity")
    if not isinstance(obj, dict) or "family" not in obj:
        errors.append(f"{where}: expected an object with a 'family' field")
        return ChannelMap("identity")
    params = obj.get("params", [])
    if not isinstance(params, list) or not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in params):
        errors.append(f"{where}.params: expected a list of numbers, got {params!r}")
        return ChannelMap("identity")
    try:
        return ChannelMap(str(obj["family"]), tuple(params))
    except ValueError as exc:
        errors.append(f"{where}: {exc}")
        return ChannelMap("identity")


def _parse_rule(obj, i: int, element: Optional[GroupElement], errors: list[str]) -> Optional[MapRule]:
    where = f"maps[{i}]"
    if not isinstance(obj, dict):
        errors.append(f"{where}: expected an object")
        return None
    extra = set(obj) - {"subsections", "role", "hue", "sat", "val"}
    if extra:
        errors.append(f"{where}: unknown field(s) {sorted(extra)}")
    subs = obj.get("subsections", "pairs")
    if subs == "pairs":
        if element == GroupElement.E:
            errors.append(f"{where}.subsections: 'pairs' needs a non-identity element")
    elif isinstance(subs, list) and all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in subs):
        subs = tuple(subs)
    else:
        errors.append(f"{where}.subsections: expected \"pairs\" or a list of non-negative subsection ids")
        subs = ()
    role = obj.get("role", "lower")
    if role not in ("upper", "lower"):
        errors.append(f"{where}.role: expected 'upper' or 'lower', got {role!r}")
    maps = ChannelMaps(
        _parse_map(obj.get("hue"), f"{where}.hue", errors),
        _parse_map(obj.get("sat"), f"{where}.sat", errors),
        _parse_map(obj.get("val"), f"{where}.val", errors),
    )
    return MapRule(subs, maps, role)


def parse_config(text: str) -> DistortionConfig:
    """Parse and validate a distortion config; raises :class:`ConfigError` listing all problems."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"invalid JSON: {exc}"]) from None
    if not isinstance(obj, dict):
        raise ConfigError(["config must be a JSON object"])

    errors: list[str] = []
    extra = set(obj) - {"element", "partition", "maps", "tolerance"}
    if extra:
        errors.append(f"unknown field(s) {sorted(extra)}")

    element = None
    if "element" not in obj:
        errors.append("element: missing")
    else:
        try:
            element = GroupElement.parse(obj["element"])
        except ValueError as exc:
            errors.append(f"element: {exc}")

    partition = None
    if "partition" not in obj:
        errors.append("partition: missing")
    else:
        partition = _parse_partition(obj["partition"], errors)

    rules = []
    raw_rules = obj.get("maps", [])
    if not isinstance(raw_rules, list):
        errors.append("maps: expected a list")
        raw_rules = []
    for i, r in enumerate(raw_rules):
        rule = _parse_rule(r, i, element, errors)
        if rule is not None:
            rules.append(rule)

    tol = obj.get("tolerance", 1)
    if isinstance(tol, bool) or not isinstance(tol, int) or tol < 0:
        errors.append(f"tolerance: expected a non-negative integer, got {tol!r}")

    if errors:
        raise ConfigError(errors)
    return DistortionConfig(element, partition, tuple(rules), tol)


def _partition_to_json(spec: PartitionSpec) -> dict:
    if isinstance(spec, Triangular):
        return {"kind": "triangular", "triangles": spec.triangles}
    if isinstance(spec, Grid):
        return {"kind": "grid", "rows": spec.rows, "cols": spec.cols}
    if isinstance(spec, Bubble):
        return {"kind": "bubble", "count": spec.count, "seed": spec.seed, "rmin": spec.rmin, "rmax": spec.rmax}
    return {"kind": "perpixel"}


def config_to_json(cfg: DistortionConfig) -> dict:
    rules = []
    for r in cfg.rules:
        d = {"subsections": r.subsections if r.subsections == "pairs" else list(r.subsections)}
        d["role"] = r.role
        d.update(r.maps.to_json())
        rules.append(d)
    return {
        "element": cfg.element.label,
        "partition": _partition_to_json(cfg.partition),
        "maps": rules,
        "tolerance": cfg.tolerance,
    }


def serialize_config(cfg: DistortionConfig) -> str:
    return json.dumps(config_to_json(cfg), indent=2)


def load_config(path: PathLike) -> DistortionConfig:
    return parse_config(Path(path).read_text())
