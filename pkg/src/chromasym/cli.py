"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 I/O failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import engine
from .color import ChannelMap, export_map_csv
from .engine import (
    DEMO_PERMUTATIONS,
    FIGURE1_PALETTE,
    apply_distortion,
    color_permutation,
    demo_permutation_names,
    make_demo,
    verify_symmetry,
)
from .io import ConfigError, load_config, load_image, save_image, save_partition_png
from .partition import Bubble, Grid, Triangular, build_partition
from .symmetry import GroupElement

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3

DEMO_STYLES = {
    "triangular": Triangular(2),
    "grid": Grid(2, 2),
    "chessboard": Grid(2, 2),
    "bubble": Bubble(3, seed=42, rmin=0.12, rmax=0.3),
}


def _parse_size(text: str) -> tuple[int, int]:
    w, _, h = text.lower().partition("x")
    w, h = int(w), int(h or w)
    if w <= 0 or h <= 0 or w % 2 or h % 2:
        raise argparse.ArgumentTypeError(f"size must be positive and even, got {text!r}")
    return w, h


class _Parser(argparse.ArgumentParser):
    # usage errors are validation failures, not I/O failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chromasym", description="Color-symmetric image distortion.")
    p.add_argument("--threads", type=int, default=None, help="worker threads for rendering (0 = auto)")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("distort", help="apply a distortion config to an image")
    d.add_argument("-i", "--input", required=True)
    d.add_argument("-c", "--config", required=True)
    d.add_argument("-o", "--output", required=True)

    v = sub.add_parser("verify", help="check a distorted image against its source and config")
    v.add_argument("-s", "--source", required=True)
    v.add_argument("-d", "--distorted", required=True)
    v.add_argument("-c", "--config", required=True)
    v.add_argument("--tolerance", type=int, default=None, help="per-channel tolerance (default: from config)")
    v.add_argument("--json", action="store_true", help="print the report as JSON")

    m = sub.add_parser("demo", help="write a flat-colored color-symmetry rectangle")
    m.add_argument("--style", choices=sorted(DEMO_STYLES), default="triangular")
    m.add_argument("--element", default="rot")
    m.add_argument("--size", type=_parse_size, default=(512, 512), help="W or WxH, even")
    m.add_argument("-o", "--output", required=True)

    mp = sub.add_parser("maps", help="export a channel map as an x,y CSV table")
    mp.add_argument("--family", required=True)
    mp.add_argument("--params", type=float, nargs="*", default=[])
    mp.add_argument("-o", "--output", required=True)

    pd = sub.add_parser("partition", help="write a PNG of a config's subsection labels")
    pd.add_argument("-c", "--config", required=True)
    src = pd.add_mutually_exclusive_group(required=True)
    src.add_argument("-i", "--input", help="take dimensions from this image")
    src.add_argument("--size", type=_parse_size, help="W or WxH, even")
    pd.add_argument("-o", "--output", required=True)
    return p


def _distort(args) -> int:
    cfg = load_config(args.config)
    img = load_image(args.input)
    part = build_partition(cfg.partition, img.shape[1], img.shape[0])
    out = apply_distortion(img, part, cfg.assignment(part), threads=args.threads)
    save_image(out, args.output)
    print(f"wrote {args.output} ({img.shape[1]}x{img.shape[0]}, {part.n_subsections} subsections, element {cfg.element.label})")
    return EXIT_OK


def _verify(args) -> int:
    cfg = load_config(args.config)
    src = load_image(args.source)
    out = load_image(args.distorted)
    if src.shape != out.shape:
        raise ValueError(f"source {src.shape} and distorted {out.shape} images differ in shape")
    part = build_partition(cfg.partition, src.shape[1], src.shape[0])
    tol = cfg.tolerance if args.tolerance is None else args.tolerance
    report = verify_symmetry(src, out, part, cfg.assignment(part), cfg.element, tol=tol, threads=args.threads)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        status = "OK" if report.ok else "FAILED"
        errs = " ".join(f"{k}={v}" for k, v in report.max_abs_error.items())
        print(f"verify {status}: {len(report.violations)} violation(s); max abs error {errs}; tolerance {tol}")
        for viol in report.violations[:20]:
            print(f"  ({viol.x}, {viol.y}) {viol.channel}: expected {viol.expected}, got {viol.actual}")
    return EXIT_OK if report.ok else EXIT_VERIFY


def _demo(args) -> int:
    g = GroupElement.parse(args.element)
    if g == GroupElement.E:
        perms = {}
    else:
        perms = {g: DEMO_PERMUTATIONS["grid" if args.style == "chessboard" else args.style][g]}
    w, h = args.size
    img = make_demo(DEMO_STYLES[args.style], list(FIGURE1_PALETTE.values()), perms, w, h)
    save_image(img, args.output)
    realized = color_permutation(img, g)
    sidecar = {
        "style": args.style,
        "element": g.label,
        "size": [w, h],
        "palette": {k: list(v) for k, v in FIGURE1_PALETTE.items()},
        "permutation": demo_permutation_names(realized, FIGURE1_PALETTE),
        "is_color_symmetry": realized.ok,
    }
    side = Path(args.output).with_suffix(".json")
    side.write_text(json.dumps(sidecar, indent=2) + "\n")
    perm = sidecar["permutation"]
    print(f"wrote {args.output} and {side}: {' '.join(map(str, perm['top']))} -> {' '.join(map(str, perm['bottom']))}")
    return EXIT_OK


def _maps(args) -> int:
    m = ChannelMap(args.family, tuple(args.params))
    export_map_csv(m, args.output)
    print(f"wrote {args.output} ({m})")
    return EXIT_OK


def _partition(args) -> int:
    cfg = load_config(args.config)
    if args.input:
        img = load_image(args.input)
        w, h = img.shape[1], img.shape[0]
    else:
        w, h = args.size
    part = build_partition(cfg.partition, w, h)
    save_partition_png(part, args.output)
    print(f"wrote {args.output} ({part.n_subsections} subsections)")
    return EXIT_OK


_COMMANDS = {"distort": _distort, "verify": _verify, "demo": _demo, "maps": _maps, "partition": _partition}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        engine.resolve_threads(args.threads)
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        for e in exc.errors:
            print(f"config error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
