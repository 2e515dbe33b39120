"""Acceptance criteria, one test per criterion at its stated tolerance."""

import itertools
import json
import time

import numpy as np
import pytest

from chromasym.cli import main as cli_main
from chromasym.color import (
    F1,
    F2,
    F3,
    F4,
    F5,
    IDENTITY,
    IDENTITY_MAPS,
    ChannelMaps,
    eval_map,
    hsv_to_rgb_array,
    modmul,
    rgb_to_hsv_array,
)
from chromasym.engine import (
    FIGURE1_PALETTE,
    Assignment,
    apply_distortion,
    color_permutation,
    make_demo,
    perm_from_cycles,
    symmetric_assignment,
    verify_symmetry,
)
from chromasym.io import load_image, save_image
from chromasym.partition import Bubble, Grid, PerPixel, Triangular, build_partition, pair_set
from chromasym.symmetry import ELEMENTS, GroupElement, compose, map_coord

E, ROT, REFH, REFV = GroupElement.E, GroupElement.ROT, GroupElement.REFH, GroupElement.REFV
SPECS = [Triangular(2), Grid(2, 2), Bubble(3, seed=42), PerPixel()]
LOWER = [F1, F2, F3, F4, F5, modmul(3)]


@pytest.mark.criterion(1, "Figure-1 logic: triangular demo realizes (o b y p -> b o y p) under rotation, < 1 s at 512x512")
def test_ac1_figure1_rotation_permutation():
    names = tuple(FIGURE1_PALETTE)
    perm = perm_from_cycles(names, "ob")
    t0 = time.perf_counter()
    img = make_demo(Triangular(2), list(FIGURE1_PALETTE.values()), {ROT: perm}, 512, 512)
    result = color_permutation(img, ROT)
    elapsed = time.perf_counter() - t0
    name_of = {v: k for k, v in FIGURE1_PALETTE.items()}
    two_line = {name_of[a]: name_of[b] for a, b in zip(result.top, result.bottom)}
    assert result.ok
    assert two_line == {"o": "b", "b": "o", "y": "y", "p": "p"}
    assert build_partition(Triangular(2), 512, 512).n_subsections == 8
    assert elapsed < 1.0, f"{elapsed:.3f} s"


@pytest.mark.criterion(2, "pair-template closure: verify accepts every render on the photo fixture, tol=1, zero violations, < 30 s")
def test_ac2_closure_grid(photo):
    assert photo.shape == (64, 64, 3)
    t0 = time.perf_counter()
    runs = 0
    for g, spec, lower in itertools.product((ROT, REFH, REFV), SPECS, LOWER):
        part = build_partition(spec, 64, 64)
        a = symmetric_assignment(part, g, IDENTITY_MAPS, ChannelMaps(hue=lower))
        out = apply_distortion(photo, part, a)
        report = verify_symmetry(photo, out, part, a, g, tol=1)
        assert report.ok and not report.violations, (g, spec, lower)
        runs += 1
    elapsed = time.perf_counter() - t0
    assert runs == 72
    assert elapsed < 30.0, f"{elapsed:.1f} s"


@pytest.mark.criterion(3, "map ranges on 10^6 points and f2/f3/f4/f5 identities to 1e-12")
def test_ac3_map_ranges_and_identities():
    x = np.linspace(0.0, 1.0, 1_000_000)
    for m in (IDENTITY, F1, F2, F3, F4, F5, modmul(1), modmul(2), modmul(3), modmul(10)):
        y = eval_map(m, x)
        assert y.min() >= 0.0 and y.max() <= 1.0, m
    f3, f4 = eval_map(F3, x), eval_map(F4, x)
    assert np.abs(f3 + f4 - 1.0).max() < 1e-12
    assert np.abs(f4 - (2 * x - 1) ** 2).max() < 1e-12
    assert abs(eval_map(F2, 0.0) - 0.5) < 1e-12
    assert abs(eval_map(F3, 0.5) - 1.0) < 1e-12
    assert abs(eval_map(F4, 0.5) - 0.0) < 1e-12
    assert abs(eval_map(F5, 0.0) - 0.3) < 1e-12


@pytest.mark.criterion(4, "group algebra: Klein four-group table and action homomorphism on 6x8 (16 pairs x 48 pixels)")
def test_ac4_group_algebra():
    for g in ELEMENTS:
        assert compose(g, g) == E
        assert compose(E, g) == g == compose(g, E)
    assert compose(REFH, REFV) == ROT == compose(REFV, REFH)
    assert compose(ROT, REFH) == REFV and compose(ROT, REFV) == REFH
    for a, b in itertools.product(ELEMENTS, repeat=2):
        assert compose(a, b) == compose(b, a)
        assert compose(a, b) in ELEMENTS
    checks = 0
    for a, b in itertools.product(ELEMENTS, repeat=2):
        for x, y in itertools.product(range(6), range(8)):
            assert map_coord(compose(a, b), x, y, 6, 8) == map_coord(a, *map_coord(b, x, y, 6, 8), 6, 8)
            checks += 1
    assert checks == 16 * 48


@pytest.mark.criterion(5, "partition symmetry on 32x32 for all specs, coverage, equal pair sizes, bubble determinism")
def test_ac5_partition_symmetry():
    y, x = np.mgrid[0:32, 0:32]
    for spec in SPECS:
        part = build_partition(spec, 32, 32)
        counts = part.counts()
        assert counts.sum() == 32 * 32
        assert part.labels.min() >= 0 and part.labels.max() < part.n_subsections
        for g in (ROT, REFH, REFV):
            table = pair_set(part, g).partner_table(part.n_subsections)
            nx, ny = map_coord(g, x, y, 32, 32)
            np.testing.assert_array_equal(part.labels[ny, nx], table[part.labels])
            assert (counts == counts[table]).all()
    a = build_partition(Bubble(3, seed=42), 32, 32)
    b = build_partition(Bubble(3, seed=42), 32, 32)
    assert a.labels.tobytes() == b.labels.tobytes()


@pytest.mark.criterion(6, "RGB -> HSV -> RGB integer-identical over all 2^24 colors, < 60 s")
def test_ac6_exhaustive_round_trip():
    t0 = time.perf_counter()
    g, b = np.meshgrid(np.arange(256, dtype=np.uint8), np.arange(256, dtype=np.uint8), indexing="ij")
    failures = 0
    for r in range(256):
        rgb = np.stack([np.full_like(g, r), g, b], axis=-1)
        failures += int((hsv_to_rgb_array(rgb_to_hsv_array(rgb)) != rgb).any(axis=-1).sum())
    elapsed = time.perf_counter() - t0
    assert failures == 0
    assert elapsed < 60.0, f"{elapsed:.1f} s"


@pytest.mark.criterion(7, "all-identity assignment is integer-identical on flat, gradient and photo fixtures")
def test_ac7_identity_preservation(flat, gradient, photo):
    for img in (flat, gradient, photo):
        h, w = img.shape[:2]
        for spec in SPECS:
            part = build_partition(spec, w, h)
            out = apply_distortion(img, part, Assignment.uniform(part.n_subsections))
            np.testing.assert_array_equal(out, img)


@pytest.mark.criterion(8, "one +8 mutation flips verify to exit 3 with exactly one violation")
def test_ac8_negative_verification(tmp_path, photo, capsys):
    cfg = {
        "element": "refh",
        "partition": {"kind": "triangular", "triangles": 2},
        "maps": [{"subsections": "pairs", "hue": {"family": "f4"}}],
        "tolerance": 1,
    }
    (tmp_path / "cfg.json").write_text(json.dumps(cfg))
    save_image(photo, tmp_path / "src.png")
    args = ["-c", str(tmp_path / "cfg.json")]
    assert cli_main(["distort", "-i", str(tmp_path / "src.png"), "-o", str(tmp_path / "out.png"), *args]) == 0
    assert cli_main(["verify", "-s", str(tmp_path / "src.png"), "-d", str(tmp_path / "out.png"), *args]) == 0

    out = load_image(tmp_path / "out.png")
    y, x, c = 45, 20, 1
    assert out[y, x, c] <= 247
    out[y, x, c] += 8
    save_image(out, tmp_path / "bad.png")
    capsys.readouterr()
    code = cli_main(["verify", "-s", str(tmp_path / "src.png"), "-d", str(tmp_path / "bad.png"), "--json", *args])
    report = json.loads(capsys.readouterr().out)
    assert code == 3
    assert report["violation_count"] == 1
    (v,) = report["violations"]
    assert (v["x"], v["y"], v["channel"], v["actual"] - v["expected"]) == (x, y, "g", 8)
