import colorsys
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chromasym.color import (
    F1,
    F2,
    F3,
    F4,
    F5,
    IDENTITY,
    ChannelMap,
    ChannelMaps,
    eval_map,
    export_map_csv,
    harmonic,
    hsv_to_rgb,
    hsv_to_rgb_array,
    map_table,
    modmul,
    polynomial,
    rgb_to_hsv,
    rgb_to_hsv_array,
)

# 0.45|sin(sqrt(2) pi)|, evaluated with mpmath at 60 digits
F1_AT_005 = 0.433756139782444798629751584876

GRID = np.linspace(0.0, 1.0, 1_000_001)
channel = st.integers(0, 255)
unit = st.floats(0.0, 1.0)


# ---------------------------------------------------------------------------
# conversion
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "rgb, hsv",
    [
        ((255, 0, 0), (0.0, 1.0, 1.0)),
        ((0, 255, 0), (1 / 3, 1.0, 1.0)),
        ((0, 0, 255), (2 / 3, 1.0, 1.0)),
        ((128, 128, 128), (0.0, 0.0, 128 / 255)),
        ((0, 0, 0), (0.0, 0.0, 0.0)),
    ],
)
def test_rgb_to_hsv_examples(rgb, hsv):
    assert rgb_to_hsv(*rgb) == pytest.approx(hsv, abs=1e-15)


@given(channel, channel, channel)
def test_rgb_to_hsv_matches_colorsys(r, g, b):
    expected = colorsys.rgb_to_hsv(r / 255, g / 255, b / 255)
    assert rgb_to_hsv(r, g, b) == pytest.approx(expected, abs=1e-12)


@given(unit, unit, unit)
def test_hsv_to_rgb_matches_colorsys(h, s, v):
    ref = colorsys.hsv_to_rgb(h % 1.0, s, v)
    expected = tuple(math.floor(c * 255 + 0.5) for c in ref)
    got = hsv_to_rgb(h, s, v)
    # colorsys computes the same hexcone in a different order; allow a
    # one-step disagreement only where a channel sits on a rounding midpoint
    for gc, ec, rc in zip(got, expected, ref):
        assert gc == ec or abs(rc * 255 - math.floor(rc * 255) - 0.5) < 1e-9


def test_hsv_to_rgb_examples():
    assert hsv_to_rgb(0.0, 1.0, 1.0) == (255, 0, 0)
    assert hsv_to_rgb(1.0, 1.0, 1.0) == (255, 0, 0)


@given(unit, unit)
def test_zero_saturation_ignores_hue(h, v):
    level = math.floor(255 * v + 0.5)
    assert hsv_to_rgb(h, 0.0, v) == (level, level, level)


def test_conversion_rejects_out_of_range():
    with pytest.raises(ValueError):
        rgb_to_hsv(256, 0, 0)
    with pytest.raises(ValueError):
        hsv_to_rgb(0.5, 1.2, 1.0)


def test_rgb_round_trip_random_million():
    rng = np.random.default_rng(12345)
    rgb = rng.integers(0, 256, size=(1_000_000, 3)).astype(np.uint8)
    np.testing.assert_array_equal(hsv_to_rgb_array(rgb_to_hsv_array(rgb)), rgb)


def test_hsv_round_trip_quantization_bounds():
    rng = np.random.default_rng(7)
    hsv = rng.random((500_000, 3))
    back = rgb_to_hsv_array(hsv_to_rgb_array(hsv))
    err = np.abs(back - hsv)
    err[:, 0] = np.minimum(err[:, 0], 1.0 - err[:, 0])
    s, v = hsv[:, 1], hsv[:, 2]
    chroma = s * v
    # value is quantized directly
    assert (err[:, 2] <= 0.5 / 255 + 1e-9).all()
    # saturation and hue divide quantized channels by v and by chroma
    assert (err[:, 1] <= 1 / (255 * v) + 1e-9).all()
    chromatic = chroma >= 2 / 255
    assert (err[chromatic, 0] <= 1 / (765 * chroma[chromatic]) + 1e-9).all()
    # with enough chroma every channel is inside one 8-bit step
    strong = chroma >= 0.5
    assert (err[strong] <= 1 / 255 + 1e-9).all()


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------

def test_map_examples():
    assert eval_map(F2, 0.0) == 0.5
    assert eval_map(F3, 0.5) == 1.0
    assert eval_map(F4, 0.5) == 0.0
    assert eval_map(modmul(2), 0.75) == 0.5
    assert eval_map(F5, 0.0) == pytest.approx(0.3, abs=1e-15)
    assert eval_map(F1, 0.05) == pytest.approx(F1_AT_005, abs=1e-12)
    assert eval_map(F3, 0.25) == 0.75


@pytest.mark.parametrize("m", [IDENTITY, F1, F2, F3, F4, F5, modmul(1), modmul(3), modmul(17)], ids=str)
def test_named_families_stay_in_unit_interval(m):
    y = eval_map(m, GRID)
    assert y.min() >= 0.0 and y.max() <= 1.0


def test_f3_f4_identities():
    f3, f4 = eval_map(F3, GRID), eval_map(F4, GRID)
    assert np.abs(f4 - (2 * GRID - 1) ** 2).max() < 1e-12
    assert np.abs(f3 + f4 - 1).max() < 1e-12


def test_f5_range_is_zero_to_point_eight():
    y = eval_map(F5, GRID)
    assert y.max() == pytest.approx(0.8, abs=1e-12)
    assert y.min() > 0.0


@given(unit)
def test_identity_is_bit_exact(x):
    y = eval_map(IDENTITY, x)
    assert y == x and math.copysign(1, y) == math.copysign(1, x)


def test_identity_array_is_same_values():
    np.testing.assert_array_equal(eval_map(IDENTITY, GRID), GRID)


@settings(max_examples=50)
@given(st.lists(st.floats(-5, 5), min_size=8, max_size=8))
def test_harmonic_is_clamped(params):
    y = eval_map(harmonic(*params), GRID[::1000])
    assert y.min() >= 0.0 and y.max() <= 1.0


def test_harmonic_formula():
    m = harmonic(0.1, 0.2, 3.0, 0.3, 5.0, 0.1, 7.0, 0.2)
    x = 0.37
    expected = (
        0.1
        + 0.2 * abs(math.sin(3 * math.pi * x))
        + 0.3 * math.sin(5 * math.pi * x)
        + 0.1 * math.cos(7 * math.pi * x)
        + 0.2 * x
    )
    assert eval_map(m, x) == pytest.approx(min(max(expected, 0), 1), abs=1e-14)


def test_polynomial_ascending_powers_and_clamp():
    m = polynomial([0.1, 0.5, 0.25])
    assert eval_map(m, 0.4) == pytest.approx(0.1 + 0.5 * 0.4 + 0.25 * 0.16, abs=1e-15)
    assert eval_map(polynomial([2.0]), 0.3) == 1.0
    assert eval_map(polynomial([-1.0, 0.5]), 0.3) == 0.0


@pytest.mark.parametrize(
    "family, params",
    [("modmul", (0,)), ("modmul", (-2,)), ("modmul", (1.5,)), ("f1", (1,)), ("nope", ()), ("poly", ()), ("harmonic", (1, 2))],
)
def test_invalid_maps_rejected(family, params):
    with pytest.raises(ValueError):
        ChannelMap(family, params)


def test_channel_maps_default_to_identity():
    cm = ChannelMaps(hue=F3)
    assert cm.saturation == IDENTITY and cm.value == IDENTITY
    hsv = np.array([[0.25, 0.4, 0.6]])
    np.testing.assert_allclose(cm.apply_hsv(hsv), [[0.75, 0.4, 0.6]])


def test_channel_map_json_round_trip():
    for m in (F1, modmul(3), harmonic(0, 1, 2, 3, 4, 5, 6, 7), polynomial([0.5, 0.25])):
        assert ChannelMap.from_json(m.to_json()) == m


def test_map_table_csv(tmp_path):
    path = tmp_path / "f3.csv"
    export_map_csv(F3, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "x,y"
    assert len(lines) == 4097
    assert "0.500000000,1.000000000" in lines
    x, y = map_table(F3)
    assert np.all(np.diff(x) == 1 / 4096)
    assert lines[1] == "0.000000000,0.000000000"
