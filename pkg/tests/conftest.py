from pathlib import Path

import numpy as np
import pytest
from PIL import Image

FIXTURES = Path(__file__).parent / "fixtures"


def _load(name):
    return np.asarray(Image.open(FIXTURES / name).convert("RGB"))


@pytest.fixture(scope="session")
def photo():
    """64x64 downscaled photograph."""
    return _load("photo64.png")


@pytest.fixture(scope="session")
def coffee():
    return _load("coffee96.png")


@pytest.fixture(scope="session")
def flat():
    img = np.empty((32, 48, 3), dtype=np.uint8)
    img[...] = (70, 140, 210)
    return img


@pytest.fixture(scope="session")
def gradient():
    y, x = np.mgrid[0:40, 0:64]
    return np.stack([x * 4, y * 6, (x + y) * 2 % 256], axis=-1).astype(np.uint8)


def uniform_hsv_image(h, s, v, width=8, height=8):
    from chromasym.color import hsv_to_rgb_array

    rgb = hsv_to_rgb_array(np.array([h, s, v]))
    return np.broadcast_to(rgb, (height, width, 3)).copy()


# one PASS/FAIL line per acceptance criterion in the terminal summary
_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    key = mark.args
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        failed = call.excinfo is not None
        _criteria[key] = _criteria.get(key, True) and not failed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), ok in sorted(_criteria.items()):
        terminalreporter.write_line(f"AC{number} {'PASS' if ok else 'FAIL'}  {title}")
