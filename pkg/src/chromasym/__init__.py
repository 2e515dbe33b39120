"""Color-symmetric image distortion under the rectangle group D2."""

from .color import (
    F1,
    F2,
    F3,
    F4,
    F5,
    IDENTITY,
    IDENTITY_MAPS,
    ChannelMap,
    ChannelMaps,
    eval_map,
    harmonic,
    hsv_to_rgb,
    hsv_to_rgb_array,
    modmul,
    polynomial,
    rgb_to_hsv,
    rgb_to_hsv_array,
)
from .engine import (
    FIGURE1_PALETTE,
    Assignment,
    VerifyReport,
    apply_distortion,
    check_transitive,
    color_permutation,
    make_demo,
    symmetric_assignment,
    verify_symmetry,
)
from .partition import Bubble, Grid, Partition, PerPixel, Triangular, build_partition, pair_set
from .symmetry import GroupElement, Section, compose, map_coord, section_of, transform_image

__version__ = "0.1.0"
