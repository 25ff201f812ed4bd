"""Fuzzy C-Means and Vector Fuzzy C-Means clustering."""

from ._core import *  # noqa: F401,F403
from ._core import (
    DataMatrix,
    FitConfig,
    GrayImage,
    VfcmError,
    crisp_assign,
    fcm_fit,
    init_centers_scatter,
    load_csv,
    segment_binary,
    vfc_fit,
)

__all__ = [
    "DataMatrix",
    "FitConfig",
    "GrayImage",
    "VfcmError",
    "crisp_assign",
    "fcm_fit",
    "init_centers_scatter",
    "load_csv",
    "segment_binary",
    "vfc_fit",
]
__version__ = "0.1.0"
