"""Fourier contour descriptors: encode, decode, fit and score closed polygons."""

from ._core import (
    ContourError,
    IoError,
    NumericalError,
    ParseError,
    ValidationError,
    chamfer_distance,
    compute_oes,
    compute_sec,
    count_self_intersections,
    decode,
    encode,
    fit,
    periodicity_gap,
    resample,
    sparsify,
    truncate,
)

__all__ = [
    "ContourError",
    "IoError",
    "NumericalError",
    "ParseError",
    "ValidationError",
    "chamfer_distance",
    "compute_oes",
    "compute_sec",
    "count_self_intersections",
    "decode",
    "encode",
    "fit",
    "periodicity_gap",
    "resample",
    "sparsify",
    "truncate",
]
