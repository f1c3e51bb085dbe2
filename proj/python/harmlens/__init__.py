"""Zeros of conj(r(z)) - z: finding, classification, certification, and the
n-point gravitational lens equation."""

from ._core import (
    Bbox,
    CheckResult,
    CurveSet,
    Error,
    HarmonicZero,
    HypothesisError,
    ImageSet,
    LensConfig,
    NotApplicableError,
    NumericalError,
    Orientation,
    ParseError,
    PointMass,
    PoleOrder,
    RegionInfo,
    RootRecord,
    RootSet,
    SolveReport,
    VerifyReport,
    find_images,
    find_roots,
    parity_check,
    polygon_lens,
    solve_rational,
    trace_critical,
    verify_example,
)

__all__ = [
    "Bbox",
    "CheckResult",
    "CurveSet",
    "Error",
    "HarmonicZero",
    "HypothesisError",
    "ImageSet",
    "LensConfig",
    "NotApplicableError",
    "NumericalError",
    "Orientation",
    "ParseError",
    "PointMass",
    "PoleOrder",
    "RegionInfo",
    "RootRecord",
    "RootSet",
    "SolveReport",
    "VerifyReport",
    "find_images",
    "find_roots",
    "parity_check",
    "polygon_lens",
    "solve_rational",
    "trace_critical",
    "verify_example",
]

__version__ = "0.1.0"
