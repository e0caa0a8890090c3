"""Moment-based bounds on order statistics, segment means, higher moments,
eigenvalues and polynomial roots, with a brute-force verification harness."""

from __future__ import annotations

from .entry import BoundEntry
from .errors import (
    BoundInapplicable,
    DegenerateSample,
    EmptySample,
    InputError,
    InvalidInput,
    InvalidValue,
    MBoundsError,
    NotAllRootsReal,
    ParseError,
    PreconditionError,
    RequiresDistinctIntegers,
    WidenInterval,
)
from .matrix import SquareMatrix
from .moments import Sample, central_moment, mean, new_sample, raw_moment, segment_mean
from .poly import DepressedPolynomial, depress

__version__ = "0.1.0"

__all__ = [
    "BoundEntry",
    "BoundInapplicable",
    "DegenerateSample",
    "DepressedPolynomial",
    "EmptySample",
    "InputError",
    "InvalidInput",
    "InvalidValue",
    "MBoundsError",
    "NotAllRootsReal",
    "ParseError",
    "PreconditionError",
    "RequiresDistinctIntegers",
    "Sample",
    "SquareMatrix",
    "WidenInterval",
    "central_moment",
    "depress",
    "mean",
    "new_sample",
    "raw_moment",
    "segment_mean",
]
