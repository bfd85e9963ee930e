"""Double and triple circulant codes with exact and stochastic minimum-distance tools."""

from __future__ import annotations

__version__ = "0.1.0"

from .codes import CodeSpec, Family, build_generator, canonicalize
from .exact import DistanceEstimate, brute_force_distance, chen_distance, circulant_exact_distance
from .gf2 import BinaryMatrix, BitVector

__all__ = [
    "BinaryMatrix",
    "BitVector",
    "CodeSpec",
    "DistanceEstimate",
    "Family",
    "__version__",
    "brute_force_distance",
    "build_generator",
    "canonicalize",
    "chen_distance",
    "circulant_exact_distance",
]
