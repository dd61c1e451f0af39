"""Exact heat-kernel expansion engine.

Computes coincidence limits of covariant derivatives of heat-kernel
coefficients for Laplace-type operators on a general internal bundle,
assembles traced early-time expansions on scalar/vector/tensor and
transverse-vector spaces as exact rational functions of the dimension, and
cross-checks them against round-sphere spectral sums.
"""

from .exact import D, DimRational, DimensionPoleError, ZeroDenominatorError, dr

__all__ = ["D", "DimRational", "DimensionPoleError", "ZeroDenominatorError", "dr"]
__version__ = "0.1.0"
