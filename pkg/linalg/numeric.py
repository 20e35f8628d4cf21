"""
Floating-point rank oracle: mu evaluated at exp(i*pi*theta), rank by SVD.
"""

from __future__ import annotations

import cmath
import logging
from fractions import Fraction

import numpy as np

from algebra.scalars import to_complex
from config.settings import (
    NUMERIC_RANK_TOLERANCE,
    RATIONAL_DENOMINATOR_LIMIT,
    RATIONAL_MATCH_TOLERANCE,
)
from linalg.exact import SparseMatrix

logger = logging.getLogger("numeric")


def check_irrational(theta: float) -> None:
    """Reject theta that is (numerically) rational: lambda would be a root of unity."""
    approx = Fraction(theta).limit_denominator(RATIONAL_DENOMINATOR_LIMIT)
    if abs(float(approx) - theta) < RATIONAL_MATCH_TOLERANCE:
        raise ValueError(
            f"theta = {theta} is rational ({approx}); lambda^n = 1 for n = {approx.denominator}"
        )


def mu_value(theta: float) -> complex:
    return cmath.exp(1j * cmath.pi * theta)


def to_numpy(M: SparseMatrix, theta: float) -> np.ndarray:
    mu = mu_value(theta)
    dense = np.zeros((M.rows, M.cols), dtype=complex)
    cache = {}
    for (r, c), x in M.entries.items():
        val = cache.get(x)
        if val is None:
            val = cache[x] = to_complex(x, mu)
        dense[r, c] = val
    return dense


def numeric_rank(M: SparseMatrix, theta: float) -> int:
    check_irrational(theta)
    if M.rows == 0 or M.cols == 0 or M.is_zero():
        return 0
    singular = np.linalg.svd(to_numpy(M, theta), compute_uv=False)
    cutoff = NUMERIC_RANK_TOLERANCE * singular[0]
    r = int(np.sum(singular > cutoff))
    logger.debug("numeric rank %d of %dx%d (sigma_max=%.3e)", r, M.rows, M.cols, singular[0])
    return r
