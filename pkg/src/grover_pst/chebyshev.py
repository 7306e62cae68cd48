"""
Chebyshev polynomials of the first kind.

``T_0 = 1``, ``T_1 = x``, ``T_n = 2x T_{n-1} - T_{n-2}``. Scalar values are
available in floating point and exactly over the rationals; matrix values are
computed either spectrally or with the matrix recurrence.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .spectral import DEFAULT_CLUSTER_TOL, SpectralDecomposition

__all__ = [
    "RationalValue",
    "cheb_scalar",
    "cheb_rational",
    "first_unimodular_time",
    "cheb_matrix",
    "cheb_matrix_recurrence",
    "rational_pst_filter",
    "RATIONAL_COS_VALUES",
]

RationalValue = Fraction

# Rational numbers that are cosines of rational multiples of pi.
RATIONAL_COS_VALUES = frozenset(
    Fraction(v) for v in ("-1", "-1/2", "0", "1/2", "1")
)

_EPS = np.finfo(float).eps


def _check_degree(n: int) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"Chebyshev degree must be a nonnegative integer (got {n})")
    return int(n)


def cheb_scalar(n: int, x):
    """
    ``T_n(x)`` by the three-term recurrence; ``x`` may be a float or an array.

    Inside ``[-1, 1]`` the result is checked against ``|T_n| <= 1`` with a
    slack that covers accumulated rounding (``1e-12`` or ``8 n^2 eps``,
    whichever is larger).
    """
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    prev, cur = np.ones_like(x), x.copy()
    if n == 0:
        cur = prev
    else:
        for _ in range(n - 1):
            prev, cur = cur, 2.0 * x * cur - prev
    inside = np.abs(x) <= 1.0
    slack = max(1e-12, 8.0 * n * n * _EPS)
    assert np.all(np.abs(cur[inside]) <= 1.0 + slack), "|T_n(x)| > 1 on [-1, 1]"
    return float(cur) if cur.ndim == 0 else cur


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def cheb_rational(n: int, x: RationalValue) -> RationalValue:
    """
    Exact ``T_n(x)`` for rational ``x``.

    With ``x = p/q`` the scaled numerators ``N_k = q^k T_k(x)`` are integers
    obeying ``N_k = 2p N_{k-1} - q^2 N_{k-2}``, so the loop is pure integer
    arithmetic and a single reduction happens at the end.
    """
    n = _check_degree(n)
    x = _as_fraction(x)
    p, q = x.numerator, x.denominator
    if n == 0:
        return Fraction(1)
    prev, cur = 1, p
    for _ in range(n - 1):
        prev, cur = cur, 2 * p * cur - q * q * prev
    return Fraction(cur, q**n)


def first_unimodular_time(x: RationalValue, n_max: int) -> Optional[int]:
    """
    Smallest ``1 <= τ <= n_max`` with ``T_τ(x) = ±1`` exactly, else ``None``.

    Exhaustive search; used as the brute-force reference for
    :func:`rational_pst_filter`.
    """
    x = _as_fraction(x)
    p, q = x.numerator, x.denominator
    prev, cur, scale = 1, p, q
    for tau in range(1, n_max + 1):
        if tau > 1:
            prev, cur = cur, 2 * p * cur - q * q * prev
            scale *= q
        if cur == scale or cur == -scale:
            return tau
    return None


def cheb_matrix(sd: SpectralDecomposition, n: int, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> np.ndarray:
    """``T_n(M) = Σ T_n(λ_i) E_i`` from a spectral decomposition of ``M``."""
    n = _check_degree(n)
    if any(abs(lam) > 1.0 + cluster_tol for lam in sd.eigenvalues):
        raise ValueError("spectrum leaves [-1, 1]; not a discriminant")
    vals = cheb_scalar(n, np.clip(np.array(sd.eigenvalues), -1.0, 1.0))
    out = np.zeros((sd.dim, sd.dim))
    for v, E in zip(np.atleast_1d(vals), sd.projectors):
        out += v * E
    return out


def cheb_matrix_recurrence(M: np.ndarray, n: int) -> np.ndarray:
    """``T_n(M)`` by ``T_k(M) = 2 M T_{k-1}(M) - T_{k-2}(M)``."""
    n = _check_degree(n)
    M = np.asarray(M, dtype=float)
    prev, cur = np.eye(M.shape[0]), M.copy()
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * M @ cur - prev
    return cur


def rational_pst_filter(x: Union[RationalValue, int, str]) -> bool:
    """
    Whether a rational eigenvalue can satisfy ``T_τ(x) = ±1`` for some τ.

    A rational number in ``[-1, 1]`` is a cosine of a rational multiple of pi
    only if it is one of ``0, ±1/2, ±1``; any other rational support
    eigenvalue rules out perfect state transfer between vertex type states.

    Raises
    ------
    ValueError
        If ``|x| > 1``.
    """
    x = _as_fraction(x)
    if abs(x) > 1:
        raise ValueError(f"|x| must not exceed 1 (got {x})")
    return x in RATIONAL_COS_VALUES
