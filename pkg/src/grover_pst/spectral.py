"""
Spectral decomposition of real symmetric matrices into distinct eigenvalues
and orthogonal projectors, with polynomial functional calculus and
eigenvalue supports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

__all__ = [
    "SpectralDecomposition",
    "decompose",
    "poly_apply",
    "support",
    "DEFAULT_CLUSTER_TOL",
    "DEFAULT_SUPPORT_TOL",
]

DEFAULT_CLUSTER_TOL = 1e-8
DEFAULT_SUPPORT_TOL = 1e-9
SYMMETRY_TOL = 1e-12

Polynomial = Union[Sequence[float], Callable[[float], float]]


@dataclass(frozen=True)
class SpectralDecomposition:
    """
    ``M = sum_i eigenvalues[i] * projectors[i]`` with distinct eigenvalues in
    decreasing order.
    """

    eigenvalues: tuple[float, ...]
    projectors: tuple[np.ndarray, ...]
    dim: int

    def __post_init__(self) -> None:
        if len(self.eigenvalues) != len(self.projectors):
            raise ValueError("one projector per eigenvalue required")
        if list(self.eigenvalues) != sorted(self.eigenvalues, reverse=True):
            raise ValueError("eigenvalues must be in decreasing order")

    def __len__(self) -> int:
        return len(self.eigenvalues)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(int(round(np.trace(E))) for E in self.projectors)

    def reconstruct(self) -> np.ndarray:
        return poly_apply(self, lambda x: x)

    def projector_residuals(self) -> dict[str, float]:
        """Max-norm defects of ``E_i E_j = δ_ij E_i``, ``E_i^T = E_i`` and ``ΣE_i = I``."""
        eye = np.eye(self.dim)
        orth = 0.0
        for i, Ei in enumerate(self.projectors):
            for j, Ej in enumerate(self.projectors):
                target = Ei if i == j else 0.0
                orth = max(orth, float(np.abs(Ei @ Ej - target).max()))
        return {
            "orthogonal": orth,
            "hermitian": max(float(np.abs(E - E.T).max()) for E in self.projectors),
            "resolution": float(np.abs(sum(self.projectors) - eye).max()),
        }


def decompose(M: np.ndarray, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> SpectralDecomposition:
    """
    Numerically decompose a real symmetric matrix.

    Eigenvalues are sorted and split wherever consecutive values differ by
    more than ``cluster_tol``. Each cluster becomes one distinct eigenvalue
    (the cluster mean) whose projector is the sum of the cluster's rank-one
    eigenprojectors.

    Raises
    ------
    ValueError
        If ``M`` is not square or not symmetric within 1e-12.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if np.abs(M - M.T).max(initial=0.0) > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric")
    vals, vecs = np.linalg.eigh(M)
    order = np.argsort(vals)[::-1]
    vals, vecs = vals[order], vecs[:, order]

    clusters: list[list[int]] = [[0]]
    for k in range(1, len(vals)):
        if vals[clusters[-1][-1]] - vals[k] > cluster_tol:
            clusters.append([k])
        else:
            clusters[-1].append(k)

    eigenvalues = []
    projectors = []
    for idx in clusters:
        V = vecs[:, idx]
        E = V @ V.T
        E.setflags(write=False)
        eigenvalues.append(float(vals[idx].mean()))
        projectors.append(E)
    return SpectralDecomposition(tuple(eigenvalues), tuple(projectors), M.shape[0])


def _evaluate(p: Polynomial, x: float) -> float:
    if callable(p):
        return p(x)
    # coefficients in increasing degree
    return float(np.polynomial.polynomial.polyval(x, np.asarray(p, dtype=float)))


def poly_apply(sd: SpectralDecomposition, p: Polynomial) -> np.ndarray:
    """``p(M) = Σ p(λ_i) E_i`` for a callable or increasing-degree coefficient list."""
    out = np.zeros((sd.dim, sd.dim))
    for lam, E in zip(sd.eigenvalues, sd.projectors):
        out += _evaluate(p, lam) * E
    return out


def support(sd: SpectralDecomposition, x: int, tol: float = DEFAULT_SUPPORT_TOL) -> tuple[float, ...]:
    """
    Eigenvalue support of the standard basis vector ``e_x``.

    ``||E_i e_x||^2`` equals the diagonal entry ``E_i[x, x]``, so no vector
    products are needed.
    """
    if not 0 <= x < sd.dim:
        raise ValueError(f"index {x} out of range for dimension {sd.dim}")
    return tuple(
        lam
        for lam, E in zip(sd.eigenvalues, sd.projectors)
        if np.sqrt(max(E[x, x], 0.0)) > tol
    )
