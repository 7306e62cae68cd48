"""
Grover walk matrices for a graph.

For a graph with arc set 𝒜 this builds

- the boundary matrix ``d`` (V×𝒜), ``d[x, a] = δ(x, t(a)) / sqrt(deg x)``,
- the shift ``S`` (𝒜×𝒜), the permutation ``a -> a^{-1}``,
- the time evolution ``U = S (2 d^T d - I)``,
- the discriminant ``P = d S d^T`` (V×V, symmetric).

``U`` is never multiplied out for stepping: applying it means averaging the
incoming amplitudes at each terminus, reflecting, then permuting arcs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .graph_core import ArcSet, Graph, build_arcs

__all__ = [
    "WalkOperators",
    "ArcState",
    "build",
    "vertex_state",
    "arc_state",
    "step",
    "operator_residuals",
]

# Below this many arcs the dense product is formed once to cross-check the
# sparse application.
DENSE_CHECK_ARCS = 64


@dataclass(frozen=True)
class ArcState:
    """Complex amplitude vector indexed by arcs."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1:
            raise ValueError("arc state must be a 1-d vector")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def __len__(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_state(self, tol: float = 1e-9) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def inner(self, other: ArcState) -> complex:
        """``<self, other>``, linear in ``self`` and conjugate-linear in ``other``."""
        return complex(np.vdot(other.amplitudes, self.amplitudes))


@dataclass(frozen=True)
class WalkOperators:
    graph: Graph
    arcs: ArcSet
    d: np.ndarray
    P: np.ndarray
    _deg_at_terminus: np.ndarray = field(repr=False)

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    @cached_property
    def S(self) -> np.ndarray:
        n = self.num_arcs
        S = np.zeros((n, n))
        S[np.arange(n), self.arcs.inverse] = 1.0
        return S

    def coin(self, psi: np.ndarray) -> np.ndarray:
        """Apply ``2 d^T d - I`` (Grover reflection at every terminus)."""
        t = self.arcs.terminus
        sums = np.zeros((self.graph.n,) + psi.shape[1:], dtype=psi.dtype)
        np.add.at(sums, t, psi)
        scale = (2.0 / self._deg_at_terminus).reshape((-1,) + (1,) * (psi.ndim - 1))
        return scale * sums[t] - psi

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """
        Apply ``U`` once to a vector or to each column of a matrix over arcs.
        """
        return self.coin(psi)[self.arcs.inverse]

    def dense_U(self) -> np.ndarray:
        """``U`` as an explicit matrix product, for cross-checking only."""
        C = 2.0 * self.d.T @ self.d - np.eye(self.num_arcs)
        return self.S @ C

    def power(self, t: int) -> np.ndarray:
        """``U^t`` as a dense matrix, built by repeated sparse application."""
        if t < 0:
            raise ValueError(f"time must be nonnegative (got {t})")
        M = np.eye(self.num_arcs)
        for _ in range(t):
            M = self.apply(M)
        return M

    def vertex_states(self) -> np.ndarray:
        """Matrix ``d^T`` whose column ``x`` is the vertex type state at ``x``."""
        return self.d.T.copy()


def build(g: Graph, arcs: ArcSet | None = None) -> WalkOperators:
    if arcs is None:
        arcs = build_arcs(g)
    deg = np.asarray(g.degrees, dtype=float)
    n_arcs = len(arcs)
    d = np.zeros((g.n, n_arcs))
    d[arcs.terminus, np.arange(n_arcs)] = 1.0 / np.sqrt(deg[arcs.terminus])
    # P = d S d^T; S only permutes columns of d.
    P = d[:, arcs.inverse] @ d.T
    deg_t = deg[arcs.terminus]
    for arr in (d, P, deg_t):
        arr.setflags(write=False)
    w = WalkOperators(g, arcs, d, P, deg_t)
    if n_arcs <= DENSE_CHECK_ARCS:
        sparse = w.apply(np.eye(n_arcs))
        if not np.allclose(sparse, w.dense_U(), atol=1e-12, rtol=0):
            raise AssertionError("sparse and dense time evolution disagree")
    return w


def vertex_state(w: WalkOperators, x: int | str) -> ArcState:
    """Vertex type state ``d^T e_x``: weight ``1/sqrt(deg x)`` on arcs into ``x``."""
    v = w.graph.vertex(x)
    return ArcState(w.d[v])


def arc_state(w: WalkOperators, a: int) -> ArcState:
    if not 0 <= a < w.num_arcs:
        raise ValueError(f"arc index {a} out of range for {w.num_arcs} arcs")
    amps = np.zeros(w.num_arcs)
    amps[a] = 1.0
    return ArcState(amps)


def step(w: WalkOperators, s: ArcState, t: int = 1) -> ArcState:
    """Return ``U^t s``."""
    if t < 0:
        raise ValueError(f"time must be nonnegative (got {t})")
    if len(s) != w.num_arcs:
        raise ValueError(f"state has {len(s)} entries, graph has {w.num_arcs} arcs")
    psi = s.amplitudes.copy()
    for _ in range(t):
        psi = w.apply(psi)
    return ArcState(psi)


def operator_residuals(w: WalkOperators) -> dict[str, float]:
    """
    Max-norm residuals of the defining identities.

    Keys: ``ddT`` (``d d^T - I``), ``S2`` (``S^2 - I``), ``UTU``
    (``U^T U - I``), ``P_def`` (``P - d S d^T`` with dense ``S``), ``P_sym``
    and, for regular graphs, ``P_adj`` (``P - A/k``).
    """
    n, n_arcs = w.graph.n, w.num_arcs
    U = w.power(1)
    res = {
        "ddT": float(np.abs(w.d @ w.d.T - np.eye(n)).max()),
        "S2": float(np.abs(w.S @ w.S - np.eye(n_arcs)).max()),
        "UTU": float(np.abs(U.T @ U - np.eye(n_arcs)).max()),
        "P_def": float(np.abs(w.P - w.d @ w.S @ w.d.T).max()),
        "P_sym": float(np.abs(w.P - w.P.T).max()),
    }
    if w.graph.is_regular():
        k = w.graph.degrees[0]
        res["P_adj"] = float(np.abs(w.P - w.graph.adjacency() / k).max())
    return res
