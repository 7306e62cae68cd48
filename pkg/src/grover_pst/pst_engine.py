"""
Perfect state transfer between vertex type states.

The amplitude ``<U^τ d^T e_x, d^T e_y>`` equals entry ``(y, x)`` of
``T_τ(P)``. Both sides are computed whenever the arc set is small enough and
must agree; this identity is what makes the spectral shortcut trustworthy.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from .chebyshev import cheb_matrix, cheb_scalar
from .graph_core import Graph
from .spectral import DEFAULT_CLUSTER_TOL, DEFAULT_SUPPORT_TOL, SpectralDecomposition, decompose, support
from .walk_operators import WalkOperators, build

__all__ = [
    "ConsistencyError",
    "TransferReport",
    "ScanResult",
    "PeriodReport",
    "prepare",
    "transfer_amplitude",
    "transfer_matrix",
    "detect_pst",
    "necessary_condition",
    "scan_pst",
    "find_period",
    "DEFAULT_PST_TOL",
    "DEFAULT_PERIOD_BOUND",
    "BOTH_METHODS_MAX_ARCS",
]

DEFAULT_PST_TOL = 1e-9
DEFAULT_PERIOD_BOUND = 720
BOTH_METHODS_MAX_ARCS = 256
AGREEMENT_TOL = 1e-9

Method = Literal["direct-U", "chebyshev", "both"]


class ConsistencyError(AssertionError):
    """Direct stepping and the Chebyshev identity produced different amplitudes."""


@dataclass(frozen=True)
class TransferReport:
    source: int
    target: int
    time: int
    amplitude: complex
    pst: bool
    method: Method
    phase: Optional[complex] = None
    trivial: bool = False

    def as_dict(self, graph: Optional[Graph] = None) -> dict:
        name = graph.name if graph is not None else str
        return {
            "source": name(self.source),
            "target": name(self.target),
            "tau": self.time,
            "amplitude": _complex_dict(self.amplitude),
            "abs_amplitude": abs(self.amplitude),
            "pst": self.pst,
            "gamma": _complex_dict(self.phase) if self.phase is not None else None,
            "trivial": self.trivial,
            "method": self.method,
        }


def _complex_dict(z: complex) -> dict:
    return {"re": _clean(z.real), "im": _clean(z.imag)}


def _clean(v: float) -> float:
    # normalize signed zero so output is stable
    return 0.0 if v == 0 else float(v)


@dataclass(frozen=True)
class ScanResult:
    source: int
    tau_max: int
    hits: tuple[TransferReport, ...]
    pruned: tuple[int, ...]
    examined: tuple[int, ...] = field(default=())

    @property
    def pruned_count(self) -> int:
        return len(self.pruned)


@dataclass(frozen=True)
class PeriodReport:
    period: Optional[int]
    bound: int
    residual: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "period": self.period if self.period is not None else "none up to bound",
            "bound": self.bound,
            "residual": self.residual,
        }


def prepare(
    g: Graph,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
    exact_families: bool = True,
) -> tuple[WalkOperators, SpectralDecomposition]:
    """
    Build walk operators and the discriminant's spectral decomposition.

    Graphs generated as ``Γ(r, m)`` use the closed-form projectors unless
    ``exact_families`` is false.
    """
    w = build(g)
    if exact_families and g.family is not None:
        from .multipartite import closed_form_spectral

        sd = closed_form_spectral(g.family.r, g.family.m).decomposition()
    else:
        sd = decompose(w.P, cluster_tol)
    return w, sd


def _resolve_method(w: WalkOperators, method: str) -> Method:
    if method == "auto":
        return "both" if w.num_arcs <= BOTH_METHODS_MAX_ARCS else "chebyshev"
    if method not in ("direct-U", "chebyshev", "both"):
        raise ValueError(f"unknown method {method!r}")
    return method  # type: ignore[return-value]


def _direct_block(w: WalkOperators, tau: int) -> np.ndarray:
    """``d U^τ d^T`` by stepping every vertex type state."""
    states = w.vertex_states()
    for _ in range(tau):
        states = w.apply(states)
    return w.d @ states


def transfer_matrix(
    w: WalkOperators,
    sd: SpectralDecomposition,
    tau: int,
    method: str = "auto",
) -> tuple[np.ndarray, Method]:
    """
    All vertex-to-vertex amplitudes at time ``tau``; entry ``(y, x)`` is
    ``<U^τ d^T e_x, d^T e_y>``.
    """
    if tau < 0:
        raise ValueError(f"time must be nonnegative (got {tau})")
    how = _resolve_method(w, method)
    if how == "direct-U":
        return _direct_block(w, tau), how
    cheb = cheb_matrix(sd, tau)
    if how == "both":
        direct = _direct_block(w, tau)
        gap = float(np.abs(direct - cheb).max())
        if gap > AGREEMENT_TOL:
            raise ConsistencyError(
                f"d U^{tau} d^T and T_{tau}(P) differ by {gap:.3e}"
            )
    return cheb, how


def transfer_amplitude(
    w: WalkOperators,
    sd: SpectralDecomposition,
    x: int,
    y: int,
    tau: int,
    method: str = "auto",
) -> complex:
    """Amplitude ``<U^τ d^T e_x, d^T e_y>``."""
    T, _ = transfer_matrix(w, sd, tau, method)
    return complex(T[w.graph.vertex(y), w.graph.vertex(x)])


def _report(x: int, y: int, tau: int, amp: float, how: Method, pst_tol: float) -> TransferReport:
    amp = complex(amp)
    hit = abs(amp) >= 1.0 - pst_tol
    return TransferReport(
        source=x,
        target=y,
        time=tau,
        amplitude=amp,
        pst=hit,
        method=how,
        phase=amp if hit else None,
        trivial=(tau == 0 or x == y),
    )


def detect_pst(
    w: WalkOperators,
    sd: SpectralDecomposition,
    x: int,
    y: int,
    tau: int,
    pst_tol: float = DEFAULT_PST_TOL,
    method: str = "auto",
) -> TransferReport:
    """
    Decide whether ``d^T e_x`` transfers perfectly to ``d^T e_y`` at ``tau``.

    The verdict is ``|amplitude| >= 1 - pst_tol``; on success the phase
    ``γ`` is the amplitude itself. Self-transfers and ``tau = 0`` are
    reported with ``trivial=True``.
    """
    x, y = w.graph.vertex(x), w.graph.vertex(y)
    T, how = transfer_matrix(w, sd, tau, method)
    return _report(x, y, tau, T[y, x], how, pst_tol)


def necessary_condition(
    sd: SpectralDecomposition,
    x: int,
    tau: int,
    tol: float = DEFAULT_PST_TOL,
    support_tol: float = DEFAULT_SUPPORT_TOL,
) -> bool:
    """
    ``|T_τ(λ)| >= 1 - tol`` for every λ in the support of ``e_x``.

    A ``False`` result certifies that no perfect state transfer leaves
    ``d^T e_x`` at time ``tau``, whatever the target.
    """
    if tau < 1:
        raise ValueError(f"time must be positive (got {tau})")
    lams = np.clip(np.array(support(sd, x, support_tol)), -1.0, 1.0)
    return bool(np.all(np.abs(cheb_scalar(tau, lams)) >= 1.0 - tol))


def _worker_count(workers: Optional[int]) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("WALK_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def scan_pst(
    w: WalkOperators,
    sd: SpectralDecomposition,
    x: int,
    tau_max: int,
    pst_tol: float = DEFAULT_PST_TOL,
    include_self: bool = False,
    method: str = "auto",
    support_tol: float = DEFAULT_SUPPORT_TOL,
    workers: Optional[int] = None,
) -> ScanResult:
    """
    Search ``1 <= τ <= tau_max`` for perfect state transfer out of ``d^T e_x``.

    Each time is first screened with :func:`necessary_condition`; amplitudes
    to all targets are only computed for times that survive. The source
    itself is skipped as a target unless ``include_self`` is set.
    Parallelism (``workers`` or ``WALK_THREADS``) never changes the result.
    """
    if tau_max < 1:
        raise ValueError(f"tau_max must be positive (got {tau_max})")
    x = w.graph.vertex(x)

    def cell(tau: int) -> tuple[int, bool, list[TransferReport]]:
        if not necessary_condition(sd, x, tau, pst_tol, support_tol):
            return tau, False, []
        T, how = transfer_matrix(w, sd, tau, method)
        reports = [
            _report(x, y, tau, T[y, x], how, pst_tol)
            for y in range(w.graph.n)
            if include_self or y != x
        ]
        return tau, True, [r for r in reports if r.pst]

    taus = range(1, tau_max + 1)
    n_workers = _worker_count(workers)
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            cells = list(pool.map(cell, taus))
    else:
        cells = [cell(t) for t in taus]
    cells.sort(key=lambda c: c[0])

    hits = tuple(r for _, _, rs in cells for r in sorted(rs, key=lambda r: r.target))
    pruned = tuple(t for t, ok, _ in cells if not ok)
    examined = tuple(t for t, ok, _ in cells if ok)
    return ScanResult(x, tau_max, hits, pruned, examined)


def find_period(
    w: WalkOperators,
    tau_bound: int = DEFAULT_PERIOD_BOUND,
    tol: float = 1e-9,
) -> PeriodReport:
    """Smallest ``p <= tau_bound`` with ``||U^p - I||_max <= tol``."""
    if tau_bound < 1:
        raise ValueError(f"tau_bound must be positive (got {tau_bound})")
    eye = np.eye(w.num_arcs)
    M = eye
    for p in range(1, tau_bound + 1):
        M = w.apply(M)
        residual = float(np.abs(M - eye).max())
        if residual <= tol:
            return PeriodReport(p, tau_bound, residual)
    return PeriodReport(None, tau_bound)
