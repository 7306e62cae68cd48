import numpy as np
import pytest

from grover_pst.chebyshev import cheb_matrix, cheb_scalar
from grover_pst.graph_core import complete, complete_multipartite, cycle
from grover_pst.pst_engine import (
    ConsistencyError,
    detect_pst,
    find_period,
    necessary_condition,
    prepare,
    scan_pst,
    transfer_amplitude,
    transfer_matrix,
)
from grover_pst.spectral import decompose, support
from grover_pst.walk_operators import step, vertex_state


def _multi(r, m, exact=True):
    g = complete_multipartite(r, m)
    return (g, *prepare(g, exact_families=exact))


@pytest.mark.parametrize("exact", [True, False])
def test_amplitude_bipartite(exact):
    g, w, sd = _multi(2, 2, exact)
    x, y = g.family.index(1, 1), g.family.index(2, 1)
    assert transfer_amplitude(w, sd, x, y, 2) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("exact", [True, False])
def test_amplitude_tripartite(exact):
    g, w, sd = _multi(3, 2, exact)
    x, y = g.family.index(1, 1), g.family.index(2, 1)
    assert transfer_amplitude(w, sd, x, y, 6) == pytest.approx(1.0, abs=1e-12)


def test_amplitude_time_zero_is_identity(prepared):
    for g, w, sd in prepared[:20]:
        for x in range(g.n):
            assert transfer_amplitude(w, sd, x, x, 0) == pytest.approx(1.0)


def test_amplitude_matches_inner_product_of_stepped_states():
    g, w, sd = _multi(3, 2)
    for tau in range(8):
        evolved = step(w, vertex_state(w, 0), tau)
        for y in range(g.n):
            direct = evolved.inner(vertex_state(w, y))
            assert transfer_amplitude(w, sd, 0, y, tau, method="chebyshev") == pytest.approx(direct, abs=1e-12)


def test_methods_are_reported():
    g, w, sd = _multi(2, 3)
    assert transfer_matrix(w, sd, 3)[1] == "both"
    assert transfer_matrix(w, sd, 3, method="chebyshev")[1] == "chebyshev"
    assert transfer_matrix(w, sd, 3, method="direct-U")[1] == "direct-U"
    with pytest.raises(ValueError):
        transfer_matrix(w, sd, 3, method="guess")


def test_disagreement_is_detected():
    g = cycle(5)
    w, _ = prepare(g)
    wrong = decompose(prepare(cycle(4))[0].P)
    wrong = type(wrong)(wrong.eigenvalues, tuple(np.pad(E, ((0, 1), (0, 1))) for E in wrong.projectors), 5)
    with pytest.raises(ConsistencyError):
        transfer_matrix(w, wrong, 3)


def test_detect_bipartite_hit():
    g, w, sd = _multi(2, 2)
    rep = detect_pst(w, sd, 0, 1, 2)
    assert rep.pst and not rep.trivial
    assert rep.phase == pytest.approx(1.0)
    assert rep.method == "both"


def test_detect_k3_never():
    g = complete(3)
    w, sd = prepare(g)
    for x in range(3):
        for y in range(3):
            if x != y:
                for tau in (1, 2, 3):
                    rep = detect_pst(w, sd, x, y, tau)
                    assert not rep.pst and rep.phase is None


def test_detect_gamma_2_3_never():
    g, w, sd = _multi(2, 3)
    for y in range(1, g.n):
        for tau in (1, 2, 3):
            assert not detect_pst(w, sd, 0, y, tau).pst


def test_detect_trivial_flags():
    g, w, sd = _multi(2, 2)
    assert detect_pst(w, sd, 1, 1, 0).trivial
    assert detect_pst(w, sd, 1, 1, 4).trivial and detect_pst(w, sd, 1, 1, 4).pst


def test_necessary_condition_examples():
    _, _, sd = _multi(2, 2)
    assert necessary_condition(sd, 0, 2)
    assert not necessary_condition(sd, 0, 1)
    for m in (1, 2, 3):
        _, _, sd = _multi(3, m)
        assert not necessary_condition(sd, 0, 2)
    with pytest.raises(ValueError):
        necessary_condition(sd, 0, 0)


def test_scan_examples():
    g, w, sd = _multi(2, 2)
    res = scan_pst(w, sd, 0, 3)
    assert [(h.target, h.time) for h in res.hits] == [(1, 2)]
    assert res.pruned == (1, 3)

    g, w, sd = _multi(3, 2)
    res = scan_pst(w, sd, 0, 11)
    assert [(h.target, h.time) for h in res.hits] == [(1, 6)]
    assert res.examined == (6,)

    g, w, sd = _multi(2, 4)
    assert scan_pst(w, sd, 0, 3).hits == ()


def test_scan_include_self():
    g, w, sd = _multi(2, 2)
    res = scan_pst(w, sd, 0, 4, include_self=True)
    assert [(h.target, h.time, h.trivial) for h in res.hits] == [(1, 2, False), (0, 4, True)]


def test_scan_parallel_is_identical(monkeypatch):
    g, w, sd = _multi(3, 2)
    serial = scan_pst(w, sd, 0, 24)
    assert scan_pst(w, sd, 0, 24, workers=4) == serial
    monkeypatch.setenv("WALK_THREADS", "3")
    assert scan_pst(w, sd, 0, 24) == serial


@pytest.mark.parametrize("r, m, source_part_size", [(2, 2, 2), (3, 2, 2), (2, 3, 3), (3, 3, 3)])
def test_symmetry_reduction(r, m, source_part_size):
    g, w, sd = _multi(r, m)
    tau_max = 3 if r == 2 else 11
    reference = scan_pst(w, sd, 0, tau_max)
    for x in range(g.n):
        res = scan_pst(w, sd, x, tau_max)
        assert [h.time for h in res.hits] == [h.time for h in reference.hits]
        assert res.pruned == reference.pruned
        for h in res.hits:
            # partner is the other member of the source's part
            assert h.target // m == x // m and h.target != x


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_period_bipartite(m):
    g = complete_multipartite(2, m)
    w, _ = prepare(g)
    expected = 2 if m == 1 else 4  # Γ(2,1) = K2 swaps arcs
    assert find_period(w).period == expected


@pytest.mark.parametrize("m", [2, 3])
def test_period_tripartite(m):
    w, _ = prepare(complete_multipartite(3, m))
    rep = find_period(w)
    assert rep.period == 12 and rep.residual <= 1e-9


def test_period_k3_and_none():
    assert find_period(prepare(complete(3))[0]).period == 3
    rep = find_period(prepare(complete(4))[0], tau_bound=50)
    assert rep.period is None and rep.bound == 50
    assert rep.as_dict()["period"] == "none up to bound"


def test_period_means_self_transfer():
    for g in (complete_multipartite(2, 3), complete_multipartite(3, 2), complete(3), cycle(6)):
        w, sd = prepare(g)
        p = find_period(w).period
        assert p is not None
        for x in range(g.n):
            assert transfer_amplitude(w, sd, x, x, p) == pytest.approx(1.0, abs=1e-9)


def test_filter_soundness_and_equality_case(prepared):
    for g, w, sd in prepared:
        for tau in range(1, 25):
            T, _ = transfer_matrix(w, sd, tau)
            for x in range(g.n):
                nc = necessary_condition(sd, x, tau)
                if np.abs(T[:, x]).max() >= 1 - 1e-9:
                    assert nc
                col_norm = np.linalg.norm(T[:, x])
                tight = all(abs(cheb_scalar(tau, lam)) >= 1 - 1e-6 for lam in support(sd, x))
                assert (col_norm >= 1 - 1e-9) == tight
