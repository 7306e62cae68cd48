"""
Command-line interface: ``walk <command> --graph <spec|path> [options]``.

Graphs are given either as a family spec (``multipartite:r,m``,
``cycle:n``, ``complete:n``) or as a path to an edge-list file. JSON output
is canonical; CSV is only offered for ``scan``.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import graph_core
from .graph_core import Graph, GraphError
from .multipartite import verify_paper
from .pst_engine import (
    DEFAULT_PERIOD_BOUND,
    DEFAULT_PST_TOL,
    detect_pst,
    find_period,
    necessary_condition,
    prepare,
    scan_pst,
)
from .spectral import DEFAULT_CLUSTER_TOL, DEFAULT_SUPPORT_TOL, support
from .walk_operators import arc_state, step, vertex_state

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

FAMILIES = {
    "multipartite": (2, lambda r, m: graph_core.complete_multipartite(r, m)),
    "cycle": (1, lambda n: graph_core.cycle(n)),
    "complete": (1, lambda n: graph_core.complete(n)),
}

COMMANDS = ("simulate", "pst", "scan", "period", "support", "verify-paper")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    graph: Optional[str]
    x: Optional[str] = None
    y: Optional[str] = None
    tau: Optional[int] = None
    tau_max: int = 24
    bound: int = DEFAULT_PERIOD_BOUND
    tol: Optional[float] = None
    cluster_tol: float = DEFAULT_CLUSTER_TOL
    pst_tol: float = DEFAULT_PST_TOL
    support_tol: float = DEFAULT_SUPPORT_TOL
    arc: Optional[str] = None
    fmt: str = "json"

    def __post_init__(self) -> None:
        for name in ("cluster_tol", "pst_tol", "support_tol", "tol"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")


def load_graph(source: str) -> Graph:
    """Resolve a family spec or an edge-list path."""
    name, sep, args = source.partition(":")
    if sep and name in FAMILIES:
        arity, factory = FAMILIES[name]
        try:
            values = [int(a) for a in args.split(",")]
        except ValueError:
            raise UsageError(f"bad arguments in family spec {source!r}") from None
        if len(values) != arity:
            raise UsageError(f"family {name!r} takes {arity} integer argument(s)")
        return factory(*values)
    path = Path(source)
    if not path.is_file():
        if sep:
            raise UsageError(f"unknown graph family {name!r}")
        raise UsageError(f"no such edge-list file: {source}")
    return graph_core.from_edge_list(path.read_text(encoding="utf-8"))


def _require(value, flag: str, command: str):
    if value is None:
        raise UsageError(f"{command} requires {flag}")
    return value


def _amplitudes(psi: np.ndarray) -> list:
    if np.all(psi.imag == 0):
        return [_num(v) for v in psi.real]
    return [[_num(v.real), _num(v.imag)] for v in psi]


def _num(v) -> float:
    v = float(v)
    return 0.0 if v == 0 else v


def cmd_simulate(config: RunConfig, g: Graph) -> dict:
    steps = config.tau if config.tau is not None else 0
    if steps < 0:
        raise UsageError("--tau must be nonnegative")
    w, _ = prepare(g, config.cluster_tol)
    if config.arc is not None:
        parts = config.arc.replace(",", " ").split()
        if len(parts) != 2:
            raise UsageError("--arc takes 'u,v'")
        o, t = (g.vertex(p) for p in parts)
        state = arc_state(w, w.arcs.index(o, t))
        initial = {"arc": [g.name(o), g.name(t)]}
    else:
        x = g.vertex(_require(config.x, "--x or --arc", "simulate"))
        state = vertex_state(w, x)
        initial = {"vertex": g.name(x)}
    trace = []
    for t in range(steps + 1):
        if t:
            state = step(w, state, 1)
        trace.append({"t": t, "norm": state.norm(), "amplitudes": _amplitudes(state.amplitudes)})
    return {
        "command": "simulate",
        "graph": config.graph,
        "arcs": [[g.name(o), g.name(t)] for o, t in w.arcs.arcs],
        "initial": initial,
        "trace": trace,
    }


def cmd_pst(config: RunConfig, g: Graph) -> dict:
    x = g.vertex(_require(config.x, "--x", "pst"))
    y = g.vertex(_require(config.y, "--y", "pst"))
    tau = _require(config.tau, "--tau", "pst")
    if tau < 0:
        raise UsageError("--tau must be nonnegative")
    w, sd = prepare(g, config.cluster_tol)
    report = detect_pst(w, sd, x, y, tau, config.tol or config.pst_tol)
    payload = {"command": "pst", "graph": config.graph}
    payload.update(report.as_dict(g))
    if tau >= 1:
        payload["necessary_condition"] = necessary_condition(
            sd, x, tau, config.tol or config.pst_tol, config.support_tol
        )
    return payload


def cmd_scan(config: RunConfig, g: Graph) -> dict:
    x = g.vertex(_require(config.x, "--x", "scan"))
    if config.tau_max < 1:
        raise UsageError("--tau-max must be positive")
    w, sd = prepare(g, config.cluster_tol)
    result = scan_pst(
        w, sd, x, config.tau_max, config.tol or config.pst_tol, support_tol=config.support_tol
    )
    return {
        "command": "scan",
        "graph": config.graph,
        "source": g.name(x),
        "tau_max": config.tau_max,
        "hits": [h.as_dict(g) for h in result.hits],
        "pruned_count": result.pruned_count,
        "pruned": list(result.pruned),
    }


def cmd_period(config: RunConfig, g: Graph) -> dict:
    if config.bound < 1:
        raise UsageError("--bound must be positive")
    w, _ = prepare(g, config.cluster_tol)
    report = find_period(w, config.bound, config.tol or 1e-9)
    return {"command": "period", "graph": config.graph, **report.as_dict()}


def cmd_support(config: RunConfig, g: Graph) -> dict:
    _, sd = prepare(g, config.cluster_tol)
    vertices = [g.vertex(config.x)] if config.x is not None else range(g.n)
    return {
        "command": "support",
        "graph": config.graph,
        "spectrum": [_num(v) for v in sd.eigenvalues],
        "supports": [
            {"vertex": g.name(v), "eigenvalues": [_num(lam) for lam in support(sd, v, config.support_tol)]}
            for v in vertices
        ],
    }


def cmd_verify_paper(config: RunConfig) -> dict:
    checks = verify_paper(pst_tol=config.tol or config.pst_tol)
    return {
        "command": "verify-paper",
        "passed": all(c["passed"] for c in checks),
        "failed": [i for i, c in enumerate(checks) if not c["passed"]],
        "checks": checks,
    }


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        if payload.get("command") != "scan":
            raise UsageError("csv output is only available for scan")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["source", "target", "tau", "amplitude_re", "amplitude_im", "pst"])
        for h in payload["hits"]:
            writer.writerow(
                [h["source"], h["target"], h["tau"], repr(h["amplitude"]["re"]),
                 repr(h["amplitude"]["im"]), h["pst"]]
            )
        return buf.getvalue()
    return _render_text(payload)


def _render_text(payload: dict) -> str:
    lines = []
    cmd = payload["command"]
    if cmd == "verify-paper":
        for c in payload["checks"]:
            where = c.get("family", "")
            lines.append(f"{'PASS' if c['passed'] else 'FAIL'}  {c['check']:<24} {where}")
        lines.append("all checks passed" if payload["passed"] else "verification FAILED")
    elif cmd == "simulate":
        for row in payload["trace"]:
            lines.append(f"t={row['t']:<4} norm={row['norm']!r}  {row['amplitudes']}")
    elif cmd == "scan":
        lines.append(f"source {payload['source']}, tau <= {payload['tau_max']}, "
                     f"{payload['pruned_count']} times pruned")
        for h in payload["hits"]:
            lines.append(f"  -> {h['target']} at tau={h['tau']} amplitude={h['amplitude']['re']!r}")
        if not payload["hits"]:
            lines.append("  no perfect state transfer")
    else:
        for key, value in payload.items():
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walk",
        description="Grover walks and perfect state transfer between vertex type states.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--graph", help="family spec (multipartite:r,m | cycle:n | complete:n) or edge-list path")
    parser.add_argument("--x", help="source vertex (label or index)")
    parser.add_argument("--y", help="target vertex (label or index)")
    parser.add_argument("--tau", "--steps", dest="tau", type=int, help="time / number of steps")
    parser.add_argument("--tau-max", type=int, default=24)
    parser.add_argument("--bound", type=int, default=DEFAULT_PERIOD_BOUND)
    parser.add_argument("--tol", type=float, help="pst tolerance (period tolerance for 'period')")
    parser.add_argument("--cluster-tol", type=float, default=DEFAULT_CLUSTER_TOL)
    parser.add_argument("--pst-tol", type=float, default=DEFAULT_PST_TOL)
    parser.add_argument("--support-tol", type=float, default=DEFAULT_SUPPORT_TOL)
    parser.add_argument("--arc", help="start simulate from the arc state 'u,v'")
    parser.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(**vars(args))
        if config.command == "verify-paper":
            payload = cmd_verify_paper(config)
        else:
            g = load_graph(_require(config.graph, "--graph", config.command))
            handler = {
                "simulate": cmd_simulate,
                "pst": cmd_pst,
                "scan": cmd_scan,
                "period": cmd_period,
                "support": cmd_support,
            }[config.command]
            payload = handler(config, g)
        out.write(render(payload, config.fmt))
    except (UsageError, GraphError) as exc:
        print(f"walk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if config.command == "verify-paper" and not payload["passed"]:
        return EXIT_MISMATCH
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
