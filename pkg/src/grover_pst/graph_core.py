"""
Finite simple connected graphs, their symmetric arc sets, and the named
families used throughout the package.

Vertices are always dense integer indices ``0..n-1``; labels are cosmetic
and only used for parsing and display.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "GraphError",
    "Graph",
    "ArcSet",
    "MultipartiteSpec",
    "from_edge_list",
    "complete_multipartite",
    "complete",
    "cycle",
    "build_arcs",
]


class GraphError(ValueError):
    """Raised for malformed or unsupported graph input."""


@dataclass(frozen=True)
class MultipartiteSpec:
    """
    Layout of the complete r-partite graph with all parts of size m.

    Vertex ``v_i^(j)`` (member ``i`` of part ``j``, both 1-based) sits at
    dense index ``(j - 1) * m + (i - 1)``, so the adjacency matrix is
    ``A(K_r) ⊗ J_m`` under this ordering.
    """

    r: int
    m: int

    def __post_init__(self) -> None:
        if self.r < 2:
            raise GraphError(f"complete multipartite graph needs r >= 2 (got {self.r})")
        if self.m < 1:
            raise GraphError(f"part size must be m >= 1 (got {self.m})")

    @property
    def n(self) -> int:
        return self.r * self.m

    @property
    def degree(self) -> int:
        return self.m * (self.r - 1)

    def index(self, i: int, j: int) -> int:
        """Dense index of ``v_i^(j)``."""
        if not (1 <= i <= self.m and 1 <= j <= self.r):
            raise GraphError(f"no vertex v_{i}^({j}) in Γ({self.r},{self.m})")
        return (j - 1) * self.m + (i - 1)

    def position(self, v: int) -> tuple[int, int]:
        """Inverse of :meth:`index`: returns ``(i, j)``."""
        if not 0 <= v < self.n:
            raise GraphError(f"vertex index {v} out of range for Γ({self.r},{self.m})")
        j, i = divmod(v, self.m)
        return i + 1, j + 1

    def label(self, v: int) -> str:
        i, j = self.position(v)
        return f"v{i}({j})"


@dataclass(frozen=True)
class Graph:
    """
    Immutable finite simple connected graph on vertices ``0..n-1``.

    Attributes
    ----------
    n : int
        Number of vertices (at least 2).
    edges : tuple of (int, int)
        Sorted unordered edges, each stored as ``(u, v)`` with ``u < v``.
    labels : tuple of str, optional
        Display names, one per vertex.
    family : MultipartiteSpec, optional
        Set when the graph was generated as ``Γ(r, m)``; enables the
        closed-form spectral path.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: Optional[tuple[str, ...]] = None
    family: Optional[MultipartiteSpec] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise GraphError(f"graph needs at least 2 vertices (got {self.n})")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            normalized.add((min(u, v), max(u, v)))
        if len(normalized) != len(self.edges):
            raise GraphError("repeated edge; graphs must be simple")
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels must name every vertex exactly once")
        self._check_connected()

    def _check_connected(self) -> None:
        seen = _component(self.n, self.neighbors, 0)
        if len(seen) < self.n:
            other = min(set(range(self.n)) - seen)
            raise GraphError(
                f"graph is disconnected: vertex {self.name(0)} and vertex "
                f"{self.name(other)} lie in different components"
            )

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
    ) -> Graph:
        """Build from an iterable of pairs, silently dropping duplicates."""
        unique = {(min(u, v), max(u, v)) for u, v in edges}
        return cls(n, tuple(sorted(unique)), tuple(labels) if labels is not None else None)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.neighbors)

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1
        return A

    def is_regular(self) -> bool:
        return len(set(self.degrees)) == 1

    def name(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        return str(v)

    def vertex(self, token: str | int) -> int:
        """
        Resolve a vertex given by label or by dense index.

        Labels take precedence so edge lists with integer names resolve to the
        names the user wrote.
        """
        if isinstance(token, (int, np.integer)):
            v = int(token)
        else:
            if self.labels is not None and token in self.labels:
                return self.labels.index(token)
            try:
                v = int(token)
            except ValueError:
                raise GraphError(f"unknown vertex {token!r}") from None
        if not 0 <= v < self.n:
            raise GraphError(f"vertex index {v} out of range for n={self.n}")
        return v


def _component(n: int, neighbors: Sequence[Sequence[int]], start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in neighbors[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


@dataclass(frozen=True)
class ArcSet:
    """
    Symmetric arcs of a graph in lexicographic ``(origin, terminus)`` order.

    ``origin[a]``, ``terminus[a]`` and ``inverse[a]`` are read-only integer
    arrays indexed by arc number.
    """

    origin: np.ndarray
    terminus: np.ndarray
    inverse: np.ndarray

    def __len__(self) -> int:
        return int(self.origin.shape[0])

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return list(zip(self.origin.tolist(), self.terminus.tolist()))

    def index(self, o: int, t: int) -> int:
        hits = np.flatnonzero((self.origin == o) & (self.terminus == t))
        if hits.size == 0:
            raise GraphError(f"no arc ({o}, {t})")
        return int(hits[0])

    def into(self, x: int) -> np.ndarray:
        """Indices of arcs terminating at ``x``."""
        return np.flatnonzero(self.terminus == x)

    def out_of(self, x: int) -> np.ndarray:
        return np.flatnonzero(self.origin == x)


def build_arcs(g: Graph) -> ArcSet:
    pairs = sorted([(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges])
    position = {a: k for k, a in enumerate(pairs)}
    origin = np.array([o for o, _ in pairs], dtype=np.intp)
    terminus = np.array([t for _, t in pairs], dtype=np.intp)
    inverse = np.array([position[(t, o)] for o, t in pairs], dtype=np.intp)
    for arr in (origin, terminus, inverse):
        arr.setflags(write=False)
    return ArcSet(origin, terminus, inverse)


def from_edge_list(text: str) -> Graph:
    """
    Parse an edge-list document.

    One edge per line with two whitespace-separated endpoints; blank lines and
    lines starting with ``#`` are ignored. Endpoint tokens are treated as names
    and densely reindexed in order of first appearance. Duplicate edges are
    merged.

    Raises
    ------
    GraphError
        On empty input, malformed lines, self-loops, or a disconnected result.
    """
    labels: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        u, v = tokens
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at {u!r}")
        for tok in (u, v):
            if tok.startswith("-"):
                raise GraphError(f"line {lineno}: negative vertex id {tok!r}")
            labels.setdefault(tok, len(labels))
        a, b = labels[u], labels[v]
        edges.add((min(a, b), max(a, b)))
    if not edges:
        raise GraphError("edge list is empty")
    return Graph(len(labels), tuple(sorted(edges)), tuple(labels))


def complete_multipartite(r: int, m: int) -> Graph:
    """``Γ(r, m)``: complete r-partite graph with parts of size m."""
    spec = MultipartiteSpec(r, m)
    edges = [
        (u, v)
        for u in range(spec.n)
        for v in range(u + 1, spec.n)
        if u // m != v // m
    ]
    labels = tuple(spec.label(v) for v in range(spec.n))
    return Graph(spec.n, tuple(edges), labels, family=spec)


def complete(n: int) -> Graph:
    if n < 2:
        raise GraphError(f"complete graph needs n >= 2 (got {n})")
    return complete_multipartite(n, 1)


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3 (got {n})")
    return Graph.from_edges(n, [(k, (k + 1) % n) for k in range(n)])
