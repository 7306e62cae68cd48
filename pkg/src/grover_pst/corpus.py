"""Brute-force enumeration of small connected graphs up to isomorphism."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .graph_core import Graph, GraphError

__all__ = ["connected_graphs", "corpus"]

# 2**15 edge subsets times 720 relabelings stays well under a second.
MAX_ORDER = 6


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> tuple[Graph, ...]:
    """
    All connected simple graphs on ``n`` vertices, one per isomorphism class.

    Every edge subset of ``K_n`` is encoded as a bitmask; its canonical form
    is the minimum code over all vertex permutations. Representatives are
    returned in increasing canonical-code order.
    """
    if not 2 <= n <= MAX_ORDER:
        raise ValueError(f"enumeration supports 2 <= n <= {MAX_ORDER} (got {n})")
    pairs = list(itertools.combinations(range(n), 2))
    slot = {p: k for k, p in enumerate(pairs)}
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    bits = (masks[:, None] >> np.arange(len(pairs))) & 1
    canon = masks.copy()
    for perm in itertools.permutations(range(n)):
        weights = np.array(
            [1 << slot[tuple(sorted((perm[u], perm[v])))] for u, v in pairs],
            dtype=np.int64,
        )
        np.minimum(canon, bits @ weights, out=canon)

    graphs = []
    for code in np.unique(canon).tolist():
        edges = [p for k, p in enumerate(pairs) if code >> k & 1]
        try:
            graphs.append(Graph.from_edges(n, edges))
        except GraphError:
            continue
    return tuple(graphs)


def corpus(max_n: int = MAX_ORDER) -> list[Graph]:
    """Connected graphs with ``2 <= n <= max_n``, smallest order first."""
    return [g for n in range(2, max_n + 1) for g in connected_graphs(n)]
