"""Shared randomized-instance helpers; all randomness flows through explicit rngs."""

import numpy as np

from rigidity_lab.graphs import Graph, VertexPartition, derive_seed, random_regular_bipartite


def random_connected_graph(rng, n: int, extra_prob: float) -> Graph:
    """Random spanning tree plus independent extra edges."""
    edges = set()
    verts = [int(v) for v in rng.permutation(n)]
    for i in range(1, n):
        u, v = verts[i], verts[int(rng.integers(i))]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra_prob:
                edges.add((u, v))
    return Graph(n, tuple(sorted(edges)))


def random_partition(rng, n: int, d: int) -> VertexPartition:
    """Uniform vertex labels, redrawn until all d parts are nonempty."""
    while True:
        owner = rng.integers(d, size=n)
        if len(set(owner.tolist())) == d:
            parts = tuple(
                tuple(int(v) for v in np.flatnonzero(owner == i)) for i in range(d)
            )
            return VertexPartition(parts)


def connected_cubic_bipartite(n_side: int, seed: int) -> Graph:
    """Random cubic bipartite graph, re-seeded deterministically until connected."""
    for attempt in range(50):
        g = random_regular_bipartite(n_side, 3, derive_seed(seed, "cubic", attempt))
        if g.is_connected():
            return g
    raise RuntimeError(f"no connected cubic bipartite graph at n_side={n_side}")
