"""Rigidity-expander construction: subdivided cubic blocks assembled along a
d-part partition into (2d+1)-regular graphs, plus matching augmentation up
to any target degree k >= 2d+1.

The vertex set splits into d^2 atomic blocks B[i][j] of size 2n laid out
contiguously: block (i, j) owns the index range [(i*d + j)*2n, (i*d + j + 1)*2n).
Row i of blocks forms the partition class A_i. Each induced graph G[A_i] is
a copy of the subdivided block H_n whose degree-3 vertices land in B[i][i];
each crossing graph G(A_i, A_j) is a copy of H_{2n} with one side in A_i,
the other in A_j, and its degree-3 vertices in B[i][j] and B[j][i]. Every
vertex then meets 3 edges from one graph and 2 from each of the d-1 others.
"""

from __future__ import annotations

from dataclasses import dataclass

from rigidity_lab.bounds import BoundReport, partition_bound, partition_bound_2d
from rigidity_lab.graphs import (
    ConstructionError,
    Graph,
    VertexPartition,
    add_disjoint_matchings,
    canonical_edge,
    derive_seed,
    random_regular_bipartite,
    subdivide,
)


@dataclass(frozen=True)
class ExpanderBlueprint:
    """Construction parameters plus the vertex -> atomic-block labeling."""

    d: int
    n: int
    k: int
    seed: int
    block_map: tuple[tuple[int, int], ...]

    def __post_init__(self):
        size = 2 * self.d * self.d * self.n
        if len(self.block_map) != size:
            raise ValueError(f"block_map must label all {size} vertices")
        counts: dict[tuple[int, int], int] = {}
        for label in self.block_map:
            counts[label] = counts.get(label, 0) + 1
        if any(c != 2 * self.n for c in counts.values()) or len(counts) != self.d**2:
            raise ValueError("every atomic block must hold exactly 2n vertices")

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "k": self.k,
            "seed": self.seed,
            "block_map": [list(b) for b in self.block_map],
        }


def build_block_H(n_side_deg3: int, d: int, seed: int) -> tuple[Graph, tuple[tuple[int, ...], tuple[int, ...]]]:
    """Bipartite expander block: a random cubic bipartite graph with its
    3n edges subdivided by 2(d-1)n new vertices in total.

    Every edge receives an even count; the new vertices are spread in pairs
    round-robin over the edges in lexicographic order, so no edge gets more
    than 2*ceil((d-1)/3). Even counts keep the graph bipartite: each side of
    the returned bipartition holds the original n degree-3 vertices plus
    (d-1)n new degree-2 vertices. Original vertices keep indices
    0..2n-1 (side A holds 0..n-1); new vertices are appended.
    """
    if n_side_deg3 < 3:
        raise ValueError("need at least 3 vertices per side")
    if d < 1:
        raise ValueError("d must be >= 1")
    n = n_side_deg3
    base = random_regular_bipartite(n, 3, seed)
    pairs_total = (d - 1) * n
    n_edges = base.m
    counts: dict[tuple[int, int], int] = {}
    for idx, e in enumerate(base.edges):
        pairs = pairs_total // n_edges + (1 if idx < pairs_total % n_edges else 0)
        counts[e] = 2 * pairs
    g = subdivide(base, counts)

    # Recover the sides: subdivide numbers new vertices consecutively along
    # each path in the same lexicographic edge order used here, and a vertex
    # at odd position along a path sits opposite the path's lower endpoint.
    side = [0 if v < n else 1 for v in range(2 * n)]
    next_v = 2 * n
    for u, v in base.edges:
        for t in range(1, counts[(u, v)] + 1):
            side.append(side[u] if t % 2 == 0 else 1 - side[u])
            next_v += 1
    side_a = tuple(v for v in range(g.n) if side[v] == 0)
    side_b = tuple(v for v in range(g.n) if side[v] == 1)
    return g, (side_a, side_b)


def _block_slots(i: int, j: int, d: int, n: int) -> range:
    start = (i * d + j) * 2 * n
    return range(start, start + 2 * n)


def _fill(mapping: dict[int, int], locals_sorted, i: int, blocks, d: int, n: int):
    """Assign sorted local vertices to the listed blocks of row i, 2n apiece."""
    pos = 0
    for j in blocks:
        for slot in _block_slots(i, j, d, n):
            mapping[locals_sorted[pos]] = slot
            pos += 1
    if pos != len(locals_sorted):
        raise AssertionError("block filling mismatch")


def build_expander(n: int, d: int, seed: int) -> tuple[Graph, VertexPartition, ExpanderBlueprint]:
    """(2d+1)-regular graph on 2 d^2 n vertices with every partition subgraph
    an expander block; sub-seeds are hashed from (seed, role, i, j) so the
    d(d+1)/2 blocks are independent yet reproducible."""
    if n < 3:
        raise ValueError("n must be >= 3")
    if d < 1:
        raise ValueError("d must be >= 1")
    total = 2 * d * d * n
    edges: set[tuple[int, int]] = set()

    for i in range(d):
        h, _sides = build_block_H(n, d, derive_seed(seed, "induced", i, i))
        # Degree-3 vertices are the 2n originals; bipartite structure unused.
        mapping: dict[int, int] = {}
        _fill(mapping, list(range(2 * n)), i, [i], d, n)
        deg2 = list(range(2 * n, h.n))
        _fill(mapping, deg2, i, [j for j in range(d) if j != i], d, n)
        for u, v in h.edges:
            edges.add(canonical_edge(mapping[u], mapping[v]))

    for i in range(d):
        for j in range(i + 1, d):
            h, (side_a, side_b) = build_block_H(2 * n, d, derive_seed(seed, "crossing", i, j))
            originals = 4 * n  # vertices below this index keep degree 3
            mapping = {}
            for row, hside, other in ((i, side_a, j), (j, side_b, i)):
                deg3 = sorted(v for v in hside if v < originals)
                deg2 = sorted(v for v in hside if v >= originals)
                _fill(mapping, deg3, row, [other], d, n)
                _fill(mapping, deg2, row, [l for l in range(d) if l != other], d, n)
            for u, v in h.edges:
                edges.add(canonical_edge(mapping[u], mapping[v]))

    g = Graph(total, tuple(sorted(edges)))
    degrees = g.degrees()
    if any(deg != 2 * d + 1 for deg in degrees):
        raise ConstructionError(
            f"assembled graph is not {2 * d + 1}-regular: degrees "
            f"{sorted(set(degrees))} (construction bug)"
        )
    parts = tuple(
        tuple(v for j in range(d) for v in _block_slots(i, j, d, n)) for i in range(d)
    )
    partition = VertexPartition(parts)
    block_map = tuple((v // (2 * n) // d, v // (2 * n) % d) for v in range(total))
    blueprint = ExpanderBlueprint(d=d, n=n, k=2 * d + 1, seed=seed, block_map=block_map)
    return g, partition, blueprint


def build_k_regular(
    n: int, d: int, k: int, seed: int
) -> tuple[Graph, VertexPartition, ExpanderBlueprint]:
    """build_expander plus k - (2d+1) disjoint perfect matchings from the
    complement, giving a k-regular graph on the same partition."""
    floor = 2 * d + 1
    if k < floor:
        raise ValueError(f"degree floor is 2d+1 = {floor}, got k={k}")
    g, partition, blueprint = build_expander(n, d, seed)
    extra = k - floor
    if extra:
        g = add_disjoint_matchings(g, extra, derive_seed(seed, "matchings"))
        degrees = g.degrees()
        if any(deg != k for deg in degrees):
            raise ConstructionError(f"augmented graph is not {k}-regular")
    blueprint = ExpanderBlueprint(
        d=d, n=n, k=k, seed=seed, block_map=blueprint.block_map
    )
    return g, partition, blueprint


def certify(g: Graph, partition: VertexPartition, d: int) -> BoundReport:
    """Certified lower bound on a_d for a constructed family member; uses
    the un-halved two-part bound when d = 2."""
    if d == 2:
        return partition_bound_2d(g, partition)
    return partition_bound(g, partition, d)
