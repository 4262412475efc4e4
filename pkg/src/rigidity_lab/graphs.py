"""Graph representation, named families, partitions, subdivision, and random generators.

Vertices are always the indices 0..n-1. Edges are stored as a
lexicographically sorted tuple of (u, v) pairs with u < v, so every
derived object (rigidity matrices, edge files, subdivision labels) has a
reproducible order. All values are immutable after construction.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field

import numpy as np


class FileFormatError(ValueError):
    """A text input (edge list, partition, embedding) failed to parse."""


class ConstructionError(RuntimeError):
    """A randomized generator exhausted its retry budget."""


def canonical_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        canon = tuple(sorted(canonical_edge(u, v) for u, v in self.edges))
        for i in range(1, len(canon)):
            if canon[i] == canon[i - 1]:
                raise ValueError(f"duplicate edge {canon[i]}")
        for u, v in canon:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
        object.__setattr__(self, "edges", canon)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in set(self.edges)

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        adj = self.adjacency()
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    queue.append(w)
        return count == self.n

    def two_coloring(self) -> list[int] | None:
        """BFS 2-coloring; None if the graph has an odd cycle."""
        adj = self.adjacency()
        color = [-1] * self.n
        for start in range(self.n):
            if color[start] != -1:
                continue
            color[start] = 0
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if color[w] == -1:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return None
        return color


@dataclass(frozen=True)
class VertexPartition:
    """Ordered partition of 0..n-1 into nonempty disjoint parts."""

    parts: tuple[tuple[int, ...], ...]
    n: int = field(init=False)

    def __post_init__(self):
        if not self.parts:
            raise ValueError("partition needs at least one part")
        canon = tuple(tuple(sorted(p)) for p in self.parts)
        seen: set[int] = set()
        total = 0
        for p in canon:
            if not p:
                raise ValueError("trivial partition: empty part")
            for v in p:
                if v in seen:
                    raise ValueError(f"vertex {v} appears in two parts")
                seen.add(v)
            total += len(p)
        if seen != set(range(total)):
            raise ValueError("parts must cover exactly the vertices 0..n-1")
        object.__setattr__(self, "parts", canon)
        object.__setattr__(self, "n", total)

    @property
    def d(self) -> int:
        return len(self.parts)

    def part_of(self) -> list[int]:
        """part_of()[v] is the index of the part containing v."""
        owner = [0] * self.n
        for i, p in enumerate(self.parts):
            for v in p:
                owner[v] = i
        return owner


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------


def make_complete(n: int) -> Graph:
    """Complete graph on n >= 1 vertices."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def make_star(n: int, d: int) -> Graph:
    """Generalized star: a d-clique plus n-d vertices joined to all of it.

    Minimally d-rigid with d*n - C(d+1,2) edges.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if n <= d:
        raise ValueError(f"need n >= d+1, got n={n}, d={d}")
    clique = [(i, j) for i in range(d) for j in range(i + 1, d)]
    spokes = [(i, j) for j in range(d, n) for i in range(d)]
    return Graph(n, tuple(clique + spokes))


def make_gen_path(n: int, d: int) -> Graph:
    """Generalized path: edges {i, j} for 0 < j - i <= d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if n <= d:
        raise ValueError(f"need n >= d+1, got n={n}, d={d}")
    edges = [(i, j) for i in range(n) for j in range(i + 1, min(i + d, n - 1) + 1)]
    return Graph(n, tuple(edges))


def make_gen_cycle(n: int, d: int) -> Graph:
    """Generalized cycle: edges {i, j} when j-i <= d or n-(j-i) <= d; 2d-regular."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if n <= 2 * d:
        raise ValueError(f"need n >= 2d+1, got n={n}, d={d}")
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if j - i <= d or n - (j - i) <= d
    ]
    return Graph(n, tuple(edges))


# ---------------------------------------------------------------------------
# Subdivision
# ---------------------------------------------------------------------------


def subdivide(g: Graph, counts: dict[tuple[int, int], int]) -> Graph:
    """Replace each edge e by a path through counts[e] fresh internal vertices.

    New vertices are appended after 0..n-1, walking the edges of g in
    lexicographic order and numbering consecutively along each path, so the
    result is reproducible. Edges absent from `counts` keep 0 new vertices.
    """
    canon_counts: dict[tuple[int, int], int] = {}
    edge_set = set(g.edges)
    for key, m in counts.items():
        e = canonical_edge(*key)
        if e not in edge_set:
            raise ValueError(f"unknown edge {e}")
        if m < 0:
            raise ValueError(f"negative subdivision count for edge {e}")
        canon_counts[e] = m

    new_edges: list[tuple[int, int]] = []
    next_v = g.n
    for u, v in g.edges:
        m = canon_counts.get((u, v), 0)
        if m == 0:
            new_edges.append((u, v))
            continue
        chain = [u] + list(range(next_v, next_v + m)) + [v]
        next_v += m
        new_edges.extend(canonical_edge(a, b) for a, b in zip(chain, chain[1:]))
    return Graph(next_v, tuple(new_edges))


def iterated_subdivision(g: Graph, k: int) -> Graph:
    """k-fold uniform subdivision: every edge split by one new vertex, k times."""
    if k < 0:
        raise ValueError("k must be >= 0")
    for _ in range(k):
        g = subdivide(g, {e: 1 for e in g.edges})
    return g


# ---------------------------------------------------------------------------
# Subgraphs
# ---------------------------------------------------------------------------


def induced_subgraph(g: Graph, a) -> tuple[Graph, list[int]]:
    """Subgraph induced on `a`, relabeled to 0..|a|-1 in ascending label order.

    Returns (subgraph, labels) where labels[new] is the original vertex.
    """
    labels = sorted(set(a))
    if not labels:
        raise ValueError("empty vertex set")
    if labels[0] < 0 or labels[-1] >= g.n:
        raise ValueError("vertex out of range")
    index = {v: i for i, v in enumerate(labels)}
    keep = set(labels)
    edges = tuple(
        (index[u], index[v]) for u, v in g.edges if u in keep and v in keep
    )
    return Graph(len(labels), edges), labels


def bipartite_subgraph(g: Graph, a, b) -> tuple[Graph, list[int]]:
    """Graph on a ∪ b keeping exactly the edges with one endpoint in each.

    Vertices are relabeled to 0..|a ∪ b|-1 in ascending label order; vertices
    without crossing edges stay (isolated), so connectivity of the result is
    meaningful. Returns (subgraph, labels).
    """
    sa, sb = set(a), set(b)
    if not sa or not sb:
        raise ValueError("both sides must be nonempty")
    if sa & sb:
        raise ValueError(f"sides overlap: {sorted(sa & sb)}")
    labels = sorted(sa | sb)
    if labels[0] < 0 or labels[-1] >= g.n:
        raise ValueError("vertex out of range")
    index = {v: i for i, v in enumerate(labels)}
    edges = tuple(
        (index[u], index[v])
        for u, v in g.edges
        if (u in sa and v in sb) or (u in sb and v in sa)
    )
    return Graph(len(labels), edges), labels


# ---------------------------------------------------------------------------
# Random generators
# ---------------------------------------------------------------------------


def random_regular_bipartite(
    n_side: int, degree: int, seed: int, max_attempts: int = 1000
) -> Graph:
    """Random simple `degree`-regular bipartite graph on sides [0,n) and [n,2n).

    Sampled as the union of `degree` uniformly random perfect matchings
    between the sides; an attempt is rejected wholesale whenever two
    matchings collide on an edge. Deterministic given the seed.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if n_side < degree:
        raise ValueError(f"need n_side >= degree, got {n_side} < {degree}")
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        perms = [rng.permutation(n_side) for _ in range(degree)]
        edges = {(i, n_side + int(p[i])) for p in perms for i in range(n_side)}
        if len(edges) == degree * n_side:
            return Graph(2 * n_side, tuple(sorted(edges)))
    raise ConstructionError(
        f"no simple {degree}-regular bipartite graph found in "
        f"{max_attempts} attempts (n_side={n_side}, seed={seed})"
    )


def _try_augment(root: int, adj: list[list[int]], mate: list[int], rng) -> bool:
    # Kuhn-style alternating DFS. Both endpoints of every explored pair are
    # marked visited: on general graphs that keeps the alternating path
    # simple (a vertex re-entered in the other role would corrupt the
    # matching), at the cost of missing some augmenting paths through odd
    # cycles. Callers absorb the incompleteness with randomized restarts.
    visited = {root}

    def dfs(u: int) -> bool:
        nbrs = list(adj[u])
        rng.shuffle(nbrs)
        for v in nbrs:
            if v in visited:
                continue
            visited.add(v)
            w = mate[v]
            if w == -1:
                mate[u] = v
                mate[v] = u
                return True
            if w in visited:
                continue
            visited.add(w)
            if dfs(w):
                mate[u] = v
                mate[v] = u
                return True
        return False

    return dfs(root)


def _random_perfect_matching(
    n: int, adj: list[list[int]], rng, max_restarts: int
) -> set[tuple[int, int]]:
    for _ in range(max_restarts):
        mate = [-1] * n
        order = [int(v) for v in rng.permutation(n)]
        for u in order:
            if mate[u] != -1:
                continue
            free = [v for v in adj[u] if mate[v] == -1]
            if free:
                v = free[int(rng.integers(len(free)))]
                mate[u] = v
                mate[v] = u
        for u in order:
            if mate[u] == -1:
                _try_augment(u, adj, mate, rng)
        complete = all(m != -1 for m in mate)
        consistent = complete and all(mate[mate[u]] == u for u in range(n))
        if consistent:
            return {canonical_edge(u, mate[u]) for u in range(n)}
    raise ConstructionError(
        f"no perfect matching found in {max_restarts} randomized attempts"
    )


def add_disjoint_matchings(
    g: Graph, count: int, seed: int, max_restarts: int = 200
) -> Graph:
    """Add `count` pairwise-disjoint perfect matchings drawn from the complement.

    Matchings are found by randomized greedy seeding plus alternating-path
    augmentation on the running complement, so the result stays simple and
    the added matchings are edge-disjoint from g and from each other.
    Deterministic given the seed; raises ConstructionError when the budget
    is exhausted (e.g. the running complement has no perfect matching).
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    if g.n % 2 != 0:
        raise ValueError("perfect matchings need an even vertex count")
    rng = np.random.default_rng(seed)
    used = set(g.edges)
    for _ in range(count):
        adj: list[list[int]] = [[] for _ in range(g.n)]
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if (u, v) not in used:
                    adj[u].append(v)
                    adj[v].append(u)
        matching = _random_perfect_matching(g.n, adj, rng, max_restarts)
        used |= matching
    return Graph(g.n, tuple(sorted(used)))


def balanced_partition(n: int, d: int) -> VertexPartition:
    """Partition 0..n-1 into d residue classes mod d (sizes floor/ceil of n/d)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if n < d:
        raise ValueError(f"need n >= d, got n={n}, d={d}")
    return VertexPartition(tuple(tuple(range(i, n, d)) for i in range(d)))


def derive_seed(*parts) -> int:
    """Stable 63-bit sub-seed from a tuple of labels (hash-based, not RNG)."""
    text = ":".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format: optional `n N` header, `u v` lines, `#` comments."""
    n_header: int | None = None
    edges: list[tuple[int, int]] = []
    max_seen = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if n_header is not None:
                raise FileFormatError(f"line {lineno}: duplicate header")
            if len(tokens) != 2:
                raise FileFormatError(f"line {lineno}: header must be 'n N'")
            try:
                n_header = int(tokens[1])
            except ValueError:
                raise FileFormatError(f"line {lineno}: bad vertex count {tokens[1]!r}")
            continue
        if len(tokens) != 2:
            raise FileFormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise FileFormatError(f"line {lineno}: non-integer endpoint in {raw!r}")
        if u == v:
            raise FileFormatError(f"line {lineno}: self-loop at {u}")
        if u < 0 or v < 0:
            raise FileFormatError(f"line {lineno}: negative vertex index")
        max_seen = max(max_seen, u, v)
        edges.append(canonical_edge(u, v))
    n = n_header if n_header is not None else max_seen + 1
    if n < 1:
        raise FileFormatError("empty graph file (no header, no edges)")
    if max_seen >= n:
        raise FileFormatError(f"edge endpoint {max_seen} exceeds declared n={n}")
    if len(set(edges)) != len(edges):
        dupes = sorted({e for e in edges if edges.count(e) > 1})
        raise FileFormatError(f"duplicate edge(s): {dupes}")
    return Graph(n, tuple(edges))


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))


def parse_partition(text: str) -> VertexPartition:
    """Parse the partition format: line i holds the vertices of part i."""
    parts: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            parts.append(tuple(int(t) for t in line.split()))
        except ValueError:
            raise FileFormatError(f"line {lineno}: non-integer vertex in {raw!r}")
    if not parts:
        raise FileFormatError("empty partition file")
    try:
        return VertexPartition(tuple(parts))
    except ValueError as exc:
        raise FileFormatError(str(exc))


def format_partition(p: VertexPartition) -> str:
    return "\n".join(" ".join(str(v) for v in part) for part in p.parts) + "\n"


def read_partition(path) -> VertexPartition:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_partition(fh.read())


def write_partition(p: VertexPartition, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_partition(p))
