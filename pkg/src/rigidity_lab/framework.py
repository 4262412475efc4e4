"""Frameworks: embeddings, rigidity and stiffness matrices, and rigidity tests.

A framework is a graph together with a map of its vertices into R^d. The
rigidity matrix has one column per edge holding the normalized edge
direction at each endpoint's rows; the stiffness matrix is its Gram
product and plays the role the Laplacian plays in dimension one. The
lower stiffness matrix is the transposed Gram product on edge space and
shares the nonzero spectrum.

Conventions fixed here so matrices are byte-reproducible:
  * columns follow Graph.edges (lexicographic by endpoint pair),
  * rows are vertex-major, coordinate-minor (vertex u owns rows u*d..u*d+d-1),
  * the column of edge {u, v} with u < v carries the unit vector from v
    toward u in u's rows and its negation in v's rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rigidity_lab.graphs import FileFormatError, Graph, VertexPartition


@dataclass(frozen=True)
class Embedding:
    """Per-vertex points in R^d; immutable."""

    d: int
    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.d:
            raise ValueError(f"points must have shape (n, {self.d})")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]


def rigid_motion_dim(d: int) -> int:
    """Dimension d(d+1)/2 of the space of trivial infinitesimal motions in R^d."""
    return d * (d + 1) // 2


def direction(p: Embedding, u: int, v: int) -> np.ndarray:
    """Unit vector from p(v) toward p(u); the zero vector when the points coincide."""
    if u == v:
        raise ValueError("direction needs distinct vertices")
    w = p.points[u] - p.points[v]
    r = float(np.linalg.norm(w))
    if r == 0.0:
        return np.zeros(p.d)
    return w / r


def rigidity_matrix(g: Graph, p: Embedding) -> np.ndarray:
    """Normalized rigidity matrix, shape (d*|V|, |E|)."""
    if p.n != g.n:
        raise ValueError(f"embedding covers {p.n} vertices, graph has {g.n}")
    d = p.d
    R = np.zeros((d * g.n, g.m))
    for col, (u, v) in enumerate(g.edges):
        duv = direction(p, u, v)
        R[u * d : (u + 1) * d, col] = duv
        R[v * d : (v + 1) * d, col] = -duv
    return R


def stiffness(g: Graph, p: Embedding) -> np.ndarray:
    """Stiffness matrix R R^T, a (d|V|)x(d|V|) positive semidefinite matrix."""
    R = rigidity_matrix(g, p)
    return R @ R.T


def lower_stiffness(g: Graph, p: Embedding) -> np.ndarray:
    """Lower stiffness matrix on edge space, assembled entrywise.

    Diagonal 2 for every edge whose endpoints map to distinct points,
    cos of the angle between the two edge directions at a shared vertex
    (0 when either direction degenerates to zero), and 0 for disjoint
    edges. Agrees with R^T R; tests enforce that equality.
    """
    if p.n != g.n:
        raise ValueError(f"embedding covers {p.n} vertices, graph has {g.n}")
    m = g.m
    L = np.zeros((m, m))
    for i, (u, v) in enumerate(g.edges):
        if not np.array_equal(p.points[u], p.points[v]):
            L[i, i] = 2.0
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)
    for s in range(g.n):
        cols = incident[s]
        for a_pos in range(len(cols)):
            for b_pos in range(a_pos + 1, len(cols)):
                i, j = cols[a_pos], cols[b_pos]
                ea, eb = g.edges[i], g.edges[j]
                a = ea[0] if ea[1] == s else ea[1]
                b = eb[0] if eb[1] == s else eb[1]
                val = float(np.dot(direction(p, s, a), direction(p, s, b)))
                L[i, j] = val
                L[j, i] = val
    return L


def regular_simplex(d: int) -> np.ndarray:
    """d vertices of a regular (d-1)-simplex in R^{d-1}, edge length 1, centroid 0.

    Built by centering the standard-basis simplex and expressing it in a
    Gram-Schmidt (QR) basis of its span; the sqrt(2) edge is then scaled
    to exactly 1.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return np.zeros((1, 0))
    centered = np.eye(d) - np.full((d, d), 1.0 / d)
    # Columns of centered.T are the centered points; any d-1 of them are
    # independent, so the first d-1 Gram-Schmidt vectors span the simplex.
    q, _ = np.linalg.qr(centered.T)
    coords = centered @ q[:, : d - 1]
    coords /= np.sqrt(2.0)
    dists = np.linalg.norm(coords[:, None, :] - coords[None, :, :], axis=2)
    off = dists[~np.eye(d, dtype=bool)]
    if np.max(np.abs(off - 1.0)) > 1e-12:
        raise AssertionError("simplex edge lengths drifted beyond 1e-12")
    return coords


def simplex_embedding(
    g: Graph, partition: VertexPartition, c: float, order=None
) -> Embedding:
    """Separation embedding: part i sits at c * (simplex vertex i), and the
    final coordinate carries each vertex's order value.

    As c grows, the lower stiffness matrix of (g, p_c) converges entrywise
    to limit_lower_stiffness(g, partition, order).
    """
    if c <= 0:
        raise ValueError("c must be positive")
    if partition.n != g.n:
        raise ValueError("partition does not match graph")
    d = partition.d
    order_vals = _order_values(g.n, order)
    simplex = regular_simplex(d)
    pts = np.zeros((g.n, d))
    owner = partition.part_of()
    for v in range(g.n):
        pts[v, : d - 1] = c * simplex[owner[v]]
        pts[v, d - 1] = order_vals[v]
    return Embedding(d, pts)


def _order_values(n: int, order) -> list[float]:
    if order is None:
        return [float(v) for v in range(n)]
    vals = [float(x) for x in order]
    if len(vals) != n:
        raise ValueError(f"order must assign a value to each of {n} vertices")
    if len(set(vals)) != n:
        raise ValueError("order values must be distinct")
    return vals


def limit_lower_stiffness(
    g: Graph, partition: VertexPartition, order=None
) -> np.ndarray:
    """Entrywise limit of the lower stiffness matrix under the separation
    embedding as the part spacing goes to infinity.

    For touching edges sharing vertex s with far endpoints a and b:
      * all three vertices in one part: sign of (o(s)-o(a)) * (o(s)-o(b)),
      * a and b share a part different from s's: 1 (parallel simplex edge),
      * s, a, b in three distinct parts: 1/2 (simplex edges meet at 60 deg),
      * exactly one far endpoint in s's part: 0.
    Diagonal is 2, disjoint edges 0.
    """
    if partition.n != g.n:
        raise ValueError("partition does not match graph")
    order_vals = _order_values(g.n, order)
    owner = partition.part_of()
    m = g.m
    L = np.zeros((m, m))
    np.fill_diagonal(L, 2.0)
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)
    for s in range(g.n):
        cols = incident[s]
        for a_pos in range(len(cols)):
            for b_pos in range(a_pos + 1, len(cols)):
                i, j = cols[a_pos], cols[b_pos]
                ea, eb = g.edges[i], g.edges[j]
                a = ea[0] if ea[1] == s else ea[1]
                b = eb[0] if eb[1] == s else eb[1]
                ps, pa, pb = owner[s], owner[a], owner[b]
                if ps == pa == pb:
                    val = float(
                        np.sign((order_vals[s] - order_vals[a]) * (order_vals[s] - order_vals[b]))
                    )
                elif pa == pb and pa != ps:
                    val = 1.0
                elif ps != pa and ps != pb and pa != pb:
                    val = 0.5
                else:
                    val = 0.0
                L[i, j] = val
                L[j, i] = val
    return L


def generic_embedding(g: Graph, d: int, seed: int) -> Embedding:
    """Coordinates sampled i.i.d. uniformly from [0, 1); deterministic given seed."""
    if d < 1:
        raise ValueError("d must be >= 1")
    rng = np.random.default_rng(seed)
    return Embedding(d, rng.random((g.n, d)))


def star_embedding(n: int, d: int) -> Embedding:
    """The spectral embedding of the generalized star: clique vertex i at the
    i-th standard basis vector, every remaining vertex at the origin."""
    if n <= d:
        raise ValueError(f"need n >= d+1, got n={n}, d={d}")
    pts = np.zeros((n, d))
    for i in range(d):
        pts[i, i] = 1.0
    return Embedding(d, pts)


@dataclass(frozen=True)
class RigidityResult:
    rigid: bool
    rank: int
    required_rank: int


def is_d_rigid(g: Graph, d: int, trials: int = 3, seed: int = 0) -> RigidityResult:
    """Randomized infinitesimal rigidity test.

    Computes the numerical rank of the rigidity matrix over `trials`
    independent generic embeddings (SVD threshold max(rows, cols) * eps *
    sigma_max) and declares the graph d-rigid when any trial attains
    d|V| - d(d+1)/2. Rank deficiency of a generic embedding is a
    measure-zero event, so false negatives vanish with repeated trials.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if g.n <= d:
        raise ValueError(f"rigidity in R^{d} is undefined for |V| = {g.n} <= d")
    required = d * g.n - rigid_motion_dim(d)
    rng = np.random.default_rng(seed)
    best = 0
    for _ in range(trials):
        p = Embedding(d, rng.random((g.n, d)))
        rank = int(np.linalg.matrix_rank(rigidity_matrix(g, p)))
        best = max(best, rank)
        if best == required:
            break
    return RigidityResult(rigid=(best == required), rank=best, required_rank=required)


# ---------------------------------------------------------------------------
# Embedding files
# ---------------------------------------------------------------------------


def parse_embedding(text: str) -> Embedding:
    """Parse `v x_1 ... x_d` lines; every vertex 0..n-1 exactly once."""
    rows: dict[int, list[float]] = {}
    dim: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise FileFormatError(f"line {lineno}: expected 'v x_1 ... x_d'")
        try:
            v = int(tokens[0])
            coords = [float(t) for t in tokens[1:]]
        except ValueError:
            raise FileFormatError(f"line {lineno}: malformed entry {raw!r}")
        if dim is None:
            dim = len(coords)
        elif len(coords) != dim:
            raise FileFormatError(
                f"line {lineno}: expected {dim} coordinates, got {len(coords)}"
            )
        if v in rows:
            raise FileFormatError(f"line {lineno}: duplicate vertex {v}")
        rows[v] = coords
    if not rows:
        raise FileFormatError("empty embedding file")
    n = len(rows)
    if set(rows) != set(range(n)):
        raise FileFormatError("vertex indices must be exactly 0..n-1")
    assert dim is not None
    return Embedding(dim, np.array([rows[v] for v in range(n)]))


def format_embedding(p: Embedding) -> str:
    lines = []
    for v in range(p.n):
        coords = " ".join(f"{x:.17g}" for x in p.points[v])
        lines.append(f"{v} {coords}")
    return "\n".join(lines) + "\n"


def read_embedding(path) -> Embedding:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_embedding(fh.read())


def write_embedding(p: Embedding, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_embedding(p))
