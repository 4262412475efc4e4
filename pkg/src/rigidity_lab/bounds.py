"""Certified lower bounds on d-dimensional algebraic connectivity.

The central tool: for any partition of the vertices into d nonempty parts,
the d-dimensional algebraic connectivity is at least the minimum over the
parts' induced connectivities and half the crossing bipartite
connectivities (un-halved when d = 2). A sharper certificate solves the
limit lower-stiffness matrix of the separation embedding directly. Closed
forms for the generalized star, path, and cycle families live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from rigidity_lab.framework import limit_lower_stiffness, rigid_motion_dim
from rigidity_lab.graphs import Graph, VertexPartition, bipartite_subgraph, induced_subgraph
from rigidity_lab.spectra import INFINITE, Spectrum, algebraic_connectivity


@dataclass(frozen=True)
class GapEvidence:
    """One subgraph's contribution to a min-gaps certificate.

    `gap` is the contribution entering the minimum (already halved for
    crossing subgraphs under the general-d bound)."""

    kind: str  # "induced" or "crossing"
    parts: tuple[int, ...]
    gap: float

    def to_json_dict(self) -> dict:
        gap = "Infinity" if math.isinf(self.gap) else self.gap
        return {"kind": self.kind, "parts": list(self.parts), "gap": gap}


@dataclass(frozen=True)
class BoundReport:
    """A certified lower bound on a_d plus the evidence that produced it."""

    method: str  # "min-gaps", "min-gaps-2d", "limit-matrix", "formula"
    value: float
    evidence: tuple[GapEvidence, ...] = ()
    partition: VertexPartition | None = None
    vacuous: bool = False
    index_m: int | None = None

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("certified bounds are nonnegative")

    def to_json_dict(self) -> dict:
        out: dict = {"method": self.method, "value": self.value}
        if self.vacuous:
            out["vacuous"] = True
        if self.evidence:
            out["evidence"] = [e.to_json_dict() for e in self.evidence]
        if self.index_m is not None:
            out["m"] = self.index_m
        if self.partition is not None:
            out["partition"] = [list(part) for part in self.partition.parts]
        return out


def _subgraph_gaps(g: Graph, partition: VertexPartition, halve_crossing: bool):
    evidence: list[GapEvidence] = []
    parts = partition.parts
    for i, part in enumerate(parts):
        sub, _ = induced_subgraph(g, part)
        evidence.append(GapEvidence("induced", (i,), algebraic_connectivity(sub)))
    factor = 0.5 if halve_crossing else 1.0
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            cross, _ = bipartite_subgraph(g, parts[i], parts[j])
            gap = factor * algebraic_connectivity(cross)
            evidence.append(GapEvidence("crossing", (i, j), gap))
    return tuple(evidence)


def partition_bound(g: Graph, partition: VertexPartition, d: int) -> BoundReport:
    """Lower bound on a_d(g): the minimum of the parts' connectivities and
    half the crossing connectivities. One-vertex parts contribute INFINITE
    and drop out of the minimum."""
    if partition.d != d:
        raise ValueError(f"partition has {partition.d} parts, expected {d}")
    if partition.n != g.n:
        raise ValueError("partition does not match graph")
    evidence = _subgraph_gaps(g, partition, halve_crossing=True)
    value = max(0.0, min(e.gap for e in evidence))
    return BoundReport("min-gaps", value, evidence, partition)


def partition_bound_2d(g: Graph, partition: VertexPartition) -> BoundReport:
    """The strengthened two-part bound: minimum of the three connectivities
    with no halving of the crossing term."""
    if partition.d != 2:
        raise ValueError(f"the 2d bound needs exactly 2 parts, got {partition.d}")
    if partition.n != g.n:
        raise ValueError("partition does not match graph")
    evidence = _subgraph_gaps(g, partition, halve_crossing=False)
    value = max(0.0, min(e.gap for e in evidence))
    return BoundReport("min-gaps-2d", value, evidence, partition)


def limit_matrix_bound(g: Graph, partition: VertexPartition, d: int) -> BoundReport:
    """Lower bound from the separation-embedding limit matrix.

    Solves the |E| x |E| limit lower-stiffness matrix at index
    m = |E| - d|V| + d(d+1)/2 + 1. Dominates the min-gaps bound for the
    same partition (the block-diagonal comparison step only weakens).
    Vacuous (value 0, flagged) when the graph has too few edges for the
    index to be positive.
    """
    if partition.d != d:
        raise ValueError(f"partition has {partition.d} parts, expected {d}")
    if partition.n != g.n:
        raise ValueError("partition does not match graph")
    m = g.m - d * g.n + rigid_motion_dim(d) + 1
    if m < 1 or m > g.m:
        return BoundReport("limit-matrix", 0.0, (), partition, vacuous=True, index_m=m)
    vals = np.linalg.eigvalsh(limit_lower_stiffness(g, partition))
    value = max(0.0, float(vals[m - 1]))
    return BoundReport("limit-matrix", value, (), partition, index_m=m)


def kn_bound(n: int, d: int) -> float:
    """Closed-form lower bound floor(n/d)/2 on a_d of the complete graph."""
    if n <= d:
        raise ValueError(f"need n >= d+1, got n={n}, d={d}")
    return 0.5 * (n // d)


def subdivision_bound(a_g: float, max_deg: int, m: int) -> float:
    """Connectivity guarantee after subdividing every edge with at most m
    vertices: min(a/max_deg, 4) / (2 (m+1)^2). Needs min degree >= 2."""
    if a_g < 0:
        raise ValueError("connectivity must be nonnegative")
    if max_deg < 2:
        raise ValueError("max degree must be >= 2")
    if m < 0:
        raise ValueError("m must be >= 0")
    return min(a_g / max_deg, 4.0) / (2.0 * (m + 1) ** 2)


def iterated_subdivision_bound(a_g: float, max_deg: int, k: int) -> float:
    """Connectivity guarantee for the k-fold uniform subdivision:
    min(2 a / max_deg, 8) / 4^k."""
    if a_g < 0:
        raise ValueError("connectivity must be nonnegative")
    if max_deg < 2:
        raise ValueError("max degree must be >= 2")
    if k < 0:
        raise ValueError("k must be >= 0")
    return min(2.0 * a_g / max_deg, 8.0) / (4.0**k)


def star_spectrum_closed_form(n: int, d: int) -> Spectrum:
    """Full stiffness spectrum of the generalized star at its spectral
    embedding: 0 with multiplicity d(d+1)/2, then 1 with multiplicity
    dn - d(d+1)/2 - d, then n - d/2 with multiplicity d-1, then n."""
    if n <= d:
        raise ValueError(f"need n >= d+1, got n={n}, d={d}")
    t = rigid_motion_dim(d)
    vals = (
        [0.0] * t
        + [1.0] * (d * n - t - d)
        + [n - d / 2.0] * (d - 1)
        + [float(n)]
    )
    return Spectrum(np.array(vals))


def gen_cycle_connectivity(n: int, d: int) -> float:
    """Exact algebraic connectivity of the generalized cycle: the circulant
    eigenvalue 2d - 2 sum_{k=1..d} cos(2 pi k / n) at Fourier index 1."""
    if n <= 2 * d:
        raise ValueError(f"need n >= 2d+1, got n={n}, d={d}")
    return 2.0 * d - 2.0 * sum(math.cos(2.0 * math.pi * k / n) for k in range(1, d + 1))


def path_connectivity(n: int) -> float:
    """Exact algebraic connectivity 2(1 - cos(pi/n)) of the n-vertex path."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return INFINITE
    return 2.0 * (1.0 - math.cos(math.pi / n))


def path_bounds(n: int, d: int) -> tuple[float, float]:
    """Bracket for a_d of the generalized path.

    Lower: residue-class partition through the min-gaps machinery,
    1 - cos((pi/2) / ceil(n/d)) for d >= 3 and the un-halved
    2 (1 - cos(pi/n)) for d = 2. Upper: the generalized-cycle circulant
    value (the path embeds in the cycle). d = 1 collapses to the exact
    path formula on both sides.
    """
    if n <= d:
        raise ValueError(f"need n >= d+1, got n={n}, d={d}")
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        exact = path_connectivity(n)
        return exact, exact
    if d == 2:
        lower = 2.0 * (1.0 - math.cos(math.pi / n))
    else:
        lower = 1.0 - math.cos((math.pi / 2.0) / math.ceil(n / d))
    upper = 2.0 * d - 2.0 * sum(
        math.cos(2.0 * k * math.pi / n) for k in range(1, d + 1)
    )
    return lower, upper
