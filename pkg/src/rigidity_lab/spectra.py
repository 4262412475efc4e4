"""Dense symmetric eigensolves, Laplacians, and stiffness spectral gaps.

Everything here is dense and exact-spectrum oriented: desk scale keeps
matrices at or below a few thousand rows, and the multiplicity and
small-eigenvalue contracts need full spectra rather than iterative
approximations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from rigidity_lab.framework import Embedding, lower_stiffness, rigid_motion_dim, stiffness
from rigidity_lab.graphs import Graph

#: Distinguished value for the connectivity of a one-vertex graph. Compares
#: greater than every finite value and is absorbed by min().
INFINITE = math.inf


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalue list with a reporting-only multiplicity tolerance."""

    values: np.ndarray
    grouping_tol: float = 1e-6

    def __post_init__(self):
        vals = np.array(self.values, dtype=float).ravel()
        if np.any(np.diff(vals) < 0):
            raise ValueError("eigenvalues must be ascending")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def multiplicities(self) -> list[tuple[float, int]]:
        """Cluster eigenvalues into (value, multiplicity) groups.

        Two consecutive eigenvalues join a group when they differ by at most
        grouping_tol relative to the larger magnitude (absolute near zero).
        Used for reporting only, never for computation.
        """
        groups: list[tuple[float, int]] = []
        run: list[float] = []
        for v in self.values:
            if run and abs(v - run[-1]) <= self.grouping_tol * max(1.0, abs(v)):
                run.append(float(v))
            else:
                if run:
                    groups.append((float(np.mean(run)), len(run)))
                run = [float(v)]
        if run:
            groups.append((float(np.mean(run)), len(run)))
        return groups


def sym_eigenvalues(m: np.ndarray, grouping_tol: float = 1e-6) -> Spectrum:
    """All eigenvalues of a symmetric matrix, ascending.

    The input must be square and symmetric to 1e-10 (relative to its largest
    entry); it is symmetrized before solving so the backend sees an exactly
    Hermitian operator.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if a.size:
        skew = np.max(np.abs(a - a.T))
        if skew > 1e-10 * max(1.0, float(np.max(np.abs(a)))):
            raise ValueError(f"matrix is not symmetric (max asymmetry {skew:.3e})")
    sym = 0.5 * (a + a.T)
    return Spectrum(np.linalg.eigvalsh(sym), grouping_tol)


def graph_laplacian(g: Graph) -> np.ndarray:
    """Degree diagonal minus adjacency."""
    L = np.zeros((g.n, g.n))
    for u, v in g.edges:
        L[u, u] += 1.0
        L[v, v] += 1.0
        L[u, v] -= 1.0
        L[v, u] -= 1.0
    return L


def normalized_laplacian(g: Graph) -> np.ndarray:
    """D^{-1/2} L D^{-1/2}; rejects graphs with isolated vertices."""
    deg = g.degrees()
    if min(deg) == 0:
        isolated = [v for v, dv in enumerate(deg) if dv == 0]
        raise ValueError(f"isolated vertices {isolated} have no normalization")
    inv_sqrt = 1.0 / np.sqrt(np.array(deg, dtype=float))
    L = graph_laplacian(g)
    return L * np.outer(inv_sqrt, inv_sqrt)


def algebraic_connectivity(g: Graph) -> float:
    """Second-smallest Laplacian eigenvalue; INFINITE for a single vertex,
    exact 0.0 for a disconnected graph."""
    if g.n == 1:
        return INFINITE
    if not g.is_connected():
        return 0.0
    vals = np.linalg.eigvalsh(graph_laplacian(g))
    return max(0.0, float(vals[1]))


@dataclass(frozen=True)
class GapValue:
    """Stiffness spectral gap plus a vacuity flag for graphs too small or
    sparse for the target index to be meaningful."""

    value: float
    vacuous: bool = False


def stiffness_gap_detail(g: Graph, p: Embedding) -> GapValue:
    """The (d(d+1)/2 + 1)-th smallest stiffness eigenvalue of (g, p).

    Solved on whichever of the stiffness matrix (d|V| rows) or the lower
    stiffness matrix (|E| rows) is smaller; the two routes agree through the
    index shift between the matrices' spectra. Any returned value is by
    definition a valid lower bound on the d-dimensional algebraic
    connectivity of g.
    """
    if g.m < 1:
        raise ValueError("graph has no edges")
    d = p.d
    k = rigid_motion_dim(d) + 1
    dn = d * g.n
    if k > dn:
        return GapValue(0.0, vacuous=True)
    if dn <= g.m:
        vals = np.linalg.eigvalsh(stiffness(g, p))
        return GapValue(max(0.0, float(vals[k - 1])), vacuous=False)
    shifted = g.m - dn + k
    if shifted < 1:
        # Fewer edges than d|V| - d(d+1)/2: the kernel swallows the target
        # index, so the gap is exactly zero.
        return GapValue(0.0, vacuous=True)
    vals = np.linalg.eigvalsh(lower_stiffness(g, p))
    return GapValue(max(0.0, float(vals[shifted - 1])), vacuous=False)


def stiffness_gap(g: Graph, p: Embedding) -> float:
    return stiffness_gap_detail(g, p).value
