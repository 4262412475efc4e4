"""Acceptance suite: one test per criterion, one printed PASS/FAIL line each.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
Randomized criteria use fixed seeds, so every run checks the same instances.
"""

import contextlib
import functools
import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import connected_cubic_bipartite, random_connected_graph, random_partition
from rigidity_lab.ascent import (
    AscentConfig,
    EigenvalueClusterError,
    finite_difference_gap_gradient,
    gap_gradient,
    maximize_gap,
)
from rigidity_lab.bounds import (
    iterated_subdivision_bound,
    limit_matrix_bound,
    partition_bound,
    partition_bound_2d,
    path_bounds,
    star_spectrum_closed_form,
    subdivision_bound,
)
from rigidity_lab.expanders import build_k_regular, certify
from rigidity_lab.framework import (
    Embedding,
    generic_embedding,
    is_d_rigid,
    lower_stiffness,
    rigid_motion_dim,
    rigidity_matrix,
    simplex_embedding,
    star_embedding,
    stiffness,
)
from rigidity_lab.graphs import (
    Graph,
    balanced_partition,
    format_edge_list,
    format_partition,
    iterated_subdivision,
    make_complete,
    make_gen_path,
    make_star,
    subdivide,
)
from rigidity_lab.spectra import (
    algebraic_connectivity,
    graph_laplacian,
    normalized_laplacian,
    stiffness_gap,
)


def criterion(number, label):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                fn()
            except BaseException:
                print(f"[acceptance] criterion {number} ({label}): FAIL", flush=True)
                raise
            print(f"[acceptance] criterion {number} ({label}): PASS", flush=True)

        return run

    return wrap


@criterion(1, "star spectrum oracle")
def test_criterion_1_star_spectrum():
    for d in (1, 2, 3, 4):
        for n in range(d + 1, 13):
            g = make_star(n, d)
            dense = np.linalg.eigvalsh(stiffness(g, star_embedding(n, d)))
            closed = star_spectrum_closed_form(n, d).values
            assert np.max(np.abs(dense - closed)) <= 1e-8, (n, d)


@criterion(2, "complete-graph partition bound")
def test_criterion_2_kn_partition_bound():
    # the CLI route on K_12 with the balanced 3-part partition
    import tempfile, os

    with tempfile.TemporaryDirectory() as tmp:
        graph = os.path.join(tmp, "k12.edges")
        part = os.path.join(tmp, "k12.partition")
        with open(graph, "w") as fh:
            fh.write(format_edge_list(make_complete(12)))
        with open(part, "w") as fh:
            fh.write(format_partition(balanced_partition(12, 3)))
        res = subprocess.run(
            [sys.executable, "-m", "rigidity_lab.cli", "bound", "partition",
             graph, "--partition", part, "-d", "3"],
            capture_output=True, text=True,
        )
        assert res.returncode == 0
        assert json.loads(res.stdout)["value"] >= 2.0 - 1e-8
    # un-halved bound is exact on even complete graphs
    for n in (4, 6, 8, 10, 12, 14):
        g = make_complete(n)
        report = partition_bound_2d(g, balanced_partition(n, 2))
        assert abs(report.value - n / 2.0) <= 1e-8, n


@criterion(3, "limit-matrix dominance and convergence")
def test_criterion_3_limit_matrix():
    rng = np.random.default_rng(20240809)
    for _ in range(25):
        n = int(rng.integers(6, 21))
        d = int(rng.integers(1, 4))
        g = random_connected_graph(rng, n, extra_prob=0.55)
        part = random_partition(rng, n, d)
        limit = limit_matrix_bound(g, part, d)
        gaps = partition_bound(g, part, d)
        assert limit.value >= gaps.value - 1e-8
        if limit.vacuous:
            continue
        vals = np.linalg.eigvalsh(lower_stiffness(g, simplex_embedding(g, part, 1e4)))
        assert abs(float(vals[limit.index_m - 1]) - limit.value) <= 1e-3


@criterion(4, "upper-bound invariant")
def test_criterion_4_upper_bound():
    rng = np.random.default_rng(41)
    for _ in range(50):
        n = int(rng.integers(4, 17))
        d = int(rng.integers(1, 4))
        g = random_connected_graph(rng, n, extra_prob=0.5)
        ceiling = algebraic_connectivity(g) + 1e-8
        for _ in range(5):
            p = generic_embedding(g, d, seed=int(rng.integers(1 << 30)))
            assert stiffness_gap(g, p) <= ceiling


@criterion(5, "subdivision suite")
def test_criterion_5_subdivision():
    specs = [(3 + (i % 10), i) for i in range(10)]  # sides 3..12: 2n <= 24
    for n_side, seed in specs:
        g = connected_cubic_bipartite(n_side, seed=seed)
        a_g = algebraic_connectivity(g)
        # (b) + (a): every-edge subdivisions with at most m vertices per edge
        for m in range(5):
            variants = [{e: m for e in g.edges}]
            if m:
                variants.append({e: (i % (m + 1)) for i, e in enumerate(g.edges)})
            for counts in variants:
                sub = subdivide(g, counts)
                a_sub = algebraic_connectivity(sub)
                assert a_sub <= a_g + 1e-9
                assert a_sub >= subdivision_bound(a_g, 3, m) - 1e-9
        # (c) iterated subdivision bound
        for k in range(4):
            a_k = algebraic_connectivity(iterated_subdivision(g, k))
            assert a_k >= iterated_subdivision_bound(a_g, 3, k) - 1e-9
            assert a_k <= a_g + 1e-9
        # (d) normalized-Laplacian eigenvalue map under one subdivision
        s1 = iterated_subdivision(g, 1)
        spec_g = np.linalg.eigvalsh(normalized_laplacian(g))
        for lam in np.linalg.eigvalsh(normalized_laplacian(s1)):
            if abs(lam - 1.0) <= 1e-9:
                continue
            assert np.min(np.abs(spec_g - 2.0 * lam * (2.0 - lam))) <= 1e-7
        # (e) degree sandwich between Laplacian and normalized Laplacian
        for h in (g, s1):
            deg = h.degrees()
            delta, Delta = min(deg), max(deg)
            lam = np.linalg.eigvalsh(graph_laplacian(h))
            nlam = np.linalg.eigvalsh(normalized_laplacian(h))
            ratios = lam[1:] / nlam[1:]
            assert np.all(ratios >= delta - 1e-8)
            assert np.all(ratios <= Delta + 1e-8)


@criterion(6, "rigidity-expander family certification")
def test_criterion_6_expander_families():
    for d, k, sizes in ((2, 5, range(3, 13)), (3, 7, range(3, 7))):
        values = []
        for n in sizes:
            g, part, _ = build_k_regular(n, d, k, seed=777)
            report = certify(g, part, d)
            assert report.value > 0.0, (d, k, n)
            values.append(report.value)
        assert min(values) >= 0.25 * max(values), (d, k, values)


@criterion(7, "generalized paths are minimally rigid")
def test_criterion_7_minimal_rigidity():
    for d in (1, 2, 3):
        for n in range(d + 1, 11):
            g = make_gen_path(n, d)
            required = d * n - rigid_motion_dim(d)
            assert is_d_rigid(g, d, trials=3, seed=0).rank == required
            for drop in range(g.m):
                pruned = Graph(n, g.edges[:drop] + g.edges[drop + 1 :])
                for seed in (1, 2):
                    res = is_d_rigid(pruned, d, trials=1, seed=seed)
                    assert res.rank == required - 1, (n, d, drop, seed)


@criterion(8, "optimizer targets and gradient oracle")
def test_criterion_8_optimizer():
    res = maximize_gap(make_complete(4), 3, AscentConfig(steps=300, restarts=4, seed=0))
    assert res.best_value >= 0.95
    res = maximize_gap(make_star(8, 2), 2, AscentConfig(steps=1000, restarts=8, seed=0))
    assert 0.95 <= res.best_value <= 1.0 + 1e-6
    rng = np.random.default_rng(88)
    checked = 0
    while checked < 20:
        n = int(rng.integers(5, 10))
        d = int(rng.integers(1, 4))
        g = random_connected_graph(rng, n, 0.6)
        p = generic_embedding(g, d, seed=int(rng.integers(1 << 30)))
        try:
            analytic = gap_gradient(g, p)
        except EigenvalueClusterError:
            continue
        reference = finite_difference_gap_gradient(g, p)
        rel = np.linalg.norm(analytic - reference) / max(np.linalg.norm(reference), 1e-12)
        assert rel <= 1e-4
        checked += 1


@criterion(9, "generalized-path bracket")
def test_criterion_9_path_bracket():
    for d in (2, 3):
        for n in range(d + 1, 101):
            lower, upper = path_bounds(n, d)
            assert lower <= upper + 1e-12, (n, d)
    for n in range(3, 13):
        lower, upper = path_bounds(n, 2)
        res = maximize_gap(
            make_gen_path(n, 2), 2, AscentConfig(steps=400, restarts=8, seed=1)
        )
        assert lower - 1e-8 <= res.best_value <= upper + 1e-8, (n, res.best_value)


@criterion(10, "CLI determinism")
def test_criterion_10_cli_determinism(tmp_path_factory=None):
    import tempfile, os

    def run(args, cwd):
        res = subprocess.run(
            [sys.executable, "-m", "rigidity_lab.cli", *args],
            capture_output=True, text=True, cwd=cwd,
        )
        assert res.returncode == 0, res.stderr
        return res.stdout

    def strip_timestamp(stdout):
        payload = json.loads(stdout)
        payload["manifest"].pop("timestamp")
        return json.dumps(payload)

    with tempfile.TemporaryDirectory() as t1, tempfile.TemporaryDirectory() as t2:
        args = ["construct", "-d", "2", "-k", "6", "-n", "3", "--seed", "9", "-o", "out"]
        s1, s2 = run(args, t1), run(args, t2)
        assert strip_timestamp(s1) == strip_timestamp(s2)
        for name in ("out.edges", "out.partition", "out.blueprint.json"):
            b1 = open(os.path.join(t1, name), "rb").read()
            b2 = open(os.path.join(t2, name), "rb").read()
            assert b1 == b2, name

        graph = os.path.join(t1, "k4.edges")
        with open(graph, "w") as fh:
            fh.write(format_edge_list(make_complete(4)))
        args = ["optimize", graph, "-d", "2", "--steps", "60", "--restarts", "2",
                "--seed", "3", "--trace"]
        assert strip_timestamp(run(args, t1)) == strip_timestamp(run(args, t1))
        args = ["spectrum", graph, "--random-d", "2", "--seed", "5"]
        assert strip_timestamp(run(args, t1)) == strip_timestamp(run(args, t1))
