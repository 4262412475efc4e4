import math

import numpy as np
import pytest

from conftest import random_connected_graph, random_partition
from rigidity_lab.bounds import (
    gen_cycle_connectivity,
    iterated_subdivision_bound,
    kn_bound,
    limit_matrix_bound,
    partition_bound,
    partition_bound_2d,
    path_bounds,
    path_connectivity,
    star_spectrum_closed_form,
    subdivision_bound,
)
from rigidity_lab.framework import (
    lower_stiffness,
    rigid_motion_dim,
    simplex_embedding,
    star_embedding,
    stiffness,
)
from rigidity_lab.graphs import (
    Graph,
    VertexPartition,
    balanced_partition,
    make_complete,
    make_gen_cycle,
    make_gen_path,
    make_star,
)
from rigidity_lab.spectra import INFINITE, algebraic_connectivity, stiffness_gap


def test_partition_bound_complete_graph():
    k12 = make_complete(12)
    report = partition_bound(k12, balanced_partition(12, 3), 3)
    assert report.method == "min-gaps"
    assert report.value == pytest.approx(2.0, abs=1e-9)  # half of floor(12/3)
    gaps = sorted(e.gap for e in report.evidence)
    assert np.allclose(gaps, [2.0, 2.0, 2.0, 4.0, 4.0, 4.0], atol=1e-9)
    assert report.value == pytest.approx(min(e.gap for e in report.evidence))


def test_partition_bound_disconnected_part():
    p4 = make_gen_path(4, 1)
    part = VertexPartition(((0, 3), (1, 2)))  # {0,3} induces no edge
    report = partition_bound(p4, part, 2)
    assert report.value == 0.0


def test_partition_bound_singleton_part_is_absorbed():
    k4 = make_complete(4)
    part = VertexPartition(((0,), (1, 2, 3)))
    report = partition_bound(k4, part, 2)
    induced = [e for e in report.evidence if e.kind == "induced"]
    assert induced[0].gap == INFINITE
    assert induced[1].gap == pytest.approx(3.0)  # a(K_3)
    crossing = [e for e in report.evidence if e.kind == "crossing"][0]
    assert crossing.gap == pytest.approx(0.5)  # half of a(K_{1,3}) = 1
    assert report.value == pytest.approx(0.5)


def test_partition_bound_part_count_mismatch():
    k4 = make_complete(4)
    with pytest.raises(ValueError):
        partition_bound(k4, VertexPartition(((0, 1), (2, 3))), 3)
    with pytest.raises(ValueError):
        partition_bound_2d(k4, VertexPartition(((0, 1), (2,), (3,))))


def test_partition_bound_2d():
    k10 = make_complete(10)
    halves = VertexPartition((tuple(range(5)), tuple(range(5, 10))))
    assert partition_bound_2d(k10, halves).value == pytest.approx(5.0, abs=1e-9)
    k4 = make_complete(4)
    report = partition_bound_2d(k4, VertexPartition(((0, 1), (2, 3))))
    assert report.value == pytest.approx(2.0, abs=1e-9)  # min(2, 2, 2), no halving
    two_triangles = Graph(6, ((0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)))
    part = VertexPartition(((0, 1, 2), (3, 4, 5)))
    assert partition_bound_2d(two_triangles, part).value == 0.0  # no crossing edges


def test_limit_matrix_bound_complete_graph():
    k12 = make_complete(12)
    part = balanced_partition(12, 3)
    limit = limit_matrix_bound(k12, part, 3)
    assert limit.index_m == k12.m - 3 * 12 + rigid_motion_dim(3) + 1
    assert limit.value >= partition_bound(k12, part, 3).value - 1e-8
    assert limit.value >= 2.0 - 1e-8


def test_limit_matrix_bound_d1_is_connectivity():
    rng = np.random.default_rng(31)
    for _ in range(5):
        g = random_connected_graph(rng, int(rng.integers(4, 10)), 0.4)
        whole = VertexPartition((tuple(range(g.n)),))
        report = limit_matrix_bound(g, whole, 1)
        assert report.value == pytest.approx(algebraic_connectivity(g), abs=1e-9)


def test_limit_matrix_bound_k4_two_parts():
    k4 = make_complete(4)
    part = VertexPartition(((0, 1), (2, 3)))
    assert limit_matrix_bound(k4, part, 2).value >= 2.0 - 1e-8


def test_limit_matrix_bound_vacuous():
    tree = make_gen_path(6, 1)  # 5 edges < 2*6 - 3
    part = VertexPartition(((0, 2, 4), (1, 3, 5)))
    report = limit_matrix_bound(tree, part, 2)
    assert report.vacuous and report.value == 0.0


def test_limit_dominates_min_gaps():
    rng = np.random.default_rng(32)
    for _ in range(25):
        n = int(rng.integers(6, 15))
        d = int(rng.integers(1, 4))
        g = random_connected_graph(rng, n, 0.55)
        part = random_partition(rng, n, d)
        limit = limit_matrix_bound(g, part, d)
        gaps = partition_bound(g, part, d)
        assert limit.value >= gaps.value - 1e-8
        if d == 2:
            assert limit.value >= partition_bound_2d(g, part).value - 1e-8


def test_limit_bound_certificate_embedding():
    # every certified value is witnessed by a concrete embedding at c = 1e4
    rng = np.random.default_rng(33)
    for _ in range(6):
        n = int(rng.integers(6, 12))
        d = int(rng.integers(2, 4))
        g = random_connected_graph(rng, n, 0.7)
        part = random_partition(rng, n, d)
        limit = limit_matrix_bound(g, part, d)
        if limit.vacuous:
            continue
        gap = stiffness_gap(g, simplex_embedding(g, part, 1e4))
        assert gap >= limit.value - 1e-3
        assert abs(gap - limit.value) <= 1e-3
        assert gap >= partition_bound(g, part, d).value - 1e-3


def test_limit_bound_monotone_convergence():
    rng = np.random.default_rng(34)
    g = random_connected_graph(rng, 10, 0.6)
    part = random_partition(rng, 10, 2)
    limit = limit_matrix_bound(g, part, 2)
    assert not limit.vacuous
    m = limit.index_m
    errs = []
    for c in (1e2, 1e3, 1e4):
        vals = np.linalg.eigvalsh(lower_stiffness(g, simplex_embedding(g, part, c)))
        errs.append(abs(float(vals[m - 1]) - limit.value))
    assert errs[0] >= errs[1] - 1e-12 and errs[1] >= errs[2] - 1e-12


def test_bounds_respect_one_dimensional_ceiling():
    rng = np.random.default_rng(35)
    for _ in range(10):
        n = int(rng.integers(6, 14))
        d = int(rng.integers(2, 4))
        g = random_connected_graph(rng, n, 0.6)
        part = random_partition(rng, n, d)
        ceiling = algebraic_connectivity(g) + 1e-8
        assert partition_bound(g, part, d).value <= ceiling
        assert limit_matrix_bound(g, part, d).value <= ceiling
        if d == 2:
            assert partition_bound_2d(g, part).value <= ceiling


def test_certified_instances_have_rigid_edge_count():
    # all subgraphs connected forces |E| >= d|V| - d(d+1)/2
    rng = np.random.default_rng(36)
    found = 0
    for _ in range(40):
        n = int(rng.integers(6, 12))
        d = int(rng.integers(2, 4))
        g = random_connected_graph(rng, n, 0.7)
        part = random_partition(rng, n, d)
        report = partition_bound(g, part, d)
        if report.value > 0:
            found += 1
            assert g.m >= d * g.n - rigid_motion_dim(d)
    assert found >= 10


def test_kn_bound():
    assert kn_bound(12, 3) == 2.0
    for d in range(1, 6):
        assert kn_bound(2 * d, d) == 1.0
    assert kn_bound(100, 4) == 12.5
    with pytest.raises(ValueError):
        kn_bound(3, 3)


def test_subdivision_bound_values():
    assert subdivision_bound(12.0, 3, 0) == 2.0  # min clamps at 4, halved
    assert subdivision_bound(0.3, 3, 1) == pytest.approx(0.0125)  # 0.1 / 8
    assert subdivision_bound(0.0, 5, 2) == 0.0
    with pytest.raises(ValueError):
        subdivision_bound(-1.0, 3, 0)
    with pytest.raises(ValueError):
        subdivision_bound(1.0, 1, 0)


def test_iterated_subdivision_bound_values():
    assert iterated_subdivision_bound(0.9, 3, 0) == pytest.approx(0.6)  # 2a/max_deg
    assert iterated_subdivision_bound(12.0, 3, 1) == 2.0  # min(8, 8)/4
    assert iterated_subdivision_bound(3.0, 3, 2) == pytest.approx(0.125)  # 2/16
    with pytest.raises(ValueError):
        iterated_subdivision_bound(1.0, 3, -1)


def test_star_spectrum_closed_form():
    spec = star_spectrum_closed_form(4, 2)
    assert np.allclose(spec.values, [0, 0, 0, 1, 1, 1, 3, 4])
    assert sum(spec.values) == pytest.approx(2 * make_star(4, 2).m)  # trace check
    # d = 1 star: ordinary Laplacian spectrum of K_{1,n-1}
    spec = star_spectrum_closed_form(5, 1)
    assert np.allclose(spec.values, [0, 1, 1, 1, 5])
    # n = d+1 (complete graph): multiplicity of 1 is C(d+1,2) - d
    for d in (3, 4, 5):
        spec = star_spectrum_closed_form(d + 1, d)
        ones = np.sum(np.abs(spec.values - 1.0) < 1e-12)
        assert ones == rigid_motion_dim(d) - d
    with pytest.raises(ValueError):
        star_spectrum_closed_form(3, 3)


def test_star_spectrum_matches_dense_solve():
    for n, d in ((5, 1), (6, 2), (7, 3), (9, 4)):
        g = make_star(n, d)
        dense = np.linalg.eigvalsh(stiffness(g, star_embedding(n, d)))
        assert np.max(np.abs(dense - star_spectrum_closed_form(n, d).values)) < 1e-8


def test_gen_cycle_connectivity():
    for n in (5, 8, 13):
        assert gen_cycle_connectivity(n, 1) == pytest.approx(
            2.0 * (1.0 - math.cos(2.0 * math.pi / n))
        )
    assert gen_cycle_connectivity(7, 2) == pytest.approx(3.1980622641951615)
    # dense cross-check: the circulant formula really is the Fiedler value
    from rigidity_lab.spectra import graph_laplacian

    for n, d in ((7, 2), (9, 3), (11, 2), (12, 4)):
        lam2 = np.linalg.eigvalsh(graph_laplacian(make_gen_cycle(n, d)))[1]
        assert gen_cycle_connectivity(n, d) == pytest.approx(float(lam2), abs=1e-9)
    with pytest.raises(ValueError):
        gen_cycle_connectivity(4, 2)


def test_path_connectivity():
    assert path_connectivity(4) == pytest.approx(2.0 - math.sqrt(2.0))
    from rigidity_lab.spectra import algebraic_connectivity

    for n in (3, 7, 12):
        assert algebraic_connectivity(make_gen_path(n, 1)) == pytest.approx(
            path_connectivity(n), abs=1e-10
        )


def test_path_bounds():
    lower, upper = path_bounds(10, 2)
    assert lower == pytest.approx(2.0 * (1.0 - math.cos(math.pi / 10)))
    assert lower == pytest.approx(0.09788696740969294)
    lower3, _ = path_bounds(9, 3)
    assert lower3 == pytest.approx(1.0 - math.cos((math.pi / 2) / 3))
    # d = 1 collapses to the exact formula
    lo, hi = path_bounds(6, 1)
    assert lo == hi == pytest.approx(path_connectivity(6))
    with pytest.raises(ValueError):
        path_bounds(3, 3)


def test_path_bounds_bracket_sweep():
    for d in range(2, 6):
        for n in range(max(3, d + 1), 101):
            lower, upper = path_bounds(n, d)
            assert lower <= upper + 1e-12
    # both sides decay like 1/n^2: their ratio stays d-bounded for large n
    for d in range(2, 6):
        for n in range(50, 101, 10):
            lower, upper = path_bounds(n, d)
            assert upper / lower <= 8.0 * (d + 1) * (2 * d + 1) / d
