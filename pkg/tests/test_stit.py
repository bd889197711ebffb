"""Cell-division process tests: tree structure, law checks, tessellation ops."""

import math

import numpy as np
import pytest

from stitsim import geometry as geo
from stitsim import stit
from stitsim.config import dumps_canonical
from stitsim.errors import (AmbiguousZeroCell, ExplosionGuard,
                            InsufficientNests, MethodMismatch, OutOfRange,
                            WindowMismatch)
from stitsim.measure import axis_measure, isotropic_measure, measure_hitting
from stitsim.rng import run_replicates, stream
from stitsim.stats import binomial_sigma, ks_two_sample

LAM = axis_measure([1.0, 1.0])
W1 = geo.Box((-1.0, -1.0), (1.0, 1.0))
W2 = geo.Box((-2.0, -2.0), (2.0, 2.0))


def test_no_jump_tree_is_trivial():
    tree = stit.simulate(LAM, W1, 1e-9, stream(0, 0))
    assert len(tree.nodes) == 1
    assert tree.jump_times == []
    assert stit.slice_at(tree, 1e-9).cells == (W1,)


def test_first_split_survival_probability():
    # P(no jump by t) = exp(-t mass(W)) = e^{-1} at t = 0.25
    n = 2000
    alive = sum(
        len(stit.simulate(LAM, W1, 0.25, stream(1, i)).jump_times) == 0
        for i in range(n))
    target = math.exp(-1.0)
    assert abs(alive / n - target) <= 4 * binomial_sigma(target, n)


def test_tree_structural_invariants():
    tree = stit.simulate(LAM, W2, 1.2, stream(2, 0))
    assert tree.nodes[0].birth_time == 0.0
    assert tree.nodes[0].polytope == W2
    splits = 0
    for node in tree.nodes:
        if node.children is None:
            assert node.death_time is None
            continue
        splits += 1
        assert node.death_time is not None and node.birth_time < node.death_time
        a, b = (tree.nodes[i] for i in node.children)
        assert a.birth_time == node.death_time == b.birth_time
        assert a.parent == node.id == b.parent
        # children partition the parent across the recorded hyperplane
        assert a.polytope.area() + b.polytope.area() == pytest.approx(
            node.polytope.area(), rel=1e-9)
        assert geo.hits(node.splitting_hyperplane, node.polytope)
    assert splits == len(tree.jump_times)
    assert tree.jump_times == sorted(tree.jump_times)
    # at most one cell dies per jump time
    assert len(set(tree.jump_times)) == len(tree.jump_times)
    # tiling at several slices
    for s in (0.2, 0.7, 1.2):
        assert stit.tiling_defect(stit.slice_at(tree, s)) <= 1e-6


def test_slice_monotone_and_bounds():
    tree = stit.simulate(LAM, W2, 1.0, stream(3, 0))
    counts = [len(stit.slice_at(tree, s).cells) for s in np.linspace(0.05, 1.0, 12)]
    assert counts == sorted(counts)
    if tree.jump_times:
        before = stit.slice_at(tree, tree.jump_times[0] * 0.5)
        assert before.cells == (W2,)
    with pytest.raises(OutOfRange):
        stit.slice_at(tree, 1.5)
    with pytest.raises(OutOfRange):
        stit.slice_at(tree, 0.0)


def test_method_equivalence_quick():
    def stats_of(method, seed):
        def one(_i, rng):
            T = stit.slice_at(stit.simulate(LAM, W1, 1.0, rng, method), 1.0)
            s = stit.summary_stats(T, LAM)
            return s.cell_count, s.boundary
        return np.asarray(run_replicates(one, 700, seed), dtype=float)

    a = stats_of("direct", 4)
    b = stats_of("rejection", 5)
    assert ks_two_sample(a[:, 0], b[:, 0]).p_value > 0.001
    assert ks_two_sample(a[:, 1], b[:, 1]).p_value > 0.001


def test_advance_matches_longer_run_in_distribution():
    def adv(_i, rng):
        tree = stit.advance(stit.simulate(LAM, W1, 0.5, rng), 0.5, rng)
        return len(stit.slice_at(tree, 1.0).cells)

    def direct(_i, rng):
        return len(stit.slice_at(stit.simulate(LAM, W1, 1.0, rng), 1.0).cells)

    a = np.asarray(run_replicates(adv, 800, 6), dtype=float)
    b = np.asarray(run_replicates(direct, 800, 7), dtype=float)
    assert ks_two_sample(a, b).p_value > 0.001


def test_advance_preserves_tiling():
    tree = stit.simulate(LAM, W2, 0.5, stream(8, 0))
    stit.advance(tree, 0.7, stream(8, 1))
    assert tree.current_time == pytest.approx(1.2)
    assert stit.tiling_defect(stit.slice_at(tree, 1.2)) <= 1e-6


def test_zero_cell():
    assert stit.zero_cell(stit.Tessellation(W1, (W1,))) == W1
    # one cut at x = 0.3 > 0: the origin-side cell is x <= 0.3
    left = geo.Box((-1, -1), (0.3, 1))
    right = geo.Box((0.3, -1), (1, 1))
    assert stit.zero_cell(stit.Tessellation(W1, (right, left))) == left
    with pytest.raises(AmbiguousZeroCell):
        stit.zero_cell(stit.Tessellation(
            W1, (geo.Box((-1, -1), (0, 1)), geo.Box((0, -1), (1, 1)))))


def test_zero_cell_shrinks_along_trajectory():
    tree = stit.simulate(LAM, W2, 1.5, stream(9, 0))
    previous = None
    for s in np.linspace(0.1, 1.5, 10):
        cell = stit.zero_cell(stit.slice_at(tree, s))
        if previous is not None:
            assert geo.contains(previous, cell)
        previous = cell


def test_halfspace_representation():
    tree = stit.simulate(LAM, W2, 1.0, stream(10, 0), method="rejection")
    assert stit.halfspace_representation(tree, 0) == []
    for node in tree.nodes:
        hs = stit.halfspace_representation(tree, node.id)
        cur = W2
        for half in hs:
            n, c = half.normal_form()
            cur = geo.clip_tolerant(cur, n, c)
            assert cur is not None
        assert cur.area() == pytest.approx(node.polytope.area(), rel=1e-9)
    direct_tree = stit.simulate(LAM, W2, 0.5, stream(10, 1))
    with pytest.raises(MethodMismatch):
        stit.halfspace_representation(direct_tree, 0)


def test_number_cells():
    assert stit.number_cells(stit.Tessellation(W1, (W1,))) == [0]
    left = geo.Box((-1, -1), (0.3, 1))
    right = geo.Box((0.3, -1), (1, 1))
    assert stit.number_cells(stit.Tessellation(W1, (right, left))) == [1, 0]
    # permutation invariance of the induced spatial order
    tree = stit.simulate(LAM, W2, 1.0, stream(11, 0))
    T = stit.slice_at(tree, 1.0)
    order = stit.number_cells(T)
    perm = list(reversed(range(len(T.cells))))
    T2 = stit.Tessellation(W2, tuple(T.cells[i] for i in perm))
    order2 = stit.number_cells(T2)
    assert [T.cells[i] for i in order] == [T2.cells[i] for i in order2]


def brute_force_nest_count(T, Rs):
    """Interval arithmetic count of nested cells with interior overlap."""
    order = stit.number_cells(T)
    count = 0
    for k, idx in enumerate(order):
        frame = T.cells[idx]
        for cell in Rs[k].cells:
            w = min(frame.hi[0], cell.hi[0]) - max(frame.lo[0], cell.lo[0])
            h = min(frame.hi[1], cell.hi[1]) - max(frame.lo[1], cell.lo[1])
            if w > 1e-9 and h > 1e-9 and w * h >= 1e-12:
                count += 1
    return count


def test_iterate():
    rng = stream(12, 0)
    R = stit.slice_at(stit.simulate(LAM, W2, 0.8, rng), 0.8)
    # nesting into the trivial tessellation returns the nest
    got = stit.iterate(stit.Tessellation(W2, (W2,)), [R])
    assert sorted(c.area() for c in got.cells) == pytest.approx(
        sorted(c.area() for c in R.cells))
    # trivial nests leave the base unchanged
    T = stit.slice_at(stit.simulate(LAM, W2, 0.6, rng), 0.6)
    trivial = [stit.Tessellation(W2, (W2,))] * len(T.cells)
    assert len(stit.iterate(T, trivial).cells) == len(T.cells)
    # nested cell count against interval-arithmetic oracle
    nests = [stit.slice_at(stit.simulate(LAM, W2, 0.5, rng), 0.5)
             for _ in range(len(T.cells))]
    result = stit.iterate(T, nests)
    assert len(result.cells) == brute_force_nest_count(T, nests)
    assert stit.tiling_defect(result) <= 1e-6
    with pytest.raises(InsufficientNests):
        stit.iterate(T, nests[:max(0, len(T.cells) - 1)])


def test_restrict():
    rng = stream(13, 0)
    T = stit.slice_at(stit.simulate(LAM, W2, 1.0, rng), 1.0)
    same = stit.restrict(T, W2)
    assert len(same.cells) == len(T.cells)
    inner = stit.restrict(T, geo.Box((-1, -1), (1, 1)))
    assert stit.tiling_defect(inner) <= 1e-6
    # a sub-window inside one cell restricts to the trivial tessellation
    z = stit.zero_cell(T)
    c = z.centroid()
    eps = 1e-3
    tiny = geo.Box((c[0] - eps, c[1] - eps), (c[0] + eps, c[1] + eps))
    assert len(stit.restrict(T, tiny).cells) == 1
    with pytest.raises(WindowMismatch):
        stit.restrict(T, geo.Box((-3, -3), (3, 3)))


def test_restrict_consistency_in_distribution():
    inner = geo.Box((-1, -1), (1, 1))

    def restricted(_i, rng):
        T = stit.slice_at(stit.simulate(LAM, W2, 1.0, rng), 1.0)
        return stit.summary_stats(stit.restrict(T, inner), LAM).boundary

    def direct(_i, rng):
        T = stit.slice_at(stit.simulate(LAM, inner, 1.0, rng), 1.0)
        return stit.summary_stats(T, LAM).boundary

    a = np.asarray(run_replicates(restricted, 700, 14))
    b = np.asarray(run_replicates(direct, 700, 15))
    assert ks_two_sample(a, b).p_value > 0.001


def test_summary_stats():
    s = stit.summary_stats(stit.Tessellation(W1, (W1,)), LAM)
    assert s.cell_count == 1
    assert s.boundary == pytest.approx(0.0, abs=1e-12)
    assert s.zero_cell_area == pytest.approx(4.0)
    assert s.zeta == pytest.approx(4.0)
    # one full vertical cut: internal boundary length 2
    cut = stit.Tessellation(W1, (geo.Box((-1, -1), (0.25, 1)),
                                 geo.Box((0.25, -1), (1, 1))))
    s2 = stit.summary_stats(cut, LAM)
    assert s2.cell_count == 2
    assert s2.boundary == pytest.approx(2.0)


def test_zeta_subadditive_on_every_split():
    tree = stit.simulate(LAM, W2, 1.5, stream(16, 0))
    for node in tree.nodes:
        if node.children is None:
            continue
        a, b = (tree.nodes[i].polytope for i in node.children)
        assert measure_hitting(LAM, a) + measure_hitting(LAM, b) >= \
            measure_hitting(LAM, node.polytope) - 1e-9


def test_isotropic_polygon_tree():
    iso = isotropic_measure(1.0)
    window = W1.to_polygon()
    tree = stit.simulate(iso, window, 1.0, stream(17, 0))
    T = stit.slice_at(tree, 1.0)
    assert stit.tiling_defect(T) <= 1e-6
    for node in tree.nodes:
        if node.children is not None:
            assert geo.hits(node.splitting_hyperplane, node.polytope)


def test_determinism_bit_identical():
    a = stit.tree_to_json(stit.simulate(LAM, W2, 1.0, stream(18, 0)))
    b = stit.tree_to_json(stit.simulate(LAM, W2, 1.0, stream(18, 0)))
    assert dumps_canonical(a) == dumps_canonical(b)
    c = stit.tree_to_json(stit.simulate(LAM, W2, 1.0, stream(18, 1)))
    assert dumps_canonical(a) != dumps_canonical(c)


def test_explosion_guard(monkeypatch):
    monkeypatch.setattr(stit, "EVENT_CAP", 10)
    with pytest.raises(ExplosionGuard):
        stit.simulate(LAM, W2, 50.0, stream(19, 0))
