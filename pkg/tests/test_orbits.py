import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pseudotrap.core import FiniteSystem, PointSet
from pseudotrap.orbits import (
    all_omega_sets,
    hausdorff_distance,
    is_minimal,
    is_positively_invariant,
    omega_limit,
    orbit,
    orbit_trap_horizon,
    uniform_trap_horizon,
)
from pseudotrap.pseudo_orbit import eps_grid
from pseudotrap.zoo import cyclic_rotation, line_metric, random_map, zoo_systems


def line(fmap, scale=10):
    return FiniteSystem.build(line_metric(len(fmap), scale), fmap, scale=scale)


CHAIN = line([1, 2, 2])


def test_orbit_examples():
    assert orbit(line([0]), 0) == (0, 0)
    assert orbit(cyclic_rotation(3), 0) == (0, 1, 2, 0)
    assert orbit(CHAIN, 0) == (0, 1, 2, 2)


def test_omega_examples():
    om = omega_limit(line([0, 0]), 0)
    assert list(om.cycle) == [0] and om.entry_time == 0
    for x in range(3):
        assert list(omega_limit(cyclic_rotation(3), x).cycle) == [0, 1, 2]
    om = omega_limit(CHAIN, 0)
    assert list(om.cycle) == [2] and om.entry_time == 2


def test_all_omega_sets_examples():
    assert [list(c.cycle) for c in all_omega_sets(line(list(range(4))))] == [[0], [1], [2], [3]]
    assert [list(c.cycle) for c in all_omega_sets(cyclic_rotation(6))] == [list(range(6))]
    s = line([1, 2, 1, 4, 3])
    assert [list(c.cycle) for c in all_omega_sets(s)] == [[1, 2], [3, 4]]


def test_positive_invariance_examples():
    s = line([1, 2, 1, 4, 3])
    assert is_positively_invariant(s, PointSet.full(5))
    assert not is_positively_invariant(s, PointSet.of(5, [0]))
    for c in all_omega_sets(s):
        assert is_positively_invariant(s, c.cycle)


def test_is_minimal_examples():
    assert is_minimal(line([0]))
    assert not is_minimal(line([0, 1]))
    assert is_minimal(cyclic_rotation(5))
    assert not is_minimal(line([1, 0, 2]))


def all_maps(n):
    for fmap in itertools.product(range(n), repeat=n):
        yield line(list(fmap))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_minimal_three_ways_and_omega_invariants(n):
    for s in all_maps(n):
        sets = all_omega_sets(s)
        full = PointSet.full(n)
        a = is_minimal(s)
        b = len(sets) == 1 and sets[0].cycle == full
        c = all(omega_limit(s, x).cycle == full for x in s.points)
        assert a == b == c
        periodic = PointSet(n, 0)
        for om in sets:
            periodic = periodic | om.cycle
        assert periodic == PointSet.of(n, [x for x in s.points if x in orbit(s, x)[1:]])
        for x in s.points:
            om = omega_limit(s, x)
            assert om.cycle <= PointSet.of(n, orbit(s, x))
            assert is_positively_invariant(s, om.cycle)
            assert om.cycle == omega_limit(s, s.map[x]).cycle
            # the map restricted to the cycle is one cyclic permutation
            assert orbit(s, om.cycle.min())[:-1] and set(orbit(s, om.cycle.min())[:-1]) == set(om.cycle)


def test_hausdorff_examples():
    s = FiniteSystem.build([[0, 5], [5, 0]], [0, 1])
    a, b = PointSet.of(2, [0]), PointSet.of(2, [0, 1])
    assert hausdorff_distance(s, a, a).h == 0
    r = hausdorff_distance(s, a, b)
    assert (r.h, r.least_eps) == (5, 6)
    assert hausdorff_distance(s, b, a) == r
    with pytest.raises(ValueError):
        hausdorff_distance(s, a, PointSet.empty(2))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**32), st.data())
def test_hausdorff_is_a_metric(n, seed, data):
    s = random_map(n, "random-valid", seed)
    sets = st.integers(1, 2**n - 1).map(lambda b: PointSet(n, b))
    a, b, c = data.draw(sets), data.draw(sets), data.draw(sets)
    hab = hausdorff_distance(s, a, b).h
    assert (hab == 0) == (a == b)
    assert hab == hausdorff_distance(s, b, a).h
    assert hausdorff_distance(s, a, c).h <= hab + hausdorff_distance(s, b, c).h


def test_trap_horizon_examples():
    assert orbit_trap_horizon(line([0, 1]), 1, 1) == (1, 1)
    assert orbit_trap_horizon(line([0, 1]), 0, 25) == (1, 0)
    assert orbit_trap_horizon(cyclic_rotation(3), 0, 1)[0] == 3
    assert orbit_trap_horizon(CHAIN, 0, 1) == (2, 2)


def test_uniform_horizon_examples():
    for q in (1, 4, 7):
        assert uniform_trap_horizon(cyclic_rotation(q), 1) == q
    assert uniform_trap_horizon(line([0, 1, 2]), 1) == 1
    for _, s in zoo_systems(12):
        assert uniform_trap_horizon(s, s.diameter() + 1) == 1


def _covered(s, x, n, eps):
    reach = set()
    y = x
    for _ in range(n):
        y = s.map[y]
        reach |= {p for p in s.points if s.dist[y][p] < eps}
    return reach


def test_lemma_cover_brute_force():
    # independent recomputation of the least horizon by direct set arithmetic
    for _, s in zoo_systems(10):
        cycles = [set(c.cycle) for c in all_omega_sets(s)]
        for eps in eps_grid(s):
            for x in s.points:
                n, z = orbit_trap_horizon(s, x, eps)
                assert set(omega_limit(s, z).cycle) <= _covered(s, x, n, eps)
                assert not any(c <= _covered(s, x, n - 1, eps) for c in cycles)
