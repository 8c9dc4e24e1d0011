from fractions import Fraction

import pytest

from pseudotrap.core import SystemValidationError
from pseudotrap.orbits import all_omega_sets, is_minimal
from pseudotrap.zoo import (
    cyclic_rotation,
    disjoint_attractors,
    interval_map_grid,
    line_metric,
    random_map,
    zoo_systems,
)


def test_rotation_arc():
    s = cyclic_rotation(8)
    assert s.map == (1, 2, 3, 4, 5, 6, 7, 0)
    assert s.dist[0] == (0, 1, 2, 3, 4, 3, 2, 1)
    assert is_minimal(s)


@pytest.mark.parametrize("q", list(range(1, 25)) + [32, 48, 64])
def test_rotation_chordlike_valid(q):
    s = cyclic_rotation(q, "chordlike", 100)
    row = s.dist[0][: q // 2 + 1]
    assert list(row) == sorted(row)
    assert is_minimal(s)


def test_unknown_metric():
    with pytest.raises(ValueError):
        cyclic_rotation(4, "taxicab")
    with pytest.raises(ValueError):
        random_map(4, "taxicab")
    with pytest.raises(ValueError):
        interval_map_grid("cubic", 4)


def test_tent_two_cells():
    s = interval_map_grid("tent", 2)
    # 1/4 -> 1/2 and 3/4 -> 1/2; the tie at 1/2 rounds to the lower cell
    assert s.map == (0, 0)
    assert s.labels == ("1/4", "3/4")


def test_logistic_four_cells():
    s = interval_map_grid("logistic", 4)
    # 4 * 1/8 * 7/8 = 7/16 lies in the cell [1/4, 1/2)
    assert s.map[0] == 1
    assert s.map == tuple(
        min(max(-(-(4 * Fraction(2 * k + 1, 8) * (1 - Fraction(2 * k + 1, 8)) * 4) // 1) - 1, 0), 3)
        for k in range(4)
    )


def test_interval_map_images_in_nearest_cell():
    for N in (3, 5, 16, 64):
        for kind, r in (("tent", (4, 1)), ("logistic", (4, 1)), ("logistic", (7, 2))):
            s = interval_map_grid(kind, N, r=r)
            for k in range(N):
                x = Fraction(2 * k + 1, 2 * N)
                rr = Fraction(*r)
                y = rr * x * (1 - x) if kind == "logistic" else (2 * x if x <= Fraction(1, 2) else 2 - 2 * x)
                c = Fraction(2 * s.map[k] + 1, 2 * N)
                best = min(abs(y - Fraction(2 * j + 1, 2 * N)) for j in range(N))
                assert abs(y - c) == best


def test_random_valid_always_metric():
    for seed in range(1000):
        s = random_map(1 + seed % 16, "random-valid", seed)
        assert s.num_points == 1 + seed % 16


def test_random_map_seeded():
    assert random_map(8, seed=5) == random_map(8, seed=5)
    assert random_map(8, seed=5).dist == tuple(tuple(r) for r in line_metric(8))


def test_disjoint_attractors():
    s = disjoint_attractors([2, 1], 10)
    assert s.map == (1, 0, 2)
    assert s.dist == ((0, 1, 10), (1, 0, 10), (10, 10, 0))
    assert [o.cycle.to_list() for o in all_omega_sets(s)] == [[0, 1], [2]]
    with pytest.raises(ValueError):
        disjoint_attractors([4, 1], 1)
    with pytest.raises(ValueError):
        disjoint_attractors([3], 10)


def test_chordlike_scale_one_is_discrete():
    # chords lie in (0, 2], so a unit scale leaves only the values 1 and 2
    s = cyclic_rotation(12, "chordlike", 1)
    assert {v for row in s.dist for v in row} == {0, 1, 2}


def test_zoo_contents():
    names = [n for n, _ in zoo_systems(8)]
    assert len(names) == len(set(names))
    assert all(s.num_points <= 8 for _, s in zoo_systems(8))
    assert sum(1 for n in names if n.startswith("random")) == 20
    big = list(zoo_systems(64))
    assert max(s.num_points for _, s in big) == 64
