import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudotrap import kernel
from pseudotrap import _pykernel
from pseudotrap.pseudo_orbit import PseudoOrbitGraph
from pseudotrap.verifier import cover_check, trap_check, trap_search
from pseudotrap.zoo import random_map

def masks(succ):
    return [sum(1 << y for y in ys) for ys in succ]


needs_ext = pytest.mark.skipif(not kernel.COMPILED_AVAILABLE, reason="extension not built")


@st.composite
def instances(draw):
    n = draw(st.integers(1, 7))
    succ = []
    for x in range(n):
        extra = draw(st.sets(st.integers(0, n - 1), max_size=3))
        succ.append(tuple(sorted(extra | {draw(st.integers(0, n - 1))})))
    cover = [draw(st.integers(0, 2**n - 1)) | 1 << x for x in range(n)]
    # partition a random subset of points into disjoint targets
    owner = [draw(st.integers(-1, 2)) for _ in range(n)]
    targets = [sum(1 << x for x in range(n) if owner[x] == k) for k in range(3)]
    targets = [t for t in targets if t] or [(1 << n) - 1]
    return succ, cover, targets


def brute_survivor(succ, cover, targets, n):
    def walks(x, k):
        if k == 0:
            yield (x,)
            return
        for y in succ[x]:
            for w in walks(y, k - 1):
                yield (x,) + w

    full = 0
    for t in targets:
        full |= t
    for x0 in range(len(succ)):
        for w in walks(x0, n):
            u = full
            for y in w:
                u &= ~cover[y]
            if all(u & t for t in targets):
                return w
    return None


@settings(max_examples=300, deadline=None)
@given(instances(), st.integers(0, 5))
def test_layered_matches_enumeration(inst, n):
    succ, cover, targets = inst
    status, walk, _ = _pykernel.layered_search(succ, cover, targets, n, 10**6)
    expected = brute_survivor(succ, cover, targets, n)
    assert (status == _pykernel.FAIL) == (expected is not None)
    if expected is not None:
        assert tuple(walk) == expected


@settings(max_examples=300, deadline=None)
@given(instances())
def test_lasso_consistent_with_layers(inst):
    succ, cover, targets = inst
    status, n, walk, k, _ = _pykernel.lasso_search(succ, cover, targets, 10**6)
    horizon = len(succ) * 2 ** len(succ) + 1
    if status == _pykernel.LASSO:
        assert walk[k] == walk[-1]
        assert brute_survivor(succ, cover, targets, min(horizon, 9)) is not None
    else:
        assert brute_survivor(succ, cover, targets, n) is None
        if n > 0:
            assert brute_survivor(succ, cover, targets, n - 1) is not None


@needs_ext
@settings(max_examples=500, deadline=None)
@given(instances(), st.integers(0, 6))
def test_backends_agree(inst, n):
    succ, cover, targets = inst
    from pseudotrap import _ckernel

    a = _pykernel.layered_search(succ, cover, targets, n, 10**6)
    b = _ckernel.layered_search(masks(succ), cover, targets, n, 10**6)
    assert a[0] == b[0] and tuple(a[1] or ()) == tuple(b[1] or ())
    a = _pykernel.lasso_search(succ, cover, targets, 10**6)
    b = _ckernel.lasso_search(masks(succ), cover, targets, 10**6)
    assert a[:2] == b[:2] and tuple(a[2] or ()) == tuple(b[2] or ()) and a[3] == b[3]


@needs_ext
def test_compiled_rejects_wide_systems():
    from pseudotrap import _ckernel

    with pytest.raises(ValueError):
        _ckernel.layered_search([1] * 65, [1 << i for i in range(65)], [(1 << 65) - 1], 1, 100)


def test_wide_system_falls_back_to_python():
    s = random_map(70, "line", seed=3, scale=10)
    for backend in ["python"] + (["cython"] if kernel.COMPILED_AVAILABLE else []):
        assert trap_check(s, 15, 1, 80, backend=backend).passed
        assert not cover_check(s, 15, 1, 5, backend=backend).passed
    assert trap_search(s, 15).recommended.delta >= 1


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernel.lasso_search(PseudoOrbitGraph(1, (1,), "loop"), [1], [1], 10, backend="fortran")


def test_cap_reports_cap_status():
    succ = [tuple(range(6))] * 6
    cover = [1 << x for x in range(6)]
    # acyclic until the last point, which covers everything: no lasso exists
    dag = [tuple(range(x + 1, 6)) for x in range(5)] + [(5,)]
    full_cover = cover[:5] + [63]
    g, gd = PseudoOrbitGraph(6, tuple(masks(succ)), "k6"), PseudoOrbitGraph(6, tuple(masks(dag)), "dag")
    for backend in ["python"] + (["cython"] if kernel.COMPILED_AVAILABLE else []):
        assert kernel.layered_search(g, cover, [63], 4, 5, backend)[0] == kernel.CAP
        assert kernel.lasso_search(gd, full_cover, [63], 3, backend)[0] == kernel.CAP
        assert kernel.lasso_search(gd, full_cover, [63], 10**4, backend)[0] == kernel.OK
