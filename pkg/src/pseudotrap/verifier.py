"""Decision procedures for pseudo-orbit trapping and shadowing statements.

Universal statements over pseudo-orbits ("every delta-pseudo-orbit prefix of
length n eps-captures some omega-limit set") are decided on a product graph
rather than by enumerating walks. A product state pairs the current point with
the still-uncovered part of each target set; since that part only shrinks
along a walk, any cycle of alive product states is constant on masks, and a
reachable one (a lasso) yields counterexamples of every length. Without a
lasso the alive part of the product graph is a DAG and the least working
prefix length is one more than its longest path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from . import kernel
from .core import FiniteSystem, PointSet, Walk, system_hash
from .orbits import all_omega_sets, hausdorff_distance, is_minimal, omega_limit, orbit
from .pseudo_orbit import (
    count_walks,
    delta_grid,
    enumerate_walks,
    first_violation,
    metric_graph,
    sample_walk,
)

__all__ = [
    "DEFAULT_STATE_CAP",
    "PreconditionError",
    "TrapCertificate",
    "CoverCertificate",
    "DeltaResult",
    "SearchResult",
    "SecondWeakCertificate",
    "EpsWitness",
    "MinimalityVerdict",
    "PairwiseResult",
    "StrongOrbitalReport",
    "OrbitalReport",
    "state_cap",
    "trap_check",
    "cover_check",
    "trap_search",
    "cover_search",
    "certify_second_weak_shadowing",
    "minimality_criterion",
    "pairwise_dh_check",
    "strong_orbital_check_minimal",
    "orbital_shadowing_check",
]

DEFAULT_STATE_CAP = 10**7
UNDECIDED = "undecided-resource"


class PreconditionError(ValueError):
    pass


def state_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("PSEUDOTRAP_STATE_CAP")
    return int(env) if env else DEFAULT_STATE_CAP


def _check_positive(**kw) -> None:
    for name, v in kw.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


def _search_inputs(s: FiniteSystem, eps: int, delta: int, target: str):
    g = metric_graph(s, delta)
    cover = s.ball_masks(eps)
    if target == "trap":
        targets = [c.cycle.bits for c in all_omega_sets(s)]
    else:
        targets = [(1 << s.num_points) - 1]
    return g, cover, targets


@dataclass(frozen=True)
class TrapCertificate:
    """Verdict on: every delta-pseudo-orbit prefix ``(x_0..x_n)`` has some
    cycle inside the eps-ball of its points."""

    eps: int
    delta: int
    n: int
    verdict: str  # "pass" | "fail" | "undecided-resource"
    witness_mode: str
    counterexample: Walk | None = None
    states: int = 0

    kind = "trap"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def decided(self) -> bool:
        return self.verdict != UNDECIDED

    def as_result(self) -> dict:
        return {
            "delta": self.delta,
            "feasible": self.passed if self.decided else None,
            "n": self.n,
            "lasso": False,
            "counterexample": list(self.counterexample) if self.counterexample else None,
        }


@dataclass(frozen=True)
class CoverCertificate(TrapCertificate):
    """Verdict on: every delta-pseudo-orbit prefix of length n eps-covers the
    whole space."""

    kind = "cover"


def _fixed_check(cls, s, eps, delta, n, target, cap, backend):
    _check_positive(eps=eps, delta=delta)
    if n < 0:
        raise ValueError("n must be >= 0")
    g, cover, targets = _search_inputs(s, eps, delta, target)
    status, walk, states = kernel.layered_search(g, cover, targets, n, state_cap(cap), backend)
    mode = f"product-graph layered search ({target} targets)"
    if status == kernel.CAP:
        return cls(eps, delta, n, UNDECIDED, mode, None, states)
    verdict = "pass" if status == kernel.PASS else "fail"
    return cls(eps, delta, n, verdict, mode, tuple(walk) if walk else None, states)


def trap_check(s: FiniteSystem, eps: int, delta: int, n: int, cap=None, backend=None) -> TrapCertificate:
    """Decide the trap statement for fixed ``(eps, delta, n)``.

    On failure the certificate holds the lexicographically least
    delta-pseudo-orbit of length ``n`` whose eps-ball contains no cycle.
    """
    return _fixed_check(TrapCertificate, s, eps, delta, n, "trap", cap, backend)


def cover_check(s: FiniteSystem, eps: int, delta: int, n: int, cap=None, backend=None) -> CoverCertificate:
    """Like :func:`trap_check` with the whole space as the single target.

    The space need not be a cycle; the search only uses covering, not
    invariance, so this is the same machinery with a different target.
    """
    return _fixed_check(CoverCertificate, s, eps, delta, n, "cover", cap, backend)


@dataclass(frozen=True)
class DeltaResult:
    delta: int
    status: str  # "feasible" | "lasso" | "undecided-resource"
    n: int | None = None
    counterexample: Walk | None = None
    loop_start: int | None = None
    states: int = 0
    inherited_from: int | None = None

    @property
    def feasible(self) -> bool | None:
        if self.status == UNDECIDED:
            return None
        return self.status == "feasible"

    def as_result(self) -> dict:
        out = {"delta": self.delta, "feasible": self.feasible}
        if self.n is not None:
            out["n"] = self.n
        out["lasso"] = self.status == "lasso"
        if self.counterexample is not None:
            out["counterexample"] = list(self.counterexample)
            out["loop_start"] = self.loop_start
        if self.inherited_from is not None:
            out["inherited_from"] = self.inherited_from
        return out


@dataclass(frozen=True)
class SearchResult:
    """Per-delta outcomes in descending delta order plus the recommended
    witness (largest feasible delta with its least n)."""

    eps: int
    target: str
    results: tuple[DeltaResult, ...]

    @property
    def recommended(self) -> DeltaResult | None:
        for r in self.results:
            if r.status == "feasible":
                return r
        return None

    @property
    def decided(self) -> bool:
        return all(r.status != UNDECIDED for r in self.results)

    def recommended_dict(self) -> dict | None:
        r = self.recommended
        if r is None:
            return None
        return {"delta": r.delta, "n": r.n, "degenerate": r.n == 0}


def _search(s, eps, target, cap, backend) -> SearchResult:
    _check_positive(eps=eps)
    cap = state_cap(cap)
    cover = s.ball_masks(eps)
    if target == "trap":
        targets = [c.cycle.bits for c in all_omega_sets(s)]
    else:
        targets = [(1 << s.num_points) - 1]
    results = []
    first_lasso = None
    for delta in delta_grid(s):
        g = metric_graph(s, delta)
        status, n, walk, loop_start, states = kernel.lasso_search(g, cover, targets, cap, backend)
        if status == kernel.OK:
            results.append(DeltaResult(delta, "feasible", n=n, states=states))
        elif status == kernel.LASSO:
            r = DeltaResult(delta, "lasso", counterexample=tuple(walk), loop_start=loop_start, states=states)
            results.append(r)
            first_lasso = first_lasso or r
        elif first_lasso is not None:
            # the delta-graphs are nested, so a lasso for a smaller delta stays one here
            results.append(
                DeltaResult(
                    delta,
                    "lasso",
                    counterexample=first_lasso.counterexample,
                    loop_start=first_lasso.loop_start,
                    states=states,
                    inherited_from=first_lasso.delta,
                )
            )
        else:
            results.append(DeltaResult(delta, UNDECIDED, states=states))
    return SearchResult(eps, target, tuple(reversed(results)))


def trap_search(s: FiniteSystem, eps: int, cap=None, backend=None) -> SearchResult:
    """For every grid delta decide whether some prefix length n traps an
    omega-limit set, and if so the least such n.

    ``delta = 1`` admits only true orbits and always succeeds, so the
    recommended witness exists whenever the search is not resource-capped.
    """
    return _search(s, eps, "trap", cap, backend)


def cover_search(s: FiniteSystem, eps: int, cap=None, backend=None) -> SearchResult:
    return _search(s, eps, "cover", cap, backend)


@dataclass(frozen=True)
class SecondWeakCertificate:
    eps: int
    delta: int
    n: int
    justification: tuple[str, ...]
    search: SearchResult = field(repr=False)

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "n": self.n,
            "degenerate": self.n == 0,
            "justification": list(self.justification),
        }


def certify_second_weak_shadowing(s: FiniteSystem, eps: int, cap=None, backend=None) -> SecondWeakCertificate:
    """Finite certificate that every delta-pseudo-orbit eps-shadows a full orbit.

    The trap search supplies ``(delta, n)``: every prefix ``x_0..x_n`` has a
    cycle ``C`` inside its eps-ball. Any ``y`` in ``C`` has ``Orb(y) = C``,
    which then lies in the eps-ball of the whole pseudo-orbit.
    """
    res = trap_search(s, eps, cap, backend)
    rec = res.recommended
    if rec is None:
        raise RuntimeError(f"trap search for eps={eps} did not decide delta=1 within the state cap")
    d, n = rec.delta, rec.n
    steps = (
        f"trap search: every delta={d} pseudo-orbit prefix (x_0..x_{n}) has a cycle C with C inside B_{eps}(prefix)",
        "cycles are positively invariant, so Orb(y) = C for every y in C",
        f"B_{eps}(prefix) is contained in B_{eps}(whole pseudo-orbit), so Orb(y) lies in B_{eps}(pseudo-orbit)",
        f"hence every infinite delta={d} pseudo-orbit eps-contains a full orbit",
    )
    return SecondWeakCertificate(eps, d, n, steps, res)


@dataclass(frozen=True)
class EpsWitness:
    eps: int
    delta: int | None
    n: int | None
    # two walks with {y_i} not inside B_eps({x_i}); stored as (x_side, y_side)
    counterexample_pair: tuple[Walk, Walk] | None = None
    missed_point: int | None = None
    undecided: bool = False

    def as_dict(self) -> dict:
        out = {"eps": self.eps}
        if self.delta is not None:
            out["delta"] = self.delta
            out["n"] = self.n
        if self.counterexample_pair is not None:
            out["x_walk"] = list(self.counterexample_pair[0])
            out["y_walk"] = list(self.counterexample_pair[1])
            out["missed_point"] = self.missed_point
        if self.undecided:
            out["undecided"] = True
        return out


@dataclass(frozen=True)
class MinimalityVerdict:
    minimal: bool | None  # None: some eps undecided within the state cap
    per_eps: tuple[EpsWitness, ...]
    # converse construction: orbits of y in omega(x) and of z outside B_eps(omega(x))
    counterexample_pair: tuple[Walk, Walk] | None = None
    counterexample_eps: int | None = None
    anchor: int | None = None

    def as_dict(self) -> dict:
        out = {"minimal": self.minimal, "per_eps": [w.as_dict() for w in self.per_eps]}
        if self.counterexample_pair is not None:
            y, z = self.counterexample_pair
            out["counterexample"] = {
                "anchor": self.anchor,
                "eps": self.counterexample_eps,
                "y_walk": list(y),
                "z_walk": list(z),
                "violated": "Orb(z) not inside B_eps(Orb(y))",
            }
        return out


def _mask_of(points) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def _ball_of(balls, mask: int) -> int:
    out, i = 0, 0
    while mask:
        if mask & 1:
            out |= balls[i]
        mask >>= 1
        i += 1
    return out


def _converse_pair(s: FiniteSystem):
    """Largest-radius instance of the non-minimality construction:
    ``x`` with ``omega(x) != X``, ``y`` in ``omega(x)`` and ``z`` at maximal
    distance ``r`` from ``omega(x)``, so ``z`` is outside ``B_r(omega(x))``."""
    best = None
    for x in s.points:
        om = omega_limit(s, x).cycle
        if len(om) == s.num_points:
            continue
        r, z = max((min(s.dist[p][c] for c in om), -p) for p in s.points)
        if best is None or r > best[0]:
            best = (r, x, om.min(), -z)
    r, x, y, z = best
    return (orbit(s, y), orbit(s, z)), r, x


def minimality_criterion(s: FiniteSystem, cap=None, backend=None) -> MinimalityVerdict:
    """Decide, for every eps on the grid, whether some ``(delta, n)`` makes the
    eps-ball of every delta-pseudo-orbit prefix of length n the whole space.

    That condition forces any two such prefixes into mutual eps-inclusion,
    and its failure at some eps certifies non-minimality.
    """
    from .pseudo_orbit import eps_grid

    per_eps = []
    undecided = False
    for eps in eps_grid(s):
        res = cover_search(s, eps, cap, backend)
        rec = res.recommended
        if rec is not None:
            per_eps.append(EpsWitness(eps, rec.delta, rec.n))
            continue
        base = res.results[-1]  # delta = 1
        if base.status != "lasso":
            undecided = True
            per_eps.append(EpsWitness(eps, None, None, undecided=True))
            continue
        balls = s.ball_masks(eps)
        xw = base.counterexample
        missed = ((1 << s.num_points) - 1) & ~_ball_of(balls, _mask_of(xw))
        m = (missed & -missed).bit_length() - 1
        yw = [m]
        while len(yw) < len(xw):
            yw.append(s.map[yw[-1]])
        per_eps.append(EpsWitness(eps, None, None, (tuple(xw), tuple(yw)), m))
    if undecided:
        minimal = None
    else:
        minimal = all(w.delta is not None for w in per_eps)
    pair = r = anchor = None
    if not is_minimal(s):
        pair, r, anchor = _converse_pair(s)
    return MinimalityVerdict(minimal, tuple(per_eps), pair, r, anchor)


@dataclass(frozen=True)
class PairwiseResult:
    within: bool
    h: int
    least_eps: int

    def as_dict(self) -> dict:
        return {"within": self.within, "h": self.h, "least_eps": self.least_eps}


def _require_walk(s, walk, delta, n, name):
    if len(walk) != n + 1:
        raise ValueError(f"{name} has length {len(walk) - 1}, expected {n}")
    for p in walk:
        if not 0 <= p < s.num_points:
            raise ValueError(f"{name} contains invalid point {p}")
    i = first_violation(s, walk, delta)
    if i is not None:
        raise ValueError(
            f"{name} is not a delta={delta} pseudo-orbit: step {i} "
            f"d(f({walk[i]}), {walk[i + 1]}) = {s.dist[s.map[walk[i]]][walk[i + 1]]}"
        )


def pairwise_dh_check(s: FiniteSystem, eps: int, delta: int, n: int, walk_a: Walk, walk_b: Walk) -> PairwiseResult:
    """Mutual eps-inclusion of two prefixes, via ``h < eps`` for the classical
    Hausdorff distance ``h`` on integer distances."""
    _check_positive(eps=eps, delta=delta)
    _require_walk(s, walk_a, delta, n, "walk_a")
    _require_walk(s, walk_b, delta, n, "walk_b")
    hd = hausdorff_distance(s, PointSet.of(s.num_points, walk_a), PointSet.of(s.num_points, walk_b))
    return PairwiseResult(hd.h < eps, hd.h, hd.least_eps)


@dataclass(frozen=True)
class StrongOrbitalReport:
    eps: int
    horizon: int
    delta: int
    n: int
    cover_verdict: str
    orbit_instances: int
    sampled_instances: int
    failures: tuple[dict, ...]

    @property
    def passed(self) -> bool:
        return self.cover_verdict == "pass" and not self.failures

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "n": self.n,
            "cover_verdict": self.cover_verdict,
            "orbit_instances": self.orbit_instances,
            "sampled_instances": self.sampled_instances,
            "failures": list(self.failures),
            "passed": self.passed,
        }


def _mutual(balls, a: int, b: int) -> bool:
    return a & ~_ball_of(balls, b) == 0 and b & ~_ball_of(balls, a) == 0


def strong_orbital_check_minimal(
    s: FiniteSystem,
    eps: int,
    horizon: int,
    samples: int = 8,
    seed: int = 0,
    cap=None,
    backend=None,
) -> StrongOrbitalReport:
    """Check tail-wise mutual eps-inclusion on a minimal system.

    ``(delta, n)`` come from the cover search. Every true orbit, offset
    ``N <= horizon`` and shadowing point ``z`` is checked exhaustively;
    ``samples`` seeded delta-pseudo-orbits per start point are checked too.
    """
    if not is_minimal(s):
        raise PreconditionError("strong orbital check requires a minimal system")
    _check_positive(eps=eps, horizon=horizon)
    res = cover_search(s, eps, cap, backend)
    rec = res.recommended
    if rec is None:
        raise RuntimeError(f"no cover witness found for eps={eps} within the state cap")
    delta, n = rec.delta, rec.n
    cert = cover_check(s, eps, delta, n, cap, backend)
    balls = s.ball_masks(eps)

    window = []  # window[p] = mask of {f^i(p) : 0 <= i <= n}
    for p in s.points:
        m, x = 0, p
        for _ in range(n + 1):
            m |= 1 << x
            x = s.map[x]
        window.append(m)
    later = [list(s.points)]  # later[N][p] = f^N(p)
    for _ in range(horizon + n):
        later.append([s.map[p] for p in later[-1]])

    failures = []
    orbit_count = 0
    for x0 in s.points:
        for N in range(horizon + 1):
            xs = window[later[N][x0]]
            for z in s.points:
                orbit_count += 1
                if not _mutual(balls, window[later[N][z]], xs):
                    failures.append({"kind": "orbit", "x0": x0, "offset": N, "z": z})

    g = metric_graph(s, delta)
    sampled = 0
    for x0 in s.points:
        for k in range(samples):
            walk = sample_walk(g, x0, horizon + n, seed + k * s.num_points + x0)
            for N in range(horizon + 1):
                xs = _mask_of(walk[N : N + n + 1])
                for z in s.points:
                    sampled += 1
                    if not _mutual(balls, window[later[N][z]], xs):
                        failures.append({"kind": "sampled", "walk": list(walk), "offset": N, "z": z})
    return StrongOrbitalReport(eps, horizon, delta, n, cert.verdict, orbit_count, sampled, tuple(failures))


@dataclass(frozen=True)
class OrbitalReport:
    eps: int
    delta: int
    horizon: int
    sampled: bool
    walks_checked: int
    walks_passed: int
    entries: tuple[dict, ...]  # first ``max_listed`` walks, failures first

    mode = "semi-decision at horizon"

    @property
    def passed(self) -> bool:
        return self.walks_passed == self.walks_checked

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "delta": self.delta,
            "horizon": self.horizon,
            "sampled": self.sampled,
            "walks_checked": self.walks_checked,
            "walks_passed": self.walks_passed,
            "passed": self.passed,
            "walks": list(self.entries),
        }


def orbital_shadowing_check(
    s: FiniteSystem,
    eps: int,
    delta: int,
    horizon: int,
    walk_cap: int = 10**5,
    samples: int = 1000,
    seed: int = 0,
    max_listed: int = 50,
) -> OrbitalReport:
    """For each length-``horizon`` delta-pseudo-orbit, look for ``z`` whose
    orbit and the walk's point set are mutually eps-close.

    All walks are checked when there are at most ``walk_cap`` of them;
    otherwise ``samples`` seeded walks are drawn and the report is flagged.
    """
    _check_positive(eps=eps, delta=delta, horizon=horizon)
    g = metric_graph(s, delta)
    balls = s.ball_masks(eps)
    orbit_masks = [_mask_of(orbit(s, z)) for z in s.points]
    sampled = count_walks(g, horizon) > walk_cap
    if sampled:
        walks = (sample_walk(g, k % s.num_points, horizon, seed + k) for k in range(samples))
    else:
        walks = enumerate_walks(g, horizon, walk_cap)
    checked = passed = 0
    fails, oks = [], []
    for walk in walks:
        checked += 1
        wm = _mask_of(walk)
        z = next((z for z in s.points if _mutual(balls, orbit_masks[z], wm)), None)
        if z is None:
            fails.append({"walk": list(walk), "pass": False, "z": None})
        else:
            passed += 1
            if len(oks) < max_listed:
                oks.append({"walk": list(walk), "pass": True, "z": z})
    entries = (fails + oks)[:max_listed]
    return OrbitalReport(eps, delta, horizon, sampled, checked, passed, tuple(entries))


def verification_report(s: FiniteSystem, theorem: str, eps: int, results, recommended, oracle_checked=False, **extra) -> dict:
    out = {
        "system": system_hash(s),
        "theorem": theorem,
        "eps": eps,
        "results": results,
        "recommended": recommended,
        "oracle_checked": oracle_checked,
    }
    out.update(extra)
    return out
