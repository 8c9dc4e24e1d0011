"""Command-line front end.

Exit status: 0 when a verdict was computed (pass or fail), 2 on usage or
input errors, 3 when a resource cap left the question undecided.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import PointSet, load_system, metric_entourage, save_system, system_hash
from .entourage import check_uniformity_base
from .oracle import oracle_cover_check, oracle_trap_check
from .orbits import all_omega_sets, hausdorff_distance, is_minimal, omega_limit, orbit
from .pseudo_orbit import EnumerationLimitExceeded, eps_grid, metric_graph, to_dot
from .verifier import (
    PreconditionError,
    certify_second_weak_shadowing,
    cover_check,
    minimality_criterion,
    orbital_shadowing_check,
    strong_orbital_check_minimal,
    trap_check,
    trap_search,
    verification_report,
)
from .zoo import cyclic_rotation, disjoint_attractors, interval_map_grid, random_map

EXIT_OK, EXIT_USAGE, EXIT_UNDECIDED = 0, 2, 3


class Undecided(Exception):
    def __init__(self, report: dict):
        super().__init__("resource cap reached")
        self.report = report


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _eps_or_grid(text: str):
    return "grid" if text == "grid" else _positive(text)


def _ratio(text: str) -> tuple[int, int]:
    num, _, den = text.partition("/")
    try:
        return int(num), int(den or 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NUM/DEN, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pseudotrap", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, help, system=True):
        sp = sub.add_parser(name, help=help)
        if system:
            sp.add_argument("-s", "--system", required=True, type=Path, help="system JSON file")
        sp.add_argument("-o", "--output", type=Path, help="write output here instead of stdout")
        sp.add_argument("--state-cap", type=_positive, help="product-search state cap")
        sp.add_argument("--backend", choices=("python", "cython"), help="search kernel")
        return sp

    gen = cmd("generate", "emit a system from a generator family", system=False)
    gen.add_argument("family", choices=("rotation", "interval", "random", "attractors"))
    gen.add_argument("--q", type=_positive, help="rotation size")
    gen.add_argument("--metric", help="arc|chordlike (rotation), line|random-valid (random)")
    gen.add_argument("--scale", type=_positive, default=None)
    gen.add_argument("--kind", choices=("logistic", "tent"), help="interval map")
    gen.add_argument("--grid", type=_positive, help="interval grid size")
    gen.add_argument("--r", type=_ratio, default=(4, 1), help="logistic parameter NUM/DEN")
    gen.add_argument("--points", type=_positive, help="random map size")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--gaps", type=_ints, help="attractor cycle sizes, e.g. 2,2")
    gen.add_argument("--separation", type=_positive)

    om = cmd("omega", "omega-limit sets")
    om.add_argument("--point", type=_nonneg)
    cmd("minimal", "is the map one cyclic permutation")
    hd = cmd("hausdorff", "Hausdorff distance of two point sets")
    hd.add_argument("--a", type=_ints, required=True)
    hd.add_argument("--b", type=_ints, required=True)
    cmd("uniformity-check", "base axioms for the metric entourage family")

    tr = cmd("trap", "omega-limit trapping by pseudo-orbit prefixes")
    tr.add_argument("--eps", type=_eps_or_grid, required=True)
    tr.add_argument("--delta", type=_positive)
    tr.add_argument("--n", type=_nonneg)
    tr.add_argument("--search", action="store_true")
    tr.add_argument("--oracle", action="store_true", help="cross-check by walk enumeration")

    sws = cmd("sws", "second weak shadowing certificate")
    sws.add_argument("--eps", type=_eps_or_grid, required=True)

    cv = cmd("cover", "prefix eps-balls cover the space")
    cv.add_argument("--eps", type=_positive, required=True)
    cv.add_argument("--delta", type=_positive, required=True)
    cv.add_argument("--n", type=_nonneg, required=True)
    cv.add_argument("--oracle", action="store_true")

    cmd("minimality-criterion", "pseudo-orbit characterization of minimality")

    so = cmd("strong-orbital", "strong orbital shadowing on a minimal system")
    so.add_argument("--eps", type=_positive, required=True)
    so.add_argument("--horizon", type=_positive, required=True)
    so.add_argument("--samples", type=_nonneg, default=8)
    so.add_argument("--seed", type=int, default=0)

    ob = cmd("orbital", "orbital shadowing, semi-decided at a horizon")
    ob.add_argument("--eps", type=_positive, required=True)
    ob.add_argument("--delta", type=_positive, required=True)
    ob.add_argument("--horizon", type=_positive, required=True)
    ob.add_argument("--samples", type=_positive, default=1000)
    ob.add_argument("--seed", type=int, default=0)
    ob.add_argument("--walk-cap", type=_positive, default=10**5)

    dot = cmd("export-dot", "pseudo-orbit graph in Graphviz format")
    dot.add_argument("--delta", type=_positive, required=True)
    return p


def _generate(a, parser):
    def need(*names):
        missing = [n for n in names if getattr(a, n) is None]
        if missing:
            parser.error(f"generate {a.family} needs --{' --'.join(missing)}")

    scale = a.scale or 1
    if a.family == "rotation":
        need("q")
        s = cyclic_rotation(a.q, a.metric or "arc", scale)
    elif a.family == "interval":
        need("kind", "grid")
        s = interval_map_grid(a.kind, a.grid, scale, a.r)
    elif a.family == "random":
        need("points")
        s = random_map(a.points, a.metric or "line", a.seed, scale)
    else:
        need("gaps", "separation")
        s = disjoint_attractors(a.gaps, a.separation, scale)
    return save_system(s)


def _oracle_search(s, eps, res) -> None:
    """Re-check each decided delta by walk enumeration."""
    for r in res.results:
        if r.status == "feasible":
            ok = oracle_trap_check(s, eps, r.delta, r.n).passed
            if r.n > 0:
                ok = ok and not oracle_trap_check(s, eps, r.delta, r.n - 1).passed
        elif r.status == "lasso":
            ok = not oracle_trap_check(s, eps, r.delta, len(r.counterexample) - 1).passed
        else:
            continue
        if not ok:
            raise AssertionError(f"oracle disagrees at eps={eps}, delta={r.delta}")


def _search_report(s, eps, cap, backend, oracle=False):
    res = trap_search(s, eps, cap, backend)
    checked = oracle and res.decided
    if checked:
        _oracle_search(s, eps, res)
    rep = verification_report(
        s, "trap", eps, [r.as_result() for r in res.results], res.recommended_dict(), checked
    )
    if not res.decided:
        raise Undecided(rep)
    return rep


def _sws_report(s, eps, cap, backend):
    cert = certify_second_weak_shadowing(s, eps, cap, backend)
    return verification_report(
        s,
        "second-weak-shadowing",
        eps,
        [r.as_result() for r in cert.search.results],
        cert.as_dict(),
    )


def _over_eps(s, eps, fn, cap, backend, theorem):
    if eps != "grid":
        return fn(s, eps, cap, backend)
    return {
        "system": system_hash(s),
        "theorem": theorem,
        "eps": "grid",
        "reports": [fn(s, e, cap, backend) for e in eps_grid(s)],
    }


def _fixed_report(s, a, check, oracle, theorem):
    cert = check(s, a.eps, a.delta, a.n, a.state_cap, a.backend)
    oracle_checked = False
    if a.oracle and cert.decided:
        ref = oracle(s, a.eps, a.delta, a.n)
        if (ref.verdict, ref.counterexample) != (cert.verdict, cert.counterexample):
            raise AssertionError(f"oracle disagrees: {ref} vs {cert}")
        oracle_checked = True
    result = cert.as_result()
    result["verdict"] = cert.verdict
    rep = verification_report(s, theorem, a.eps, [result], None, oracle_checked)
    if not cert.decided:
        raise Undecided(rep)
    return rep


def run(a, parser) -> str:
    if a.command == "generate":
        return _generate(a, parser)
    s = load_system(a.system.read_bytes())
    cap, backend = a.state_cap, a.backend
    h = system_hash(s)
    c = a.command
    if c == "omega":
        if a.point is not None:
            if a.point >= s.num_points:
                parser.error(f"--point {a.point} out of range")
            om = omega_limit(s, a.point)
            out = {"system": h, "point": a.point, "orbit": list(orbit(s, a.point)), "omega": om.as_dict()}
        else:
            out = {"system": h, "omega_sets": [o.as_dict() for o in all_omega_sets(s)]}
    elif c == "minimal":
        out = {"system": h, "minimal": is_minimal(s)}
    elif c == "hausdorff":
        try:
            A, B = PointSet.of(s.num_points, a.a), PointSet.of(s.num_points, a.b)
            hd = hausdorff_distance(s, A, B)
        except ValueError as exc:
            parser.error(str(exc))
        out = {"system": h, "a": A.to_list(), "b": B.to_list(), **hd.as_dict()}
    elif c == "uniformity-check":
        grid = eps_grid(s)
        rep = check_uniformity_base([metric_entourage(s, e) for e in grid])
        out = {"system": h, "eps_family": grid, **rep.as_dict()}
    elif c == "trap":
        if a.search:
            if a.delta is not None or a.n is not None:
                parser.error("--search excludes --delta/--n")
            fn = lambda *args: _search_report(*args, oracle=a.oracle)  # noqa: E731
            out = _over_eps(s, a.eps, fn, cap, backend, "trap")
        else:
            if a.delta is None or a.n is None or a.eps == "grid":
                parser.error("trap needs --search, or an integer --eps with --delta and --n")
            out = _fixed_report(s, a, trap_check, oracle_trap_check, "trap")
    elif c == "sws":
        out = _over_eps(s, a.eps, _sws_report, cap, backend, "second-weak-shadowing")
    elif c == "cover":
        out = _fixed_report(s, a, cover_check, oracle_cover_check, "cover")
    elif c == "minimality-criterion":
        v = minimality_criterion(s, cap, backend)
        out = {"system": h, "theorem": "minimality-criterion", **v.as_dict()}
        if v.minimal is None:
            raise Undecided(out)
    elif c == "strong-orbital":
        try:
            rep = strong_orbital_check_minimal(s, a.eps, a.horizon, a.samples, a.seed, cap, backend)
        except PreconditionError as exc:
            parser.error(str(exc))
        out = {"system": h, "theorem": "strong-orbital", "eps": a.eps, "horizon": a.horizon, **rep.as_dict()}
    elif c == "orbital":
        rep = orbital_shadowing_check(s, a.eps, a.delta, a.horizon, a.walk_cap, a.samples, a.seed)
        out = {"system": h, "theorem": "orbital", "eps": a.eps, **rep.as_dict()}
    elif c == "export-dot":
        return to_dot(s, metric_graph(s, a.delta))
    else:  # pragma: no cover - argparse restricts choices
        parser.error(f"unknown command {c}")
    return dumps(out)


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8", newline="\n")


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        text = run(a, parser)
    except (OSError, ValueError) as exc:
        print(f"pseudotrap: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Undecided as exc:
        _emit(dumps(exc.report), a.output)
        print("pseudotrap: undecided: state cap reached", file=sys.stderr)
        return EXIT_UNDECIDED
    except EnumerationLimitExceeded as exc:
        print(f"pseudotrap: undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except RuntimeError as exc:
        print(f"pseudotrap: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    _emit(text, a.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
