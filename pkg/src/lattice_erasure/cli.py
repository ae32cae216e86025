"""Command line front end.

Exit status is 0 on success, 1 for domain errors (bad code file, failed
verification, ...) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds as _bounds
from . import channel, constructions, figure, starbody
from .code import ErasureCode, code_report, code_to_dict, load_code, save_code
from .errors import BadParams, LatticeCodeError
from .lattice import Lattice
from .search import Objective, SearchConfig, search


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _annotate(value: float, bound: float, binding: bool = True) -> str:
    if abs(value - bound) <= 1e-9:
        return "MET"
    if value < bound:
        return "STRICT"
    # a bound computed for assumed child densities need not hold for this code
    return "VIOLATED" if binding else "ABOVE"


def resolve_code(spec: str) -> ErasureCode:
    if spec in constructions.NAMES:
        return constructions.builtin(spec).code
    path = Path(spec)
    if not path.exists():
        raise BadParams(f"{spec!r} is neither a built-in code {list(constructions.NAMES)} nor a file")
    return load_code(path)


def resolve_mother(spec: str) -> Lattice:
    if spec in constructions.MOTHERS:
        return constructions.mother_lattice(spec)
    return resolve_code(spec).mother


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _density_arg(value: str, k: int) -> float:
    if value == "optimal":
        return _bounds.optimal_density(k)
    if value == "cubic":
        return _bounds.cubic_density(k)
    try:
        return float(value)
    except ValueError:
        raise BadParams(f"density must be a number, 'optimal' or 'cubic', got {value!r}") from None


# ---------------------------------------------------------------------------


def cmd_eval(args) -> int:
    code = resolve_code(args.code)
    rep = code_report(code)
    n, k = code.n, code.k
    tb = _bounds.trace_bound(n, k)
    det_rows = []
    if rep.density_geo > 0:
        det_rows.append(("computed children", rep.density_geo, True))
    if k in _bounds.OPTIMAL_DENSITY:
        det_rows.append(("optimal children", _bounds.optimal_density(k), True))
    det_rows.append(("cubic children, reference", _bounds.cubic_density(k), False))
    det_bounds = [
        (label, _bounds.determinant_bound(rep.mother_density, dens, n, k), binding)
        for label, dens, binding in det_rows
    ]

    if args.json:
        doc = {
            "code": code.name or args.code,
            "n": n,
            "k": k,
            "per_subset": [
                {
                    "subset": list(r.subset),
                    "det": r.det,
                    "shortest_sq": r.shortest_sq,
                    "beta": r.beta,
                    "density": r.density,
                }
                for r in rep.per_subset
            ],
            "beta_min": rep.beta_min,
            "beta_geo": rep.beta_geo,
            "beta_min_2k": rep.beta_min_2k,
            "rho_min": rep.rho_min,
            "mother_density": rep.mother_density,
            "trace_bound": {"value": tb, "status": _annotate(rep.beta_min_2k, tb)},
            "det_bounds": [
                {"children": label, "value": b, "status": _annotate(rep.beta_geo, b, binding)}
                for label, b, binding in det_bounds
            ],
        }
        print(json.dumps(doc, indent=2))
        return 0

    print(f"code {code.name or args.code}: n={n} k={k}  mother density {_fmt(rep.mother_density)}")
    print(f"{'subset':<12}{'det':>12}{'shortest^2':>14}{'beta_S':>12}{'density':>12}")
    for r in rep.per_subset:
        label = "{" + ",".join(map(str, r.subset)) + "}"
        print(
            f"{label:<12}{_fmt(r.det):>12}{_fmt(r.shortest_sq):>14}"
            f"{_fmt(r.beta):>12}{_fmt(r.density):>12}"
        )
    print(f"beta_min        = {_fmt(rep.beta_min)}")
    print(f"beta_geo        = {_fmt(rep.beta_geo)}")
    print(f"beta_min^(2/k)  = {_fmt(rep.beta_min_2k)}")
    print(f"trace bound on beta_min^(2/k): {_fmt(tb)}  [{_annotate(rep.beta_min_2k, tb)}]")
    for label, b, binding in det_bounds:
        print(f"det bound on beta_geo ({label}): {_fmt(b)}  [{_annotate(rep.beta_geo, b, binding)}]")
    return 0


def cmd_bounds(args) -> int:
    mother = _density_arg(args.mother_density, args.k)
    child = _density_arg(args.child_density, args.k)
    rep = _bounds.bounds_report(args.n, args.k, mother, child)
    if args.json:
        print(json.dumps(rep.__dict__, indent=2))
        return 0
    print(f"(n, k) = ({rep.n}, {rep.k})")
    print(f"mother density           {_fmt(rep.mother_density)}")
    print(f"child density assumed    {_fmt(rep.child_density_assumption)}")
    print(f"trace bound (beta^(2/k)) {_fmt(rep.trace_bound)}")
    print(f"det bound (beta#)        {_fmt(rep.det_bound_beta_geo)}")
    print(f"det bound (beta#^(2/k))  {_fmt(rep.det_bound_exponent_2k)}")
    return 0


def cmd_search(args) -> int:
    cfg = SearchConfig(
        n=args.n,
        k=args.k,
        mother=resolve_mother(args.mother),
        objective=Objective(args.objective),
        restarts=args.restarts,
        local_steps=args.steps,
        step_scale=args.step_scale,
        seed=args.seed,
        keep_trace=bool(args.trace),
    )
    res = search(cfg, workers=args.workers)
    rep = code_report(res.best_code)
    print(f"objective {res.objective.value}: best {_fmt(res.best_value)} (restart {res.best_restart})")
    print(f"beta_min = {_fmt(rep.beta_min)}  beta_geo = {_fmt(rep.beta_geo)}  "
          f"beta_min^(2/k) = {_fmt(rep.beta_min_2k)}  trace bound {_fmt(_bounds.trace_bound(cfg.n, cfg.k))}")
    print(f"evaluations {res.evaluations}")
    if args.out:
        save_code(res.best_code, args.out)
    if args.trace:
        lines = ["iteration,value"] + [f"{i},{v!r}" for i, v in res.trace]
        Path(args.trace).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return 0


def _parse_subset(spec: str):
    try:
        return tuple(int(x) for x in spec.split(","))
    except ValueError:
        raise BadParams(f"--subset must be 'all' or comma separated indices, got {spec!r}") from None


def cmd_simulate(args) -> int:
    code = resolve_code(args.code)
    const = channel.build_constellation(code, args.M, args.power)
    if args.subset == "all":
        results = channel.simulate_all(const, args.sigma, args.trials, args.seed).results
    else:
        results = (channel.simulate(const, _parse_subset(args.subset), args.sigma, args.trials, args.seed),)
    _emit(channel.results_to_csv(results), args.out)
    return 0


def cmd_starbody(args) -> int:
    code = resolve_code(args.code)
    if args.radius == "2rhomin":
        r = starbody.critical_radius(code)
    else:
        try:
            r = float(args.radius)
        except ValueError:
            raise BadParams(f"--radius must be a number or '2rhomin', got {args.radius!r}") from None
    data = starbody.plot_data(code, r, args.window)
    reports = starbody.contacts(code, r)
    if args.out:
        Path(args.out).write_text(data.to_csv(), encoding="utf-8")
        print(f"radius {_fmt(r)}  admissible {starbody.admissible(code, r)}")
        touched = sum(c.touched for c in reports)
        print(f"subsets with contact points: {touched} of {len(reports)}")
        for c, ecc in zip(reports, data.eccentricities):
            label = "{" + ",".join(map(str, c.subset)) + "}"
            print(f"  {label:<8} contacts {len(c.contact_points):>3}  eccentricity {_fmt(ecc)}")
    else:
        sys.stdout.write(data.to_csv())
    return 0


def cmd_figure3(args) -> int:
    _emit(figure.figure3_csv(), args.out)
    return 0


def cmd_verify(args) -> int:
    results = constructions.verify_all()
    failed = [r for r in results if not r.passed]
    if args.json:
        doc = [
            {
                "construction": r.construction,
                "quantity": r.quantity,
                "expected": r.expected,
                "actual": r.actual,
                "tolerance": r.tolerance,
                "passed": r.passed,
            }
            for r in results
        ]
        print(json.dumps(doc, indent=2))
    else:
        for r in results:
            status = "ok  " if r.passed else "FAIL"
            print(f"{status} {r.construction:<10} {r.quantity:<30} expected {_fmt(r.expected)}"
                  f"  got {_fmt(r.actual)}")
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    for r in failed:
        print(f"failed: {r.construction} {r.quantity} (expected {r.expected!r}, got {r.actual!r})",
              file=sys.stderr)
    return 1 if failed else 0


def cmd_export(args) -> int:
    code = resolve_code(args.code)
    _emit(json.dumps(code_to_dict(code), indent=2) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lattice-erasure", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="per-subset report and bound comparison for a code")
    e.add_argument("--code", required=True, help="built-in name or JSON code file")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    b = sub.add_parser("bounds", help="trace and determinant bounds")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--mother-density", required=True, help="number, 'optimal' or 'cubic'")
    b.add_argument("--child-density", default="optimal", help="number, 'optimal' or 'cubic'")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", help="hill-climbing search over orthonormal frames")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--mother", required=True, help=f"one of {sorted(constructions.MOTHERS)}, a built-in code, or a code file")
    s.add_argument("--objective", choices=[o.value for o in Objective], default="beta_min")
    s.add_argument("--restarts", type=int, default=10)
    s.add_argument("--steps", type=int, default=200)
    s.add_argument("--step-scale", type=float, default=0.5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", help="write the best code as JSON")
    s.add_argument("--trace", help="write the (iteration, value) trace as CSV")
    s.set_defaults(func=cmd_search)

    m = sub.add_parser("simulate", help="Monte Carlo block error rate per erasure pattern")
    m.add_argument("--code", required=True)
    m.add_argument("--M", type=int, default=4)
    m.add_argument("--power", type=float, default=1.0)
    m.add_argument("--sigma", type=float, required=True)
    m.add_argument("--trials", type=int, default=100000)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--subset", default="all", help="'all' or comma separated indices, e.g. 1,3")
    m.add_argument("--out")
    m.set_defaults(func=cmd_simulate)

    t = sub.add_parser("starbody", help="noise ellipses and lattice contacts (k = 2)")
    t.add_argument("--code", required=True)
    t.add_argument("--radius", default="2rhomin", help="number or '2rhomin'")
    t.add_argument("--window", type=float, default=2.0)
    t.add_argument("--out")
    t.set_defaults(func=cmd_starbody)

    f = sub.add_parser("figure3", help="CSV of bound curves and construction points")
    f.add_argument("--out")
    f.set_defaults(func=cmd_figure3)

    v = sub.add_parser("verify", help="recompute every tabulated value of the built-ins")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("export", help="write a built-in code in the JSON file format")
    x.add_argument("--code", required=True)
    x.add_argument("--out")
    x.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LatticeCodeError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
