"""Command-line surface for the library.

Subcommands
    hyper eval|st|root      evaluate infinitesimal-field expressions
    germ  compare|classify|los
    bqf   eval|define
    topo  check|hull|reflect|dot
    audit

Exit codes: 0 success / property holds / all audits pass; 1 property false,
verdict not established, or an audit counterexample (a machine-readable
witness is emitted); 2 input error.

Hyperreal expression grammar (`e` is the positive infinitesimal):
    expr     := term { ('+'|'-') term }
    term     := unary { ('*'|'/') unary }
    unary    := ('-'|'+') unary | power
    power    := atom [ '^' exponent ]
    atom     := INT | 'e' | '(' expr ')'
    exponent := ['-'] ( INT | '(' INT '/' INT ')' )
Examples: (2+e)/(1+3*e), e^(1/2), 1/e - 7.

Germ textual forms: rf((2*n+1)/(n+3)) for rational functions of the index n,
ep([1,2];[0,1]) for eventually periodic sequences (preperiod; period), or a
bare rational for a constant germ.  Verdicts serialize as true-ae / false-ae /
ultrafilter-dependent.

Space JSON: {"points": ["a","b"], "opens": [[], ["a"], ["a","b"]]}.
Family JSON: {"f": {"a": "0", "b": "1/2"}}.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bqf, fintop, germs, hull, hyperreal


def _emit(obj, fmt: str) -> None:
    if fmt == "table":
        for line in _tabulate(obj):
            print(line)
    else:
        print(json.dumps(obj, sort_keys=True, indent=2, default=str))


def _tabulate(obj, prefix: str = ""):
    if isinstance(obj, dict):
        for key in sorted(obj):
            yield from _tabulate(obj[key], f"{prefix}{key}." if prefix else f"{key}.")
    elif isinstance(obj, list):
        yield f"{prefix[:-1]}: {json.dumps(obj, sort_keys=True, default=str)}"
    else:
        yield f"{prefix[:-1]}: {obj}"


def _error(kind: str, message: str, fmt: str, witness=None) -> int:
    payload = {"error": {"type": kind, "message": message}}
    if witness is not None:
        payload["error"]["witness"] = witness
    _emit(payload, fmt)
    return 2


def _frac_str(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# -- hyper ------------------------------------------------------------------------


def _hyper_report(x: hyperreal.Hyperreal) -> dict:
    report = {
        "canonical": str(x),
        "ramification": x.ram,
        "classification": x.classify().value,
        "st": str(x.st()),
    }
    order = x.order()
    report["order"] = None if order is None else _frac_str(order)
    if x.is_finite():
        real, infinitesimal = x.decompose()
        report["decomposition"] = {
            "real_part": _frac_str(real),
            "infinitesimal_part": str(infinitesimal),
        }
    return report


def cmd_hyper(args, fmt: str) -> int:
    try:
        x = hyperreal.parse_hyperreal(args.expr)
    except hyperreal.HyperrealError as exc:
        return _error(type(exc).__name__, str(exc), fmt)
    if args.action == "eval":
        _emit(_hyper_report(x), fmt)
        return 0
    if args.action == "st":
        _emit({"expr": str(x), "st": str(x.st())}, fmt)
        return 0
    # root
    try:
        r = hyperreal.nth_root(x, args.degree)
    except hyperreal.NotRepresentable as exc:
        _emit(
            {
                "root_exists": False,
                "witness": {"type": "NotRepresentable", "message": str(exc)},
            },
            fmt,
        )
        return 1
    except hyperreal.HyperrealError as exc:
        return _error(type(exc).__name__, str(exc), fmt)
    _emit({"root_exists": True, "root": str(r), "degree": args.degree}, fmt)
    return 0


# -- germ --------------------------------------------------------------------------


def cmd_germ(args, fmt: str) -> int:
    try:
        if args.action == "compare":
            a = germs.parse_germ(args.lhs)
            b = germs.parse_germ(args.rhs)
            verdict = germs.ae_equal(a, b) if args.relation == "eq" else germs.ae_less(a, b)
            _emit(
                {"lhs": repr(a), "rhs": repr(b), "relation": args.relation, "verdict": verdict.value},
                fmt,
            )
            return 0 if verdict is germs.AeVerdict.TRUE_AE else 1
        if args.action == "classify":
            g = germs.parse_germ(args.germ)
            result = germs.classify_germ(g)
            report = {"germ": repr(g)}
            if isinstance(result, germs.ResidueClassification):
                report["classification"] = "per-residue-class"
                report["residues"] = {
                    str(r): c.value for r, c in enumerate(result.classes)
                }
            else:
                report["classification"] = result.value
                if isinstance(g, germs.RationalGerm) or len(g.period) == 1:
                    report["st"] = str(germs.to_hyperreal(g).st())
            _emit(report, fmt)
            return 0
        # los
        assignment = {}
        for binding in args.bind or []:
            name, _, text = binding.partition("=")
            if not _:
                raise germs.GermSyntaxError(f"binding {binding!r} is not name=germ")
            assignment[name.strip()] = germs.parse_germ(text.strip())
        verdict = germs.los_check_qf(args.formula, assignment)
        _emit({"formula": args.formula, "verdict": verdict.value}, fmt)
        return 0 if verdict is germs.AeVerdict.TRUE_AE else 1
    except germs.GermError as exc:
        return _error(type(exc).__name__, str(exc), fmt)


# -- bqf ---------------------------------------------------------------------------


def _parse_bindings(pairs) -> dict:
    out = {}
    for binding in pairs or []:
        name, sep, text = binding.partition("=")
        if not sep:
            raise bqf.BqfError(f"binding {binding!r} is not name=json")
        out[name.strip()] = bqf.entity_from_json(json.loads(text))
    return out


def cmd_bqf(args, fmt: str) -> int:
    try:
        bindings = _parse_bindings(args.bind)
        formula = bqf.parse(args.formula)
        if args.action == "eval":
            value = bqf.evaluate(formula, bindings)
            transfer = bqf.check_transfer_finite(formula, bindings)
            _emit(
                {
                    "formula": bqf.print_formula(formula),
                    "value": value,
                    "transfer_holds": transfer["transfer_holds"],
                },
                fmt,
            )
            return 0 if value else 1
        bound = bqf.entity_from_json(json.loads(args.bound))
        if not isinstance(bound, bqf.FSet):
            return _error("QuantifierOverAtom", "comprehension bound must be a set", fmt)
        result = bqf.define_set(bound, formula, bindings, var=args.var)
        _emit(
            {
                "formula": bqf.print_formula(formula),
                "bound": bqf.entity_to_json(bound),
                "subset": bqf.entity_to_json(result),
            },
            fmt,
        )
        return 0
    except (bqf.BqfError, json.JSONDecodeError, TypeError) as exc:
        return _error(type(exc).__name__, str(exc), fmt)


# -- topo --------------------------------------------------------------------------


def _load_space(path: str) -> fintop.FinSpace:
    with open(path, "r", encoding="utf-8") as fh:
        return fintop.space_from_json(json.load(fh))


def cmd_topo(args, fmt: str) -> int:
    try:
        space = _load_space(args.space)
    except (OSError, json.JSONDecodeError, fintop.SpaceError) as exc:
        return _error(type(exc).__name__, str(exc), fmt)
    try:
        if args.action == "check":
            names = [args.property] if args.property else None
            verdicts = fintop.check_properties(space, names)
            report = {
                "space": space.to_json(),
                "properties": {v.name: v.to_json() for v in verdicts},
            }
            _emit(report, fmt)
            if any(not v.agree for v in verdicts):
                return 1
            return 0 if all(v.holds for v in verdicts) else 1
        if args.action == "dot":
            print(fintop.dot_specialization(space))
            return 0
        if args.action == "reflect" or (args.action == "hull" and args.t0_reflect):
            report = hull.t0_reflection_report(space)
            _emit(report, fmt)
            return 0
        # hull
        if args.family:
            with open(args.family, "r", encoding="utf-8") as fh:
                family = hull.family_from_json(space, json.load(fh))
            report = hull.hull_report(space, family, seed=args.seed)
        else:
            report = hull.hull_report(space, seed=args.seed)
        _emit(report, fmt)
        return 0
    except hull.DiscontinuousFamilyMember as exc:
        return _error(
            "DiscontinuousFamilyMember",
            str(exc),
            fmt,
            witness={"member": exc.name, "point": str(exc.point), "monad": sorted(map(str, exc.monad))},
        )
    except fintop.AuditFailure as exc:
        _emit({"error": {"type": "AuditFailure", "message": str(exc), "witness": exc.witness}}, fmt)
        return 1
    except (OSError, json.JSONDecodeError, fintop.SpaceError) as exc:
        return _error(type(exc).__name__, str(exc), fmt)


# -- audit -------------------------------------------------------------------------


def run_full_audit(max_points: int, seed: int = 0) -> dict:
    spaces = [s for n in range(1, max_points + 1) for s in fintop.enumerate_topologies(n)]
    part3 = fintop.theorem_audit(spaces)
    hulls = hull.hull_theorem_audit(spaces, seed=seed)
    compact_failures = []
    robinson_failures = []
    for space in spaces:
        try:
            fintop.compactness_identities(space, seed=seed)
        except fintop.AuditFailure as exc:
            compact_failures.append(f"{space.describe()}: {exc}")
        for m in space.subsets():
            if space.closure_robinson_mask(m) != space.closure_classical_mask(m):
                robinson_failures.append(f"{space.describe()}: closure {space.sorted_labels(m)}")
            if space.interior_robinson_mask(m) != space.interior_classical_mask(m):
                robinson_failures.append(f"{space.describe()}: interior {space.sorted_labels(m)}")
    counts = {}
    for n in range(1, max_points + 1):
        counts[str(n)] = sum(1 for _ in fintop.enumerate_topologies(n))
    report = {
        "max_points": max_points,
        "seed": seed,
        "topology_counts": counts,
        "spaces_checked": part3["spaces_checked"],
        "separation_and_order": part3,
        "hulls": hulls,
        "compactness_identities": {
            "counterexamples": compact_failures,
            "passed": not compact_failures,
        },
        "closure_interior_operators": {
            "counterexamples": robinson_failures,
            "passed": not robinson_failures,
        },
    }
    report["all_passed"] = (
        part3["all_passed"]
        and hulls["all_passed"]
        and not compact_failures
        and not robinson_failures
    )
    return report


def cmd_audit(args, fmt: str) -> int:
    if args.max_points > fintop.EXHAUSTIVE_LIMIT:
        return _error(
            "TooLarge",
            f"exhaustive audit is capped at {fintop.EXHAUSTIVE_LIMIT} points",
            fmt,
        )
    if args.max_points < 1:
        return _error("TooLarge", "need at least one point", fmt)
    report = run_full_audit(args.max_points, seed=args.seed)
    _emit(report, fmt)
    return 0 if report["all_passed"] else 1


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsatop",
        description="infinitesimal arithmetic, germs, bounded-quantifier formulas, "
        "and monad-based finite topology",
    )
    parser.add_argument("--format", choices=("json", "table", "dot"), default="json")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized audits")
    sub = parser.add_subparsers(dest="command", required=True)

    hyper = sub.add_parser("hyper", help="infinitesimal field expressions")
    hyper_sub = hyper.add_subparsers(dest="action", required=True)
    for action, doc in (("eval", "full report"), ("st", "standard part"), ("root", "n-th root")):
        p = hyper_sub.add_parser(action, help=doc)
        p.add_argument("expr")
        if action == "root":
            p.add_argument("degree", type=int)
    germ = sub.add_parser("germ", help="sequence germs modulo a.e. agreement")
    germ_sub = germ.add_subparsers(dest="action", required=True)
    p = germ_sub.add_parser("compare", help="a.e. comparison of two germs")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("relation", choices=("eq", "lt"))
    p = germ_sub.add_parser("classify", help="infinitesimal / appreciable / infinite")
    p.add_argument("germ")
    p = germ_sub.add_parser("los", help="a.e. truth of a quantifier-free formula")
    p.add_argument("formula")
    p.add_argument("--bind", action="append", metavar="NAME=GERM")

    bq = sub.add_parser("bqf", help="bounded-quantifier formulas over finite sets")
    bq_sub = bq.add_subparsers(dest="action", required=True)
    p = bq_sub.add_parser("eval", help="evaluate a formula (also checks transfer)")
    p.add_argument("formula")
    p.add_argument("--bind", action="append", metavar="NAME=JSON")
    p = bq_sub.add_parser("define", help="comprehension inside a bounding set")
    p.add_argument("formula")
    p.add_argument("--bound", required=True, metavar="JSON")
    p.add_argument("--var", default=None)
    p.add_argument("--bind", action="append", metavar="NAME=JSON")

    topo = sub.add_parser("topo", help="finite topological spaces")
    topo_sub = topo.add_subparsers(dest="action", required=True)
    p = topo_sub.add_parser("check", help="separation properties with oracles")
    p.add_argument("space")
    p.add_argument("--property", choices=sorted(fintop.PROPERTY_CHECKS), default=None)
    p = topo_sub.add_parser("hull", help="function hull (default: canonical family)")
    p.add_argument("space")
    p.add_argument("family", nargs="?", default=None)
    p.add_argument("--stone-cech", action="store_true", help="use the canonical family")
    p.add_argument("--t0-reflect", action="store_true", help="build the T0 reflection instead")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p = topo_sub.add_parser("reflect", help="T0 reflection")
    p.add_argument("space")
    p = topo_sub.add_parser("dot", help="specialization preorder as DOT")
    p.add_argument("space")

    audit = sub.add_parser("audit", help="run every audit over all small spaces")
    audit.add_argument("--max-points", type=int, default=3)
    audit.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format
    if fmt == "dot" and not (args.command == "topo" and args.action == "dot"):
        return _error("BadFormat", "dot output only applies to 'topo dot'", "json")
    if args.command == "hyper":
        return cmd_hyper(args, fmt)
    if args.command == "germ":
        return cmd_germ(args, fmt)
    if args.command == "bqf":
        return cmd_bqf(args, fmt)
    if args.command == "topo":
        return cmd_topo(args, fmt)
    return cmd_audit(args, fmt)


if __name__ == "__main__":
    sys.exit(main())
