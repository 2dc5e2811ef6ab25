"""Command-line front end.

Exit codes: 0 success, 2 usage or parse error, 3 resource ceiling hit,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

from .errors import (
    BudgetExhausted,
    DivisibilityViolation,
    GroupTooLarge,
    IntegralityViolation,
    InvalidRootSystemType,
)

from .weyl import DEFAULT_CEILING

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_INVARIANT = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _datum(args):
    from .rootdata import RootSystemType, build_root_system

    text = args.type
    if args.rank is not None:
        text = f"{text}{args.rank}"
    return build_root_system(RootSystemType.parse(text))


def _point(args, datum):
    from .rootdata import ApartmentPoint

    if args.point is not None:
        try:
            vals = [Fraction(s) for s in args.point.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse point {args.point!r}: {exc}") from exc
        if len(vals) != datum.rank:
            raise UsageError(f"point needs {datum.rank} coordinates")
        if args.basis == "coroot":
            return ApartmentPoint(datum, tuple(vals))
        return ApartmentPoint.from_fundamental(datum, vals)
    if args.rho_over is None:
        raise UsageError("give --rho-over or --point")
    try:
        m = Fraction(args.rho_over)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse --rho-over {args.rho_over!r}") from exc
    if m == 0:
        return ApartmentPoint.origin(datum)
    return ApartmentPoint.rho_over(datum, m)


def _parse_coeffs(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(s) for s in text.split(","))
    except ValueError as exc:
        raise UsageError(f"cannot parse coefficients {text!r}") from exc
    if len(vals) != 8:
        raise UsageError("exactly 8 coefficients a,b,c,d,e,f,g,h are required")
    return vals


def _schedule(max_degree: int) -> tuple[int, ...]:
    return tuple(k for k in (1, 2, 4) if k <= max_degree) or (1,)


def cmd_roots(args) -> dict:
    from .rootdata import datum_to_json

    return datum_to_json(_datum(args))


def cmd_regular_orders(args) -> dict:
    from .weyl import regular_elliptic_orders

    d = _datum(args)
    return {"type": str(d.type), "weyl_order": d.type.weyl_order, "orders": regular_elliptic_orders(d, args.ceiling)}


def cmd_grading(args) -> dict:
    from .chevalley import structure_constants
    from .mpgrading import (
        check_grading_bracket,
        compute_mp_quotient,
        dual_weight_multiset,
        quotient_to_json,
        vinberg_grading,
        weights_to_json,
    )
    from .rootdata import ApartmentPoint, kac_coordinates, reduce_to_alcove
    from .weyl import regular_elliptic_orders

    d = _datum(args)
    x = _point(args, d)
    alg = structure_constants(d)
    q = compute_mp_quotient(d, x)
    grading = vinberg_grading(d, alg, x)
    cert = check_grading_bracket(alg, grading)
    reduced, word = reduce_to_alcove(x)
    out = quotient_to_json(q)
    out.update(
        {
            "type": str(d.type),
            "grading": {
                "m": grading.m,
                "dimensions": list(grading.dimensions),
                "bracket_check": {"passed": cert.passed, "pairs_checked": cert.pairs_checked,
                                  "violation": list(cert.violation) if cert.violation else None},
            },
            "dual_weights": weights_to_json(dual_weight_multiset(d, q)),
            "alcove_point": [str(v) for v in reduced.offset],
            "alcove_word": list(word),
            "kac_coordinates": list(kac_coordinates(reduced)),
        }
    )
    try:
        orders = regular_elliptic_orders(d, args.ceiling)
    except GroupTooLarge:
        out["verdict"] = "undetermined (Weyl group above ceiling)"
        out["regular_elliptic_orders"] = None
        return out
    m = q.m
    conj = False
    if m in orders:
        target, _ = reduce_to_alcove(ApartmentPoint.rho_over(d, m))
        conj = target.offset == reduced.offset
    out["regular_elliptic_orders"] = orders
    out["conjugate_to_rho_over_m"] = conj
    out["verdict"] = "stable vectors exist" if conj else "no stable vectors"
    return out


def cmd_g2_delta(args) -> dict:
    from .fields import field_for_order
    from .g2case import delta_bar, delta_int, disc_xy, disc_zw, g6, h6

    F = _parse_coeffs(args.coeffs)
    quartic = disc_xy(F)
    out = {
        "coefficients": list(F),
        "disc_xy": list(quartic.coeffs),
        "disc_zw": disc_zw(quartic),
        "delta": delta_int(F),
        "h6": h6(F),
        "g6": g6(F),
    }
    if args.q is not None:
        f = field_for_order(args.q)
        out["q"] = args.q
        out["delta_bar"] = delta_bar(tuple(c % f.p for c in F), f).code
    return out


def cmd_g2_classify(args) -> dict:
    from .g2case import classify_stable

    report = classify_stable(args.q, schedule=_schedule(args.ext_degree), budget=args.budget, jobs=args.jobs)
    if not args.records:
        report.pop("records")
    if not report["consistent"]:
        raise AssertionError(json.dumps({k: v for k, v in report.items() if k != "records"}, sort_keys=True))
    return report


def cmd_g2_identity(args) -> dict:
    from .g2case import identity_check

    return identity_check(args.seed, args.samples)


def cmd_hm(args) -> dict:
    from .mpgrading import stability_survey

    d = _datum(args)
    x = _point(args, d)
    return stability_survey(d, x, args.q, schedule=_schedule(args.ext_degree), budget=args.budget)


def _to_tsv(report: dict) -> str:
    lines = []
    if "records" in report:
        recs = report["records"]
        cols = sorted({k for r in recs for k in r})
        lines.append("\t".join(cols))
        for r in recs:
            lines.append("\t".join(json.dumps(r.get(c), sort_keys=True) for c in cols))
        return "\n".join(lines) + "\n"
    for k in sorted(report):
        lines.append(f"{k}\t{json.dumps(report[k], sort_keys=True)}")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "tsv":
        return _to_tsv(report)
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mpstable", description="Moy-Prasad gradings and Hilbert-Mumford stability tools")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    typed = argparse.ArgumentParser(add_help=False)
    typed.add_argument("--type", required=True, help="root system type, e.g. G2 (or family letter with --rank)")
    typed.add_argument("--rank", type=int, default=None)
    typed.add_argument("--ceiling", type=int, default=DEFAULT_CEILING, help="Weyl group enumeration ceiling")

    pointed = argparse.ArgumentParser(add_help=False)
    pointed.add_argument("--rho-over", default=None, help="point x0 + rho/m (0 means x0)")
    pointed.add_argument("--point", default=None, help="comma-separated rational coordinates (write --point=-1/2,1 for a leading minus)")
    pointed.add_argument("--basis", choices=("fundamental", "coroot"), default="fundamental",
                         help="fundamental: simple-root values alpha_i(x); coroot: offset in simple coroots")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--ext-degree", type=int, default=2, help="largest extension degree in the search schedule")
    search.add_argument("--budget", type=int, default=2_000_000, help="orbit points per scan")

    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("roots", parents=[common, typed])
    s.set_defaults(func=cmd_roots)
    s = sub.add_parser("regular-orders", parents=[common, typed])
    s.set_defaults(func=cmd_regular_orders)
    s = sub.add_parser("grading", parents=[common, typed, pointed])
    s.set_defaults(func=cmd_grading)
    s = sub.add_parser("hm", parents=[common, typed, pointed, search])
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_hm)

    g2 = sub.add_parser("g2").add_subparsers(dest="g2command", required=True)
    s = g2.add_parser("delta", parents=[common])
    s.add_argument("--coeffs", required=True, help="a,b,c,d,e,f,g,h")
    s.add_argument("--q", type=int, default=None)
    s.set_defaults(func=cmd_g2_delta)
    s = g2.add_parser("classify", parents=[common, search])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--records", action="store_true", help="include per-vector records")
    s.set_defaults(func=cmd_g2_classify)
    s = g2.add_parser("identity", parents=[common])
    s.add_argument("--samples", type=int, default=100)
    s.set_defaults(func=cmd_g2_identity)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        report: Any = args.func(args)
    except (UsageError, InvalidRootSystemType, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GroupTooLarge, BudgetExhausted, MemoryError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DivisibilityViolation, IntegralityViolation, AssertionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    text = render(report, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
