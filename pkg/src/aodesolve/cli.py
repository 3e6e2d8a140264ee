"""Command-line front end.

Subcommands: solve, classify, places, critical, constants, direct,
bound.  Exit codes: 0 success, 2 input validation failure, 3 resource
limit (tower degree cap).
"""

import argparse
import json
import sys
from fractions import Fraction

from .errors import (ExtensionLimitExceeded, NoDerivative, NotIrreducible,
                     ParseError, PointNotOnCurve, SeparantVanishes,
                     SolverError, TrivialLinear)
from .parsing import parse_initial_tuple, parse_polynomial
from .poly import multiplicity_at, validate_input
from .puiseux import default_bound, places_at
from .solver import (classify, constant_solutions, critical_set,
                     direct_method, solve_at)

_VALIDATION_ERRORS = (NotIrreducible, NoDerivative, TrivialLinear, ParseError,
                      PointNotOnCurve, SeparantVanishes, ValueError)


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="aodesolve",
        description="Exact power series solutions of first-order autonomous "
                    "algebraic ODEs F(y, y') = 0 via places of the curve "
                    "F(y, z) = 0.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_at):
        p.add_argument("--ode", required=True, help="polynomial in y and y'")
        if with_at:
            p.add_argument("--at", required=True, metavar="C0,C1",
                           help="initial tuple, e.g. \"1, sqrt(2)\"")
        p.add_argument("--order", type=int, default=None, metavar="N",
                       help="truncation order (N >= 1)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--degree-cap", type=int, default=64,
                       help="maximum tower extension degree (default 64)")
        p.add_argument("--jobs", type=int, default=1,
                       help="parallel classification workers")

    common(sub.add_parser("solve", help="solutions at an initial tuple"), True)
    common(sub.add_parser("direct", help="separant recursion at a tuple"), True)
    common(sub.add_parser("classify", help="partition initial tuples by "
                          "solution count"), False)
    common(sub.add_parser("places", help="places at every critical point"), False)
    common(sub.add_parser("critical", help="the critical set"), False)
    common(sub.add_parser("constants", help="constant solutions"), False)
    common(sub.add_parser("bound", help="singular-part truncation bound"), False)
    return ap


def _coord_str(c):
    """Exact rendering, plus a numeric hint to tell embeddings apart."""
    if c.is_rational():
        return str(c)
    v = c.complex()
    if abs(v.imag) < 1e-12:
        hint = "%.6g" % v.real
    else:
        hint = "%.6g%+.6gi" % (v.real, v.imag)
    return "%s~%s" % (c, hint)


def _render_point(p):
    return "(%s, %s)" % (_coord_str(p.y), _coord_str(p.z))


def _run(args, out):
    F = parse_polynomial(args.ode)
    F = validate_input(F)
    order = args.order
    if order is not None and order < 1:
        raise ValueError("--order must be >= 1")
    cap = args.degree_cap

    if args.command == "bound":
        n = default_bound(F)
        if args.format == "json":
            json.dump({"bound": n}, out)
            out.write("\n")
        else:
            out.write("%d\n" % n)
        return 0

    if args.command == "constants":
        consts = constant_solutions(F)
        if args.format == "json":
            json.dump({"constants": [_num_json(c) for c in consts]}, out,
                      sort_keys=True)
            out.write("\n")
        else:
            out.write("constants: %s\n" % ", ".join(_coord_str(c) for c in consts))
        return 0

    if args.command == "critical":
        crit = critical_set(F)
        if args.format == "json":
            json.dump({"critical": crit.to_json()}, out, sort_keys=True)
            out.write("\n")
        else:
            for p, tags in crit:
                out.write("%s  [%s]\n" % (_render_point(p), ", ".join(sorted(tags))))
        return 0

    if args.command == "classify":
        n = order if order is not None else 2 * (F.deg_y + F.deg_z)
        cl = classify(F, n, cap=cap, jobs=args.jobs)
        if args.format == "json":
            json.dump(cl.to_json(), out, sort_keys=True)
            out.write("\n")
        else:
            for i in sorted(cl.buckets):
                pts = ", ".join(_render_point(p) for p in cl.buckets[i])
                out.write("A%d = {%s}\n" % (i, pts))
            comp = ", ".join(_render_point(p) for p in cl.complement_of)
            extra = ", ".join(_render_point(p) for p in cl.a1_extra)
            line = "A1 = C(F) \\ {%s}" % comp
            if extra:
                line += " plus {%s}" % extra
            out.write(line + "\n")
            out.write("constants = {%s}\n"
                      % ", ".join(_coord_str(c) for c in cl.constants))
        return 0

    if args.command == "places":
        n = order if order is not None else default_bound(F)
        crit = critical_set(F)
        records = []
        for p, _tags in crit:
            records.append((p, places_at(F, p, n, cap=cap)))
        if args.format == "json":
            json.dump({"places": [{"center": p.to_json(),
                                   "places": [pl.to_json() for pl in pls]}
                                  for p, pls in records]}, out, sort_keys=True)
            out.write("\n")
        else:
            for p, pls in records:
                out.write("center %s:\n" % _render_point(p))
                for pl in pls:
                    out.write("  (A, B) = (%s, %s)\n"
                              % (pl.A.render(), pl.B.render()))
        return 0

    # solve / direct need the tuple
    c0, c1, _tower = parse_initial_tuple(args.at, cap=cap)
    if args.command == "solve":
        if order is None:
            if F.eval(c0, c1) == 0:
                order = 2 * multiplicity_at(F, (c0, c1)) + 2
            else:
                order = 1
        sols = solve_at(F, (c0, c1), order, cap=cap)
        if args.format == "json":
            json.dump({"solutions": [s.to_json() for s in sols]}, out,
                      sort_keys=True)
            out.write("\n")
        else:
            if not sols:
                out.write("no non-constant solutions\n")
            for s in sols:
                out.write("y(t) = %s\n" % s.series.render())
        return 0

    if args.command == "direct":
        n = order if order is not None else 6
        sol = direct_method(F, (c0, c1), n)
        if args.format == "json":
            json.dump({"solution": sol.to_json()}, out, sort_keys=True)
            out.write("\n")
        else:
            out.write("y(t) = %s\n" % sol.series.render())
        return 0

    raise ValueError("unknown command %r" % args.command)


def _num_json(c):
    from .numbers import AlgebraicNumber
    if isinstance(c, AlgebraicNumber) and not c.is_rational():
        return c.to_json()
    return str(c.as_fraction() if isinstance(c, AlgebraicNumber) else Fraction(c))


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = _build_parser().parse_args(argv)
    try:
        return _run(args, out)
    except ExtensionLimitExceeded as exc:
        err.write("resource limit: %s\n" % exc)
        return 3
    except _VALIDATION_ERRORS as exc:
        pos = getattr(exc, "position", None)
        if pos is not None:
            err.write("error: %s (at offset %d)\n" % (exc, pos))
        else:
            err.write("error: %s\n" % exc)
        return 2
    except SolverError as exc:
        err.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
