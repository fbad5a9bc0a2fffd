"""Command-line front end. Every subcommand prints one JSON document."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .fan import attainable_fan, build_normal_fan, refine_to_simple
from .finite_field import (
    PrimeSearchExhausted, SupportCollapseError, face_count, find_good_prime, is_nondegenerate_mod_p,
    is_prime,
)
from .laurent import BadPrimeError, ConstantPolynomialError, ParseError, parse, rational_str, to_json, to_text
from .padic import (
    EnumerationBudgetError, UnresolvedMassError, exponential_sum, oscillatory_integral_direct,
    oscillatory_via_prop4, parse_phi, valuation_spectrum_bruteforce, zeta_coefficients_bruteforce,
)
from .cyclotomic import CharacterSpec
from .parallel import default_threads
from .polytope import DegeneratePolytopeError, newton_polytope
from .zeta import (
    AsymptoticsNotCertified, DegenerateError, asymptotic_terms, candidate_poles,
    denominator_real_parts, family_to_json, pole_multiplicities, series_expand, zeta_first_quadrant,
)

SCHEMA = "igusa-laurent/1"

EXIT_OK, EXIT_USAGE, EXIT_MATH = 0, 1, 2


class UsageError(Exception):
    pass


class MathFailure(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _poly(args):
    return parse(args.poly)


def _choose_prime(args, f) -> int:
    if args.prime is not None:
        return args.prime
    return find_good_prime(f)


def _ball_of(phi_text: str, p: int) -> int:
    phi = parse_phi(phi_text, p)
    if phi.kind != "strata" or phi.ranges[0] != phi.ranges[1] or phi.ranges[0][1] is not None:
        raise UsageError("the explicit formula is available for `ball e` supports only")
    return phi.ranges[0][0]


# ---- subcommands --------------------------------------------------------------

def cmd_polytope(args):
    f = _poly(args)
    P = newton_polytope(f)
    out = P.to_json()
    out["faces"] = [{"label": F.label(), **F.to_json()} for F in P.faces()]
    out["d_of_normals"] = [{"normal": list(n), "d": P.d(n)} for n in P.normals()]
    return out


def cmd_fan(args):
    f = _poly(args)
    P = newton_polytope(f)
    FA = attainable_fan(P)
    return {"normal_fan": build_normal_fan(P).to_json(), "attainable_fan": FA.to_json(),
            "simple_refinement": refine_to_simple(FA, P, args.diagonal).to_json()}


def cmd_nondeg(args):
    f = _poly(args)
    if args.find:
        p = find_good_prime(f, cap=args.cap)
        return {"smallest_good_prime": p}
    if args.prime is None:
        raise UsageError("nondeg needs --prime or --find")
    res = is_nondegenerate_mod_p(f, args.prime)
    if not res:
        raise MathFailure(f"f is degenerate modulo {args.prime} on face {res.face.label()}", res.to_json())
    return res.to_json()


def cmd_count(args):
    f = _poly(args)
    p = _choose_prime(args, f)
    P = newton_polytope(f)
    rows = []
    for face in P.faces():
        tc = face_count(f, face, p, args.threads)
        rows.append({"label": face.label(), **tc.to_json()})
    return {"p": p, "counts": rows}


def cmd_zeta(args):
    f = _poly(args)
    p = None if args.symbolic else _choose_prime(args, f)
    res = zeta_first_quadrant(f, p, ball=args.ball, form=args.form, threads=args.threads)
    out = res.to_json()
    out["fan"] = res.fan.to_json()
    out["at_t_equals_1"] = res.total.at_t_equals_one().reduced().to_json()
    return out


def cmd_poles(args):
    f = _poly(args)
    P = newton_polytope(f)
    FA = attainable_fan(P)
    FP = refine_to_simple(FA, P)
    poles, strip = candidate_poles(FA, P)
    poles_plus, strip_plus = candidate_poles(FP, P)
    Z = zeta_first_quadrant(f, None)
    return {
        "poles": [x.to_json() for x in poles],
        "strip": strip.to_json(),
        "multiplicities": pole_multiplicities(FA, P, strip),
        "simple_refinement_candidates": [x.to_json() for x in poles_plus],
        "simple_refinement_strip": strip_plus.to_json(),
        "denominator_real_parts": sorted(rational_str(x) for x in denominator_real_parts(Z.total)),
    }


def cmd_series(args):
    f = _poly(args)
    p = _choose_prime(args, f)
    Z = zeta_first_quadrant(f, p, ball=args.ball, threads=args.threads)
    spec = series_expand(Z.total, p, args.M)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["ord", "volume", "volume_float"])
        for k, v in sorted(spec.coefficients.items()):
            w.writerow([k, rational_str(v), f"{float(v):.17g}"])
        return buf.getvalue()
    return spec.to_json()


def cmd_asymptotics(args):
    f = _poly(args)
    p = _choose_prime(args, f)
    P = newton_polytope(f)
    FA = attainable_fan(P)
    _, strip = candidate_poles(FA, P)
    mu = pole_multiplicities(FA, P, strip)
    Z = zeta_first_quadrant(f, p, ball=args.ball, threads=args.threads)
    fams = asymptotic_terms(Z.total, p, args.side, strip, mu["beta"])
    return {"p": p, "side": args.side, "strip": strip.to_json(),
            "families": [family_to_json(x) for x in fams]}


def cmd_oracle(args):
    f = _poly(args)
    p = args.prime
    phi = parse_phi(args.phi, p)
    if args.conductor:
        chi = CharacterSpec(p, args.conductor, args.index)
        coeffs = zeta_coefficients_bruteforce(f, phi, p, chi, args.M, args.depth_cap, args.threads)
        return {"p": p, "phi": phi.text, "character": chi.to_json(),
                "coefficients": [{"ord": m, **v.to_complex().to_json()}
                                 for m, v in sorted(coeffs.items()) if not v.is_zero()]}
    spec = valuation_spectrum_bruteforce(f, phi, p, args.M, args.depth_cap, args.threads)
    out = spec.to_json()
    out["phi"] = phi.text
    if spec.unresolved_mass > args.tolerance:
        raise MathFailure("unresolved mass exceeds tolerance", out)
    return out


def cmd_expsum(args):
    f = _poly(args)
    val = exponential_sum(f, args.side, args.prime, args.m, args.u)
    return {"p": args.prime, "m": args.m, "side": args.side, "u": args.u, "S": val.to_json(),
            "abs": abs(val)}


def cmd_eprop4(args):
    f = _poly(args)
    if not args.assume_h1:
        raise UsageError("the zeta-coefficient assembly assumes hypothesis H1; pass --assume-h1")
    phi = parse_phi(args.phi, args.prime)
    direct = oscillatory_integral_direct(f, phi, args.prime, args.m, args.u, threads=args.threads)
    via = oscillatory_via_prop4(f, phi, args.prime, args.u, args.m, args.conductor_bound,
                                threads=args.threads)
    diff = abs(direct.value.value - via.value.value)
    out = {"p": args.prime, "m": args.m, "u": args.u, "phi": phi.text,
           "direct": direct.to_json(), "assembled": via.to_json(), "difference": diff,
           "agree": diff <= direct.value.err + via.value.err + args.tolerance}
    if not via.bound_reached:
        raise MathFailure("e(Phi) bound not reached: twisted coefficients remain at the next conductor", out)
    return out


def cmd_compare(args):
    f = _poly(args)
    p = _choose_prime(args, f)
    e = _ball_of(args.phi, p)
    Z = zeta_first_quadrant(f, p, ball=e, threads=args.threads)
    sym = series_expand(Z.total, p, args.M)
    orc = valuation_spectrum_bruteforce(f, parse_phi(args.phi, p), p, args.M, args.depth_cap, args.threads)
    rows = []
    for k in range(-args.M, args.M + 1):
        a, b = sym.coefficients.get(k, Fraction(0)), orc.coefficients.get(k, Fraction(0))
        rows.append({"ord": k, "explicit": rational_str(a), "oracle": rational_str(b), "match": a == b})
    out = {"p": p, "phi": args.phi, "M": args.M, "rows": rows,
           "all_match": all(r["match"] for r in rows),
           "oracle_unresolved_mass": rational_str(orc.unresolved_mass)}
    if not out["all_match"]:
        raise MathFailure("explicit formula and oracle disagree", out)
    return out


# ---- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="igusa-laurent", description="Local zeta functions of Laurent polynomials.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-f", "--poly", required=True, help="Laurent polynomial in x, y")
    common.add_argument("--threads", type=_positive, default=None,
                        help="worker cap (default: $IGUSA_LAURENT_THREADS or 1)")
    common.add_argument("-o", "--output", help="write the report to this file instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    add("polytope", cmd_polytope, "Newton polytope, faces and support function")
    sp = add("fan", cmd_fan, "normal fan, attainable fan and simple refinement")
    sp.add_argument("--diagonal", action="store_true", help="insert (1,1) before refining")
    sp = add("nondeg", cmd_nondeg, "non-degeneracy modulo p")
    sp.add_argument("-p", "--prime", type=_prime)
    sp.add_argument("--find", action="store_true", help="search for the smallest good prime")
    sp.add_argument("--cap", type=_positive, default=1000)
    sp = add("count", cmd_count, "torus point counts of the face functions")
    sp.add_argument("-p", "--prime", type=_prime)
    sp = add("zeta", cmd_zeta, "explicit first-quadrant zeta function")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("-p", "--prime", type=_prime)
    g.add_argument("--symbolic", action="store_true")
    sp.add_argument("--ball", type=int, default=0)
    sp.add_argument("--form", choices=("standard", "printed"), default="standard")
    add("poles", cmd_poles, "candidate poles and convergence strip")
    sp = add("series", cmd_series, "exact level-set volumes from the explicit formula")
    sp.add_argument("-p", "--prime", type=_prime)
    sp.add_argument("-M", type=_positive, default=10)
    sp.add_argument("--ball", type=int, default=0)
    sp.add_argument("--csv", action="store_true")
    sp = add("asymptotics", cmd_asymptotics, "exponential-polynomial families of the volumes")
    sp.add_argument("-p", "--prime", type=_prime)
    sp.add_argument("--side", choices=("pos", "neg"), default="neg")
    sp.add_argument("--ball", type=int, default=0)
    sp = add("oracle", cmd_oracle, "p-adic brute-force level-set volumes")
    sp.add_argument("-p", "--prime", type=_prime, required=True)
    sp.add_argument("-M", type=_positive, default=10)
    sp.add_argument("--phi", default="ball 0")
    sp.add_argument("--depth-cap", type=_positive, default=None)
    sp.add_argument("--conductor", type=int, default=0)
    sp.add_argument("--index", type=int, default=1)
    sp.add_argument("--tolerance", type=Fraction, default=Fraction(0))
    sp = add("expsum", cmd_expsum, "exponential sum mod p^m")
    sp.add_argument("-p", "--prime", type=_prime, required=True)
    sp.add_argument("-m", type=_positive, required=True)
    sp.add_argument("--side", type=int, choices=(0, 1), default=0)
    sp.add_argument("-u", type=int, default=1)
    sp = add("eprop4", cmd_eprop4, "oscillatory integral, direct and from zeta coefficients")
    sp.add_argument("-p", "--prime", type=_prime, required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-u", type=int, default=1)
    sp.add_argument("--phi", default="unit2")
    sp.add_argument("--conductor-bound", type=int, default=3)
    sp.add_argument("--assume-h1", action="store_true")
    sp.add_argument("--tolerance", type=float, default=1e-9)
    sp = add("compare", cmd_compare, "explicit formula against the oracle")
    sp.add_argument("-p", "--prime", type=_prime)
    sp.add_argument("-M", type=_positive, default=10)
    sp.add_argument("--phi", default="ball 0")
    sp.add_argument("--depth-cap", type=_positive, default=None)
    return ap


def _render_text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_render_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}"
                         for v in obj)
    return f"{pad}{obj}"


def _emit(args, command, result, status="ok", error=None):
    if isinstance(result, str) and status == "ok":
        text = result
    else:
        doc = {"schema": SCHEMA, "command": command, "status": status}
        if getattr(args, "poly", None) is not None:
            doc["input"] = {"poly": args.poly}
        if result is not None:
            doc["result"] = result
        if error:
            doc["error"] = error
        if getattr(args, "format", "json") == "text":
            text = _render_text(doc) + "\n"
        else:
            text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.threads is None:
        args.threads = default_threads()
    try:
        result = args.fn(args)
    except (ParseError, UsageError, ValueError) as exc:
        # mathematical failures are subclasses of ValueError; sort them first
        if isinstance(exc, _MATH_ERRORS):
            return _math_fail(args, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MathFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit(args, args.command, exc.payload, "failed", str(exc))
        return EXIT_MATH
    _emit(args, args.command, result)
    return EXIT_OK


_MATH_ERRORS = (
    DegenerateError, DegeneratePolytopeError, ConstantPolynomialError, BadPrimeError,
    SupportCollapseError, PrimeSearchExhausted, AsymptoticsNotCertified, UnresolvedMassError,
    EnumerationBudgetError,
)


def _math_fail(args, exc) -> int:
    print(f"error: {exc}", file=sys.stderr)
    payload = {}
    res = getattr(exc, "result", None)
    if res is not None and hasattr(res, "to_json"):
        payload = res.to_json()
    _emit(args, args.command, payload, "failed", str(exc))
    return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
