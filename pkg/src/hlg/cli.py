"""Command-line front end.

Every subcommand wraps one library operation.  ``--json`` emits a single
canonical object (sorted keys) with fields schema, command, inputs, result,
certificates and timing_ms.  Exit status: 0 success, 2 verified negative
verdict, 1 library error, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from typing import Callable

import sympy

from . import __version__
from .errors import HLGError

SCHEMA = "hlg/1"
EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError(message)


# -- argument types -----------------------------------------------------------

def int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def curve_arg(text: str):
    vals = int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("a curve is given as a,b for y^2 = x^3 + a x + b")
    return vals


def rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def place_arg(text: str):
    return "REAL" if text.upper() in ("REAL", "INF", "R") else int(text)


def positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


# -- JSON normalization --------------------------------------------------------

def jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "INFINITE" if obj > 0 else "-INFINITE"
        if math.isnan(obj):
            return "NaN"
        return obj
    if hasattr(obj, "item"):  # numpy scalar
        return jsonable(obj.item())
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict())
    return str(obj)


def canonical_json(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=True)


class Outcome:
    """What a handler hands back to the dispatcher."""

    def __init__(self, inputs: dict, result, certificates=None, negative: bool = False, text: str | None = None):
        self.inputs = inputs
        self.result = result
        self.certificates = certificates if certificates is not None else {}
        self.negative = negative
        self.text = text


# -- handlers: padic -------------------------------------------------------------

def cmd_padic_val(a):
    from .padic import norm, valuation

    v = valuation(a.r, a.p)
    return Outcome({"r": a.r, "p": a.p}, {"valuation": v, "norm": norm(a.r, a.p)},
                   text=f"v_{a.p}({a.r}) = {jsonable(v)}")


def cmd_padic_hensel(a):
    from .padic import poly_eval, hensel_lift

    x = hensel_lift(a.poly, a.p, a.root, a.k, a.target)
    mod = a.p**a.target
    cert = {"f(x) mod p^target": poly_eval(a.poly, x, mod), "modulus": mod}
    return Outcome({"poly": a.poly, "p": a.p, "root": a.root, "k": a.k, "target": a.target},
                   {"lift": x, "modulus": mod}, cert, text=f"{x} mod {a.p}^{a.target}")


def cmd_product_formula(a):
    from .padic import verify_product_formula

    if a.sweep is not None:
        H = a.sweep
        checked = failures = 0
        seen = set()
        for num in range(-H, H + 1):
            if num == 0:
                continue
            for den in range(1, H + 1):
                r = Fraction(num, den)
                if r in seen:
                    continue
                seen.add(r)
                checked += 1
                if not verify_product_formula(r).holds:
                    failures += 1
        res = {"bound": H, "distinct_rationals": checked, "failures": failures, "all_one": failures == 0}
        return Outcome({"sweep": H}, res, negative=failures > 0,
                       text=f"{checked} rationals checked, {failures} failures")
    if a.rational is None:
        raise UsageError("product-formula needs --rational or --sweep")
    fn = verify_product_formula(a.rational)
    d = fn.as_dict()
    return Outcome({"rational": a.rational}, {"product": d["product"], "holds": fn.holds},
                   d["certificate"], negative=not fn.holds,
                   text=f"product = {d['product']}  certificate {d['certificate']}")


# -- handlers: quadratic forms --------------------------------------------------

def cmd_qf_local(a):
    from .forms import local_solubility

    v = local_solubility(a.coeffs, a.place)
    return Outcome({"coeffs": a.coeffs, "place": a.place},
                   {"place": v.place, "soluble": v.soluble, "witness": v.witness},
                   v.certificate, negative=not v.soluble,
                   text=f"{'soluble' if v.soluble else 'insoluble'} at {v.place}")


def cmd_qf_decide(a):
    from .forms import hasse_minkowski_decide

    g = hasse_minkowski_decide(a.coeffs)
    d = g.as_dict()
    return Outcome({"coeffs": a.coeffs},
                   {"soluble": g.soluble, "witness": d["witness"], "obstruction": g.obstruction},
                   {"local": d["local"]}, negative=not g.soluble,
                   text=(f"soluble over Q, witness {d['witness']}" if g.soluble
                         else f"insoluble over Q, obstruction at {g.obstruction}"))


def cmd_qf_search(a):
    from .forms import mordell_search

    if len(a.coeffs) != 3:
        raise UsageError("qf search takes a,b,c for a X^2 + b Y^2 - c Z^2")
    m = mordell_search(*a.coeffs)
    d = m.as_dict()
    return Outcome({"coeffs": a.coeffs}, {"witness": d["witness"]},
                   {"reduced": d["reduced"], "box": d["box"]}, negative=m.witness is None,
                   text=f"witness {d['witness']}" if m.witness else "NONE")


def cmd_qf_equiv(a):
    from .forms import equivalent_over_Q

    eq, report = equivalent_over_Q(a.f, a.g)
    return Outcome({"f": a.f, "g": a.g}, {"equivalent": eq, "disagreements": report["disagreements"]},
                   {"f": report["f"], "g": report["g"]}, negative=not eq,
                   text=("equivalent" if eq else f"not equivalent: {report['disagreements']}"))


def cmd_qf_infaut(a):
    from .forms import infinitesimal_automorphisms

    r = infinitesimal_automorphisms(a.coeffs, a.degree)
    d = r.as_dict()
    return Outcome({"coeffs": a.coeffs, "degree": a.degree}, {"dimension": r.dimension},
                   {"basis": d["basis"]}, text=f"dimension {r.dimension}")


# -- handlers: cubic ----------------------------------------------------------------

def cmd_cubic_local(a):
    from .cubic import cubic_local_solubility

    v = cubic_local_solubility(a.coeffs, a.place)
    return Outcome({"coeffs": a.coeffs, "place": a.place},
                   {"place": v.place, "soluble": v.soluble, "witness": v.witness},
                   v.certificate, negative=not v.soluble,
                   text=f"{'soluble' if v.soluble else 'insoluble'} at {v.place}")


def cmd_cubic_search(a):
    from .cubic import cubic_global_search

    pts = cubic_global_search(a.coeffs, a.height, workers=a.workers)
    return Outcome({"coeffs": a.coeffs, "height": a.height}, {"points": pts, "count": len(pts)},
                   {"method": "x >= 0 and |y| <= H enumerated, z by exact cube root"},
                   negative=not pts, text=f"{len(pts)} points: {pts}")


def cmd_selmer_suite(a):
    from .cubic import selmer_companion_suite

    rep = selmer_companion_suite(a.height, controls=a.control or (), workers=a.workers)
    lines = [f"{c['coeffs']}: locally soluble {c['locally_soluble_everywhere']}, points {c['points']}, ok {c['ok']}"
             for c in rep["curves"] + rep["controls"]]
    certs = {str(c["coeffs"]): c["local"] for c in rep["curves"] + rep["controls"]}
    return Outcome({"height": a.height, "controls": a.control or []}, rep, certs,
                   negative=not rep["all_ok"], text="\n".join(lines))


# -- handlers: elliptic -------------------------------------------------------------

def _curve(a):
    from .elliptic import WeierstrassCurve

    return WeierstrassCurve(*a.curve)


def _bad_ap(text: str | None) -> dict | None:
    if not text:
        return None
    out = {}
    for item in text.split(","):
        p, v = item.split(":")
        out[int(p)] = int(v)
    return out


def cmd_ec_ap(a):
    from .elliptic import count_points_ap, count_points_by_y

    E = _curve(a)
    d = count_points_ap(E, a.p)
    return Outcome({"curve": a.curve, "p": a.p}, d.as_dict(), {"count_by_y": count_points_by_y(E, a.p)},
                   text=f"a_{a.p} = {d.a_p} (#E = {d.count}, good={d.good_reduction})")


def cmd_ec_aptable(a):
    from .elliptic import ap_table, ap_table_csv

    E = _curve(a)
    rows = ap_table(E, sympy.primerange(2, a.pmax + 1))
    csv_text = ap_table_csv(rows)
    if a.out:
        with open(a.out, "w", newline="") as fh:
            fh.write(csv_text)
    return Outcome({"curve": a.curve, "pmax": a.pmax},
                   {"rows": [r.as_dict() for r in rows], "csv_path": a.out}, text=csv_text.rstrip("\n"))


def cmd_ec_lfactor(a):
    from .elliptic import count_points_ap, local_factor

    E = _curve(a)
    val = local_factor(E, a.p, a.s)
    return Outcome({"curve": a.curve, "p": a.p, "s": a.s}, {"value": val},
                   {"a_p": count_points_ap(E, a.p).a_p}, text=f"L_{a.p}(E,{a.s}) = {val!r}")


def cmd_ec_partial_l(a):
    from .elliptic import partial_L

    E = _curve(a)
    S = a.S if a.S is not None else E.bad_primes()
    r = partial_L(E, S, a.s, a.pmax)
    return Outcome({"curve": a.curve, "S": S, "s": a.s, "pmax": a.pmax}, r.as_dict(),
                   {"relative_tail_bound": r.relative_tail_bound},
                   text=f"L_S(E,{a.s}) ~ {r.value!r} (relative tail <= {r.relative_tail_bound:.3g})")


def cmd_ec_lvalue(a):
    from .elliptic import l_value_at_1

    E = _curve(a)
    r = l_value_at_1(E, a.conductor, terms=a.terms, bad_ap=_bad_ap(a.bad_ap), tol=a.tol)
    return Outcome({"curve": a.curve, "conductor": a.conductor, "terms": a.terms, "tol": a.tol},
                   r.as_dict(), {"tail_bound": r.tail_bound},
                   text=f"L(E,1) = {r.value!r} +- {r.tail_bound:.3g} ({r.terms} terms)")


def cmd_ec_period(a):
    from .elliptic import real_period

    r = real_period(_curve(a))
    return Outcome({"curve": a.curve}, r.as_dict(),
                   {"agm_value": r.agm_value, "quadrature_error": r.error_estimate},
                   text=f"Omega = {r.value!r} (AGM {r.agm_value!r}, {r.components} component(s))")


def cmd_ec_ratio(a):
    from .elliptic import bsd_ratio

    rep = bsd_ratio(_curve(a), target=a.target, tol=a.tol, conductor=a.conductor,
                    bad_ap=_bad_ap(a.bad_ap))
    certs = {"conductor_scan": rep["conductor_scan"], "u_table": rep["u_table"], "matches": rep["matches"]}
    result = {k: rep[k] for k in ("minimal_u", "minimal_model", "conductor", "L1", "omega", "ratio",
                                  "target", "tol", "within_tol")}
    return Outcome({"curve": a.curve, "target": a.target, "tol": a.tol}, result, certs,
                   negative=not rep["within_tol"],
                   text=(f"model u={rep['minimal_u']} {rep['minimal_model']}, N={rep['conductor']}\n"
                         f"L(E,1) = {rep['L1']['value']!r}\nOmega = {rep['omega']!r}\n"
                         f"ratio = {rep['ratio']!r} (target {a.target} +- {a.tol}: {rep['within_tol']})"))


def cmd_ec_conductor_scan(a):
    from .elliptic import functional_equation_scan

    r = functional_equation_scan(_curve(a), candidates=a.candidates, bad_ap=_bad_ap(a.bad_ap),
                                 scan_bad_ap=a.scan_bad_ap, threshold=a.threshold)
    d = r.as_dict()
    return Outcome({"curve": a.curve, "candidates": a.candidates, "threshold": a.threshold},
                   {"conductor": r.conductor, "sign": r.sign, "score": r.score, "bad_ap": d["bad_ap"]},
                   {"table": d["table"][: a.top]},
                   text=f"N = {r.conductor}, sign {r.sign:+d}, score {r.score:.3g}")


def cmd_ec_jacobian(a):
    from .elliptic import cubic_jacobian_model

    pts = [tuple(int_list(t)) for t in (a.point or [])]
    m = cubic_jacobian_model(a.coeffs, pts)
    images = {str(p): m.forward(p).as_list() for p in pts}
    ok = all(m.certificate["round_trips"].values()) and m.certificate["forward_lands_on_curve"] \
        and m.certificate["backward_lands_on_cubic"]
    return Outcome({"coeffs": a.coeffs, "points": pts},
                   {"d": m.d, "curve": m.curve.to_json(), "images": images}, m.certificate,
                   negative=not ok, text=f"jacobian {m.curve} (d = {m.d}); images {images}")


# -- handlers: cohomology ---------------------------------------------------------------

def _load_action(path: str):
    from .cohom import action_from_json

    fh = sys.stdin if path == "-" else open(path)
    with fh:
        return action_from_json(json.load(fh))


def cmd_h1_compute(a):
    from .cohom import h1, h1_via_lifts

    act = _load_action(a.action)
    classes = h1(act, budget=a.budget)
    lifted = h1_via_lifts(act, budget=a.budget)
    agree = {k.members for k in classes} == {k.members for k in lifted}
    result = {"size": len(classes), "classes": [list(k.representative) for k in classes],
              "class_sizes": [len(k) for k in classes]}
    return Outcome({"action": a.action}, result, {"lifts_path_size": len(lifted), "paths_agree": agree},
                   negative=not agree, text=f"|H^1| = {len(classes)}; both paths agree: {agree}")


def cmd_h1_sha(a):
    from .cohom import cyclic_family, sha_kernel

    act = _load_action(a.action)
    if a.family == "cyclic":
        fam = cyclic_family(act)
    elif a.family == "whole":
        fam = [frozenset(act.delta.elements())]
    else:
        fam = [frozenset(int_list(part)) for part in a.family.split(";")]
    ker = sha_kernel(act, fam)
    return Outcome({"action": a.action, "family": a.family},
                   {"kernel_size": len(ker), "kernel": [list(k.representative) for k in ker],
                    "trivial": len(ker) == 1},
                   {"family": [sorted(h) for h in fam]}, text=f"kernel size {len(ker)}")


def cmd_h1_baer(a):
    from .cohom import baer_sum, class_of, h1, torsor_contraction

    act = _load_action(a.action)
    s = baer_sum(act, a.c1, a.c2)
    t = torsor_contraction(act, a.c1, a.c2)
    classes = h1(act)
    same = class_of(classes, s) == class_of(classes, t)
    return Outcome({"action": a.action, "c1": a.c1, "c2": a.c2},
                   {"sum": s, "class_index": class_of(classes, s)},
                   {"torsor_contraction": t, "same_class": same}, negative=not same,
                   text=f"c1 + c2 = {list(s)} (torsor model agrees: {same})")


def cmd_kolyvagin(a):
    from .cohom import kolyvagin_derivative_check

    results = [kolyvagin_derivative_check(n) for n in range(2, a.order + 1)] if a.all \
        else [kolyvagin_derivative_check(a.order)]
    ok = all(r.holds for r in results)
    last = results[-1]
    return Outcome({"order": a.order, "all": a.all},
                   {"holds": ok, "orders_checked": [r.order for r in results]},
                   {"lhs": list(last.lhs.coeffs), "rhs": list(last.rhs.coeffs)},
                   negative=not ok, text=f"(gamma-1)D = n - Norm holds: {ok}")


def cmd_orbit_count(a):
    from .cohom import orbit_count_involution

    r = orbit_count_involution(a.invariants)
    return Outcome({"invariants": a.invariants}, r.as_dict(), negative=not r.agree,
                   text=f"{r.formula} orbits (enumeration {r.enumerated})")


# -- grammar ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one canonical JSON object")
    common.add_argument("--workers", type=positive_int, default=None,
                        help="worker processes for partitionable searches")

    top = _Parser(prog="hlg", description="Local-global computations in number theory.", parents=[common])
    top.add_argument("--version", action="version", version=f"hlg {__version__}")
    sub = top.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def leaf(parent, name, fn: Callable, help_text: str):
        p = parent.add_parser(name, help=help_text, description=help_text, parents=[common])
        p.set_defaults(fn=fn)
        return p

    def group(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        g = p.add_subparsers(dest="subcommand", metavar="SUBCOMMAND", parser_class=_Parser)
        g.required = True
        return g

    padic = group("padic", "p-adic valuations and Hensel lifting")
    p = leaf(padic, "val", cmd_padic_val, "v_p(r) and |r|_p for a rational r")
    p.add_argument("r", type=rational_arg)
    p.add_argument("p", type=int)
    p = leaf(padic, "hensel", cmd_padic_hensel,
             "lift a root of f mod p^k to p^target (strong Hensel: k > 2 v_p(f'(root)))")
    p.add_argument("--poly", type=int_list, required=True, help="coefficients, constant term first")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--k", type=positive_int, default=1)
    p.add_argument("--target", type=positive_int, required=True)

    p = leaf(sub, "product-formula", cmd_product_formula,
             "check |r|_inf * prod_p |r|_p = 1 exactly, with the factored certificate")
    p.add_argument("--rational", type=rational_arg)
    p.add_argument("--sweep", type=positive_int, help="check every r = n/d with |n|, d <= SWEEP")

    qf = group("qf", "diagonal quadratic forms: local and global zeros, equivalence")
    p = leaf(qf, "local", cmd_qf_local, "nontrivial zero over R or Q_p (certified residue search)")
    p.add_argument("coeffs", type=int_list)
    p.add_argument("place", type=place_arg, help="a prime or REAL")
    p = leaf(qf, "decide", cmd_qf_decide,
             "global zero over Q from local checks at R and p | 2 prod a_i, with a witness for ternary forms")
    p.add_argument("coeffs", type=int_list)
    p = leaf(qf, "search", cmd_qf_search,
             "exhaustive Mordell-box search for a X^2 + b Y^2 = c Z^2; NONE proves insolubility")
    p.add_argument("coeffs", type=int_list, help="a,b,c > 0")
    p = leaf(qf, "equiv", cmd_qf_equiv,
             "rational equivalence via rank, discriminant, signature and Hasse symbols")
    p.add_argument("f", type=int_list)
    p.add_argument("g", type=int_list)
    p = leaf(qf, "infaut", cmd_qf_infaut,
             "dimension of the Lie algebra of projective automorphisms of sum a_i X_i^d")
    p.add_argument("coeffs", type=int_list)
    p.add_argument("--degree", type=positive_int, default=2)

    cub = group("cubic", "diagonal plane cubics a X^3 + b Y^3 + c Z^3 = 0")
    p = leaf(cub, "local", cmd_cubic_local, "nontrivial zero over R or Q_p")
    p.add_argument("coeffs", type=int_list)
    p.add_argument("place", type=place_arg)
    p = leaf(cub, "search", cmd_cubic_search, "all primitive rational points of height <= H, up to sign")
    p.add_argument("coeffs", type=int_list)
    p.add_argument("--height", type=positive_int, default=100)

    p = leaf(sub, "selmer-suite", cmd_selmer_suite,
             "local solubility and point search for 3x^3+4y^3+5z^3 and its four companions")
    p.add_argument("--height", type=positive_int, default=10_000)
    p.add_argument("--control", type=int_list, action="append", help="extra a,b,c run as a control")

    ec = group("ec", "elliptic curves y^2 = x^3 + a x + b")

    def curve_leaf(name, fn, text):
        p = leaf(ec, name, fn, text)
        p.add_argument("--curve", type=curve_arg, required=True, help="a,b")
        return p

    p = curve_leaf("ap", cmd_ec_ap, "a_p = p + 1 - #E(F_p)")
    p.add_argument("--p", type=int, required=True)
    p = curve_leaf("aptable", cmd_ec_aptable, "a_p for good p <= PMAX as CSV (p,a_p)")
    p.add_argument("--pmax", type=positive_int, default=100)
    p.add_argument("--out", help="also write the CSV to this path")
    p = curve_leaf("lfactor", cmd_ec_lfactor, "Euler factor (1 - a_p p^-s + p^(1-2s))^-1")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=float, default=2.0)
    p = curve_leaf("partial-l", cmd_ec_partial_l, "Euler product over good p <= PMAX outside S, s > 3/2")
    p.add_argument("--S", type=int_list, default=None, help="excluded primes (default: the bad primes)")
    p.add_argument("--s", type=float, default=2.0)
    p.add_argument("--pmax", type=positive_int, default=1000)
    p = curve_leaf("lvalue", cmd_ec_lvalue, "L(E,1) by the exponentially convergent series, with tail bound")
    p.add_argument("--conductor", type=positive_int, required=True)
    p.add_argument("--terms", type=positive_int, default=None)
    p.add_argument("--tol", type=positive_float, default=None)
    p.add_argument("--bad-ap", default=None, help="p:a_p,... for bad primes")
    p = curve_leaf("period", cmd_ec_period, "real period of dx/(2y), by quadrature and by AGM")
    p = curve_leaf("ratio", cmd_ec_ratio,
                   "L(E,1)/Omega on the minimal-discriminant rescaling, conductor from the functional equation")
    p.add_argument("--target", type=float, default=9.0)
    p.add_argument("--tol", type=positive_float, default=0.01)
    p.add_argument("--conductor", type=positive_int, default=None)
    p.add_argument("--bad-ap", default=None)
    p = curve_leaf("conductor-scan", cmd_ec_conductor_scan,
                   "conductor and sign best satisfying the functional equation")
    p.add_argument("--candidates", type=int_list, default=None)
    p.add_argument("--bad-ap", default=None)
    p.add_argument("--scan-bad-ap", action="store_true", help="also scan a_p in {0,1,-1} at bad primes")
    p.add_argument("--threshold", type=positive_float, default=1e-3)
    p.add_argument("--top", type=positive_int, default=10, help="rows of the score table to report")
    p = leaf(ec, "jacobian", cmd_ec_jacobian,
             "Weierstrass model y^2 = x^3 - 432 d^2 of the jacobian of a X^3 + b Y^3 + c Z^3, d = -abc")
    p.add_argument("coeffs", type=int_list)
    p.add_argument("--point", action="append", help="x,y,z on abc X^3 + Y^3 + Z^3 = 0 to map and round-trip")

    h = group("h1", "nonabelian H^1 of a finite group acting on a finite group")
    p = leaf(h, "compute", cmd_h1_compute,
             "crossed homomorphisms mod twisted conjugation, cross-checked against sections of the semidirect product")
    p.add_argument("action", help="action JSON file, or - for stdin")
    p.add_argument("--budget", type=positive_int, default=10**7)
    p = leaf(h, "sha", cmd_h1_sha, "classes restricting trivially to every subgroup of a family")
    p.add_argument("action")
    p.add_argument("--family", default="cyclic",
                   help="'cyclic', 'whole', or subgroups as 'i,j,...;k,l,...'")
    p = leaf(h, "baer", cmd_h1_baer, "Baer sum of two cocycles with abelian coefficients")
    p.add_argument("action")
    p.add_argument("--c1", type=int_list, required=True)
    p.add_argument("--c2", type=int_list, required=True)

    p = leaf(sub, "kolyvagin-check", cmd_kolyvagin,
             "(gamma - 1) sum i gamma^i = n - Norm in Z[C_n]")
    p.add_argument("--order", type=int, default=50)
    p.add_argument("--all", action="store_true", help="check every order from 2 to ORDER")

    p = leaf(sub, "orbit-count", cmd_orbit_count,
             "orbits of x -> -x on Z/n_1 x ... x Z/n_k, by formula and by enumeration")
    p.add_argument("invariants", type=int_list)
    return top


def _render_text(outcome: Outcome) -> str:
    if outcome.text is not None:
        return outcome.text
    return json.dumps(jsonable(outcome.result), indent=2, sort_keys=True)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_USAGE
    except SystemExit as e:  # --help and --version
        return int(e.code or 0)
    command = " ".join(x for x in (args.command, getattr(args, "subcommand", None)) if x)
    t0 = time.perf_counter()
    try:
        outcome = args.fn(args)
    except UsageError as e:
        sys.stderr.write(f"hlg {command}: usage error: {e}\n")
        return EXIT_USAGE
    except HLGError as e:
        elapsed = (time.perf_counter() - t0) * 1e3
        if args.json:
            print(canonical_json({"schema": SCHEMA, "command": command, "error": {"type": type(e).__name__,
                                  "message": str(e)}, "timing_ms": round(elapsed, 3)}))
        else:
            sys.stderr.write(f"hlg {command}: {type(e).__name__}: {e}\n")
        return EXIT_ERROR
    elapsed = (time.perf_counter() - t0) * 1e3
    if args.json:
        print(canonical_json({
            "schema": SCHEMA,
            "command": command,
            "inputs": outcome.inputs,
            "result": outcome.result,
            "certificates": outcome.certificates,
            "timing_ms": round(elapsed, 3),
        }))
    else:
        print(_render_text(outcome))
    return EXIT_NEGATIVE if outcome.negative else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
