"""
Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a check fails, 2 for
bad input (argparse errors, type tags, case records, eta strings) and 3 when
the lattice enumeration budget (``ETAFORGE_ENUM_BUDGET``) is exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import acceptance
from .eta import EtaQuotient, LevelError, cusp_label, cusp_orders, eta_quotient_expansion, eta_quotient_metadata
from .k3cases import (
    CaseValidationError,
    eigenform_check,
    find_case,
    global_series,
    load_cases,
    modularity_report,
    seed_cases,
    stratification_series,
)
from .lattice import EnumerationBudgetExceeded
from .orbifold import (
    ORACLE_MAX_LENGTH,
    cyclic_hilb_oracle,
    local_Z_eta,
    local_Z_mckay,
    local_Z_theta,
    nakajima_coefficient,
    nakajima_multivariate,
    nakajima_specialized,
)
from .refine import chi_y_series, hodge_series_Y, zbir_euler_consistency
from .rootsys import InvalidTypeTag, ade_data, strange_formula_residual, theta_eta_identity_residual, theta_series

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

ALL_TYPES = [f"A{n}" for n in range(1, 13)] + [f"D{n}" for n in range(4, 13)] + ["E6", "E7", "E8"]


class UsageError(Exception):
    pass


def _order(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    return value


def _primes(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None


def _emit(obj, as_json: bool, text: str) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False) if as_json else text)


def _cases(path: Optional[str]):
    if path is None:
        return seed_cases()
    try:
        return load_cases(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read case file: {exc}") from None


def _case(args):
    try:
        return find_case(_cases(args.file), args.xiao)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def cmd_expand(args) -> int:
    try:
        eq = EtaQuotient.parse(args.eta)
    except ValueError as exc:
        raise UsageError(f"bad eta quotient {args.eta!r}: {exc}") from None
    f = eta_quotient_expansion(eq, args.order)
    payload = {"eta_quotient": str(eq), "weight": str(eq.weight), "expansion": f.to_dict()}
    lines = [f"eta quotient: {eq}", f"weight: {eq.weight}", f.to_text()]
    if args.level is not None:
        meta = eta_quotient_metadata(eq, args.level)
        cusps = [(cusp_label(c, args.level), str(o)) for c, o in cusp_orders(eq, args.level)]
        payload.update(level=args.level, character=meta.character_label(),
                       congruences=meta.congruences_hold, cusp_orders=cusps)
        lines += [f"level {args.level}: congruences {'hold' if meta.congruences_hold else 'fail'}, "
                  f"character {meta.character_label()}",
                  "cusp orders: " + ", ".join(f"{c}: {o}" for c, o in cusps)]
    _emit(payload, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_theta(args) -> int:
    f = theta_series(args.delta, args.order)
    _emit({"delta": args.delta, "theta": f.to_dict()}, args.json, f.to_text())
    return EXIT_OK


LOCAL_ROUTES = {
    "eta": lambda t, o: local_Z_eta(t, o),
    "theta": lambda t, o: local_Z_theta(t, o),
    "nakajima": lambda t, o: nakajima_specialized(t, o),
    "mckay": lambda t, o: local_Z_mckay(t, o),
}


def cmd_local(args) -> int:
    if args.route == "mckay" and ade_data(args.delta).family == "A":
        raise UsageError("the mckay route applies to D and E types only")
    f = LOCAL_ROUTES[args.route](args.delta, args.order)
    _emit({"delta": args.delta, "route": args.route, "series": f.to_dict()}, args.json, f.to_text())
    return EXIT_OK


def cmd_case(args) -> int:
    case = _case(args)
    rep = modularity_report(case, args.order)
    if args.report or args.json:
        print(rep.to_json(indent=2, ensure_ascii=False))
    else:
        print(f"Xiao {case.xiao}  G = {case.group_label}  k = {case.k}  sing = {case.singularity_string() or '-'}")
        print(f"a = {case.a}  r = {case.r}  e(X/G) = {case.euler_quotient}")
        print(f"1/Z = {rep.eta_quotient}  weight {rep.weight}  level {rep.level}")
        print("cusp orders: " + ", ".join(f"{c}: {o}" for c, o in rep.cusp_orders))
        for ch in rep.checks:
            print(f"  [{'PASS' if ch.passed else 'FAIL'}] {ch.name}: {ch.detail}")
        print(rep.expansion.to_text())
    return EXIT_OK if rep.passed else EXIT_FAIL


def _types(args) -> list[str]:
    return [args.delta] if args.delta else None


def cmd_verify(args) -> int:
    results: list[tuple[str, bool, str]] = []
    which = args.which
    order = args.order
    if which == "thm12":
        order = order or Fraction(40)
        for t in _types(args) or ["A1", "A2", "A3", "D4", "D5", "E6", "E7", "E8"]:
            ref = local_Z_eta(t, order)
            routes = {"theta": local_Z_theta(t, order), "nakajima": nakajima_specialized(t, order)}
            if ade_data(t).family != "A":
                routes["mckay"] = local_Z_mckay(t, order)
            bad = [r for r, f in routes.items() if f != ref]
            results.append((t, not bad, f"routes {sorted(routes)} match the eta product" if not bad
                            else f"routes {bad} differ"))
    elif which == "thm13":
        for t in _types(args) or ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "D6", "E6", "E7", "E8"]:
            o = order if order is not None else ade_data(t).minimal_exponent + 25
            res = theta_eta_identity_residual(t, o)
            results.append((t, res.is_zero(), "residual zero" if res.is_zero() else f"residual {res.to_text()[:120]}"))
    elif which == "thm14":
        order = order or Fraction(50)
        for case in _cases(args.file):
            ok = global_series(case, order) == stratification_series(case, order)
            results.append((f"Xiao {case.xiao}", ok, f"eta quotient vs stratification below q^{order}"))
    elif which == "strange":
        for t in _types(args) or ALL_TYPES:
            r = strange_formula_residual(t)
            results.append((t, r == 0, f"residual {r}"))
    elif which == "rigid":
        rng = random.Random(args.seed)
        for t in _types(args) or acceptance.RIGID_TYPES:
            R = ade_data(t)
            bad = 0
            for _ in range(args.samples):
                mu = [rng.randint(-6, 6) for _ in range(R.rank)]
                e = sum(mu[i] * R.cartan[i][j] * mu[j] for i in range(R.rank) for j in range(R.rank)) // 2
                bad += nakajima_coefficient(t, mu, e) != 1
            results.append((t, bad == 0, f"{args.samples - bad}/{args.samples} coefficients equal 1"))
    elif which == "oracle":
        length = int(order) if order is not None else 12
        if length > ORACLE_MAX_LENGTH:
            raise EnumerationBudgetExceeded(ORACLE_MAX_LENGTH, length, "oracle partition length limit of {budget}")
        tags = _types(args) or ["A1", "A2"]
        for t in tags:
            R = ade_data(t)
            if R.family != "A" or R.rank > 2:
                raise UsageError("the oracle comparison supports A1 and A2")
            ok = cyclic_hilb_oracle(R.rank + 1, length) == nakajima_multivariate(t, length)
            results.append((t, ok, f"monomial ideals vs orbifold series to total degree {length}"))
    ok = all(r[1] for r in results)
    if args.json:
        print(json.dumps({"which": which, "pass": ok,
                          "results": [{"name": n, "pass": p, "detail": d} for n, p, d in results]}, indent=2))
    else:
        for n, p, d in results:
            print(f"[{'PASS' if p else 'FAIL'}] {which} {n}: {d}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_hecke(args) -> int:
    case = _case(args)
    rep = eigenform_check(case, args.primes, args.order)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        print(f"Xiao {case.xiao}: weight {rep.weight}, character {rep.character_discriminant}")
        for ch in rep.checks:
            print(f"  [{'PASS' if ch.passed else 'FAIL'}] {ch.name}: {ch.detail}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_refine(args) -> int:
    if not (args.chiy or args.hodge or args.zbir):
        raise UsageError("refine needs at least one of --chiy, --hodge, --zbir")
    payload, lines, ok = {}, [], True
    if args.chiy or args.zbir:
        case = _case(args)
    if args.chiy:
        chi = chi_y_series(case, args.order)
        payload["chiy"] = chi.to_dict()
        lines.append(chi.to_text())
    if args.hodge:
        h = hodge_series_Y(int(args.order))
        payload["hodge"] = h.to_dict()
        lines.append(h.to_text())
    if args.zbir:
        z = zbir_euler_consistency(case, args.order)
        ok &= z
        payload["zbir"] = z
        lines.append(f"[{'PASS' if z else 'FAIL'}] birational Euler shadow below q^{args.order}")
    _emit(payload, args.json, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_suite(args) -> int:
    numbers = args.only or sorted(acceptance.CRITERIA)
    results = [acceptance.run_criterion(n) for n in numbers]
    if args.json:
        print(json.dumps([{"criterion": r.number, "title": r.title, "pass": r.passed, "detail": r.detail}
                          for r in results], indent=2))
    else:
        print(acceptance.format_table(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="etaforge", description="eta quotients and orbifold Hilbert scheme series")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = add("expand", cmd_expand, "q-expansion of an eta quotient")
    sp.add_argument("--eta", required=True, help='e.g. "1^8 2^8"')
    sp.add_argument("--order", type=_order, default=Fraction(20))
    sp.add_argument("--level", type=int, help="also report modularity data at this level")

    sp = add("theta", cmd_theta, "shifted theta series of a root lattice")
    sp.add_argument("--delta", required=True)
    sp.add_argument("--order", type=_order, default=Fraction(20))

    sp = add("local", cmd_local, "local partition function Z_Delta")
    sp.add_argument("--delta", required=True)
    sp.add_argument("--order", type=_order, default=Fraction(20))
    sp.add_argument("--route", choices=sorted(LOCAL_ROUTES), default="eta")

    sp = add("case", cmd_case, "global series and modularity report of a K3 quotient")
    sp.add_argument("--file", help="case file (default: bundled seed cases)")
    sp.add_argument("--xiao", type=int, required=True)
    sp.add_argument("--order", type=_order, default=Fraction(20))
    sp.add_argument("--report", action="store_true", help="print the JSON report")

    sp = add("verify", cmd_verify, "check an identity")
    sp.add_argument("--which", required=True, choices=["thm12", "thm13", "thm14", "strange", "rigid", "oracle"])
    sp.add_argument("--delta")
    sp.add_argument("--order", type=_order)
    sp.add_argument("--file", help="case file for thm14")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=20240617)

    sp = add("hecke", cmd_hecke, "Hecke eigenform check for a case")
    sp.add_argument("--file")
    sp.add_argument("--xiao", type=int, required=True)
    sp.add_argument("--primes", type=_primes, default=[2, 3, 5, 7])
    sp.add_argument("--order", type=_order, default=Fraction(100))

    sp = add("refine", cmd_refine, "chi_y, Hodge and birational refinements")
    sp.add_argument("--file")
    sp.add_argument("--xiao", type=int, default=0)
    sp.add_argument("--order", type=_order, default=Fraction(10))
    sp.add_argument("--chiy", action="store_true")
    sp.add_argument("--hodge", action="store_true")
    sp.add_argument("--zbir", action="store_true")

    sp = add("suite", cmd_suite, "run the acceptance criteria")
    sp.add_argument("--only", type=_primes, help="comma-separated criterion numbers")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "delta", None):
        try:
            ade_data(args.delta)
        except InvalidTypeTag as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    if getattr(args, "only", None):
        unknown = [n for n in args.only if n not in acceptance.CRITERIA]
        if unknown:
            print(f"error: unknown criteria {unknown}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.fn(args)
    except EnumerationBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, CaseValidationError, LevelError, InvalidTypeTag) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


run = main
