"""Command-line interface.

Exit status: 0 success, 1 a verification returned false, 2 input error.
Errors are reported as ``error[CODE]: message`` on stderr, or as a JSON
object ``{"ok": false, "error": {"code", "message"}}`` with ``--format json``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import engine, jets, poles, toric
from .model import KINDS, ModelError, load_model, model_to_json, save_model
from .parsing import ParseError
from .zeta import zeta_normalize

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class CliError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


def _assignments(items, what: str) -> dict[str, Fraction]:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise CliError("E_ARGS", f"{what} must look like NAME=VALUE, got {item!r}")
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise CliError("E_ARGS", f"bad rational in {item!r}") from None
    return out


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CliError("E_ARGS", f"{what} must be comma-separated integers, got {text!r}") from None


def _load(path: str, kind: str = "auto"):
    model = load_model(path)
    if kind != "auto":
        model = model.with_kind(kind)
    return model


def _poles_text(report: poles.PoleReport) -> list[str]:
    cands = ", ".join(str(x) for x in sorted(report.candidates)) or "none"
    eff = ", ".join(f"{k} (order <= {v})" for k, v in sorted(report.effective.items())) or "none"
    return [f"candidate poles: {cands}", f"effective poles: {eff}  [orders are upper bounds]"]


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps({"ok": True, **payload}, indent=2))
    else:
        print("\n".join(lines))


# -- subcommands

def cmd_compute(args) -> int:
    model = _load(args.model, args.kind)
    nz = zeta_normalize(engine.compute_zeta(model))
    report = poles.PoleReport(poles.candidate_poles(model), dict(nz.pole_multiset()))
    payload = {"command": "compute", "kind": model.kind, "zeta": nz.to_json(), "poles": report.to_json()}
    lines = [f"kind: {model.kind}", f"Z(s) = {nz}", *_poles_text(report)]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_top(args) -> int:
    model = _load(args.model, args.kind)
    try:
        expr = engine.compute_topological_zeta(model, _assignments(args.euler, "--euler"))
    except ValueError as exc:
        raise CliError("E_SPECIALIZE", str(exc)) from None
    pole_map = engine.topological_poles(expr)
    payload = {
        "command": "top",
        "zeta_top": str(expr),
        "poles": {str(k): v for k, v in sorted(pole_map.items())},
    }
    lines = [
        f"Z_top(s) = {expr}",
        "poles: " + (", ".join(f"{k} (order {v})" for k, v in sorted(pole_map.items())) or "none"),
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_poles(args) -> int:
    model = _load(args.model, args.kind)
    z = engine.compute_zeta(model)
    report = poles.pole_report(model, z)
    payload = {"command": "poles", "poles": report.to_json()}
    lines = _poles_text(report)
    if args.compare:
        other = load_model(args.compare)
        cmp = poles.compare_pole_sets(z, engine.compute_zeta(other))
        payload["comparison"] = cmp.to_json()
        lines += [
            f"dlt poles {sorted(map(str, cmp.dlt_poles))} within naive poles {sorted(map(str, cmp.naive_poles))}: {cmp.subset}",
            f"dlt poles equal naive poles in [-1, 0]: {cmp.equals_intersection_with_unit_interval}",
        ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_stringy(args) -> int:
    model = _load(args.model, args.kind)
    nz = engine.compute_generalized_stringy(model, drop_prefactor=args.drop_prefactor)
    payload = {"command": "stringy", "stringy_motive": nz.to_json(), "prefactor_dropped": args.drop_prefactor}
    lines = [f"E_st = {nz}"]
    if args.euler is not None:
        try:
            chi = engine.generalized_stringy_euler(model, _assignments(args.euler, "--euler"))
        except ValueError as exc:
            raise CliError("E_SPECIALIZE", str(exc)) from None
        payload["euler"] = str(chi)
        lines.append(f"chi_st = {chi}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_oracle(args) -> int:
    model = _load(args.model)
    try:
        f = jets.parse_polynomial(args.poly, dim=model.d)
    except ParseError as exc:
        raise CliError("E_PARSE", str(exc)) from None
    result = jets.oracle_compare(
        model, f, args.p, args.depth, _assignments(args.count, "--count"),
        partitions=max(1, args.threads), workers=args.threads,
    )
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "coefficient_num", "coefficient_den"])
            for n, c in enumerate(result.jet_counts):
                w.writerow([n, c.numerator, c.denominator])
    verdict = "MATCH" if result.match else f"MISMATCH at n={result.first_mismatch()}"
    payload = {
        "command": "oracle",
        "match": result.match,
        "p": args.p,
        "depth": args.depth,
        "closed_form": [str(x) for x in result.closed_form],
        "jet_counts": [str(x) for x in result.jet_counts],
    }
    lines = [f"{'n':>3}  {'closed form':>24}  {'jet count':>24}"]
    for n, (a, b) in enumerate(zip(result.closed_form, result.jet_counts)):
        lines.append(f"{n:>3}  {str(a):>24}  {str(b):>24}")
    lines.append(verdict)
    _emit(args, payload, lines)
    return EXIT_OK if result.match else EXIT_FALSE


def cmd_toric(args) -> int:
    a = _int_list(args.monomial, "--monomial")
    fan = toric.orthant_fan(len(a))
    for cone_text in args.subdivide or ():
        fan = toric.star_subdivide(fan, _int_list(cone_text, "--subdivide"))
    model = toric.model_from_monomial(a, fan)
    save_model(model, args.emit_model)
    payload = {"command": "toric", "model": model_to_json(model), "path": args.emit_model}
    lines = [f"wrote {args.emit_model}: {len(fan.rays)} rays, {len(model.divisors)} divisors, {len(model.strata)} strata"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    a = _int_list(args.monomial, "--monomial")
    cases = toric.fuzz_invariance(a, range(args.seeds), max_steps=args.max_steps)
    passed = sum(c.passed for c in cases)
    payload = {
        "command": "verify",
        "passed": passed,
        "total": len(cases),
        "failures": [{"seed": c.seed, "chain": [list(x) for x in c.chain]} for c in cases if not c.passed],
    }
    lines = [f"{passed}/{len(cases)} invariance passes"]
    lines += [f"  FAIL seed {c.seed}: chain {list(c.chain)}" for c in cases if not c.passed]
    _emit(args, payload, lines)
    return EXIT_OK if passed == len(cases) else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dltzeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    p = add("compute", cmd_compute, "normalized zeta function and its poles")
    p.add_argument("--model", required=True)
    p.add_argument("--kind", choices=("auto",) + KINDS, default="auto")

    p = add("top", cmd_top, "topological (Euler) specialization")
    p.add_argument("--model", required=True)
    p.add_argument("--kind", choices=("auto", "naive", "dlt"), default="auto")
    p.add_argument("--euler", action="append", metavar="NAME=VALUE", help="Euler number of a class symbol")

    p = add("poles", cmd_poles, "candidate/effective poles, optional naive-vs-dlt comparison")
    p.add_argument("--model", required=True)
    p.add_argument("--kind", choices=("auto",) + KINDS, default="auto")
    p.add_argument("--compare", metavar="DLT_MODEL")

    p = add("stringy", cmd_stringy, "generalized stringy motive of a dlt model with v = 0")
    p.add_argument("--model", required=True)
    p.add_argument("--kind", choices=("auto", "dlt"), default="auto")
    p.add_argument("--drop-prefactor", action="store_true")
    p.add_argument("--euler", action="append", metavar="NAME=VALUE")

    p = add("oracle", cmd_oracle, "compare with brute-force jet counts over F_p")
    p.add_argument("--poly", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--count", action="append", metavar="NAME=VALUE", help="#S(F_p) for a class symbol")
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--threads", type=int, default=1)

    p = add("toric", cmd_toric, "emit the toric model of a monomial")
    p.add_argument("--monomial", required=True)
    p.add_argument("--subdivide", action="append", metavar="I,J,...", help="star-subdivide the cone on these rays (repeatable)")
    p.add_argument("--emit-model", required=True)

    p = add("verify", cmd_verify, "randomized blow-up invariance")
    p.add_argument("--monomial", required=True)
    p.add_argument("--seeds", type=int, default=25)
    p.add_argument("--max-steps", type=int, default=4)
    return parser


_ERROR_CODES = (
    (ModelError, "E_MODEL"),
    (ParseError, "E_PARSE"),
    (jets.BudgetExceeded, "E_BUDGET"),
    (toric.FanError, "E_FAN"),
    (KeyError, "E_VALUE"),
    (ValueError, "E_VALUE"),
    (OSError, "E_IO"),
)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - mapped to exit codes below
        if isinstance(exc, CliError):
            code = exc.code
        else:
            code = next((c for cls, c in _ERROR_CODES if isinstance(exc, cls)), None)
            if code is None:
                raise
        message = str(exc)
        if args.format == "json":
            print(json.dumps({"ok": False, "error": {"code": code, "message": message}}))
        else:
            print(f"error[{code}]: {message}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
