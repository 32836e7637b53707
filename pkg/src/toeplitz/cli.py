"""Command-line front end: ``toeplitz <command> ...``.

Output is one JSON object per run (``--format text`` for a readable form).
Exact quantities are strings (``"3/2"``, ``"1/2-i"``), numeric-module
quantities are floats, and every payload records the seed in effect.
Exit status is 0 on success, 1 when a checked property fails, 2 on a parse
or usage error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import algebra as alg
from . import coalgebra as co
from . import dual
from . import measures as ms
from . import numerics as num
from .algebra import Element
from .coalgebra import TensorElement
from .errors import ExprSyntaxError, ToeplitzError
from .expr import evaluate_text, multiply, parse_measure
from .properties import LAWS, run_sweep

CONFIG_ENV = "TOEPLITZ_CONFIG"
DEFAULTS = {"trunc": 64, "tol": 1e-10, "depth": 32, "seed": 0, "cases": 20}
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_config(path: str | None) -> dict:
    """Defaults overlaid with a ``key=value`` file (``#`` comments allowed)."""
    config = dict(DEFAULTS)
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return config
    parser = configparser.ConfigParser(comment_prefixes=("#", ";"), delimiters=("=",))
    try:
        parser.read_string("[toeplitz]\n" + Path(path).read_text())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for key, raw in parser["toeplitz"].items():
        if key not in DEFAULTS:
            raise UsageError(f"unknown config key {key!r}")
        try:
            config[key] = type(DEFAULTS[key])(raw)
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {raw!r}") from exc
    return config


# --- serialization ----------------------------------------------------------------------


def element_terms(a: Element) -> list[dict]:
    return [{"monomial": [mono.n, mono.m], "coefficient": str(c)} for mono, c in a.items()]


def tensor_terms(t: TensorElement) -> list[dict]:
    return [{"monomials": [[k.n, k.m] for k in key], "coefficient": str(c)} for key, c in t.items()]


def value_payload(v) -> dict:
    if isinstance(v, TensorElement):
        return {"kind": "tensor", "degree": v.degree, "result": str(v), "terms": tensor_terms(v)}
    return {"kind": "element", "result": str(v), "terms": element_terms(v)}


def _element(text: str) -> Element:
    v = evaluate_text(text)
    if not isinstance(v, Element):
        raise UsageError("this command needs an element, not a tensor")
    return v


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


# --- commands ---------------------------------------------------------------------------
# each returns (payload, ok)


def cmd_simplify(args, cfg):
    return value_payload(evaluate_text(args.expr)), True


def cmd_mul(args, cfg):
    return value_payload(multiply(evaluate_text(args.left), evaluate_text(args.right))), True


def cmd_grade(args, cfg):
    part = alg.graded_component(_element(args.expr), args.k)
    return {"k": args.k, "component": str(part), "terms": element_terms(part)}, True


def cmd_compact(args, cfg):
    a = _element(args.expr)
    sums = alg.diagonal_sums(a)
    return {"compact": alg.is_compact(a), "diagonal_sums": {str(k): str(v) for k, v in sums.items()}}, True


def cmd_symbol(args, cfg):
    s = alg.symbol(_element(args.expr))
    return {"symbol": str(s), "coefficients": {str(k): str(c) for k, c in s.coeffs.items()}}, True


def cmd_norm(args, cfg):
    a = _element(args.expr)
    trunc = args.trunc if args.trunc is not None else cfg["trunc"]
    tol = args.tol if args.tol is not None else cfg["tol"]
    if trunc <= alg.max_entry(a):
        raise UsageError(f"--trunc {trunc} does not reach past the support (largest exponent {alg.max_entry(a)})")
    value = num.op_norm(num.truncate(a, trunc), tol=tol)
    payload = {"norm": value, "trunc": trunc, "tol": tol}
    ok = True
    if all(mono.index == 0 for mono in a.support()):
        exact = alg.norm_T0(a)
        payload["diagonal_norm_squared"] = str(exact.squared)
        if exact.exact is not None:
            payload["diagonal_norm"] = str(exact.exact)
        payload["diagonal_norm_float"] = exact.value
        payload["agrees"] = ok = abs(exact.value - value) <= max(tol, 1e-10) * max(1.0, exact.value)
    return payload, ok


def cmd_delta(args, cfg):
    return value_payload(co.delta(_element(args.expr))), True


def cmd_hopf_check(args, cfg):
    a = _element(args.expr)
    first, second = co.weak_hopf_axioms(a)
    coassoc = co.delta_left(co.delta(a)) == co.delta_right(co.delta(a))
    cocomm = co.flip(co.delta(a)) == co.delta(a)
    payload = {"id_S_id": first, "S_id_S": second, "coassociative": coassoc, "cocommutative": cocomm}
    return payload, all(payload.values())


def cmd_haar_verify(args, cfg):
    depth = args.depth if args.depth is not None else cfg["depth"]
    rng = random.Random(f"{cfg['seed']}:haar-verify")
    probes = [dual.random_table(rng, min(depth, 8)) for _ in range(args.probes)]
    eps = dual.counit()
    h = dual.haar()
    payload = {
        "depth": depth,
        "probes": args.probes,
        "counit_unit": all(dual.rules_equal(eps * p, p, depth) and dual.rules_equal(p * eps, p, depth) for p in probes),
        "haar": dual.is_haar(h, probes, depth),
        "counit_is_not_haar": not dual.satisfies_haar_values(eps, depth),
        "haar0_in_k_perp": dual.in_k_perp(dual.haar0(), depth),
    }
    return payload, all(v for k, v in payload.items() if isinstance(v, bool))


def cmd_cesaro(args, cfg):
    depth = args.depth if args.depth is not None else cfg["depth"]
    q = args.q
    result = dual.cesaro_iterate(dual.diagonal_state(q), args.steps, depth)
    # sup_n (1/N) sum_k q^{nk} <= q / ((1 - q) N)
    bound = float(q / ((1 - q) * args.steps))
    payload = {
        "q": str(q),
        "steps": args.steps,
        "depth": depth,
        "max_deviation": result.max_deviation,
        "bound": bound,
        "worst": [result.worst.n, result.worst.m],
    }
    if args.values:
        payload["values"] = {str(mono): str(v) for mono, v in result.values.items() if v}
    return payload, result.max_deviation <= bound


def cmd_witness(args, cfg):
    seed = args.seed if args.seed is not None else cfg["seed"]
    report = co.cqg_witness(args.samples, seed, mirror=args.mirror)
    payload = {
        "seed": seed,
        "samples": args.samples,
        "mirror": args.mirror,
        "A": str(report.A),
        "x": list(report.x),
        "holds": report.holds,
        "min_lower_bound": report.min_lower_bound,
        "failures": [i for i, s in enumerate(report.samples) if s.forbidden_component != 0 or s.lower_bound_squared < 1],
    }
    return payload, report.holds


def cmd_measure_conv(args, cfg):
    depth = args.depth if args.depth is not None else cfg["depth"]
    a, b = parse_measure(args.left), parse_measure(args.right)
    ab = ms.convolve_measures(a, b)
    lhs = ms.measure_to_functional(ab)
    rhs = dual.convolve(ms.measure_to_functional(a), ms.measure_to_functional(b))
    payload = {
        "result": str(ab),
        "tier": ab.tier,
        "total_mass": str(ab.total_mass()),
        "depth": depth,
        "intertwines": dual.rules_equal(lhs, rhs, depth),
    }
    return payload, payload["intertwines"]


def cmd_axioms(args, cfg):
    seed = args.seed if args.seed is not None else cfg["seed"]
    cases = args.cases if args.cases is not None else cfg["cases"]
    report = run_sweep(seed, cases, args.law or None)
    ok = all(not r["failures"] for r in report.values())
    return {"seed": seed, "cases": cases, "laws": report, "passed": ok}, ok


# --- driver ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toeplitz", description="Exact computations in the Toeplitz algebra.")
    p.add_argument("--config", help=f"key=value defaults file (else ${CONFIG_ENV})")
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, parents=[common])
        sp.set_defaults(handler=fn)
        return sp

    add("simplify", cmd_simplify, "canonical form of an expression").add_argument("expr")
    sp = add("mul", cmd_mul, "product of two expressions")
    sp.add_argument("left")
    sp.add_argument("right")
    sp = add("grade", cmd_grade, "index-k component")
    sp.add_argument("expr")
    sp.add_argument("--k", type=int, required=True)
    add("compact", cmd_compact, "is the element compact").add_argument("expr")
    add("symbol", cmd_symbol, "image in C(S^1)").add_argument("expr")
    sp = add("norm", cmd_norm, "operator norm of a truncation")
    sp.add_argument("expr")
    sp.add_argument("--trunc", type=int)
    sp.add_argument("--tol", type=float)
    add("delta", cmd_delta, "comultiplication").add_argument("expr")
    add("hopf-check", cmd_hopf_check, "weak Hopf and coalgebra identities").add_argument("expr")
    sp = add("haar-verify", cmd_haar_verify, "Haar and counit properties on the probe grid")
    sp.add_argument("--depth", type=int)
    sp.add_argument("--probes", type=int, default=10)
    sp = add("cesaro", cmd_cesaro, "Cesaro means of a diagonal state")
    sp.add_argument("--q", type=_fraction, default=Fraction(1, 2))
    sp.add_argument("--steps", type=int, default=1000)
    sp.add_argument("--depth", type=int)
    sp.add_argument("--values", action="store_true", help="include the exact nonzero means")
    sp = add("witness-cqg", cmd_witness, "certify the failure of the quantum group density condition")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--mirror", action="store_true", help="use the mirrored span")
    sp = add("measure-conv", cmd_measure_conv, "convolve two circle measures")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--depth", type=int)
    sp = add("axioms", cmd_axioms, "seeded property sweep")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--cases", type=int)
    sp.add_argument("--law", action="append", choices=sorted(LAWS), help="restrict to a law (repeatable)")
    return p


def _text(payload: dict) -> str:
    lines = []
    for key, value in payload.items():
        if key == "terms":
            continue
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=False)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    fmt = "json"
    try:
        args = parser.parse_args(argv)
        fmt = args.format
        cfg = load_config(args.config)
        payload, ok = args.handler(args, cfg)
    except ExprSyntaxError as exc:
        _emit_error(out, err, fmt, str(exc), offset=exc.offset, expected=sorted(exc.expected))
        return EXIT_USAGE
    except (UsageError, ToeplitzError, ValueError) as exc:
        _emit_error(out, err, fmt, str(exc))
        return EXIT_USAGE
    payload = {"command": args.command, "seed": payload.pop("seed", cfg["seed"]), **payload, "ok": ok}
    out.write((json.dumps(payload) if fmt == "json" else _text(payload)) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def _emit_error(out, err, fmt, message, **extra) -> None:
    err.write(f"toeplitz: error: {message}\n")
    if fmt == "json":
        out.write(json.dumps({"error": message, **extra}) + "\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
