"""Command-line interface.

Exit codes: 0 success, 1 a checked property is false or a suite failed,
2 invalid input, 3 the requested object provably does not exist,
4 an enumeration exceeded ``--budget``.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import jsonio
from .constructions import (
    dual_basis,
    gabidulin_code,
    lagrangian_mrd_code,
    orthonormal_basis_twisted_trace,
    self_dual_mrd_code,
)
from .errors import BudgetExceeded, InputError, MRDError, Nonexistence
from .gf import build_tower
from .rankcodes import (
    DEFAULT_BUDGET,
    delsarte_dual,
    delsarte_is_self_dual,
    delsarte_rank_distance,
    delsarte_singleton_rhs,
    dual_code,
    is_self_dual,
    power_basis,
    rank_distance,
    to_delsarte,
)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_NONEXISTENCE, EXIT_BUDGET = 0, 1, 2, 3, 4


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return jsonio.loads(text)


def _emit(obj, out: str | None) -> None:
    text = jsonio.dumps(obj)
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json_arg(text: str):
    return jsonio.loads(text)


def _form_arg(spec: str, tower, n: int):
    if spec in ("identity", "hyperbolic"):
        return jsonio.form_from_json({"tag": spec}, tower, n)
    return jsonio.form_from_json(_read_json(spec), tower, n)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_field(args) -> int:
    tower = build_tower(args.p, args.e, args.m, args.base_poly, args.top_poly)
    _emit(jsonio.field_to_json(tower), args.output)
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.kind == "gabidulin":
        obj = _read_json(args.c0)
        jsonio._require(obj, ("field", "c0"), "c0 file")
        tower = jsonio.field_from_json(obj["field"])
        c0 = [jsonio.element_from_json(tower, x) for x in obj["c0"]]
        C = gabidulin_code(tower, c0, args.k)
    elif args.kind == "self-dual-mrd":
        C = self_dual_mrd_code(args.q, args.n)
    else:
        C = lagrangian_mrd_code(args.q, args.n, args.budget)
    _emit(jsonio.code_to_json(C), args.output)
    return EXIT_OK


def _resolve_basis(spec: str, tower, lam_text: str | None):
    if spec == "power":
        return power_basis(tower)
    if spec == "orthonormal":
        return orthonormal_basis_twisted_trace(tower)[1]
    if spec == "dual":
        lam = jsonio.element_from_json(tower, _json_arg(lam_text)) if lam_text else tower.top.one
        return dual_basis(power_basis(tower), lam)
    alpha, _ = jsonio.basis_from_json(_read_json(spec))
    if alpha.tower != tower:
        raise InputError("basis file describes a different field")
    return alpha


def cmd_basis(args) -> int:
    tower = jsonio.field_from_json(_read_json(args.field))
    if args.kind == "orthonormal":
        lam, alpha = orthonormal_basis_twisted_trace(tower)
        _emit(jsonio.basis_to_json(alpha, lam), args.output)
        return EXIT_OK
    if args.alpha:
        alpha, _ = jsonio.basis_from_json(_read_json(args.alpha))
        if alpha.tower != tower:
            raise InputError("basis file describes a different field")
    else:
        alpha = power_basis(tower)
    lam = jsonio.element_from_json(tower, _json_arg(args.lam)) if args.lam else tower.top.one
    _emit(jsonio.basis_to_json(dual_basis(alpha, lam), lam), args.output)
    return EXIT_OK


def cmd_dual(args) -> int:
    obj = _read_json(args.input)
    if jsonio.is_delsarte_json(obj):
        D, tower = jsonio.delsarte_from_json(obj)
        _emit(jsonio.delsarte_to_json(delsarte_dual(D, _form_arg(args.form, tower, D.n)), tower),
              args.output)
    else:
        C = jsonio.code_from_json(obj)
        _emit(jsonio.code_to_json(dual_code(C, _form_arg(args.form, C.tower, C.n))), args.output)
    return EXIT_OK


def cmd_expand(args) -> int:
    C = jsonio.code_from_json(_read_json(args.input))
    alpha = _resolve_basis(args.basis, C.tower, args.lam)
    _emit(jsonio.delsarte_to_json(to_delsarte(C, alpha), C.tower), args.output)
    return EXIT_OK


def _fraction_json(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_check(args) -> int:
    obj = _read_json(args.input)
    delsarte = args.delsarte or jsonio.is_delsarte_json(obj)
    if delsarte:
        D, tower = jsonio.delsarte_from_json(obj)
        n = D.n
        self_dual = delsarte_is_self_dual(D, _form_arg(args.form, tower, n))
        lagrangian = n % 2 == 0 and delsarte_is_self_dual(D, "hyperbolic")
        rhs = delsarte_singleton_rhs(D)
        distance = lambda: delsarte_rank_distance(D, args.budget)  # noqa: E731
    else:
        C = jsonio.code_from_json(obj)
        n = C.n
        self_dual = is_self_dual(C, _form_arg(args.form, C.tower, n))
        lagrangian = n % 2 == 0 and is_self_dual(C, "hyperbolic")
        rhs = Fraction(n - C.k + 1)
        distance = lambda: rank_distance(C, args.budget)  # noqa: E731
    empty = (D.dim if delsarte else C.k) == 0
    try:
        d1 = None if empty else distance()
    except BudgetExceeded:
        if args.mrd:
            raise
        d1 = None
    result = {
        "selfDual": self_dual,
        "lagrangian": lagrangian,
        "rankDistance": d1,
        "mrd": None if d1 is None and not empty else (not empty and d1 == rhs),
        "singletonRHS": _fraction_json(rhs),
    }
    _emit(result, args.output)
    wanted = [(args.self_dual, self_dual), (args.lagrangian, lagrangian), (args.mrd, result["mrd"])]
    return EXIT_FALSE if any(flag and not value for flag, value in wanted) else EXIT_OK


def cmd_verify(args) -> int:
    rep = run_suite(args.suite, args.q_max, args.n_max, args.budget)
    data = rep.to_json(with_time=args.timing)
    _emit(data, args.report)
    if args.report and args.report != "-":
        status = "PASS" if rep.passed else "FAIL"
        print(f"{args.suite}: {status} ({rep.instances} instances, "
              f"{len(rep.counterexamples)} counterexamples)")
    return EXIT_OK if rep.passed else EXIT_FALSE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum number of codewords any enumeration may visit")
    common.add_argument("-o", "--output", default=None, help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="mrdcodes",
                                     description="Rank-metric codes over finite-field towers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common], help="build a field tower F_p < F_q < F_{q^m}")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--base-poly", type=_json_arg, default=None, help="JSON coefficient list")
    p.add_argument("--top-poly", type=_json_arg, default=None, help="JSON coefficient list")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("construct", help="construct a code")
    csub = p.add_subparsers(dest="kind", required=True)
    g = csub.add_parser("gabidulin", parents=[common])
    g.add_argument("--c0", required=True, help='JSON file {"field": ..., "c0": [...]}')
    g.add_argument("--k", type=int, required=True)
    for kind in ("self-dual-mrd", "lagrangian-mrd"):
        g2 = csub.add_parser(kind, parents=[common])
        g2.add_argument("--q", type=int, required=True)
        g2.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("basis", help="orthonormal or dual bases of L over F")
    bsub = p.add_subparsers(dest="kind", required=True)
    b = bsub.add_parser("orthonormal", parents=[common])
    b.add_argument("--field", required=True)
    b = bsub.add_parser("dual", parents=[common])
    b.add_argument("--field", required=True)
    b.add_argument("--alpha", default=None, help="basis JSON file (default: power basis)")
    b.add_argument("--lambda", dest="lam", default=None, help="twist, as a JSON element")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("dual", parents=[common], help="dual of a code")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--form", default="identity", help="identity, hyperbolic or a form JSON file")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("expand", parents=[common], help="expand a code into matrices")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--basis", default="orthonormal",
                   help="power, orthonormal, dual, or a basis JSON file")
    p.add_argument("--lambda", dest="lam", default=None, help="twist for --basis dual")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("check", parents=[common], help="duality and distance properties")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--delsarte", action="store_true", help="input is a matrix code")
    p.add_argument("--form", default="identity")
    p.add_argument("--self-dual", action="store_true")
    p.add_argument("--lagrangian", action="store_true")
    p.add_argument("--mrd", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify-paper", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, help=", ".join(SUITES))
    p.add_argument("--q-max", type=int, default=7)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--report", default=None, help="report JSON path (default stdout)")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except Nonexistence as exc:
        print(f"nonexistence: {exc}", file=sys.stderr)
        return EXIT_NONEXISTENCE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MRDError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
