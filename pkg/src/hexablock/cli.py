"""Command-line front end.  JSON lines on stdout, a short summary on stderr.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 unknown suite,
4 sampler guard, 5 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import serialize as ser
from .automorphism import auto_apply, auto_compose, auto_inverse, fiber_multiplier, normalize_point
from .core import default_rng
from .hexa import (
    HexaPoint,
    extremal_point,
    fiber_weight,
    hexa_margins,
    hexa_member,
    hexa_stratify,
    u_bruteforce,
    u_closed,
)
from .mu import MuStructure, mu_value
from .sampling import SamplerConfig, SamplerGuardError, sample_hexa, sample_tetra
from .tetra import DEFAULT_EPS, TetraMethod, tetra_classify, tetra_margin, tetra_member
from .verify import SUITES, UnknownSuiteError, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_SUITE, EXIT_GUARD, EXIT_IO = range(6)
COORDS = ("a", "x1", "x2", "x3")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_PARSE, message)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _note(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _load(text: str | None, what: str):
    """Parse a JSON argument: literal text, '@path', or '-' for stdin."""
    if text is None:
        raise CliError(EXIT_PARSE, f"missing --json {what}")
    if text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(EXIT_IO, str(exc)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, f"malformed JSON for {what}: {exc}") from exc


def _decode(fn, obj, what: str):
    try:
        return fn(obj)
    except (ser.DecodeError, ValueError, TypeError) as exc:
        raise CliError(EXIT_PARSE, f"invalid {what}: {exc}") from exc


def _finite(v: float):
    return v if math.isfinite(v) else None


# ---------------------------------------------------------------------------


def cmd_member(args) -> int:
    obj = _load(args.json, "point")
    if args.domain == "tetra":
        x = _decode(ser.tetra_from_json, obj, "tetrablock point")
        methods = {
            m.value: {"member": tetra_member(x, m), "margin": _finite(tetra_margin(x, m))} for m in TetraMethod
        }
        member = methods[TetraMethod.INEQ2.value]["member"]
        _emit({"domain": "tetra", "member": member, "methods": methods})
    else:
        p = _decode(ser.hexa_from_json, obj, "hexablock point")
        tm, fm = hexa_margins(p)
        member = hexa_member(p)
        _emit({"domain": "hexa", "member": member, "margins": {"tetra": _finite(tm), "fiber": _finite(fm)}})
    _note(f"{args.domain} member: {str(member).lower()}")
    return EXIT_OK


def cmd_classify(args) -> int:
    obj = _load(args.json, "point")
    if args.domain == "tetra":
        x = _decode(ser.tetra_from_json, obj, "tetrablock point")
        label = tetra_classify(x, args.eps).value
    else:
        p = _decode(ser.hexa_from_json, obj, "hexablock point")
        label = hexa_stratify(p, args.eps).value
    _emit({"domain": args.domain, "class": label, "eps": args.eps})
    _note(f"{args.domain} class: {label}")
    return EXIT_OK


def cmd_u(args) -> int:
    x = _decode(ser.tetra_from_json, _load(args.json, "point"), "tetrablock point")
    if not tetra_member(x):
        raise CliError(EXIT_PARSE, "u is defined on the tetrablock only")
    out = {"u": u_closed(x), "e_minus_u": fiber_weight(x)}
    if args.grid:
        out["u_bruteforce"] = u_bruteforce(x, n_grid=args.grid)
    _emit(out)
    _note(f"u = {out['u']:.12g}")
    return EXIT_OK


def cmd_extremal(args) -> int:
    x = _decode(ser.tetra_from_json, _load(args.json, "point"), "tetrablock point")
    if not tetra_member(x):
        raise CliError(EXIT_PARSE, "extremal point is defined on the tetrablock only")
    e = extremal_point(x)
    _emit({"z1": ser.complex_to_json(e.z1s), "z2": ser.complex_to_json(e.z2s)})
    _note("extremal pair computed")
    return EXIT_OK


def cmd_mu(args) -> int:
    a = _decode(ser.matrix_from_json, _load(args.json, "matrix"), "matrix")
    structures = list(MuStructure) if args.structure == "all" else [MuStructure(args.structure)]
    for s in structures:
        r = mu_value(a, s, method=args.method)
        _emit({"structure": s.value, **ser.mu_to_json(r)})
        _note(f"mu_{s.value} = {r.value:.10g}" + (" (multistart spread warning)" if r.warning else ""))
    return EXIT_OK


def cmd_auto(args) -> int:
    autos = [_decode(ser.auto_from_json, _load(t, "automorphism"), "automorphism") for t in args.auto or []]
    need = {"apply": 1, "compose": 2, "inverse": 1, "normalize": 0}[args.op]
    if len(autos) != need:
        raise CliError(EXIT_PARSE, f"auto {args.op} needs {need} --auto argument(s)")
    if args.op == "apply":
        p = _decode(ser.hexa_from_json, _load(args.json, "point"), "hexablock point")
        q = auto_apply(autos[0], p)
        m = fiber_multiplier(autos[0], p.x)
        _emit({"image": ser.hexa_to_json(q), "multiplier": ser.complex_to_json(m)})
    elif args.op == "compose":
        _emit(ser.auto_to_json(auto_compose(autos[0], autos[1])))
    elif args.op == "inverse":
        _emit(ser.auto_to_json(auto_inverse(autos[0])))
    else:
        p = _decode(ser.hexa_from_json, _load(args.json, "point"), "hexablock point")
        if not hexa_member(p):
            raise CliError(EXIT_PARSE, "normalize needs a hexablock member")
        t, r, a_mod = normalize_point(p)
        _emit({"automorphism": ser.auto_to_json(t), "r": r, "a_mod": a_mod})
    _note(f"auto {args.op} done")
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.n < 1:
        raise CliError(EXIT_PARSE, "--n must be at least 1")
    rng = default_rng(args.seed)
    config = SamplerConfig(radius=args.radius)
    try:
        if args.domain == "tetra":
            for x in sample_tetra(rng, args.n, config):
                _emit(ser.tetra_to_json(x))
        else:
            for p in sample_hexa(rng, args.n, config):
                _emit(ser.hexa_to_json(p))
    except SamplerGuardError as exc:
        raise CliError(EXIT_GUARD, str(exc)) from exc
    _note(f"sampled {args.n} {args.domain} members (seed {args.seed})")
    return EXIT_OK


def _direction(axis: str) -> np.ndarray:
    """'x3' is the real x3 axis, 'x3.im' the imaginary one."""
    name, _, part = axis.partition(".")
    if name not in COORDS or part not in ("", "re", "im"):
        raise CliError(EXIT_PARSE, f"unknown plane axis {axis!r}; use a, x1, x2, x3 with optional .re/.im")
    v = np.zeros(4, dtype=complex)
    v[COORDS.index(name)] = 1j if part == "im" else 1.0
    return v


def slice_rows(origin: HexaPoint, u: np.ndarray, v: np.ndarray, grid: int, lo: float, hi: float, eps: float):
    axis = np.linspace(lo, hi, grid, endpoint=False)
    base = np.array(origin.coords())
    for s in axis:
        for t in axis:
            p = HexaPoint.of(*(base + s * u + t * v))
            inside_e = tetra_member(p.x)
            e_minus_u = fiber_weight(p.x) if inside_e else None
            yield (
                repr(float(s)),
                repr(float(t)),
                str(hexa_member(p)).lower(),
                hexa_stratify(p, eps).value,
                "" if e_minus_u is None else repr(e_minus_u),
            )


def cmd_slice(args) -> int:
    if args.grid < 16:
        raise CliError(EXIT_PARSE, "--grid must be at least 16 for a slice")
    axes = args.plane.split(",")
    if len(axes) != 2:
        raise CliError(EXIT_PARSE, "--plane takes two axes, e.g. a,x3")
    u, v = (_direction(s) for s in axes)
    origin = HexaPoint.of(0, 0, 0, 0)
    if args.json is not None:
        origin = _decode(ser.hexa_from_json, _load(args.json, "origin"), "origin point")
    lo, hi = args.range
    rows = slice_rows(origin, u, v, args.grid, lo, hi, args.eps)
    try:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["s", "t", "member", "stratum", "e_minus_u"])
            w.writerows(rows)
    except OSError as exc:
        raise CliError(EXIT_IO, str(exc)) from exc
    _emit({"path": args.out, "rows": args.grid * args.grid})
    _note(f"wrote {args.grid * args.grid} rows to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        report = run_suite(args.suite, args.n, args.seed)
    except UnknownSuiteError as exc:
        raise CliError(EXIT_SUITE, f"unknown suite {args.suite!r}; known: {', '.join(SUITES)}") from exc
    _emit(report.to_json())
    status = "PASS" if report.ok else "FAIL"
    _note(
        f"{status} {report.suite}: {report.cases_passed}/{report.cases_run} "
        f"max_residual={report.max_residual:.3e} seed={report.seed}"
    )
    return EXIT_OK if report.ok else EXIT_VERIFY


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--eps", type=float, default=DEFAULT_EPS)
    common.add_argument("--grid", type=int, default=None)
    common.add_argument("--json", default=None, help="JSON input: literal, @path, or - for stdin")

    parser = _Parser(prog="hexablock", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn in (("member", cmd_member), ("classify", cmd_classify)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--domain", choices=("tetra", "hexa"), default="tetra")
        p.set_defaults(func=fn)

    sub.add_parser("u", parents=[common]).set_defaults(func=cmd_u)
    sub.add_parser("extremal", parents=[common]).set_defaults(func=cmd_extremal)

    p = sub.add_parser("mu", parents=[common])
    p.add_argument("--structure", choices=("all", *(s.value for s in MuStructure)), default="all")
    p.add_argument("--method", choices=("closed", "search"), default="closed")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("auto", parents=[common])
    p.add_argument("op", choices=("apply", "compose", "inverse", "normalize"))
    p.add_argument("--auto", action="append", help="automorphism JSON (repeat for compose)")
    p.set_defaults(func=cmd_auto)

    p = sub.add_parser("sample", parents=[common])
    p.add_argument("--domain", choices=("tetra", "hexa"), default="tetra")
    p.add_argument("--radius", type=float, default=1.0, help="radius of the sampling polydisc")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("slice", parents=[common])
    p.add_argument("--plane", default="a,x3", help="two axes, e.g. a,x3 or x1,x1.im")
    p.add_argument("--range", type=float, nargs=2, default=(-1.25, 1.25), metavar=("LO", "HI"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("suite")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "sample" and args.n is None:
            args.n = 10
        if args.command == "slice" and args.grid is None:
            args.grid = 64
        return args.func(args)
    except CliError as exc:
        _note(f"error: {exc}")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
