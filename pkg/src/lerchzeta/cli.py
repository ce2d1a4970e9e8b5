"""Command-line surface: evaluation, verification suites, grids, polynomials.

Output is machine-readable (JSON on stdout for eval/fecheck, CSV or JSON
for grids) and deterministic for fixed flags.  High-precision numbers are
emitted as decimal strings.

Rational parameters ("1/3") keep exact integrality semantics: "--a 1" is
the integer-parameter branch of the extended function (poles, corner
identities), while "--a 1.0" is a plain real that never triggers it; the
two genuinely differ because the function is discontinuous at integers.

Exit codes: 0 success, 1 verification residual above tolerance, 2 flag
parse error, 3 domain error, 4 unwritable output path.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from mpmath import mp, mpc, mpf

from . import boundary, hermite, lerch
from .precision import DomainError, EvalResult, PrecisionContext
from .suites import SUITES


def _parse_complex(text: str) -> mpc:
    t = text.strip().replace(" ", "").replace("j", "i")
    if not t:
        raise ValueError("empty complex literal")
    if t.endswith("i"):
        body = t[:-1]
        # split into real and imaginary at the last +/- that is not an exponent sign
        for idx in range(len(body) - 1, 0, -1):
            ch = body[idx]
            if ch in "+-" and body[idx - 1] not in "eE":
                re_part, im_part = body[:idx], body[idx:]
                break
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+", "-"):
            im_part += "1"
        return mpc(mpf(re_part), mpf(im_part))
    return mpc(mpf(t))


def _parse_param(text: str):
    t = text.strip()
    if "/" in t:
        return Fraction(t)
    try:
        return int(t)
    except ValueError:
        return mpf(t)


def _fmt(x, digits: int) -> str:
    return mp.nstr(mpf(x), digits)


def _result_json(res: EvalResult, digits: int) -> dict:
    out = {
        "value": {"re": _fmt(res.value.real, digits), "im": _fmt(res.value.imag, digits)},
        "err_bound": _fmt(res.err_bound, digits),
    }
    if res.pole is not None:
        out["pole"] = {
            "location": {"re": _fmt(res.pole.location.real, digits),
                         "im": _fmt(res.pole.location.imag, digits)},
            "residue": {"re": _fmt(res.pole.residue.real, digits),
                        "im": _fmt(res.pole.residue.imag, digits)},
        }
    return out


def _evaluate(fn: str, s, a, c, n, ctx: PrecisionContext) -> EvalResult:
    if fn in ("zeta", "zeta_star"):
        return lerch.zeta_star(s, a, c, ctx)
    if fn == "hurwitz":
        return lerch.hurwitz(s, c, ctx)
    if fn in ("periodic", "periodic_zeta"):
        return lerch.periodic_zeta(a, s, ctx)
    if fn == "dirichlet":
        return lerch.dirichlet_zeta_star(s, a, c, ctx)
    if fn in ("lplus", "lminus"):
        return lerch.lpm_star("+" if fn == "lplus" else "-", s, a, c, ctx)
    if fn in ("lhat_plus", "lhat_minus"):
        return lerch.lhat_star("+" if fn == "lhat_plus" else "-", s, a, c, ctx)
    if fn in ("renorm_plus", "renorm_minus"):
        return boundary.renorm_l("+" if fn == "renorm_plus" else "-", s, a, c, ctx)
    if fn == "lhat_n":
        if n is None:
            raise DomainError("--fn lhat_n requires --n")
        return hermite.lhat_n(n, s, a, c, ctx)
    raise DomainError(f"unknown function selector '{fn}'")


_FN_CHOICES = ["zeta", "zeta_star", "hurwitz", "periodic", "periodic_zeta", "dirichlet",
               "lplus", "lminus", "lhat_plus", "lhat_minus",
               "renorm_plus", "renorm_minus", "lhat_n"]


def _add_point_args(p: argparse.ArgumentParser, need_s=True):
    if need_s:
        p.add_argument("--s", required=True, help="complex s, e.g. '2' or '0.5+3i'")
    p.add_argument("--a", default="0", help="real a; 'p/q' is exact (integer semantics)")
    p.add_argument("--c", default="1", help="real c; 'p/q' is exact (integer semantics)")
    p.add_argument("--n", type=int, default=None, help="index for --fn lhat_n")
    p.add_argument("--prec", type=int, default=128, help="working precision in bits")
    p.add_argument("--guard", type=int, default=16, help="guard bits")
    p.add_argument("--digits", type=int, default=None, help="printed significant digits")


def _digits_for(args) -> int:
    return args.digits if args.digits else int(args.prec * 0.3010299957) + 2


def cmd_eval(args) -> int:
    ctx = PrecisionContext(args.prec, args.guard)
    with ctx.workprec():
        s = _parse_complex(args.s)
        a, c = _parse_param(args.a), _parse_param(args.c)
        res = _evaluate(args.fn, s, a, c, args.n, ctx)
        print(json.dumps(_result_json(res, _digits_for(args))))
    return 0


def cmd_fecheck(args) -> int:
    ctx = PrecisionContext(args.prec, args.guard)
    runner = SUITES[args.suite]
    rep = runner(ctx, args.samples, args.seed)
    print(json.dumps(rep.to_json_dict()))
    return 0 if rep.passed else 1


def _grid_rows(args, ctx: PrecisionContext):
    with ctx.workprec():
        s = _parse_complex(args.s)
        digits = _digits_for(args)
        a_lo, a_hi = mpf(args.a_min), mpf(args.a_max)
        c_lo, c_hi = mpf(args.c_min), mpf(args.c_max)
        if args.a_count < 2 or args.c_count < 2:
            raise DomainError("grid counts must be >= 2")
        rows = []
        for j in range(args.c_count):
            c = c_lo + (c_hi - c_lo) * j / (args.c_count - 1)
            for i in range(args.a_count):
                a = a_lo + (a_hi - a_lo) * i / (args.a_count - 1)
                res = _evaluate(args.fn, s, a, c, args.n, ctx)
                rows.append((_fmt(a, digits), _fmt(c, digits),
                             _fmt(res.value.real, digits), _fmt(res.value.imag, digits),
                             _fmt(res.err_bound, digits)))
        return rows, s


def _write_text(path, text) -> int:
    if path in (None, "-"):
        sys.stdout.write(text)
        return 0
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return 4
    return 0


def _rows_to_text(rows, fmt: str) -> str:
    if fmt == "csv":
        lines = ["a,c,re,im,err_bound"]
        lines += [",".join(r) for r in rows]
        return "\n".join(lines) + "\n"
    payload = [{"a": r[0], "c": r[1], "re": r[2], "im": r[3], "err_bound": r[4]}
               for r in rows]
    return json.dumps(payload) + "\n"


def cmd_grid(args) -> int:
    ctx = PrecisionContext(args.prec, args.guard)
    rows, _ = _grid_rows(args, ctx)
    return _write_text(args.output, _rows_to_text(rows, args.format))


def cmd_report(args) -> int:
    from .report import render_grid_figure

    ctx = PrecisionContext(args.prec, args.guard)
    rows, s = _grid_rows(args, ctx)
    base = args.output
    if base is None:
        print("report requires --output BASEPATH", file=sys.stderr)
        return 2
    code = _write_text(base + ".csv", _rows_to_text(rows, "csv"))
    if code:
        return code
    try:
        with ctx.workprec():
            render_grid_figure(rows, args.fn, mp.nstr(s, 6), base + ".png")
    except OSError as exc:
        print(f"cannot write figure: {exc}", file=sys.stderr)
        return 4
    print(json.dumps({"csv": base + ".csv", "figure": base + ".png",
                      "rows": len(rows)}))
    return 0


def cmd_poly(args) -> int:
    poly = hermite.poly_family(args.family, args.n)
    coeffs_desc = list(map(str, reversed(poly.coeffs)))
    if args.json:
        print(json.dumps({"family": args.family, "n": args.n,
                          "coefficients_descending": coeffs_desc}))
    else:
        print(" ".join(coeffs_desc))
    return 0


def cmd_zeros(args) -> int:
    ctx = PrecisionContext(args.prec, args.guard)
    roots = hermite.poly_zeros(args.family, args.n, ctx)
    digits = _digits_for(args)
    with ctx.workprec():
        half = mpf(1) / 2
        for r in roots:
            print(f"{_fmt(r.real, digits)} {_fmt(r.imag, digits)} "
                  f"re_residual={_fmt(abs(r.real - half), 3)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lerchzeta",
        description="Arbitrary-precision Lerch zeta functions and their verification suites.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one function at one point")
    p.add_argument("--fn", required=True, choices=_FN_CHOICES)
    _add_point_args(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("fecheck", help="run a functional-equation suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--prec", type=int, default=128)
    p.add_argument("--guard", type=int, default=16)
    p.set_defaults(func=cmd_fecheck)

    for name, handler in (("grid", cmd_grid), ("report", cmd_report)):
        p = sub.add_parser(name, help=f"{name} over an (a, c) rectangle")
        p.add_argument("--fn", required=True, choices=_FN_CHOICES)
        p.add_argument("--a-min", required=True)
        p.add_argument("--a-max", required=True)
        p.add_argument("--a-count", type=int, required=True)
        p.add_argument("--c-min", required=True)
        p.add_argument("--c-max", required=True)
        p.add_argument("--c-count", type=int, required=True)
        if name == "grid":
            p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--output", default=None,
                       help="output path ('-' or omitted: stdout); report: base path")
        _add_point_args(p)
        p.set_defaults(func=handler)

    p = sub.add_parser("poly", help="exact coefficients of p_n or q_n")
    p.add_argument("--family", required=True, choices=["p", "q"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("zeros", help="critical-line zeros of p_n or q_n")
    p.add_argument("--family", required=True, choices=["p", "q"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prec", type=int, default=128)
    p.add_argument("--guard", type=int, default=16)
    p.add_argument("--digits", type=int, default=None)
    p.set_defaults(func=cmd_zeros)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError,) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError) as exc:
        print(f"argument error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
