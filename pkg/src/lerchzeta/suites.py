"""Seeded verification suites shared by the CLI and the acceptance tests.

Each suite draws deterministic samples from a seeded RNG, evaluates both
sides of one family of identities independently, and reports the residual
distribution against its tolerance.  Default tolerances follow the
half-precision rule 2^{-working_bits/2} (the evaluators themselves carry
bounds several orders tighter; the factor-of-two headroom absorbs
conditioning of the identity combinations).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from mpmath import mp, mpc, mpf

from .boundary import lhat_renorm
from .hermite import lhat_n
from .lerch import lerch_transform_check, lhat_star
from .precision import PrecisionContext, expi_2pi
from .quadrature import QuadratureSpec
from .zeta_integrals import (
    BUILTIN_FACTORIES,
    fe_residual_general,
    periodicity_residuals,
)


def sample_rational(rng: random.Random, lo=0, hi=1, max_den=48) -> Fraction:
    """A random non-integer rational strictly inside (lo, hi)."""
    while True:
        q = rng.randrange(2, max_den + 1)
        p = rng.randrange(int(lo * q) - 1, int(hi * q) + 2)
        f = Fraction(p, q)
        if lo < f < hi and f.denominator > 1:
            return f


def sample_s(rng: random.Random, re_lo=-5.0, re_hi=5.0, im_lo=-20.0, im_hi=20.0,
             avoid_integers=False) -> mpc:
    while True:
        s = mpc(rng.uniform(re_lo, re_hi), rng.uniform(im_lo, im_hi))
        if not avoid_integers:
            return s
        if abs(s.imag) > mpf("0.01") or abs(s.real - mp.nint(s.real)) > mpf("0.01"):
            return s


@dataclass
class SuiteReport:
    suite: str
    samples: int
    seed: int
    prec: int
    tolerance: mpf
    residuals: List[mpf] = field(default_factory=list)
    failures: List[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def max_residual(self) -> mpf:
        return max(self.residuals) if self.residuals else mpf(0)

    @property
    def median_residual(self) -> mpf:
        if not self.residuals:
            return mpf(0)
        rs = sorted(self.residuals)
        mid = len(rs) // 2
        return rs[mid] if len(rs) % 2 else (rs[mid - 1] + rs[mid]) / 2

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self, digits: int = 20) -> dict:
        def fmt(x):
            return mp.nstr(mpf(x), digits)
        return {
            "suite": self.suite,
            "samples": self.samples,
            "seed": self.seed,
            "prec": self.prec,
            "tolerance": fmt(self.tolerance),
            "max_residual": fmt(self.max_residual),
            "median_residual": fmt(self.median_residual),
            "failures": self.failures,
            "pass": self.passed,
        }


def _record(report: SuiteReport, resid, tol, sample_desc: str):
    report.residuals.append(resid)
    if resid >= tol:
        report.failures.append({"sample": sample_desc, "residual": mp.nstr(resid, 12)})


def suite_weil(ctx: PrecisionContext, n_samples: int = 50, seed: int = 7,
               extended: bool = False) -> SuiteReport:
    """Four-term Weil functional equations for both completed functions.

    ``extended`` draws (a, c) from (-3, 4) instead of the open unit
    square, exercising the twisted-periodicity reduction.
    """
    rng = random.Random(seed)
    rep = SuiteReport("weil-extended" if extended else "weil", n_samples, seed,
                      ctx.working_bits, mpf(0))
    t0 = time.time()
    with ctx.workprec():
        rep.tolerance = mpf(2) ** (-ctx.working_bits // 2)
        for i in range(n_samples):
            lo, hi = (-3, 4) if extended else (0, 1)
            a, c = sample_rational(rng, lo, hi), sample_rational(rng, lo, hi)
            s = sample_s(rng)
            sign, w = ("+", mpc(1)) if i % 2 == 0 else ("-", mpc(0, 1))
            l1 = lhat_star(sign, s, a, c, ctx)
            l2 = lhat_star(sign, 1 - s, 1 - c, a, ctx)
            resid = abs(l1.value - w * expi_2pi(-a * c) * l2.value)
            _record(rep, resid, rep.tolerance,
                    f"sign={sign} s={mp.nstr(s, 8)} a={a} c={c}")
    rep.elapsed = time.time() - t0
    return rep


def suite_transform(ctx: PrecisionContext, n_samples: int = 50, seed: int = 7) -> SuiteReport:
    """Extended transformation-formula residuals on pole-free samples."""
    rng = random.Random(seed)
    rep = SuiteReport("transform", n_samples, seed, ctx.working_bits, mpf(0))
    t0 = time.time()
    with ctx.workprec():
        rep.tolerance = mpf(2) ** (-ctx.working_bits // 2)
        for _ in range(n_samples):
            a, c = sample_rational(rng), sample_rational(rng)
            s = sample_s(rng, 1.2, 4.0, -10.0, 10.0, avoid_integers=True)
            r = lerch_transform_check(s, a, c, ctx)
            _record(rep, r.residual, rep.tolerance,
                    f"s={mp.nstr(s, 8)} a={a} c={c}")
    rep.elapsed = time.time() - t0
    return rep


def suite_renorm(ctx: PrecisionContext, n_samples: int = 50, seed: int = 7) -> SuiteReport:
    """Completed renormalized functional equation, boundary points included."""
    rng = random.Random(seed)
    rep = SuiteReport("renorm", n_samples, seed, ctx.working_bits, mpf(0))
    t0 = time.time()
    with ctx.workprec():
        rep.tolerance = mpf(2) ** (-ctx.working_bits // 2)
        boundary_pool = [Fraction(0), Fraction(1)]
        for i in range(n_samples):
            s = sample_s(rng, -4.0, 5.0, -12.0, 12.0, avoid_integers=True)
            a = sample_rational(rng)
            c = sample_rational(rng)
            if i % 3 == 1:
                c = rng.choice(boundary_pool)
            elif i % 3 == 2:
                a = rng.choice(boundary_pool)
            sign, w = ("+", mpc(1)) if i % 2 == 0 else ("-", mpc(0, 1))
            l1 = lhat_renorm(sign, s, a, c, ctx)
            l2 = lhat_renorm(sign, 1 - s, 1 - Fraction(c), a, ctx)
            resid = abs(l1.value - w * expi_2pi(-Fraction(a) * Fraction(c)) * l2.value)
            _record(rep, resid, rep.tolerance,
                    f"sign={sign} s={mp.nstr(s, 8)} a={a} c={c}")
    rep.elapsed = time.time() - t0
    return rep


def suite_zeta_integral(ctx: PrecisionContext, n_samples: int = 12, seed: int = 7,
                        spec: Optional[QuadratureSpec] = None) -> SuiteReport:
    """Quadrature-route functional equation and twisted periodicity for the
    built-in non-Gaussian test functions; tolerance is 10x the combined
    quadrature error bounds, per sample."""
    rng = random.Random(seed)
    rep = SuiteReport("zeta-integral", n_samples, seed, ctx.working_bits, mpf(0))
    spec = spec or QuadratureSpec()
    t0 = time.time()
    with ctx.workprec():
        rep.tolerance = mpf(1)  # per-sample tolerances; kept for reporting scale
        names = list(BUILTIN_FACTORIES)
        for i in range(n_samples):
            name = names[i % len(names)]
            f = BUILTIN_FACTORIES[name](ctx)
            k = 0 if f.parity == "even" else 1
            a = sample_rational(rng, -1, 2)
            c = sample_rational(rng, -1, 2)
            s = sample_s(rng, -2.0, 3.0, -6.0, 6.0, avoid_integers=True)
            fe = fe_residual_general(f, k, s, a, c, ctx, spec)
            _record(rep, fe.residual, 10 * fe.combined_err,
                    f"{name} FE s={mp.nstr(s, 8)} a={a} c={c}")
            pr = periodicity_residuals(f, k, s, a, c, ctx, spec)
            _record(rep, max(pr.residual_a, pr.residual_c), 10 * pr.combined_err,
                    f"{name} periodicity s={mp.nstr(s, 8)} a={a} c={c}")
    rep.elapsed = time.time() - t0
    return rep


def suite_hermite(ctx: PrecisionContext, n_samples: int = 10, seed: int = 7,
                  n_max: int = 6) -> SuiteReport:
    """Functional equations of the generalized completed functions Lhat_n."""
    rng = random.Random(seed)
    rep = SuiteReport("hermite", n_samples, seed, ctx.working_bits, mpf(0))
    t0 = time.time()
    with ctx.workprec():
        rep.tolerance = mpf(2) ** (-min(60, ctx.working_bits // 2))
        for i in range(n_samples):
            n = i % (n_max + 1)
            a, c = sample_rational(rng), sample_rational(rng)
            s = sample_s(rng, -4.0, 5.0, -10.0, 10.0)
            l1 = lhat_n(n, s, a, c, ctx)
            l2 = lhat_n(n, 1 - s, 1 - c, a, ctx)
            resid = abs(l1.value - mpc(0, 1) ** n * expi_2pi(-a * c) * l2.value)
            _record(rep, resid, rep.tolerance,
                    f"n={n} s={mp.nstr(s, 8)} a={a} c={c}")
    rep.elapsed = time.time() - t0
    return rep


SUITES = {
    "weil": suite_weil,
    "transform": suite_transform,
    "renorm": suite_renorm,
    "zeta-integral": suite_zeta_integral,
    "hermite": suite_hermite,
}
