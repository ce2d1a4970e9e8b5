"""Evaluation of the extended Lerch zeta function and its completions.

Two routes are provided:

* ``dirichlet_zeta_star`` sums the defining Dirichlet series
  ``sum_{n+c>0} e^{2 pi i n a} (n+c)^{-s}`` directly for Re(s) > 1.1 with a
  rigorous integral-comparison tail bound.  It is deliberately independent
  of the second route and serves as its oracle.

* ``lhat_star`` / ``zeta_star`` evaluate the completed functions through
  globally convergent incomplete-gamma lattice sums valid for every complex
  s and all real (a, c):

      Lhat^+ = sum_n' e^{2 pi i a n} pi^{-s/2} |n+c|^{-s} G(s/2, pi (n+c)^2)
             + e^{-2 pi i a c} sum_n' e^{2 pi i c n} pi^{-(1-s)/2}
                 |n-a|^{s-1} G((1-s)/2, pi (n-a)^2)
             + 2 d_Z(a)/(s-1) - 2 d_Z(c) e^{-2 pi i a c} / s,

  with G the upper incomplete gamma function, primes marking the exclusion
  of the vanishing lattice offset, and the analogous sgn-weighted formula
  (gamma arguments (s+1)/2 and (2-s)/2, second sum weighted by -i) for
  Lhat^-.  Terms decay like e^{-pi n^2}, so a window of a dozen lattice
  points per side suffices at 128-bit precision.

Parameters a and c are reduced into [0,1) first; for int/Fraction inputs
the reduction and the accompanying unit phase are exact, which is what the
functional-equation residual tests require.  Integrality of a and c is
decided only for exact (int/Fraction) inputs: the extended function is
genuinely discontinuous at integer parameters, so a float equal to an
integer still selects the non-integer branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import gmpy2
from gmpy2 import mpfr as g_mpfr
from mpmath import mp, mpc, mpf

from .numerics import _upper_gamma_kernel
from .precision import (
    DomainError,
    EvalResult,
    PoleInfo,
    PrecisionContext,
    RealParam,
    expi_2pi,
    frac_mod_1,
    g_to_mpc,
    g_to_mpf,
    is_exact_integer,
    mpc_to_g,
    mpf_to_g,
    prod_param,
    to_mpc,
    to_mpf,
)


class PoleEncountered(ArithmeticError):
    """An evaluation hit a pole of a constituent factor."""

    def __init__(self, factor: str):
        super().__init__(f"pole of {factor}")
        self.factor = factor


@dataclass(frozen=True)
class LerchPoint:
    """A point (s, a, c) with exact integrality and domain classification."""

    s: mpc
    a: RealParam
    c: RealParam

    @property
    def a_is_integer(self) -> bool:
        return is_exact_integer(self.a)

    @property
    def c_is_integer(self) -> bool:
        return is_exact_integer(self.c)

    @property
    def region(self) -> str:
        """'interior', 'edge', 'corner' of the closed unit square, else 'general'."""
        def exactify(x):
            return Fraction(x) if isinstance(x, (int, Fraction)) else x

        av, cv = exactify(self.a), exactify(self.c)
        if not (0 <= av <= 1 and 0 <= cv <= 1):
            return "general"
        a_on = av in (0, 1)
        c_on = cv in (0, 1)
        if a_on and c_on:
            return "corner"
        if a_on or c_on:
            return "edge"
        return "interior"


@dataclass(frozen=True)
class ReductionRecord:
    """Fundamental-domain data: (a, c) -> (a0, c0) in [0,1)^2 with phase."""

    a0: RealParam
    c0: RealParam
    phase: mpc
    shifts: tuple


def reduce_fundamental(a: RealParam, c: RealParam, ctx: PrecisionContext) -> ReductionRecord:
    """Reduce (a, c) mod 1 and return the twisted-periodicity phase.

    The extended function satisfies f(s, a+1, c) = f(s, a, c) and
    f(s, a, c+1) = e^{-2 pi i a} f(s, a, c), so
    f(s, a, c) = phase * f(s, a0, c0) with phase = e^{-2 pi i a0 (c - c0)}.
    """
    with ctx.workprec():
        a0, ka = frac_mod_1(a)
        c0, kc = frac_mod_1(c)
        phase = expi_2pi(prod_param(a0, -kc)) if kc else mpc(1)
        return ReductionRecord(a0=a0, c0=c0, phase=phase, shifts=(ka, kc))


# ---------------------------------------------------------------------------
# incomplete-gamma lattice sums (gmpy2 inner loop)
# ---------------------------------------------------------------------------

@dataclass
class _Parts:
    R: mpc
    scale: mpf
    tail: mpf
    res_at_1: int
    res_at_0: int
    phase: mpc
    a_int: bool
    c_int: bool
    red: ReductionRecord


def _window_size(ctx: PrecisionContext, sigma_max) -> int:
    with ctx.workprec():
        base = mp.ceil(mp.sqrt((ctx.working_bits * mp.ln(2) + ctx.guard_bits) / mp.pi))
        bump = mp.ceil(mp.sqrt((abs(sigma_max) + 2) / mp.pi))
        return int(base) + int(bump) + 5


def _param_to_g(x: RealParam) -> g_mpfr:
    if isinstance(x, (int, Fraction)):
        f = Fraction(x)
        return g_mpfr(f.numerator) / f.denominator
    return mpf_to_g(to_mpf(x))


def _gamma_sum(alpha_m: mpc, expo_m: mpc, offset: RealParam, phase_r: RealParam,
               sign_weight: bool, N: int, ctx: PrecisionContext, cap: int):
    """sum over n in [-N, N] of phase(n) [sgn(t)] |t|^{expo} G(alpha, pi t^2),
    t = n + offset, skipping t == 0.

    phase(n) = e^{2 pi i phase_r n}.  Returns (sum, abs_scale) as gmpy2
    values.  Assumes the working precision is active.
    """
    alpha_g = mpc_to_g(alpha_m)
    expo_g = mpc_to_g(expo_m)
    off_g = _param_to_g(offset)
    off_exact_zero = isinstance(offset, (int, Fraction)) and Fraction(offset) == 0
    pi_g = gmpy2.const_pi()
    acc = gmpy2.mpc(0)
    absacc = g_mpfr(0)
    for n in range(-N, N + 1):
        if off_exact_zero and n == 0:
            continue
        t = n + off_g
        if t == 0:
            continue
        at = abs(t)
        x = pi_g * at * at
        gval, _ = _upper_gamma_kernel(alpha_g, x, ctx, cap)
        mag = gmpy2.exp(expo_g * gmpy2.log(at))
        term = mag * gval
        if sign_weight and t < 0:
            term = -term
        ph = mpc_to_g(expi_2pi(prod_param(phase_r, n)))
        term = ph * term
        acc += term
        absacc += abs(term)
    return acc, absacc


def _tail_bound(N: int, order: int) -> mpf:
    """Analytic tail of the lattice sums past |t| >= N.

    Each remaining term is bounded by (2/pi) e^{-pi t^2} t^{-order}
    (incomplete-gamma envelope times the power and pi factors), and the
    term ratio is below e^{-pi(2N+1)}.
    """
    n = mpf(N)
    first = 2 / mp.pi * mp.e**(-mp.pi * n * n) / n**order
    ratio = mp.e**(-mp.pi * (2 * n + 1))
    return 2 * first / (1 - ratio)


def _completed_parts(k: int, s, a: RealParam, c: RealParam, ctx: PrecisionContext) -> _Parts:
    """Lattice sums and pole data for Lhat^{(-1)^k}_* at the reduced point."""
    with ctx.workprec():
        s_m = to_mpc(s)
        red = reduce_fundamental(a, c, ctx)
        a0, c0 = red.a0, red.c0
        a_int = is_exact_integer(a)
        c_int = is_exact_integer(c)
        sig = s_m.real
        N = _window_size(ctx, max(abs(sig), abs(1 - sig)))
        cap = 10 * ctx.working_bits
        lnpi = mp.ln(mp.pi)

        if k == 0:
            alpha1, expo1 = s_m / 2, -s_m
            alpha2, expo2 = (1 - s_m) / 2, s_m - 1
            sign_weight = False
        else:
            alpha1, expo1 = (s_m + 1) / 2, -s_m
            alpha2, expo2 = (2 - s_m) / 2, s_m - 1
            sign_weight = True

        sum1, abs1 = _gamma_sum(alpha1, expo1, c0, a0, sign_weight, N, ctx, cap)
        sum2, abs2 = _gamma_sum(alpha2, expo2,
                                -a0 if isinstance(a0, (int, Fraction)) else -to_mpf(a0),
                                c0, sign_weight, N, ctx, cap)

        pref1 = mp.exp(-(s_m + k) / 2 * lnpi)
        pref2 = mp.exp(-((1 - s_m) + k) / 2 * lnpi)
        const2 = expi_2pi(prod_param(a0, c0) * -1)
        if k == 1:
            const2 = const2 * mpc(0, -1)

        R = pref1 * g_to_mpc(sum1) + pref2 * const2 * g_to_mpc(sum2)
        scale = abs(pref1) * g_to_mpf(abs1) + abs(pref2) * g_to_mpf(abs2)
        tail = _tail_bound(N, 2 if k == 0 else 1)

        if k == 0:
            res1 = 2 if a_int else 0
            res0 = -2 if c_int else 0
        else:
            res1 = res0 = 0
        return _Parts(R=R, scale=scale, tail=tail, res_at_1=res1, res_at_0=res0,
                      phase=red.phase, a_int=a_int, c_int=c_int, red=red)


def _near_pole_threshold(ctx: PrecisionContext) -> mpf:
    return mpf(2) ** (-(ctx.working_bits // 4))


def lhat_star(sign: str, s, a: RealParam, c: RealParam, ctx: PrecisionContext) -> EvalResult:
    """The extended completed function Lhat^{+}_* or Lhat^{-}_* at (s, a, c).

    Valid for every complex s and all real (a, c).  For sign '+' with
    integer a (resp. c) there is a simple pole at s = 1 (resp. s = 0); the
    pole term is folded into the value except when s lies within
    2^{-working_bits/4} of the pole, where the finite part is returned and
    the pole field is populated.  If both parameters are integral, the pole
    nearest to s is the one reported.
    """
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    k = 0 if sign == "+" else 1
    parts = _completed_parts(k, s, a, c, ctx)
    with ctx.workprec():
        s_m = to_mpc(s)
        thr = _near_pole_threshold(ctx)
        value = parts.R
        scale = parts.scale
        pole: Optional[PoleInfo] = None
        near0 = parts.res_at_0 and abs(s_m) <= thr
        near1 = parts.res_at_1 and abs(s_m - 1) <= thr
        if near0 and near1:
            if abs(s_m) <= abs(s_m - 1):
                near1 = False
            else:
                near0 = False
        if parts.res_at_0:
            if near0:
                pole = PoleInfo(location=mpc(0), residue=parts.phase * parts.res_at_0)
            else:
                value = value + parts.res_at_0 / s_m
                scale = scale + abs(parts.res_at_0 / s_m)
        if parts.res_at_1:
            if near1:
                pole = PoleInfo(location=mpc(1), residue=parts.phase * parts.res_at_1)
            else:
                value = value + parts.res_at_1 / (s_m - 1)
                scale = scale + abs(parts.res_at_1 / (s_m - 1))
        value = parts.phase * value
        err = parts.tail + (scale + abs(value)) * ctx.rounding_unit * 64
        return EvalResult(value=value, err_bound=err, pole=pole)


def lpm_star(sign: str, s, a: RealParam, c: RealParam, ctx: PrecisionContext) -> EvalResult:
    """L^{+}_* or L^{-}_*: the completed function divided by its gamma factor.

    L^{±} = pi^{(s+k)/2} / Gamma((s+k)/2) * Lhat^{±}; the reciprocal gamma
    zero at nonpositive even (resp. odd) integers produces the trivial
    zeros exactly.  For sign '+' the s = 0 pole of Lhat^{+} cancels against
    that zero and is evaluated in stable form; the s = 1 pole (integer a)
    survives with residue 2.
    """
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    k = 0 if sign == "+" else 1
    parts = _completed_parts(k, s, a, c, ctx)
    with ctx.workprec():
        s_m = to_mpc(s)
        thr = _near_pole_threshold(ctx)
        g_inv = mp.power(mp.pi, (s_m + k) / 2) * mp.rgamma((s_m + k) / 2)
        value = g_inv * parts.R
        scale = abs(g_inv) * parts.scale
        pole: Optional[PoleInfo] = None
        if parts.res_at_0:
            # rgamma(s/2)/s = rgamma(1 + s/2)/2, finite through s = 0
            stable = mp.power(mp.pi, s_m / 2) * mp.rgamma(1 + s_m / 2) / 2
            value = value + parts.res_at_0 * stable
            scale = scale + abs(parts.res_at_0 * stable)
        if parts.res_at_1:
            if abs(s_m - 1) <= thr:
                # g_inv(1) = 1, so the residue is just the coefficient
                pole = PoleInfo(location=mpc(1), residue=parts.phase * parts.res_at_1)
                if s_m == 1:
                    # g_inv'(1) = (euler + ln 4 pi)/2
                    value = value + parts.res_at_1 * (mp.euler + mp.ln(4 * mp.pi)) / 2
                else:
                    value = value + parts.res_at_1 * (g_inv - 1) / (s_m - 1)
            else:
                value = value + parts.res_at_1 * g_inv / (s_m - 1)
                scale = scale + abs(parts.res_at_1 * g_inv / (s_m - 1))
        value = parts.phase * value
        err = abs(g_inv) * parts.tail + (scale + abs(value) + 1) * ctx.rounding_unit * 64
        return EvalResult(value=value, err_bound=err, pole=pole)


def zeta_star(s, a: RealParam, c: RealParam, ctx: PrecisionContext) -> EvalResult:
    """The extended Lerch zeta function zeta_*(s, a, c) for all real (a, c).

    zeta_* = (pi^{s/2} / (2 Gamma(s/2))) Lhat^{+}_*
           + (pi^{(s+1)/2} / (2 Gamma((s+1)/2))) Lhat^{-}_*.

    Meromorphic in s with a single possible simple pole at s = 1 (residue
    1) when a is an exact integer; the s = 0 pole of Lhat^{+} is cancelled
    by the zero of 1/Gamma(s/2) and handled in finite form.  Near s = 1
    (within 2^{-working_bits/4}) the finite part is returned with the pole
    field set.
    """
    pp = _completed_parts(0, s, a, c, ctx)
    pm = _completed_parts(1, s, a, c, ctx)
    with ctx.workprec():
        s_m = to_mpc(s)
        thr = _near_pole_threshold(ctx)
        u = mp.power(mp.pi, s_m / 2) * mp.rgamma(s_m / 2) / 2
        w = mp.power(mp.pi, (s_m + 1) / 2) * mp.rgamma((s_m + 1) / 2) / 2
        value = u * pp.R + w * pm.R
        scale = abs(u) * pp.scale + abs(w) * pm.scale
        if pp.res_at_0:
            # u(s)/s = pi^{s/2} rgamma(1 + s/2) / 4, finite through s = 0
            u_over_s = mp.power(mp.pi, s_m / 2) * mp.rgamma(1 + s_m / 2) / 4
            value = value + pp.res_at_0 * u_over_s
            scale = scale + abs(pp.res_at_0 * u_over_s)
        pole: Optional[PoleInfo] = None
        if pp.res_at_1:
            if abs(s_m - 1) <= thr:
                pole = PoleInfo(location=mpc(1), residue=pp.phase * mpc(1))
                if s_m == 1:
                    # 2 u'(1) = (euler + ln 4 pi)/2
                    value = value + (mp.euler + mp.ln(4 * mp.pi)) / 2
                else:
                    value = value + 2 * (u - mpf(1) / 2) / (s_m - 1)
            else:
                value = value + 2 * u / (s_m - 1)
                scale = scale + abs(2 * u / (s_m - 1))
        value = pp.phase * value
        err = (abs(u) * pp.tail + abs(w) * pm.tail
               + (scale + abs(value) + 1) * ctx.rounding_unit * 64)
        return EvalResult(value=value, err_bound=err, pole=pole)


def hurwitz(s, c: RealParam, ctx: PrecisionContext) -> EvalResult:
    """Hurwitz zeta(s, c) = zeta_*(s, 0, c) for c > 0 (pole at s=1, residue 1)."""
    with ctx.workprec():
        if to_mpf(c) <= 0:
            raise DomainError("hurwitz requires c > 0")
    return zeta_star(s, 0, c, ctx)


def periodic_zeta(a: RealParam, s, ctx: PrecisionContext) -> EvalResult:
    """F(a, s) = sum_{n>=1} e^{2 pi i n a} n^{-s} = zeta_*(s, a, 0)."""
    return zeta_star(s, a, 0, ctx)


# ---------------------------------------------------------------------------
# direct Dirichlet series (oracle route)
# ---------------------------------------------------------------------------

def dirichlet_zeta_star(s, a: RealParam, c: RealParam, ctx: PrecisionContext,
                        max_terms: int = 5000) -> EvalResult:
    """Partial sum of sum_{n+c>0} e^{2 pi i n a} (n+c)^{-s} with tail bound.

    Requires Re(s) > 1.1.  The reported error bound includes the integral
    comparison tail (N+c)^{1-sigma}/(sigma-1), which decays slowly near
    sigma = 1; this route is an oracle for ``zeta_star``, not a
    general-purpose evaluator.
    """
    with ctx.workprec():
        s_m = to_mpc(s)
        sigma = s_m.real
        if sigma <= mpf("1.1"):
            raise DomainError("dirichlet series requires Re(s) > 1.1")
        if isinstance(c, (int, Fraction)):
            # smallest integer n with n + c > 0
            n_min = math.floor(-Fraction(c)) + 1
        else:
            n_min = int(mp.floor(-to_mpf(c))) + 1
            if n_min + to_mpf(c) <= 0:
                n_min += 1
        s_g = mpc_to_g(s_m)
        c_g = _param_to_g(c)
        tol = mpf(2) ** (-(ctx.working_bits + ctx.guard_bits))
        acc = gmpy2.mpc(0)
        absacc = g_mpfr(0)
        table = None
        if isinstance(a, (int, Fraction)):
            af = Fraction(a)
            q = af.denominator
            if q <= 4096:
                table = [mpc_to_g(expi_2pi(Fraction(r, q))) for r in range(q)]
        n = n_min
        last_t = None
        while n < n_min + max_terms:
            t = n + c_g
            term = gmpy2.exp(-s_g * gmpy2.log(t))
            if table is not None:
                ph = table[(n * af.numerator) % q]
            else:
                ph = mpc_to_g(expi_2pi(prod_param(a, n)))
            term = ph * term
            acc += term
            absacc += abs(term)
            last_t = t
            n += 1
            if n - n_min >= 64 and (n - n_min) % 64 == 0:
                tail_try = g_to_mpf(last_t) ** (1 - sigma) / (sigma - 1)
                if tail_try < tol:
                    break
        tail = g_to_mpf(last_t) ** (1 - sigma) / (sigma - 1)
        value = g_to_mpc(acc)
        err = tail + (g_to_mpf(absacc) + abs(value)) * ctx.rounding_unit * 32
        return EvalResult(value=value, err_bound=err)


# ---------------------------------------------------------------------------
# extended Lerch transformation formula
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransformReport:
    residual: mpf
    combined_err: mpf
    lhs: mpc
    rhs: mpc


def lerch_transform_check(s, a: RealParam, c: RealParam, ctx: PrecisionContext) -> TransformReport:
    """Residual of the extended transformation formula at (s, a, c).

    zeta_*(1-s, a, c) = (2 pi)^{-s} Gamma(s) {
        e^{i pi s/2} e^{-2 pi i a c} zeta_*(s, 1-c, a)
      + e^{-i pi s/2} e^{2 pi i c (1-a)} zeta_*(s, c, 1-a) }

    Both sides are evaluated independently.  Raises PoleEncountered when s
    is a nonpositive integer (Gamma factor) or s = 1 with integer c (the
    right-hand zeta factors' pole).
    """
    with ctx.workprec():
        s_m = to_mpc(s)
        if s_m.imag == 0 and s_m.real == mp.floor(s_m.real) and s_m.real <= 0:
            raise PoleEncountered("Gamma(s)")
        if s_m == 1 and is_exact_integer(c):
            raise PoleEncountered("zeta_*(s, 1-c, a) at s=1 with integer c")

        one_minus_c = 1 - Fraction(c) if isinstance(c, (int, Fraction)) else 1 - to_mpf(c)
        one_minus_a = 1 - Fraction(a) if isinstance(a, (int, Fraction)) else 1 - to_mpf(a)

        lhs_r = zeta_star(1 - s_m, a, c, ctx)
        z1 = zeta_star(s_m, one_minus_c, a, ctx)
        z2 = zeta_star(s_m, c, one_minus_a, ctx)
        lhs = lhs_r.with_pole_folded(1 - s_m)
        v1 = z1.with_pole_folded(s_m)
        v2 = z2.with_pole_folded(s_m)

        gam = mp.gamma(s_m)
        pref = mp.power(2 * mp.pi, -s_m) * gam
        rot = mp.exp(mpc(0, 1) * mp.pi * s_m / 2)
        ph1 = expi_2pi(prod_param(a, c) * -1)
        ph2 = expi_2pi(prod_param(c, one_minus_a))
        rhs = pref * (rot * ph1 * v1 + ph2 * v2 / rot)

        residual = abs(lhs - rhs)
        combined = (lhs_r.err_bound
                    + abs(pref) * (abs(rot) * z1.err_bound + z2.err_bound / abs(rot))
                    + (abs(lhs) + abs(rhs)) * ctx.rounding_unit * 32)
        return TransformReport(residual=residual, combined_err=combined, lhs=lhs, rhs=rhs)
