"""Special-function kernels: complex gamma, upper incomplete gamma, Tate gammas.

The upper incomplete gamma function Gamma(alpha, x) for complex order alpha
and real x >= 0 is the workhorse of the whole package: the globally
convergent representations of the completed Lerch functions are lattice
sums of such values.  It is evaluated with the classical two-regime split:

* power series for the lower function when x < |alpha| + 4, subtracted
  from Gamma(alpha) (cancellation is detected and retried at higher
  precision),
* a modified-Lentz continued fraction otherwise,
* an exact downward recurrence seeded at Gamma(0, x) = E_1(x) when alpha
  is exactly a nonpositive integer, where both branches above degenerate.

Inner loops run on gmpy2 scalars for speed; the complete gamma function is
delegated to mpmath, whose implementation (argument raising plus an
asymptotic series sized to the precision) scales to arbitrary precision.

All error bounds are conservative: truncation tails are bounded
analytically and rounding slack is charged against the magnitudes that
actually appeared in the computation, including cancelled mass.
"""

from __future__ import annotations

import gmpy2
from gmpy2 import mpfr as g_mpfr
from mpmath import mp, mpc, mpf

from .precision import (
    DomainError,
    EvalResult,
    PrecisionContext,
    g_to_mpc,
    g_to_mpf,
    mpc_to_g,
    mpf_to_g,
    to_mpc,
    to_mpf,
)


class NumericsError(ArithmeticError):
    pass


class PoleAtNonpositiveInteger(NumericsError):
    """Gamma was requested exactly at one of its poles."""


class ConvergenceFailure(NumericsError):
    """Neither expansion branch converged within the iteration cap."""


class PoleOrZero(NumericsError):
    """A Tate gamma factor is singular or exactly zero at this point."""

    def __init__(self, kind: str, detail: str):
        super().__init__(f"tate gamma {kind}: {detail}")
        self.kind = kind


def _exact_nonpositive_int(z: mpc):
    if z.imag != 0:
        return None
    r = z.real
    if r > 0 or r != mp.floor(r):
        return None
    return int(r)


def complex_gamma(s, ctx: PrecisionContext) -> EvalResult:
    """Gamma(s) for complex s, with a relative-scaled error bound.

    Raises
    ------
    PoleAtNonpositiveInteger
        If s is exactly a nonpositive integer.
    """
    with ctx.workprec():
        z = to_mpc(s)
        if _exact_nonpositive_int(z) is not None:
            raise PoleAtNonpositiveInteger(f"gamma pole at s={z}")
        val = mp.gamma(z)
        err = abs(val) * ctx.rounding_unit * 8
        return EvalResult(value=val, err_bound=err)


def reciprocal_gamma(s, ctx: PrecisionContext) -> mpc:
    """1/Gamma(s); entire, exactly zero at nonpositive integers."""
    with ctx.workprec():
        return mp.rgamma(to_mpc(s))


# ---------------------------------------------------------------------------
# upper incomplete gamma: gmpy2 kernel
# ---------------------------------------------------------------------------

def _g_upper_cf(alpha, x, eps, cap):
    """Continued fraction (modified Lentz) for Gamma(alpha, x), x > 0.

    Returns (value, iterations) or raises ConvergenceFailure.
    """
    tiny = g_mpfr(2) ** (-4 * gmpy2.get_context().precision)
    b = x + 1 - alpha
    c = 1 / tiny
    d = 1 / b if b != 0 else 1 / tiny
    h = d
    i = 0
    for i in range(1, cap + 1):
        an = -i * (i - alpha)
        b = b + 2
        d = b + an * d
        if d == 0:
            d = tiny
        c = b + an / c
        if c == 0:
            c = tiny
        d = 1 / d
        delta = d * c
        h = h * delta
        dd = delta - 1
        if abs(dd.real) + abs(dd.imag) < eps:
            break
    else:
        raise ConvergenceFailure("incomplete gamma continued fraction hit the iteration cap")
    front = gmpy2.exp(-x + alpha * gmpy2.log(x))
    return front * h, i


def _g_lower_series(alpha, x, eps, cap):
    """Kummer series for the lower function gamma(alpha, x), x >= 0.

    Returns (value, max_term_scale, iterations).
    """
    if x == 0:
        return gmpy2.mpc(0), g_mpfr(0), 0
    t = 1 / alpha
    s = t
    peak = abs(t)
    k = 0
    for k in range(1, cap + 1):
        t = t * (x / (alpha + k))
        s = s + t
        at = abs(t)
        if at > peak:
            peak = at
        if at < eps * abs(s):
            break
    else:
        raise ConvergenceFailure("incomplete gamma power series hit the iteration cap")
    front = gmpy2.exp(-x + alpha * gmpy2.log(x))
    return front * s, abs(front) * peak, k


def _g_exp_integral_e1(x, eps, cap):
    """E_1(x) = Gamma(0, x) for 0 < x < 1 via the alternating series."""
    # E_1(x) = -euler - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    acc = -gmpy2.const_euler() - gmpy2.log(x)
    term = g_mpfr(1)
    for k in range(1, cap + 1):
        term = term * (-x) / k
        piece = -term / k
        acc = acc + piece
        if abs(piece) < eps * abs(acc):
            break
    else:
        raise ConvergenceFailure("E1 series hit the iteration cap")
    return acc


def _g_upper_nonpositive_int(m: int, x, eps, cap):
    """Gamma(-m, x) for integer m >= 0 by downward recurrence from E_1."""
    if x >= 1:
        val, _ = _g_upper_cf(gmpy2.mpc(0), x, eps, cap)
        val = val.real
    else:
        val = _g_exp_integral_e1(x, eps, cap)
    scale = abs(val)
    emx = gmpy2.exp(-x)
    for j in range(1, m + 1):
        # Gamma(-j, x) = (Gamma(-j+1, x) - x^{-j} e^{-x}) / (-j)
        hump = emx * x ** (-j)
        scale = max(scale, abs(hump))
        val = (val - hump) / (-j)
    return val, scale


def upper_incomplete_gamma(alpha, x, ctx: PrecisionContext) -> EvalResult:
    """Gamma(alpha, x) = int_x^inf e^{-t} t^{alpha-1} dt, principal branch.

    Parameters
    ----------
    alpha : complex-like
        Arbitrary complex order (nonpositive integers included).
    x : real-like
        Nonnegative real argument; x = 0 requires Re(alpha) > 0.
    """
    with ctx.workprec():
        a = to_mpc(alpha)
        xr = to_mpf(x)
        if xr < 0:
            raise DomainError("upper_incomplete_gamma requires x >= 0")
        if xr == 0:
            if a.real <= 0:
                raise DomainError("Gamma(alpha, 0) requires Re(alpha) > 0")
            g = complex_gamma(a, ctx)
            return g
        cap = 10 * ctx.working_bits
        val_g, scale = _upper_gamma_kernel(mpc_to_g(a), mpf_to_g(xr), ctx, cap)
        val = g_to_mpc(val_g)
        err = (abs(val) + g_to_mpf(g_mpfr(scale))) * ctx.rounding_unit * 16
        return EvalResult(value=val, err_bound=err)


def _upper_gamma_kernel(a_g, x_g, ctx: PrecisionContext, cap: int, _depth: int = 0):
    """gmpy2-level Gamma(alpha, x) with cancellation-aware retries.

    Returns (value, scale) where ``scale`` bounds the largest intermediate
    magnitude (for rounding-slack purposes).  Assumes the working precision
    has already been set by the caller's context manager.
    """
    prec = gmpy2.get_context().precision
    eps = g_mpfr(2) ** (-(prec - 8))

    # exact nonpositive-integer order: series and Gamma(alpha) both degenerate
    if a_g.imag == 0 and a_g.real <= 0 and gmpy2.is_integer(a_g.real):
        val, scale = _g_upper_nonpositive_int(int(-a_g.real), x_g, eps, cap)
        return gmpy2.mpc(val), scale

    amod = abs(a_g)
    if x_g >= amod + 4:
        val, _ = _g_upper_cf(a_g, x_g, eps, cap)
        return val, abs(val)

    lower, peak, _ = _g_lower_series(a_g, x_g, eps, cap)
    with mp.workprec(prec):
        gamma_a = mpc_to_g(mp.gamma(g_to_mpc(a_g)))
    val = gamma_a - lower
    scale = max(abs(gamma_a), abs(lower), peak)
    # subtraction may cancel; retry with the lost bits restored
    av = abs(val)
    if av > 0 and scale > 0:
        lost = gmpy2.log2(scale / av)
        if lost > ctx.guard_bits and _depth < 3:
            extra = int(lost) + 16
            saved = gmpy2.get_context().precision
            gmpy2.get_context().precision = saved + extra
            try:
                hi_val, hi_scale = _upper_gamma_kernel(
                    gmpy2.mpc(a_g), g_mpfr(x_g), ctx, cap, _depth + 1)
            finally:
                gmpy2.get_context().precision = saved
            return gmpy2.mpc(hi_val), g_mpfr(hi_scale / 2 ** extra + abs(hi_val))
    return val, scale


# ---------------------------------------------------------------------------
# Tate gamma factors
# ---------------------------------------------------------------------------

def tate_gamma(sign: str, s, ctx: PrecisionContext) -> EvalResult:
    """The Tate gamma factor gamma^{+}(s) or gamma^{-}(s).

    gamma^{+}(s) = pi^{1/2-s} Gamma(s/2)   / Gamma((1-s)/2)
    gamma^{-}(s) = pi^{1/2-s} Gamma((s+1)/2) / Gamma((2-s)/2)

    Both satisfy gamma^{±}(s) gamma^{±}(1-s) = 1.

    Raises
    ------
    PoleOrZero
        At the exact integer points where the numerator gamma has a pole
        (``kind='pole'``) or the denominator gamma has a pole
        (``kind='zero'``).
    """
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    with ctx.workprec():
        z = to_mpc(s)
        if sign == "+":
            num_arg, den_arg = z / 2, (1 - z) / 2
        else:
            num_arg, den_arg = (z + 1) / 2, (2 - z) / 2
        if _exact_nonpositive_int(num_arg) is not None:
            raise PoleOrZero("pole", f"numerator gamma pole at s={z}")
        if _exact_nonpositive_int(den_arg) is not None:
            raise PoleOrZero("zero", f"denominator gamma pole at s={z}")
        val = mp.power(mp.pi, mpf(1) / 2 - z) * mp.gamma(num_arg) * mp.rgamma(den_arg)
        return EvalResult(value=val, err_bound=abs(val) * ctx.rounding_unit * 16)
