"""Precision contexts, evaluation results, and exact phase helpers.

Every public operation in this package takes a :class:`PrecisionContext`
describing the caller's working precision and returns values together with
a conservative absolute error bound.  Internally, computations run at a
padded precision (``eval_bits``) so that accumulated rounding stays far
below the reported bound.

mpmath's global context and gmpy2's thread context are both adjusted inside
:meth:`PrecisionContext.workprec`; a module lock serializes mpmath access
because its context is process-global.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import gmpy2
from mpmath import mp, mpc, mpf

_MP_LOCK = threading.RLock()

# complex values are mpmath mpc numbers carried at the context's precision
ComplexValue = mpc
Rational = Union[int, Fraction]
RealParam = Union[int, Fraction, float, mpf, str]


class DomainError(ValueError):
    """An argument lies outside an operation's stated domain."""


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision and derived error target for one evaluation.

    Parameters
    ----------
    working_bits : int
        Binary precision the caller wants results at (>= 64).
    guard_bits : int
        Guard bits folded into the error target (>= 8).  The target
        absolute error is ``2**(-working_bits + guard_bits)``.
    """

    working_bits: int = 128
    guard_bits: int = 16

    def __post_init__(self):
        if self.working_bits < 64:
            raise DomainError("working_bits must be >= 64")
        if self.guard_bits < 8:
            raise DomainError("guard_bits must be >= 8")

    @property
    def eval_bits(self) -> int:
        # internal padding absorbs rounding accumulation and mild cancellation
        return self.working_bits + 2 * self.guard_bits + 24

    def workprec(self, extra: int = 0) -> "_WorkPrec":
        return _WorkPrec(self.eval_bits + extra)

    @property
    def target_abs_error(self) -> mpf:
        with self.workprec():
            return mpf(2) ** (-self.working_bits + self.guard_bits)

    @property
    def rounding_unit(self) -> mpf:
        """Unit used when reporting rounding slack (well below the target)."""
        with self.workprec():
            return mpf(2) ** (-(self.working_bits + self.guard_bits))


class _WorkPrec:
    """Set mpmath and gmpy2 to a common precision, holding the module lock."""

    def __init__(self, bits: int):
        self.bits = bits

    def __enter__(self):
        _MP_LOCK.acquire()
        self._saved_mp = mp.prec
        mp.prec = self.bits
        ctx = gmpy2.get_context()
        self._saved_g = ctx.precision
        ctx.precision = self.bits
        return self

    def __exit__(self, exc_type, exc, tb):
        gmpy2.get_context().precision = self._saved_g
        mp.prec = self._saved_mp
        _MP_LOCK.release()
        return False


@dataclass(frozen=True)
class PoleInfo:
    location: mpc
    residue: mpc


@dataclass(frozen=True)
class EvalResult:
    """A complex value with a conservative absolute error bound.

    When ``pole`` is set, ``value`` is the finite part after removing
    ``residue / (s - location)``; the bound covers the finite part.
    """

    value: mpc
    err_bound: mpf
    pole: Optional[PoleInfo] = None

    def with_pole_folded(self, s: mpc) -> mpc:
        """Reconstruct the full function value at ``s`` (s != pole location)."""
        if self.pole is None:
            return self.value
        return self.value + self.pole.residue / (s - self.pole.location)


# ---------------------------------------------------------------------------
# parameter coercion and integrality
# ---------------------------------------------------------------------------

def is_exact_integer(x) -> bool:
    """Exact integrality: only int and integral Fraction qualify.

    Floats and mpf values never count as integers, even when they equal one
    bitwise: the functions in this package are genuinely discontinuous at
    integer parameters, so only an exact-typed input may select the
    integer-parameter branch.
    """
    if isinstance(x, bool):
        return False
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    return False


def to_mpf(x: RealParam) -> mpf:
    """Convert a real parameter to mpf at the current precision."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        return mpf(x)
    return mpf(x)


def to_mpc(x) -> mpc:
    if isinstance(x, Fraction):
        return mpc(to_mpf(x))
    return mpc(x)


def frac_mod_1(x: RealParam):
    """Reduce x mod 1 into [0, 1), exactly for int/Fraction inputs.

    Returns ``(x0, shift)`` with ``x = x0 + shift`` and shift an int.
    """
    if isinstance(x, bool):
        raise DomainError("bool is not a valid parameter")
    if isinstance(x, int):
        return Fraction(0), x
    if isinstance(x, Fraction):
        shift = x.numerator // x.denominator
        return x - shift, shift
    xm = to_mpf(x)
    fl = mp.floor(xm)
    return xm - fl, int(fl)


# ---------------------------------------------------------------------------
# exact unit phases
# ---------------------------------------------------------------------------

def expi_pi(u: RealParam) -> mpc:
    """e^{i pi u} with exact rational reduction of u mod 2 before rounding."""
    if isinstance(u, (int, Fraction)):
        u = Fraction(u) % 2
        if u.denominator == 1:
            return mpc(1) if u == 0 else mpc(-1)
        if u.denominator == 2:
            return mpc(0, 1) if u == Fraction(1, 2) else mpc(0, -1)
        um = to_mpf(u)
    else:
        um = to_mpf(u)
        um = um - 2 * mp.floor(um / 2)
    return mpc(mp.cospi(um), mp.sinpi(um))


def expi_2pi(r: RealParam) -> mpc:
    """e^{2 pi i r} with exact rational reduction of r mod 1."""
    if isinstance(r, (int, Fraction)):
        return expi_pi(2 * Fraction(r))
    rm = to_mpf(r)
    return expi_pi(2 * (rm - mp.floor(rm)))


def prod_param(x: RealParam, y: RealParam):
    """Product keeping exact rational typing when both factors are exact."""
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        return Fraction(x) * Fraction(y)
    return to_mpf(x) * to_mpf(y)


def sub_param(x: RealParam, y: RealParam):
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        return Fraction(x) - Fraction(y)
    return to_mpf(x) - to_mpf(y)


def one_minus(x: RealParam):
    return sub_param(1, x)


# ---------------------------------------------------------------------------
# exact conversions between mpmath and gmpy2 scalars
# ---------------------------------------------------------------------------

def mpf_to_g(x: mpf) -> gmpy2.mpfr:
    """Exact mpmath -> gmpy2 conversion (current precisions must match)."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return gmpy2.mpfr(0)
    r = gmpy2.mpfr(int(man))
    r = r * gmpy2.exp2(exp)
    return -r if sign else r


def mpc_to_g(z: mpc) -> gmpy2.mpc:
    return gmpy2.mpc(mpf_to_g(z.real), mpf_to_g(z.imag))


def g_to_mpf(x: gmpy2.mpfr) -> mpf:
    if gmpy2.is_zero(x):
        return mpf(0)
    m, e = x.as_mantissa_exp()
    return mp.ldexp(mpf(int(m)), int(e))


def g_to_mpc(z) -> mpc:
    if isinstance(z, gmpy2.mpfr):
        return mpc(g_to_mpf(z))
    return mpc(g_to_mpf(z.real), g_to_mpf(z.imag))


def g_abs2(z) -> gmpy2.mpfr:
    """|z|^2 for gmpy2 mpc/mpfr without a square root."""
    if isinstance(z, gmpy2.mpfr):
        return z * z
    return gmpy2.norm(z)
