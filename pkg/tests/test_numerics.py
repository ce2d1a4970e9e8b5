"""Kernel checks: gamma, upper incomplete gamma, Tate factors.

The incomplete-gamma oracle is adaptive quadrature of the defining
integral, kept fully independent of the series/continued-fraction
implementation path.
"""

import random

import pytest
from mpmath import mp, mpc, mpf

from lerchzeta.numerics import (
    ConvergenceFailure,
    PoleAtNonpositiveInteger,
    PoleOrZero,
    complex_gamma,
    tate_gamma,
    upper_incomplete_gamma,
)
from lerchzeta.precision import DomainError, PrecisionContext

CTX = PrecisionContext(128, 16)


def quad_upper_gamma(alpha, x, dps=45):
    """Independent oracle: direct numerical integration of the definition."""
    with mp.workdps(dps):
        a = mpc(alpha)
        return mp.quad(lambda t: mp.e**(-t) * t**(a - 1), [mpf(x), mp.inf])


def test_gamma_half():
    r = complex_gamma(mpf(1) / 2, CTX)
    with CTX.workprec():
        assert abs(r.value - mp.sqrt(mp.pi)) <= r.err_bound
        assert r.err_bound <= CTX.target_abs_error * abs(r.value)


def test_gamma_factorial():
    r = complex_gamma(5, CTX)
    with CTX.workprec():
        assert abs(r.value - 24) <= r.err_bound


def test_gamma_reflection_point():
    # Gamma(0.3) Gamma(0.7) = pi / sin(0.3 pi), checked at high precision
    with CTX.workprec():
        lhs = complex_gamma(mpf("0.3"), CTX).value * complex_gamma(mpf("0.7"), CTX).value
        rhs = mp.pi / mp.sinpi(mpf("0.3"))
        assert abs(lhs - rhs) < mpf(2) ** -120 * abs(rhs)


def test_gamma_pole_rejected():
    with pytest.raises(PoleAtNonpositiveInteger):
        complex_gamma(0, CTX)
    with pytest.raises(PoleAtNonpositiveInteger):
        complex_gamma(-3, CTX)


def test_gamma_reflection_sweep():
    rng = random.Random(11)
    with CTX.workprec():
        tol = mpf(2) ** (-CTX.working_bits + CTX.guard_bits)
        for _ in range(100):
            s = mpc(rng.uniform(-10, 10), rng.uniform(-20, 20))
            if abs(s.imag) < 0.05 and abs(s.real - mp.nint(s.real)) < 0.05:
                continue
            g1 = complex_gamma(s, CTX).value
            g2 = complex_gamma(1 - s, CTX).value
            assert abs(g1 * g2 * mp.sin(mp.pi * s) / mp.pi - 1) < tol


def test_gamma_duplication_sweep():
    rng = random.Random(12)
    with CTX.workprec():
        tol = mpf(2) ** (-CTX.working_bits + CTX.guard_bits)
        for _ in range(40):
            s = mpc(rng.uniform(0.1, 8), rng.uniform(-10, 10))
            lhs = complex_gamma(s / 2, CTX).value * complex_gamma((1 + s) / 2, CTX).value
            rhs = mp.sqrt(2 * mp.pi) * mp.power(2, mpf(1) / 2 - s) * complex_gamma(s, CTX).value
            assert abs(lhs - rhs) < tol * abs(rhs)


def test_upper_gamma_exponential():
    r = upper_incomplete_gamma(1, mpf(1), CTX)
    with CTX.workprec():
        assert abs(r.value - mp.e**-1) <= r.err_bound


def test_upper_gamma_at_zero_limit():
    r = upper_incomplete_gamma(mpf(1) / 2, mpf(0), CTX)
    with CTX.workprec():
        assert abs(r.value - mp.sqrt(mp.pi)) <= r.err_bound
    with pytest.raises(DomainError):
        upper_incomplete_gamma(mpc(-1, 1), 0, CTX)


def test_upper_gamma_complex_vs_quadrature():
    cases = [
        (mpc("0.25", "7"), mpf("3.5")),
        (mpc("2.5", "-4"), mpf("0.8")),
        (mpc("-1.7", "0.3"), mpf("2.2")),
        (mpc("3", "0"), mpf("17.0")),
    ]
    for a, x in cases:
        r = upper_incomplete_gamma(a, x, CTX)
        ref = quad_upper_gamma(a, x)
        with CTX.workprec():
            assert abs(r.value - ref) < mpf("1e-36") * (1 + abs(ref))


def test_upper_gamma_vs_mpmath():
    rng = random.Random(13)
    with CTX.workprec():
        for _ in range(25):
            a = mpc(rng.uniform(-6, 6), rng.uniform(-12, 12))
            x = mpf(rng.uniform(0.02, 40))
            r = upper_incomplete_gamma(a, x, CTX)
            ref = mp.gammainc(a, x, mp.inf)
            assert abs(r.value - ref) <= r.err_bound + abs(ref) * mpf(2) ** -110


def test_upper_gamma_nonpositive_integer_order():
    with CTX.workprec():
        for m, x in [(0, mpf("0.3")), (0, mpf(4)), (-1, mpf("0.7")), (-2, mpf(3)), (-5, mpf("0.04"))]:
            r = upper_incomplete_gamma(m, x, CTX)
            ref = mp.gammainc(mpf(m), x, mp.inf)
            assert abs(r.value - ref) < mpf(2) ** -100 * (1 + abs(ref))


def test_upper_gamma_recurrence_property():
    # Gamma(alpha+1, x) = alpha Gamma(alpha, x) + x^alpha e^{-x}
    rng = random.Random(14)
    with CTX.workprec():
        tol = mpf(2) ** (-CTX.working_bits + CTX.guard_bits)
        for _ in range(30):
            a = mpc(rng.uniform(-5, 5), rng.uniform(-8, 8))
            x = mpf(rng.uniform(0.05, 25))
            up1 = upper_incomplete_gamma(a + 1, x, CTX).value
            up0 = upper_incomplete_gamma(a, x, CTX).value
            extra = mp.power(x, a) * mp.e**-x
            scale = max(abs(up1), abs(a * up0), abs(extra), mpf(1))
            assert abs(up1 - a * up0 - extra) < tol * scale


def test_upper_gamma_tiny_x():
    # boundary probes reach x = pi * 2^{-24}; series must stay accurate
    with CTX.workprec():
        for a in [mpc("0.25", "1.0"), mpc("-0.25", "2.0"), mpc("1.5", "0")]:
            x = mpf(2) ** -24
            r = upper_incomplete_gamma(a, x, CTX)
            ref = mp.gammainc(a, x, mp.inf)
            assert abs(r.value - ref) < abs(ref) * mpf(2) ** -100


def test_tate_gamma_symmetric_point():
    for sign in "+-":
        r = tate_gamma(sign, mpf(1) / 2, CTX)
        assert abs(r.value - 1) <= r.err_bound


def test_tate_gamma_functional_identity():
    rng = random.Random(15)
    with CTX.workprec():
        tol = mpf(2) ** (-CTX.working_bits + CTX.guard_bits)
        g1 = tate_gamma("+", mpf("0.3"), CTX).value
        g2 = tate_gamma("+", mpf("0.7"), CTX).value
        assert abs(g1 * g2 - 1) < tol
        for _ in range(25):
            s = mpc(rng.uniform(-4, 4), rng.uniform(-6, 6))
            for sign in "+-":
                v1 = tate_gamma(sign, s, CTX).value
                v2 = tate_gamma(sign, 1 - s, CTX).value
                assert abs(v1 * v2 - 1) < tol * max(1, abs(v1 * v2))


def test_tate_gamma_pole_zero_classification():
    with pytest.raises(PoleOrZero) as ei:
        tate_gamma("+", 0, CTX)
    assert ei.value.kind == "pole"
    with pytest.raises(PoleOrZero) as ei:
        tate_gamma("+", 1, CTX)
    assert ei.value.kind == "zero"
    with pytest.raises(PoleOrZero) as ei:
        tate_gamma("-", -1, CTX)
    assert ei.value.kind == "pole"
    with pytest.raises(PoleOrZero) as ei:
        tate_gamma("-", 2, CTX)
    assert ei.value.kind == "zero"


def test_iteration_cap_signals():
    # a pathological cap forces the convergence failure path
    tiny_cap_ctx = PrecisionContext(64, 8)
    from lerchzeta import numerics

    with tiny_cap_ctx.workprec():
        with pytest.raises(ConvergenceFailure):
            numerics._g_upper_cf(
                numerics.gmpy2.mpc(0.25, 7.0), numerics.g_mpfr(50.0),
                numerics.g_mpfr(2) ** -200, 2)
