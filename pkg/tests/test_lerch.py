"""Core Lerch evaluator checks.

The strongest oracle here is the exact decomposition of the extended
function with rational a = p/q into Hurwitz zetas,

    zeta_*(s, p/q, c) = q^{-s} sum_{r=0}^{q-1} e^{2 pi i r p / q}
                         zeta_H(s, (r+c)/q),    0 < c <= 1,

evaluated through mpmath's Euler-Maclaurin Hurwitz zeta, which shares no
code with the incomplete-gamma route under test.
"""

import random
from fractions import Fraction as F

import pytest
from mpmath import mp, mpc, mpf

from lerchzeta.lerch import (
    LerchPoint,
    PoleEncountered,
    dirichlet_zeta_star,
    hurwitz,
    lerch_transform_check,
    lhat_star,
    lpm_star,
    periodic_zeta,
    reduce_fundamental,
    zeta_star,
)
from lerchzeta.precision import DomainError, PrecisionContext, expi_2pi

CTX = PrecisionContext(128, 16)
TOL = mpf(2) ** -64


def hurwitz_comb_oracle(s, a: F, c: F, dps=70):
    """Independent route via mpmath's Hurwitz zeta."""
    q, p = a.denominator, a.numerator
    with mp.workprec(240):
        tot = mp.mpf(0)
        for r in range(q):
            tot += expi_2pi(F(p * r, q)) * mp.zeta(mpc(s), (mpf(r) + mpf(c.numerator) / c.denominator) / q)
        return mp.power(q, -mpc(s)) * tot


def rand_rational(rng, lo=0, hi=1, max_den=40):
    q = rng.randrange(2, max_den)
    p = rng.randrange(int(lo * q) + 1, int(hi * q))
    f = F(p, q)
    return f if lo < f < hi else F(1, 3)


# ---------------------------------------------------------------------------
# known values
# ---------------------------------------------------------------------------

def test_corner_is_riemann_zeta():
    rng = random.Random(30)
    with CTX.workprec():
        r = zeta_star(2, 1, 1, CTX)
        assert abs(r.value - mp.pi**2 / 6) < mpf("1e-37")
        for _ in range(20):
            s = mpc(rng.uniform(1.1, 6), rng.uniform(-10, 10))
            ref = mp.zeta(s)
            for (a, c) in [(0, 1), (1, 1)]:
                r = zeta_star(s, a, c, CTX)
                assert abs(r.value - ref) < mpf("1e-36")


def test_catalan_point():
    with CTX.workprec():
        r = zeta_star(2, F(1, 2), F(1, 2), CTX)
        assert abs(r.value - 4 * mp.catalan) < mpf("1e-37")


def test_eta_point():
    with CTX.workprec():
        r = zeta_star(2, F(1, 2), 0, CTX)
        assert abs(r.value + mp.pi**2 / 12) < mpf("1e-37")


def test_hurwitz_values():
    with CTX.workprec():
        r = hurwitz(2, F(1, 2), CTX)
        assert abs(r.value - mp.pi**2 / 2) < mpf("1e-37")
        r = hurwitz(2, 1, CTX)
        assert abs(r.value - mp.pi**2 / 6) < mpf("1e-37")
        r = hurwitz(mpf("-0.5"), F(1, 3), CTX)
        ref = mp.zeta(mpf("-0.5"), mpf(1) / 3)
        assert abs(r.value - ref) < mpf("1e-37")
    with pytest.raises(DomainError):
        hurwitz(2, F(-1, 2), CTX)


def test_periodic_zeta_values():
    with CTX.workprec():
        r = periodic_zeta(F(1, 2), 1, CTX)
        assert abs(r.value + mp.ln(2)) < mpf("1e-37")
        r = periodic_zeta(F(1, 3), 2, CTX)
        ref = mp.polylog(2, mp.exp(2j * mp.pi / 3))
        assert abs(r.value - ref) < mpf("1e-30")


def test_oracle_grid_complex_s():
    cases = [
        (mpc("0.5", "3"), F(1, 3), F(2, 5)),
        (mpc("-1.5", "0"), F(2, 7), F(3, 4)),
        (mpc("2", "5"), F(1, 7), F(3, 7)),
        (mpc("-3.2", "-11"), F(4, 9), F(1, 6)),
        (mpc("0", "1"), F(5, 11), F(7, 9)),
    ]
    with CTX.workprec():
        for s, a, c in cases:
            r = zeta_star(s, a, c, CTX)
            ref = hurwitz_comb_oracle(s, a, c)
            assert abs(r.value - ref) < mpf("1e-36") * (1 + abs(ref))


# ---------------------------------------------------------------------------
# reduction and twisted periodicity
# ---------------------------------------------------------------------------

def test_reduce_fundamental_examples():
    with CTX.workprec():
        rec = reduce_fundamental(mpf("1.25"), mpf("0.5"), CTX)
        assert rec.a0 == mpf("0.25") and rec.c0 == mpf("0.5")
        assert abs(rec.phase - 1) < mpf("1e-36")

        rec = reduce_fundamental(F(1, 4), F(3, 2), CTX)
        assert rec.a0 == F(1, 4) and rec.c0 == F(1, 2)
        assert abs(rec.phase - mpc(0, -1)) == 0  # exact -i

        rec = reduce_fundamental(F(9, 4), F(7, 2), CTX)
        assert rec.a0 == F(1, 4) and rec.c0 == F(1, 2)
        assert abs(rec.phase - mpc(0, 1)) == 0  # exact +i


def test_reduction_reconstruction_against_series():
    with CTX.workprec():
        for (a, c) in [(F(9, 4), F(7, 2)), (F(-5, 3), F(11, 7))]:
            rec = reduce_fundamental(a, c, CTX)
            d_full = dirichlet_zeta_star(3, a, c, CTX)
            d_red = dirichlet_zeta_star(3, rec.a0, rec.c0, CTX)
            assert abs(d_full.value - rec.phase * d_red.value) < \
                d_full.err_bound + d_red.err_bound + mpf("1e-30")


def test_twisted_periodicity():
    rng = random.Random(31)
    with CTX.workprec():
        for _ in range(8):
            a = rand_rational(rng) + rng.randrange(-3, 3)
            c = rand_rational(rng) + rng.randrange(-3, 3)
            s = mpc(rng.uniform(-3, 3), rng.uniform(-5, 5))
            base = zeta_star(s, a, c, CTX)
            shift_a = zeta_star(s, a + 1, c, CTX)
            shift_c = zeta_star(s, a, c + 1, CTX)
            assert abs(shift_a.value - base.value) < TOL
            assert abs(shift_c.value - expi_2pi(-F(a)) * base.value) < TOL


# ---------------------------------------------------------------------------
# functional equations
# ---------------------------------------------------------------------------

def test_weil_functional_equation_spot():
    with CTX.workprec():
        for sign, w in (("+", mpc(1)), ("-", mpc(0, 1))):
            for (s, a, c) in [(mpc("0.5"), F(1, 3), F(2, 5)),
                              (mpc("2", "7"), F(2, 9), F(5, 8)),
                              (mpc("-3.5", "-12"), F(7, 10), F(1, 10))]:
                l1 = lhat_star(sign, s, a, c, CTX)
                l2 = lhat_star(sign, 1 - s, 1 - c, a, CTX)
                resid = abs(l1.value - w * expi_2pi(-F(a) * F(c)) * l2.value)
                assert resid < TOL


def test_weil_fe_outside_unit_square():
    rng = random.Random(32)
    with CTX.workprec():
        for _ in range(6):
            a = rand_rational(rng) + rng.randrange(-3, 4)
            c = rand_rational(rng) + rng.randrange(-3, 4)
            s = mpc(rng.uniform(-4, 4), rng.uniform(-10, 10))
            for sign, w in (("+", mpc(1)), ("-", mpc(0, 1))):
                l1 = lhat_star(sign, s, a, c, CTX)
                l2 = lhat_star(sign, 1 - s, 1 - F(c), F(a), CTX)
                resid = abs(l1.value - w * expi_2pi(-F(a) * F(c)) * l2.value)
                assert resid < TOL


def test_lhat_dirichlet_series_forms():
    # two-sided series at a = c = 1/2: the plus combination cancels in
    # (n, -n-1) pairs, the sgn-weighted minus combination doubles
    with CTX.workprec():
        s = mpc(3)
        a, c = F(1, 2), F(1, 2)
        lp = lhat_star("+", s, a, c, CTX)
        assert abs(lp.value) < mpf("1e-36")
        one_sided = mp.nsum(lambda n: (-1)**n * (n + mpf(1) / 2)**-3, [0, mp.inf])
        lm = lhat_star("-", s, a, c, CTX)
        gminus = mp.power(mp.pi, -(mpf(s.real) + 1) / 2) * mp.gamma((mpf(s.real) + 1) / 2)
        assert abs(lm.value - gminus * 2 * one_sided) < mpf("1e-30")


def test_lhat_catalan_identity():
    # L^-(2, 1/2, 1/2) = 2 * 4 Catalan; L^+ vanishes there
    with CTX.workprec():
        r = lhat_star("-", 2, F(1, 2), F(1, 2), CTX)
        ref = mp.power(mp.pi, -mpf(3) / 2) * mp.gamma(mpf(3) / 2) * 8 * mp.catalan
        assert abs(r.value - ref) < mpf("1e-36")
        assert abs(lhat_star("+", 2, F(1, 2), F(1, 2), CTX).value) < mpf("1e-36")


def test_trivial_zeros():
    rng = random.Random(33)
    with CTX.workprec():
        for _ in range(4):
            a, c = rand_rational(rng), rand_rational(rng)
            for s in (0, -2, -4):
                assert abs(lpm_star("+", s, a, c, CTX).value) < mpf(2) ** -60
            for s in (-1, -3, -5):
                assert abs(lpm_star("-", s, a, c, CTX).value) < mpf(2) ** -60


# ---------------------------------------------------------------------------
# dirichlet oracle route
# ---------------------------------------------------------------------------

def test_dirichlet_requires_margin():
    with pytest.raises(DomainError):
        dirichlet_zeta_star(mpc("1.05"), F(1, 3), F(1, 2), CTX)


def test_dirichlet_oracle_agreement():
    rng = random.Random(34)
    with CTX.workprec():
        for _ in range(10):
            s = mpc(rng.uniform(1.2, 6), rng.uniform(-8, 8))
            a, c = rand_rational(rng), rand_rational(rng)
            r1 = zeta_star(s, a, c, CTX)
            r2 = dirichlet_zeta_star(s, a, c, CTX)
            assert abs(r1.value - r2.value) <= r1.err_bound + r2.err_bound


def test_dirichlet_float_params():
    with CTX.workprec():
        r = dirichlet_zeta_star(4, mpf("0.3"), mpf("0.7"), CTX)
        ref = hurwitz_comb_oracle(4, F(3, 10), F(7, 10))
        assert abs(r.value - ref) <= r.err_bound + mpf("1e-30")


# ---------------------------------------------------------------------------
# poles and finite parts
# ---------------------------------------------------------------------------

def test_hurwitz_pole_structure():
    with CTX.workprec():
        r = zeta_star(1, 0, F(1, 2), CTX)
        assert r.pole is not None
        assert abs(r.pole.location - 1) == 0
        assert abs(r.pole.residue - 1) < mpf("1e-36")
        # finite part of Hurwitz zeta at s=1 is -digamma(c)
        assert abs(r.value + mp.digamma(mpf(1) / 2)) < mpf("1e-36")


def test_pole_matches_limit():
    # finite part at s=1 equals the Richardson limit of zeta_* - 1/(s-1)
    with CTX.workprec():
        fp = zeta_star(1, 0, F(1, 3), CTX).value
        for eps_exp in (20, 30):
            eps = mpf(2) ** -eps_exp
            up = zeta_star(1 + eps, 0, F(1, 3), CTX).value - 1 / eps
            dn = zeta_star(1 - eps, 0, F(1, 3), CTX).value + 1 / eps
            # symmetric average kills the linear term
            assert abs((up + dn) / 2 - fp) < mpf(2) ** (-2 * eps_exp + 4)


def test_no_pole_for_float_a():
    with CTX.workprec():
        r = zeta_star(1, mpf(0), F(1, 2), CTX)
        assert r.pole is None
        assert mp.isfinite(r.value)


def test_s_zero_finite():
    with CTX.workprec():
        # zeta(0) = -1/2 through the corner identity
        r = zeta_star(0, 0, 1, CTX)
        assert r.pole is None
        assert abs(r.value + mpf(1) / 2) < mpf("1e-36")
        # Hurwitz zeta(0, c) = 1/2 - c
        r = zeta_star(0, 0, F(1, 3), CTX)
        assert abs(r.value - (mpf(1) / 2 - mpf(1) / 3)) < mpf("1e-36")


def test_lhat_pole_fields_near_poles():
    with CTX.workprec():
        r = lhat_star("+", 0, F(1, 3), 2, CTX)  # integer c, at s = 0
        assert r.pole is not None and abs(r.pole.location) == 0
        # residue -2 e^{-2 pi i a c} with reduction phase folded in
        ref = -2 * expi_2pi(-F(1, 3) * 2)
        assert abs(r.pole.residue - ref) < mpf("1e-36")
        r = lhat_star("+", 1, 3, F(1, 4), CTX)  # integer a, at s = 1
        assert r.pole is not None and abs(r.pole.location - 1) == 0
        assert abs(r.pole.residue - 2) < mpf("1e-36")


# ---------------------------------------------------------------------------
# transformation formula
# ---------------------------------------------------------------------------

def test_transform_residuals():
    with CTX.workprec():
        for (s, a, c) in [(mpc(2), F(1, 3), F(2, 5)),
                          (mpc(3), F(1, 2), F(1, 2)),
                          (mpc(2, 5), F(1, 7), F(3, 7)),
                          (mpc("0.6", "-2.5"), F(3, 8), F(5, 9))]:
            rep = lerch_transform_check(s, a, c, CTX)
            assert rep.residual < TOL


def test_transform_pole_rejection():
    with pytest.raises(PoleEncountered):
        lerch_transform_check(0, F(1, 3), F(2, 5), CTX)
    with pytest.raises(PoleEncountered):
        lerch_transform_check(-2, F(1, 3), F(2, 5), CTX)
    with pytest.raises(PoleEncountered):
        lerch_transform_check(1, F(1, 3), 1, CTX)


# ---------------------------------------------------------------------------
# point classification
# ---------------------------------------------------------------------------

def test_float_and_rational_params_agree():
    # away from integers, mpf-typed parameters compute the same function
    with CTX.workprec():
        for s in (mpc("0.5", "3"), mpc(3)):
            v1 = zeta_star(s, mpf("0.3"), mpf("0.7"), CTX).value
            v2 = zeta_star(s, F(3, 10), F(7, 10), CTX).value
            assert abs(v1 - v2) < mpf("1e-36") * (1 + abs(v2))


def test_lerch_point_classification():
    with CTX.workprec():
        assert LerchPoint(mpc(2), F(1, 3), F(2, 5)).region == "interior"
        assert LerchPoint(mpc(2), 0, F(2, 5)).region == "edge"
        assert LerchPoint(mpc(2), 1, 1).region == "corner"
        assert LerchPoint(mpc(2), F(5, 2), F(1, 2)).region == "general"
        assert LerchPoint(mpc(2), F(1, 3), F(2, 5)).a_is_integer is False
        assert LerchPoint(mpc(2), 2, F(2, 5)).a_is_integer is True
        assert LerchPoint(mpc(2), mpf(1), F(2, 5)).a_is_integer is False
