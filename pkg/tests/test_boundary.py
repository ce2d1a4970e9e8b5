"""Boundary corrections, renormalization, limit probes, and L^p signatures."""

from fractions import Fraction as F

import pytest
from mpmath import mp, mpc, mpf

from lerchzeta.boundary import (
    BoundaryTarget,
    CaseOutOfRange,
    IntegerSRejected,
    boundary_limit_probe,
    completed_correction,
    continuity_classifier,
    correction,
    correction_terms,
    lhat_renorm,
    lp_diagnostic,
    renorm_boundary_gap,
    renorm_l,
)
from lerchzeta.lerch import lpm_star
from lerchzeta.precision import DomainError, PrecisionContext, expi_2pi

CTX = PrecisionContext(128, 16)
TOL = mpf(2) ** -64


def test_plus_correction_cancels_at_center():
    with CTX.workprec():
        for s in (mpc("2.3", "1.1"), mpc("-0.7", "3")):
            r = correction("+", s, F(1, 2), F(1, 2), CTX)
            assert abs(r.value) < mpf("1e-36")


def test_minus_correction_center_value():
    # the k=1 signs do not cancel at the center: the four-term formula
    # gives 2^{s+1} + 2^{2-s} gamma^{-}(1-s) there
    with CTX.workprec():
        s = mpc("2.3", "1.1")
        r = correction("-", s, F(1, 2), F(1, 2), CTX)
        from lerchzeta.numerics import tate_gamma
        ref = mp.power(2, s + 1) + mp.power(2, 2 - s) * tate_gamma("-", 1 - s, CTX).value
        assert abs(r.value - ref) < mpf("1e-33") * (1 + abs(ref))
        assert abs(r.value) > mpf(1)


def test_correction_term_dominance():
    with CTX.workprec():
        t = correction_terms("+", mpf("2.5"), mpf("0.1"), mpf("0.1"), CTX)
        assert abs(t.c_term - mpf(10) ** mpf("2.5")) < mpf("1e-30")
        for name in ("one_minus_c_term", "a_term", "one_minus_a_term"):
            assert abs(getattr(t, name)) < abs(t.c_term)


def test_integer_s_rejected():
    with pytest.raises(IntegerSRejected):
        correction("+", 2, F(1, 3), F(2, 5), CTX)
    with pytest.raises(IntegerSRejected):
        renorm_l("-", -1, F(1, 3), F(2, 5), CTX)


def test_decomposition_identity():
    with CTX.workprec():
        for sign in "+-":
            for (s, a, c) in [(mpc("0.7", "1.3"), F(1, 3), F(2, 5)),
                              (mpc("-2.2", "-4"), F(5, 7), F(1, 8))]:
                l = lpm_star(sign, s, a, c, CTX)
                r = renorm_l(sign, s, a, c, CTX)
                sc = correction(sign, s, a, c, CTX)
                assert abs(l.value - r.value - sc.value) < \
                    l.err_bound + r.err_bound + sc.err_bound + TOL


def test_completed_correction_fe():
    with CTX.workprec():
        s, a, c = mpc("0.7", "1.3"), F(1, 3), F(2, 5)
        for sign, w in (("+", mpc(1)), ("-", mpc(0, 1))):
            s1 = completed_correction(sign, s, a, c, CTX).value
            s2 = completed_correction(sign, 1 - s, 1 - c, a, CTX).value
            assert abs(s1 - w * expi_2pi(-F(a) * F(c)) * s2) < TOL


def test_renorm_fe_including_boundary():
    with CTX.workprec():
        s = mpc("0.45", "2.2")
        points = [(F(1, 3), F(2, 5)), (F(1, 4), 1), (0, F(2, 5)), (1, 1), (F(5, 8), 0)]
        for a, c in points:
            for sign, w in (("+", mpc(1)), ("-", mpc(0, 1))):
                l1 = lhat_renorm(sign, s, a, c, CTX).value
                l2 = lhat_renorm(sign, 1 - s, 1 - F(c), a, CTX).value
                assert abs(l1 - w * expi_2pi(-F(a) * F(c)) * l2) < TOL


def test_renorm_outside_square_rejected():
    with pytest.raises(DomainError):
        renorm_l("+", mpc("0.5", "1"), F(3, 2), F(1, 2), CTX)


def test_corner_cauchy_sequence():
    """Approaching (0,0) along the diagonal, L^{R,+} converges to
    2 zeta(s) - 1 - gamma^{+}(1-s) (corner formula with both singular
    terms dropped)."""
    from lerchzeta.numerics import tate_gamma

    with CTX.workprec():
        s = mpc("0.6", "1.4")
        corner = renorm_l("+", s, 0, 0, CTX).value
        ref = 2 * mp.zeta(s) - 1 - tate_gamma("+", 1 - s, CTX).value
        assert abs(corner - ref) < mpf("1e-30")
        prev = None
        vals = []
        for k in range(4, 11):
            eps = F(1, 2 ** k)
            vals.append(renorm_l("+", s, eps, eps, CTX).value)
        gaps = [abs(v - corner) for v in vals]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < mpf("1e-2")


def test_boundary_probe_cases():
    with CTX.workprec():
        cases = [
            (BoundaryTarget("c=1", F(3, 10)), mpc("0.25", "1")),
            (BoundaryTarget("c=0", F(3, 10)), mpc("2.3")),
            (BoundaryTarget("a=1", F(3, 5)), mpc("2.5")),
            (BoundaryTarget("a=0", F(2, 5)), mpc("0.5", "3")),
            (BoundaryTarget("corner", (0, 0)), mpc("1.5")),
            (BoundaryTarget("corner", (1, 1)), mpc("0.5", "-2")),
        ]
        for target, s in cases:
            rep = boundary_limit_probe(s, target, CTX)
            assert rep.converged, (target.kind, s, rep.gaps[-1])
            assert rep.gaps[-1] < mpf(2) ** -40


def test_boundary_probe_integer_validity():
    # integer s <= 0 allowed on c-cases, rejected on a-cases; s=1 rejected
    with CTX.workprec():
        rep = boundary_limit_probe(0, BoundaryTarget("c=1", F(3, 10)), CTX, k_end=8)
        assert rep.converged
    with pytest.raises(CaseOutOfRange):
        boundary_limit_probe(2, BoundaryTarget("c=0", F(3, 10)), CTX)
    with pytest.raises(CaseOutOfRange):
        boundary_limit_probe(1, BoundaryTarget("a=0", F(3, 10)), CTX)
    with pytest.raises(CaseOutOfRange):
        boundary_limit_probe(0, BoundaryTarget("a=1", F(3, 10)), CTX)


def test_raw_probe_matches_classifier():
    with CTX.workprec():
        for sig in ("-1", "-0.5", "0.25", "0.5", "0.75", "1.5", "2.5"):
            s = mpf(sig)
            for edge in ("a=0", "a=1", "c=0", "c=1"):
                rep = boundary_limit_probe(s, BoundaryTarget(edge, F(3, 10)), CTX,
                                           include_correction=False,
                                           k_start=4, k_end=44)
                verdict = continuity_classifier(s, edge)
                if verdict == "continuous":
                    assert rep.converged and not rep.diverged, (sig, edge)
                else:
                    assert rep.diverged and not rep.converged, (sig, edge)


def test_classifier_table():
    assert continuity_classifier(2, "a=0") == "continuous"
    assert continuity_classifier(2, "a=1") == "continuous"
    assert continuity_classifier(mpc("0.5", "7"), "a=0") == "discontinuous"
    assert continuity_classifier(2, "c=0") == "discontinuous"
    assert continuity_classifier(-1, "c=0") == "continuous"
    assert continuity_classifier(mpf("0.5"), "c=1") == "continuous"
    assert continuity_classifier(1, "c=1") == "continuous"
    assert continuity_classifier(2, (0, 1)) == "continuous"
    assert continuity_classifier(1, (1, 1)) == "discontinuous"
    assert continuity_classifier(5, (0, 0)) == "discontinuous"
    assert continuity_classifier(5, (1, 0)) == "discontinuous"


def test_renorm_boundary_continuity_gap():
    with CTX.workprec():
        s = mpc("0.5", "2")
        for edge in ("a=0", "a=1", "c=0", "c=1"):
            g = renorm_boundary_gap("+", s, edge, CTX, tangentials=[F(1, 3)], k_end=10)
            assert g < mpf(2) ** -20, (edge, g)


def test_lp_signatures():
    rep = lp_diagnostic((1, 0), mpf("0.5"), 1, CTX)
    assert rep.classification == "bounded"
    rep = lp_diagnostic((1, 0), 2, 1, CTX)
    assert rep.classification == "divergent"
    assert abs(rep.fitted_exponent + 1) < 0.1
    rep = lp_diagnostic((1, 0), mpf("0.5"), 2, CTX)
    assert rep.classification == "divergent"
    with pytest.raises(DomainError):
        lp_diagnostic((0, 0), 2, 1, CTX)


def test_lp_grid_matches_mp_route():
    # double-precision vectorized L^{pm} against the arbitrary-precision route
    import numpy as np

    from lerchzeta.boundary import _lpm_grid

    with CTX.workprec():
        A = np.array([[0.3]])
        C = np.array([[0.7]])
        for sig in (0.5, 2.0):
            lp_v, lm_v = _lpm_grid(sig, A, C)
            ref_p = lpm_star("+", mpf(sig), mpf("0.3"), mpf("0.7"), CTX).value
            ref_m = lpm_star("-", mpf(sig), mpf("0.3"), mpf("0.7"), CTX).value
            assert abs(complex(ref_p) - lp_v[0, 0]) < 1e-11 * (1 + abs(ref_p))
            assert abs(complex(ref_m) - lm_v[0, 0]) < 1e-11 * (1 + abs(ref_m))
