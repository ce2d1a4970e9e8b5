"""Test-function zeta integrals: averaging operator, Phi, F_k, residuals.

For a rapidly decaying f with Fourier transform Ff, the building block is

    Phi(f; s, a, c) = int_1^oo ( sum_{n != -c} e^{2 pi i a (n + c/2)}
                                 f((n+c) x) ) x^{s-1} dx
                      - d_Z(c) e^{-pi i a c} f(0) / s,

extended to all real (a, c); the symmetric combination and the completed
integral follow as

    Phi_k(f; s,a,c) = Phi(f; s,a,c)
                      + (-1)^k e^{-pi i (a+1-c)} Phi(f; s, 1-a, 1-c),
    F_k(f; s,a,c)   = Phi_k(f; s,a,c)
                      + (-1)^k e^{-pi i a} Phi_k(Ff; 1-s, 1-c, a).

F_1 is entire in s; F_0 acquires simple poles at s=0 (integer c, residue
-2 e^{-pi i a c} f(0)) and s=1 (integer a, residue 2 e^{pi i a c} Ff(0)).
Pole terms are always carried in closed form, never sampled numerically.

The Fourier transform is supplied by the registrant (a numerical
transform would contaminate exactly the functional-equation residuals
this module exists to measure); registration spot-checks the declared
Gaussian decay envelope and parity tag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from mpmath import mp, mpc, mpf

from .precision import (
    EvalResult,
    PoleInfo,
    PrecisionContext,
    RealParam,
    expi_2pi,
    expi_pi,
    is_exact_integer,
    one_minus,
    prod_param,
    sub_param,
    to_mpc,
    to_mpf,
)
from .quadrature import DEFAULT_SPEC, QuadratureSpec, quad_one_inf


class RegistrationError(ValueError):
    """A test function failed its registration spot-checks."""


class DecayEnvelopeInsufficient(ArithmeticError):
    """The declared decay envelope cannot push the lattice tail below target."""


class PoleEncountered(ArithmeticError):
    pass


@dataclass(frozen=True)
class TestFunction:
    """An even/odd-decomposable rapidly decaying function with its transform.

    ``decay = (C, r)`` declares |f(x)|, |Ff(x)| <= C exp(-x^2 / r) with
    r > 1 not required, but r must be positive; parity is one of 'even',
    'odd', 'mixed'.
    """

    name: str
    eval_fn: Callable
    fourier_fn: Callable
    decay: tuple
    parity: str

    def __call__(self, x):
        return self.eval_fn(x)

    @property
    def f0(self):
        return self.eval_fn(mpf(0))

    @property
    def ff0(self):
        return self.fourier_fn(mpf(0))

    def fourier_partner(self) -> "TestFunction":
        """The test function Ff; its transform is x -> f(-x)."""
        f = self.eval_fn
        return TestFunction(
            name=f"F[{self.name}]",
            eval_fn=self.fourier_fn,
            fourier_fn=lambda x: f(-x),
            decay=self.decay,
            parity=self.parity,
        )


def register(name: str, eval_fn: Callable, fourier_fn: Callable, decay: tuple,
             parity: str, ctx: PrecisionContext, grid_points: int = 12) -> TestFunction:
    """Validate and build a TestFunction.

    Spot-checks the decay envelope on a log-spaced grid out to
    3 sqrt(r * working_bits * ln 2) and the parity tag at a few abscissae.
    """
    if parity not in ("even", "odd", "mixed"):
        raise RegistrationError("parity must be 'even', 'odd' or 'mixed'")
    C, r = decay
    with ctx.workprec():
        C, r = to_mpf(C), to_mpf(r)
        if C <= 0 or r <= 0:
            raise RegistrationError("decay envelope needs C > 0 and r > 0")
        xmax = 3 * mp.sqrt(r * ctx.working_bits * mp.ln(2))
        slack = 1 + mpf(2) ** (-ctx.working_bits // 2)
        for i in range(grid_points):
            x = xmax * mpf(2) ** (i - grid_points + 1)
            env = C * mp.exp(-x * x / r) * slack
            for fn, tag in ((eval_fn, "f"), (fourier_fn, "Ff")):
                if abs(fn(x)) > env or abs(fn(-x)) > env:
                    raise RegistrationError(
                        f"{name}: declared envelope violated by {tag} at x={mp.nstr(x, 8)}")
            if parity != "mixed":
                sgn = 1 if parity == "even" else -1
                tol = (slack - 1) * (1 + abs(eval_fn(x)))
                if abs(eval_fn(-x) - sgn * eval_fn(x)) > tol:
                    raise RegistrationError(f"{name}: parity tag '{parity}' violated at x={mp.nstr(x, 8)}")
        tf = TestFunction(name=name, eval_fn=eval_fn, fourier_fn=fourier_fn,
                          decay=(C, r), parity=parity)
        return tf


# ---------------------------------------------------------------------------
# built-in test functions
# ---------------------------------------------------------------------------

def gaussian_phi0(ctx: PrecisionContext) -> TestFunction:
    """phi_0(x) = e^{-pi x^2}, self-reciprocal under F."""
    f = lambda x: mp.exp(-mp.pi * x * x)
    return register("phi0", f, f, (2, 1), "even", ctx)


def gaussian_phi1(ctx: PrecisionContext) -> TestFunction:
    """phi_1(x) = x e^{-pi x^2}, with F phi_1 = -i phi_1."""
    f = lambda x: x * mp.exp(-mp.pi * x * x)
    ff = lambda x: mpc(0, -1) * x * mp.exp(-mp.pi * x * x)
    return register("phi1", f, ff, (2, 1), "odd", ctx)


def x2_gaussian(ctx: PrecisionContext) -> TestFunction:
    """f(x) = x^2 e^{-pi x^2}; Ff(y) = (1/(2 pi) - y^2) e^{-pi y^2}."""
    f = lambda x: x * x * mp.exp(-mp.pi * x * x)
    ff = lambda y: (1 / (2 * mp.pi) - y * y) * mp.exp(-mp.pi * y * y)
    return register("x2_gaussian", f, ff, (2, 1), "even", ctx)


BUILTIN_FACTORIES = {
    "phi0": gaussian_phi0,
    "phi1": gaussian_phi1,
    "x2_gaussian": x2_gaussian,
}


# ---------------------------------------------------------------------------
# averaging operator
# ---------------------------------------------------------------------------

def _lattice_halfwidth(f: TestFunction, ctx: PrecisionContext, sigma_max=1) -> mpf:
    C, r = f.decay
    bits = ctx.working_bits + 2 * ctx.guard_bits
    T = mp.sqrt(r * (bits * mp.ln(2) + max(mp.ln(C), mpf(0))))
    T = max(T, mp.sqrt(r * max(to_mpf(sigma_max), mpf(1)) / 2))
    return T + 2


def averaged_kernel(f: TestFunction, a: RealParam, c: RealParam, x,
                    ctx: PrecisionContext):
    """A^{a,c}[f](x) = sum_n f((n+c) x) e^{2 pi i n a} for x > 0.

    Returns (value, err_bound); the bound covers the envelope tail of the
    truncated lattice sum.
    """
    with ctx.workprec():
        xv = to_mpf(x)
        if xv <= 0:
            raise ValueError("averaged_kernel requires x > 0")
        C, r = f.decay
        T = _lattice_halfwidth(f, ctx) / xv
        if T > 10**6:
            raise DecayEnvelopeInsufficient(
                "lattice window exceeds 1e6 terms at this x; envelope too weak")
        cv = to_mpf(c)
        n_lo = int(mp.floor(-cv - T))
        n_hi = int(mp.ceil(-cv + T))
        acc = mpc(0)
        for n in range(n_lo, n_hi + 1):
            t = (n + cv) * xv
            acc += expi_2pi(prod_param(a, n)) * f.eval_fn(t)
        tb = T * xv
        ratio = mp.exp(-(2 * tb + 1) * xv * xv / r)
        tail = 2 * C * mp.exp(-tb * tb / r) / max(1 - ratio, mpf(2) ** -8)
        return acc, tail + (1 + abs(acc)) * ctx.rounding_unit * 8


def poisson_dual_kernel(f: TestFunction, a: RealParam, c: RealParam, x,
                        ctx: PrecisionContext):
    """(1/x) sum_m e^{2 pi i c (m-a)} Ff((m-a)/x): the Poisson-dual form."""
    with ctx.workprec():
        xv = to_mpf(x)
        C, r = f.decay
        T = _lattice_halfwidth(f, ctx) * xv
        av = to_mpf(a)
        m_lo = int(mp.floor(av - T))
        m_hi = int(mp.ceil(av + T))
        acc = mpc(0)
        for m in range(m_lo, m_hi + 1):
            acc += expi_2pi(prod_param(c, sub_param(m, a))) * f.fourier_fn((m - av) / xv)
        tb = T / xv
        ratio = mp.exp(-(2 * tb + 1) / (xv * xv * r))
        tail = 2 * C * mp.exp(-tb * tb / r) / max(1 - ratio, mpf(2) ** -8)
        return acc / xv, (tail + (1 + abs(acc)) * ctx.rounding_unit * 8) / xv


# ---------------------------------------------------------------------------
# Phi and its symmetric combinations
# ---------------------------------------------------------------------------

def _phi_raw(f: TestFunction, s, a: RealParam, c: RealParam,
             ctx: PrecisionContext, spec: QuadratureSpec):
    """Extended Phi(f; s, a, c): (value, err, residue_at_0).

    The value excludes the pole term; the residue (nonzero only for
    integer c) is -e^{-pi i a c} f(0).
    """
    s_m = to_mpc(s)
    c_int = is_exact_integer(c)
    C, r = f.decay
    T = _lattice_halfwidth(f, ctx, sigma_max=abs(s_m.real) + 1)
    cv = to_mpf(c)
    n_lo = int(mp.floor(-cv - T))
    n_hi = int(mp.ceil(-cv + T))
    offsets = []
    phases = []
    half_c = Fraction(c) / 2 if isinstance(c, (int, Fraction)) else cv / 2
    for n in range(n_lo, n_hi + 1):
        t = n + cv
        if c_int and t == 0:
            continue
        offsets.append(t)
        # e^{2 pi i a (n + c/2)}
        phases.append(expi_2pi(prod_param(a, half_c + n)))
    # terms with (t x)^2 beyond this threshold are below 2^-(prec+8)
    skip_thresh = to_mpf(r) * ((mp.prec + 8) * mp.ln(2) + mp.ln(C))

    def integrand(x, lnx):
        acc = mpc(0)
        for t, ph in zip(offsets, phases):
            tx = t * x
            if tx * tx > skip_thresh:
                continue
            acc += ph * f.eval_fn(tx)
        if acc == 0:
            return mpc(0)
        return acc * mp.exp((s_m - 1) * lnx)

    val, qerr, _ = quad_one_inf(integrand, 1, ctx, spec)
    # lattice tail over |t| > T, integrated: per-term r/(2 t^2) e^{-t^2/r}
    tail = C * r / (T * T) * mp.exp(-T * T / r) / max(1 - mp.exp(-(2 * T + 1) / r), mpf(2) ** -8)
    residue = mpc(0)
    if c_int:
        residue = -expi_pi(-prod_param(a, c)) * f.f0
    return val, qerr + tail, residue


def _phi_combined(f: TestFunction, k: int, s, a: RealParam, c: RealParam,
                  ctx: PrecisionContext, spec: QuadratureSpec):
    """Phi_k(f; s, a, c): (value, err, residue_at_0)."""
    v1, e1, r1 = _phi_raw(f, s, a, c, ctx, spec)
    v2, e2, r2 = _phi_raw(f, s, one_minus(a), one_minus(c), ctx, spec)
    w = (-1) ** k * expi_pi(-(sub_param(a, c) + 1))
    return v1 + w * v2, e1 + e2, r1 + w * r2


def phi_integral(f: TestFunction, s, a: RealParam, c: RealParam,
                 ctx: PrecisionContext, spec: QuadratureSpec = DEFAULT_SPEC) -> EvalResult:
    """The single extended zeta-integral piece Phi(f; s, a, c).

    For integer c the pole field carries the s=0 residue
    -e^{-pi i a c} f(0); at s != 0 the pole term is part of the function,
    so reconstruct the full value via ``with_pole_folded(s)``.
    """
    with ctx.workprec():
        s_m = to_mpc(s)
        val, err, residue = _phi_raw(f, s_m, a, c, ctx, spec)
        pole = None
        if residue != 0:
            pole = PoleInfo(location=mpc(0), residue=residue)
            if s_m == 0:
                raise PoleEncountered("Phi pole at s=0 with integer c")
        return EvalResult(value=val, err_bound=err, pole=pole)


def f_k(f: TestFunction, k: int, s, a: RealParam, c: RealParam,
        ctx: PrecisionContext, spec: QuadratureSpec = DEFAULT_SPEC) -> EvalResult:
    """The completed zeta integral F_k(f; s, a, c), k in {0, 1}.

    Meromorphic in s; simple poles only for k = 0 at s = 0 (integer c)
    and s = 1 (integer a).  When pole flags are set, the pole nearest to s
    is reported in the pole field (value = finite part), the other one is
    folded into the value.
    """
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    with ctx.workprec():
        s_m = to_mpc(s)
        ff = f.fourier_partner()
        v1, e1, res0 = _phi_combined(f, k, s_m, a, c, ctx, spec)
        v2, e2, res1_inner = _phi_combined(ff, k, 1 - s_m, one_minus(c), a, ctx, spec)
        pref = (-1) ** k * expi_pi(-Fraction(a) if isinstance(a, (int, Fraction)) else -to_mpf(a))
        value = v1 + pref * v2
        err = e1 + abs(pref) * e2 + (1 + abs(value)) * ctx.rounding_unit * 16
        # residue bookkeeping: the second Phi_k contributes at s = 1
        res_at_1 = -pref * res1_inner
        res_at_0 = res0
        pole = None
        if res_at_0 != 0 or res_at_1 != 0:
            pick0 = res_at_0 != 0 and (res_at_1 == 0 or abs(s_m) <= abs(s_m - 1))
            if pick0:
                pole = PoleInfo(location=mpc(0), residue=res_at_0)
                if res_at_1 != 0:
                    if s_m == 1:
                        raise PoleEncountered("F_0 pole at s=1 with integer a")
                    value += res_at_1 / (s_m - 1)
                if s_m == 0:
                    pass  # finite part: pole term removed entirely
            else:
                pole = PoleInfo(location=mpc(1), residue=res_at_1)
                if res_at_0 != 0:
                    if s_m == 0:
                        raise PoleEncountered("F_0 pole at s=0 with integer c")
                    value += res_at_0 / s_m
        return EvalResult(value=value, err_bound=err, pole=pole)


# ---------------------------------------------------------------------------
# residual reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FEReport:
    residual: mpf
    combined_err: mpf
    lhs: mpc
    rhs: mpc


def fe_residual_general(f: TestFunction, k: int, s, a: RealParam, c: RealParam,
                        ctx: PrecisionContext, spec: QuadratureSpec = DEFAULT_SPEC) -> FEReport:
    """|F_k(f; s,a,c) - (-1)^k e^{-pi i a} F_k(Ff; 1-s, 1-c, a)|.

    Both sides are computed through independent quadratures.  Raises
    PoleEncountered when s sits exactly on a flagged pole of either side.
    """
    with ctx.workprec():
        s_m = to_mpc(s)
        lhs_r = f_k(f, k, s_m, a, c, ctx, spec)
        rhs_r = f_k(f.fourier_partner(), k, 1 - s_m, one_minus(c), a, ctx, spec)
        if (lhs_r.pole and abs(s_m - lhs_r.pole.location) == 0) or \
           (rhs_r.pole and abs((1 - s_m) - rhs_r.pole.location) == 0):
            raise PoleEncountered("functional equation evaluated at a pole")
        lhs = lhs_r.with_pole_folded(s_m)
        pref = (-1) ** k * expi_pi(-Fraction(a) if isinstance(a, (int, Fraction)) else -to_mpf(a))
        rhs = pref * rhs_r.with_pole_folded(1 - s_m)
        resid = abs(lhs - rhs)
        comb = lhs_r.err_bound + rhs_r.err_bound + (abs(lhs) + abs(rhs)) * ctx.rounding_unit * 8
        return FEReport(residual=resid, combined_err=comb, lhs=lhs, rhs=rhs)


@dataclass(frozen=True)
class PeriodicityReport:
    residual_a: mpf
    residual_c: mpf
    combined_err: mpf
    poles_consistent: bool


def periodicity_residuals(f: TestFunction, k: int, s, a: RealParam, c: RealParam,
                          ctx: PrecisionContext,
                          spec: QuadratureSpec = DEFAULT_SPEC) -> PeriodicityReport:
    """Residuals of F_k(f; s, a+1, c) = e^{pi i c} F_k(f; s, a, c) and
    F_k(f; s, a, c+1) = e^{-pi i a} F_k(f; s, a, c); pole residues must
    transform with the same phases."""
    with ctx.workprec():
        s_m = to_mpc(s)
        a_up = a + 1 if isinstance(a, (int, Fraction)) else to_mpf(a) + 1
        c_up = c + 1 if isinstance(c, (int, Fraction)) else to_mpf(c) + 1
        base = f_k(f, k, s_m, a, c, ctx, spec)
        up_a = f_k(f, k, s_m, a_up, c, ctx, spec)
        up_c = f_k(f, k, s_m, a, c_up, ctx, spec)
        ph_a = expi_pi(Fraction(c) if isinstance(c, (int, Fraction)) else to_mpf(c))
        ph_c = expi_pi(-Fraction(a) if isinstance(a, (int, Fraction)) else -to_mpf(a))
        at_pole = (s_m == 0 or s_m == 1) and base.pole is not None
        if at_pole:
            # the identity holds for the whole Laurent expansion: compare
            # finite parts directly and residues separately
            bv, av2, cv2 = base.value, up_a.value, up_c.value
        else:
            bv = base.with_pole_folded(s_m)
            av2 = up_a.with_pole_folded(s_m)
            cv2 = up_c.with_pole_folded(s_m)
        ra = abs(av2 - ph_a * bv)
        rc = abs(cv2 - ph_c * bv)
        ok = True
        for shifted, ph in ((up_a, ph_a), (up_c, ph_c)):
            if base.pole and shifted.pole:
                ok = ok and abs(shifted.pole.residue - ph * base.pole.residue) < \
                    mpf(2) ** (-ctx.working_bits // 2)
            elif bool(base.pole) != bool(shifted.pole):
                ok = False
        comb = base.err_bound + up_a.err_bound + up_c.err_bound \
            + (1 + abs(bv)) * ctx.rounding_unit * 16
        return PeriodicityReport(residual_a=ra, residual_c=rc,
                                 combined_err=comb, poles_consistent=ok)
