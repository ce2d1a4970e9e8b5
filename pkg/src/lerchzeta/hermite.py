"""The oscillator family: Hermite-Gaussian functions, p_n/q_n, and Lhat_n.

The Hermite-Gaussian functions used here are phi_n := D_+^n phi_0 with
phi_0 = e^{-pi x^2} and raising operator
D_+ = sqrt(2 pi) (x - (1/(2 pi)) d/dx); in closed form
phi_n(x) = H_n(sqrt(2 pi) x) e^{-pi x^2}.  They are Fourier
self-reciprocal, F phi_n = (-i)^n phi_n, and are eigenfunctions of the
oscillator Hamiltonian with eigenvalue 2n+1.

Their two-sided Mellin transforms factor through two families of integer
polynomials generated by the coupled recurrences

    p_0 = q_0 = 1,
    p_{n+1}(s) = s q_n(s+1) + (s-1) q_n(s-1),
    q_{n+1}(s) = p_{n+1}(s+1) + p_{n+1}(s-1),

equivalently (for cross-validation) by the three-term forms

    p_{n+1}(s) = s p_n(s+2) + (2s-1) p_n(s) + (s-1) p_n(s-2),   n >= 1,
    q_{n+1}(s) = (s+1) q_n(s+2) + (2s-1) q_n(s) + (s-2) q_n(s-2), n >= 0.

Both families satisfy r_n(1-s) = (-1)^n r_n(s) exactly at the coefficient
level and have all zeros on the critical line Re(s) = 1/2; under
s = 1/2 + ix they are (rescaled) Meixner-Pollaczek polynomials,
orthogonal against |Gamma(1/4 + ix/2)|^2 dx (p family) and
|Gamma(3/4 + ix/2)|^2 dx (q family).

The generalized completed functions are anchored so that
Lhat_0 = Lhat^+ and Lhat_1 = Lhat^-:

    Lhat_{2m}   = (2 pi)^{-m} p_m(s) Lhat^{+},
    Lhat_{2m+1} = (2 pi)^{-m} q_m(s) Lhat^{-}.

The raw quadrature route (2 pi)^{-n/2} M(2 A^{a,c}[phi_n])(s) is
proportional to this with constant 1 at n = 0 and 2 for n >= 1 (the
D_+^n normalization doubles each Mellin transform relative to the
q_0 = 1 convention); the constant is what the verification path checks.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from mpmath import mp, mpc, mpf

from .lerch import lhat_star
from .precision import (
    DomainError,
    EvalResult,
    PrecisionContext,
    RealParam,
    expi_pi,
    prod_param,
    to_mpc,
    to_mpf,
)
from .quadrature import (
    DEFAULT_SPEC,
    QuadratureNonconvergent,
    QuadratureSpec,
    quad_finite_segmented,
    quad_zero_inf,
)
from .zeta_integrals import TestFunction, f_k, register


class RootIsolationFailure(ArithmeticError):
    """Sturm isolation found fewer brackets than the polynomial degree."""


# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    """Integer-coefficient polynomial, coefficients ascending in degree."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for co in reversed(self.coeffs):
            acc = acc * x + co
        return acc

    def shift_arg(self, k: int) -> "IntPolynomial":
        """p(s + k), exactly."""
        out = [0] * len(self.coeffs)
        for i, ci in enumerate(self.coeffs):
            for j in range(i + 1):
                out[j] += ci * math.comb(i, j) * k ** (i - j)
        return IntPolynomial(tuple(out))

    def reflect(self) -> "IntPolynomial":
        """p(1 - s), exactly."""
        out = [0] * len(self.coeffs)
        for i, ci in enumerate(self.coeffs):
            for j in range(i + 1):
                out[j] += ci * math.comb(i, j) * (-1) ** j
        return IntPolynomial(tuple(out))

    def mul_linear(self, alpha: int, beta: int) -> "IntPolynomial":
        """(alpha s + beta) * p(s)."""
        out = [0] * (len(self.coeffs) + 1)
        for i, ci in enumerate(self.coeffs):
            out[i + 1] += alpha * ci
            out[i] += beta * ci
        return IntPolynomial(tuple(out))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))


_POLY_LOCK = threading.RLock()
_P_CACHE: List[IntPolynomial] = [IntPolynomial((1,))]
_Q_CACHE: List[IntPolynomial] = [IntPolynomial((1,))]
_WEIGHT_CACHE: dict = {}


def poly_family(family: str, n: int) -> IntPolynomial:
    """p_n or q_n through the coupled recurrences (memoized, exact)."""
    if family not in ("p", "q"):
        raise DomainError("family must be 'p' or 'q'")
    if n < 0:
        raise DomainError("n must be nonnegative")
    with _POLY_LOCK:
        while len(_P_CACHE) <= n:
            m = len(_P_CACHE) - 1
            qn = _Q_CACHE[m]
            p_next = qn.shift_arg(1).mul_linear(1, 0) + qn.shift_arg(-1).mul_linear(1, -1)
            _P_CACHE.append(p_next)
            _Q_CACHE.append(p_next.shift_arg(1) + p_next.shift_arg(-1))
        return _P_CACHE[n] if family == "p" else _Q_CACHE[n]


def poly_family_three_term(family: str, n: int) -> IntPolynomial:
    """Independent route via the three-term recurrences.

    The q chain runs from q_0 = 1 alone; the p chain is valid from n = 1
    and is seeded with p_1 = 2s - 1.
    """
    if family == "q":
        cur = IntPolynomial((1,))
        for _ in range(n):
            cur = (cur.shift_arg(2).mul_linear(1, 1)
                   + cur.mul_linear(2, -1)
                   + cur.shift_arg(-2).mul_linear(1, -2))
        return cur
    if n == 0:
        return IntPolynomial((1,))
    cur = IntPolynomial((-1, 2))
    for _ in range(n - 1):
        cur = (cur.shift_arg(2).mul_linear(1, 0)
               + cur.mul_linear(2, -1)
               + cur.shift_arg(-2).mul_linear(1, -1))
    return cur


# ---------------------------------------------------------------------------
# critical-line zeros via the real substitution s = 1/2 + i x
# ---------------------------------------------------------------------------

def _critical_line_poly(poly: IntPolynomial) -> List[Fraction]:
    """Real coefficients (ascending) of i^{-n} p(1/2 + i x), exact."""
    n = poly.degree
    re = [Fraction(0)] * (n + 1)
    im = [Fraction(0)] * (n + 1)
    # expand sum_m c_m (1/2 + i x)^m
    for m_deg, cm in enumerate(poly.coeffs):
        if cm == 0:
            continue
        for j in range(m_deg + 1):
            coef = Fraction(cm) * math.comb(m_deg, j) * Fraction(1, 2 ** (m_deg - j))
            rot = j % 4  # i^j
            if rot == 0:
                re[j] += coef
            elif rot == 1:
                im[j] += coef
            elif rot == 2:
                re[j] -= coef
            else:
                im[j] -= coef
    # divide by i^n: result must be purely real
    if n % 2 == 0:
        main, ghost = re, im
        sign = -1 if n % 4 == 2 else 1
    else:
        main, ghost = im, re
        sign = -1 if n % 4 == 3 else 1
    if any(g != 0 for g in ghost):
        raise RootIsolationFailure("critical-line substitution left a mixed polynomial")
    return [sign * x for x in main]


def _poly_eval_frac(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _sturm_chain(coeffs):
    def normalize(cs):
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        return cs

    def derivative(cs):
        return [c * k for k, c in enumerate(cs)][1:] or [Fraction(0)]

    def rem(a, b):
        a = list(a)
        db, lb = len(b) - 1, b[-1]
        while len(a) - 1 >= db and any(x != 0 for x in a):
            da, la = len(a) - 1, a[-1]
            f = la / lb
            for i in range(db + 1):
                a[da - db + i] -= f * b[i]
            a = normalize(a[:-1] + [Fraction(0)])[: da] or [Fraction(0)]
            a = normalize(a)
            if len(a) == 1 and a[0] == 0:
                break
        return a

    chain = [normalize(list(coeffs))]
    chain.append(normalize(derivative(chain[0])))
    while len(chain[-1]) > 1 or chain[-1][0] != 0:
        r = rem(chain[-2], chain[-1])
        r = [-x for x in r]
        if len(r) == 1 and r[0] == 0:
            break
        chain.append(r)
    return chain


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for cs in chain:
        v = _poly_eval_frac(cs, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def poly_zeros(family: str, n: int, ctx: PrecisionContext):
    """All n zeros of p_n or q_n, certified on the critical line.

    The real polynomial R(x) = i^{-n} r_n(1/2 + i x) is isolated with an
    exact Sturm chain and each root refined by bisection at working
    precision; the zeros returned are 1/2 + i x_j with exact real part.
    """
    if n < 1:
        raise DomainError("poly_zeros requires n >= 1")
    poly = poly_family(family, n)
    coeffs = _critical_line_poly(poly)
    chain = _sturm_chain(coeffs)
    # Cauchy bound for |x|
    lead = abs(coeffs[-1])
    bound = 1 + max(abs(c) for c in coeffs[:-1]) / lead
    hi = Fraction(bound).limit_denominator(10 ** 6) + 1
    lo = -hi
    total = _sign_changes(chain, lo) - _sign_changes(chain, hi)
    if total != n:
        raise RootIsolationFailure(f"Sturm count {total} != degree {n}")
    # isolate by recursive bisection
    brackets = []
    stack = [(lo, hi, total)]
    while stack:
        xl, xr, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            brackets.append((xl, xr))
            continue
        xm = (xl + xr) / 2
        while _poly_eval_frac(coeffs, xm) == 0:
            xm = xm + Fraction(1, 10 ** 9)
        left = _sign_changes(chain, xl) - _sign_changes(chain, xm)
        stack.append((xl, xm, left))
        stack.append((xm, xr, cnt - left))
    if len(brackets) != n:
        raise RootIsolationFailure("isolation produced a wrong bracket count")
    roots = []
    with ctx.workprec():
        for xl, xr in sorted(brackets):
            fl = _poly_eval_frac(coeffs, xl)
            # refine with exact-rational bisection down to a fine width,
            # then switch to mpf bisection at working precision
            for _ in range(8):
                xm = (xl + xr) / 2
                fm = _poly_eval_frac(coeffs, xm)
                if fm == 0:
                    xl = xr = xm
                    break
                if (fm > 0) == (fl > 0):
                    xl, fl = xm, fm
                else:
                    xr = xm
            al, ar = to_mpf(xl), to_mpf(xr)
            pl = _poly_eval_frac(coeffs, xl)
            if al != ar:
                def rpoly(x):
                    acc = mpf(0)
                    for ccc in reversed(coeffs):
                        acc = acc * x + to_mpf(ccc)
                    return acc
                vl = rpoly(al)
                for _ in range(ctx.working_bits + 16):
                    am = (al + ar) / 2
                    vm = rpoly(am)
                    if vm == 0:
                        al = ar = am
                        break
                    if (vm > 0) == (vl > 0):
                        al, vl = am, vm
                    else:
                        ar = am
            roots.append(mpc(mpf(1) / 2, (al + ar) / 2))
    return roots


# ---------------------------------------------------------------------------
# Hermite-Gaussian test functions
# ---------------------------------------------------------------------------

def hermite_poly_value(n: int, y):
    """H_n(y) by the three-term recurrence (works for mpf/mpc input)."""
    if n == 0:
        return mpf(1)
    hkm1, hk = mpf(1), 2 * y
    for k in range(1, n):
        hkm1, hk = hk, 2 * y * hk - 2 * k * hkm1
    return hk


def hermite_gaussian(n: int, ctx: PrecisionContext) -> TestFunction:
    """phi_n = D_+^n phi_0 = H_n(sqrt(2 pi) x) e^{-pi x^2} as a TestFunction.

    The Fourier transform is exact: F phi_n = (-i)^n phi_n.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    with ctx.workprec():
        root2pi = mp.sqrt(2 * mp.pi)

        def phi(x, _n=n, _r=root2pi):
            return hermite_poly_value(_n, _r * x) * mp.exp(-mp.pi * x * x)

        rot = mpc(0, -1) ** (n % 4)

        def phi_hat(x, _rot=rot, _phi=phi):
            return _rot * _phi(x)

        # envelope |phi_n| <= C e^{-x^2/2}: numeric max of the ratio, doubled
        peak = mpf(1)
        x = mpf(0)
        while x < 3 + n:
            cand = abs(phi(x)) * mp.exp(x * x / 2)
            peak = max(peak, cand)
            x += mpf(1) / 16
        return register(f"phi{n}", phi, phi_hat, (2 * peak, 2), "even" if n % 2 == 0 else "odd",
                        ctx)


# ---------------------------------------------------------------------------
# generalized completed Lerch functions
# ---------------------------------------------------------------------------

def _check_open_square(a, c):
    av = Fraction(a) if isinstance(a, (int, Fraction)) else to_mpf(a)
    cv = Fraction(c) if isinstance(c, (int, Fraction)) else to_mpf(c)
    if not (0 < av < 1 and 0 < cv < 1):
        raise DomainError("Lhat_n requires (a, c) in the open unit square")


def lhat_n(n: int, s, a: RealParam, c: RealParam, ctx: PrecisionContext) -> EvalResult:
    """Lhat_n(s, a, c) by the polynomial product formula (primary path)."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    _check_open_square(a, c)
    m, k = divmod(n, 2)
    base = lhat_star("+" if k == 0 else "-", s, a, c, ctx)
    fam = poly_family("p" if k == 0 else "q", m)
    with ctx.workprec():
        s_m = to_mpc(s)
        factor = mp.power(2 * mp.pi, -m) * fam(s_m)
        return EvalResult(value=factor * base.value,
                          err_bound=abs(factor) * base.err_bound * 2 + ctx.rounding_unit)


def lhat_n_quadrature(n: int, s, a: RealParam, c: RealParam, ctx: PrecisionContext,
                      spec: QuadratureSpec = DEFAULT_SPEC) -> EvalResult:
    """Verification path: (2 pi)^{-n/2} e^{-pi i a c} F_k(phi_n; s, a, c).

    Proportional to :func:`lhat_n` with an n-dependent positive constant
    (1 at n = 0, 2 for n >= 1 under the D_+^n normalization).
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    _check_open_square(a, c)
    phi = hermite_gaussian(n, ctx)
    k = n % 2
    res = f_k(phi, k, s, a, c, ctx, spec)
    with ctx.workprec():
        s_m = to_mpc(s)
        pref = mp.power(2 * mp.pi, -mpf(n) / 2) * expi_pi(-prod_param(a, c))
        return EvalResult(value=pref * res.with_pole_folded(s_m),
                          err_bound=abs(pref) * res.err_bound * 2)


# ---------------------------------------------------------------------------
# Meixner-Pollaczek orthogonality
# ---------------------------------------------------------------------------

def mp_inner_product(family: str, m: int, n: int, ctx: PrecisionContext,
                     spec: QuadratureSpec = DEFAULT_SPEC) -> EvalResult:
    """<F_m, F_n> = int_{-T}^{T} F_m(x) conj(F_n(x)) |Gamma(lam + ix/2)|^2 dx
    with F = p, lam = 1/4 (family 'P') or F = q, lam = 3/4 (family 'Q').

    Tail bound: for |x| >= 2 the weight obeys
    |Gamma(lam + ix/2)|^2 <= 8 (1 + |x|)^{2 lam - 1/2} e^{-pi |x|/2}
    (Stirling modulus 2 pi |y|^{2 lam - 1} e^{-pi |y|} at y = x/2, with
    the constants absorbed), and |F_m(x) F_n(x)| <= S_m S_n
    max(1, |x|)^{m+n} with S the coefficient 1-norms, so the dropped mass
    is below

        tail(T) = (16/pi) S_m S_n (1+T)^{m+n+1} e^{-pi T/2}
                  / (1 - 2 (m+n+1) / (pi T)).

    T starts at sqrt(2 working_bits ln 2) + 2 max(m, n) and is enlarged
    until tail(T) <= 2^{-working_bits/2}: the starting value alone leaves
    an absolute tail far above the off-diagonal zeros once the polynomial
    growth exceeds the weight's decay onset.
    """
    if family not in ("P", "Q"):
        raise DomainError("family must be 'P' or 'Q'")
    lam = Fraction(1, 4) if family == "P" else Fraction(3, 4)
    pm = poly_family("p" if family == "P" else "q", m)
    pn = poly_family("p" if family == "P" else "q", n)
    with ctx.workprec():
        coefscale = mpf(sum(abs(x) for x in pm.coeffs)) * sum(abs(x) for x in pn.coeffs)
        tol = mpf(2) ** (-(ctx.working_bits // 2))

        def tail_bound(tt):
            denom = max(1 - 2 * (m + n + 1) / (mp.pi * tt), mpf(1) / 4)
            return 16 / mp.pi * (1 + tt) ** (m + n + 1) * coefscale * mp.exp(-mp.pi * tt / 2) / denom

        T = mp.sqrt(2 * ctx.working_bits * mp.ln(2)) + 2 * max(m, n)
        while tail_bound(T) > tol and T < 10 ** 4:
            T = T * mpf("1.25")
        # segment-aligned truncation so nodes (and cached weights) are
        # shared across every (m, n) pair of the family
        T = mpf(8) * int(mp.ceil(T / 8))
        lam_m = to_mpf(lam)
        half = mpf(1) / 2
        wkey = (mp.prec, family)

        def weight(x):
            with _POLY_LOCK:
                cached = _WEIGHT_CACHE.get((wkey, x))
            if cached is None:
                cached = abs(mp.gamma(mpc(lam_m, x / 2))) ** 2
                with _POLY_LOCK:
                    _WEIGHT_CACHE[(wkey, x)] = cached
            return cached

        def integrand(x):
            sx = mpc(half, x)
            return pm(sx) * mp.conj(pn(sx)) * weight(x)

        val, qerr, _ = quad_finite_segmented(integrand, -T, T, ctx, spec)
        return EvalResult(value=val, err_bound=qerr + tail_bound(T))


# ---------------------------------------------------------------------------
# Weyl-algebra difference identities for the Mellin transform
# ---------------------------------------------------------------------------

def mellin_two_sided(fn, parity: str, k: int, s, ctx: PrecisionContext,
                     spec: QuadratureSpec = DEFAULT_SPEC):
    """M_k(f)(s) = int f(x) sgn(x)^k |x|^{s-1} dx over the real line.

    Evaluated through the exact parity projection: the component of f
    with parity (-1)^{k+1} contributes exactly zero, the matching
    component doubles the half-line integral.  Returns (value, err).
    """
    if k not in (0, 1):
        raise DomainError("k must be 0 or 1")
    with ctx.workprec():
        s_m = to_mpc(s)
        want_even = (k == 0)

        if parity == "even":
            proj = fn if want_even else None
        elif parity == "odd":
            proj = fn if not want_even else None
        else:
            eps = mpf(1) if want_even else mpf(-1)
            proj = lambda x: (fn(x) + eps * fn(-x)) / 2
        if proj is None:
            return mpc(0), mpf(0)
        # integrability at 0: the projection vanishes to order 0 or 1
        vanish = 0 if want_even else 1
        if s_m.real + vanish <= mpf("0.05"):
            raise QuadratureNonconvergent(
                f"two-sided Mellin transform diverges at 0 for Re(s)={s_m.real}")

        def integrand(x, lnx):
            return proj(x) * mp.exp((s_m - 1) * lnx)

        val, err, _ = quad_zero_inf(integrand, ctx, spec)
        return 2 * val, 2 * err


@dataclass(frozen=True)
class MellinDifferenceReport:
    residual_derivative: mpf
    residual_multiplication: mpf
    combined_err: mpf


def mellin_difference_check(n: int, s, ctx: PrecisionContext,
                            spec: QuadratureSpec = DEFAULT_SPEC) -> MellinDifferenceReport:
    """Residuals of the Weyl-algebra difference identities for f = phi_n:

        M_k(f')(s)  = -(s-1) M_{k+1}(f)(s-1),
        M_k(x f)(s) =        M_{k+1}(f)(s+1),

    with k chosen opposite to the parity of phi_n so both sides are the
    nonvanishing pairing.  Requires n <= 12 (quadrature accuracy cap).
    """
    if n > 12:
        raise DomainError("mellin_difference_check is limited to n <= 12")
    with ctx.workprec():
        s_m = to_mpc(s)
        root2pi = mp.sqrt(2 * mp.pi)
        phi = lambda x: hermite_poly_value(n, root2pi * x) * mp.exp(-mp.pi * x * x)

        def dphi(x):
            y = root2pi * x
            lead = 2 * n * hermite_poly_value(n - 1, y) if n else mpf(0)
            return root2pi * (lead - y * hermite_poly_value(n, y)) * mp.exp(-mp.pi * x * x)

        xphi = lambda x: x * phi(x)
        par = "even" if n % 2 == 0 else "odd"
        flip = "odd" if n % 2 == 0 else "even"
        k = (n + 1) % 2  # pairing that does not vanish identically

        lhs_d, e1 = mellin_two_sided(dphi, flip, k, s_m, ctx, spec)
        rhs_d, e2 = mellin_two_sided(phi, par, (k + 1) % 2, s_m - 1, ctx, spec)
        res_d = abs(lhs_d + (s_m - 1) * rhs_d)

        lhs_x, e3 = mellin_two_sided(xphi, flip, k, s_m, ctx, spec)
        rhs_x, e4 = mellin_two_sided(phi, par, (k + 1) % 2, s_m + 1, ctx, spec)
        res_x = abs(lhs_x - rhs_x)
        comb = e1 + abs(s_m - 1) * e2 + e3 + e4 + ctx.rounding_unit * 16
        return MellinDifferenceReport(residual_derivative=res_d,
                                      residual_multiplication=res_x,
                                      combined_err=comb)
