"""Weak-field series and exact closed forms for the spin-0 effective Lagrangian.

Everything here is the dimensionless f: the physical prefactor m^4/16 pi^2
is never applied.  Magnetic backgrounds enter through the invariant
beta = e^2 B^2 / m^4 and electric ones through kappa = e^2 E^2 / m^4.

The magnetic f(beta) is real.  The electric f(kappa) is complex with
Im f > 0; twice its imaginary part is the vacuum pair production rate.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DomainError, NumericalError, PoleError
from .precision import BigComplex, BigReal, PrecisionContext, with_precision
from .special_functions import hurwitz_zeta_sderiv_neg1


@dataclass(frozen=True)
class SeriesCoefficients:
    """Coefficients of the alternating weak-field expansion.

    Slot j of each tuple holds the coefficient of index n = j + 2; the
    expansion has no n < 2 terms.  The exact_* tuples keep the Fraction
    forms so consumers working at higher precision than the generating
    context can round for themselves.
    """

    a: tuple
    c: tuple
    exact_a: tuple
    exact_c: tuple
    n_max: int

    def a_n(self, n: int):
        return self.a[n - 2]

    def c_n(self, n: int):
        return self.c[n - 2]


@dataclass(frozen=True)
class FieldStrength:
    """A strictly positive field invariant; set exactly one of beta, kappa."""

    beta: object = None
    kappa: object = None

    def __post_init__(self):
        if (self.beta is None) == (self.kappa is None):
            raise DomainError("set exactly one of beta (magnetic) or kappa (electric)")
        value = self.beta if self.beta is not None else self.kappa
        if not value > 0:
            raise DomainError("field invariant must be strictly positive")


def _exact_cn(n: int) -> Fraction:
    # c_n = (2 - 2^(2n)) B_(2n) / (2n)!
    p, q = mpmath.bernfrac(2 * n)
    return Fraction(2 - 4**n) * Fraction(p, q) / math.factorial(2 * n)


def weak_field_coeffs(n_max: int, ctx: PrecisionContext) -> SeriesCoefficients:
    """Generate c_n and a_n = (-1)^n (2n-3)! c_n for n = 2 .. n_max."""
    if n_max < 2:
        raise DomainError("the expansion starts at n = 2")
    exact_c = []
    exact_a = []
    for n in range(2, n_max + 1):
        cn = _exact_cn(n)
        exact_c.append(cn)
        exact_a.append((-1) ** n * math.factorial(2 * n - 3) * cn)
    return SeriesCoefficients(
        a=tuple(ctx.real(x) for x in exact_a),
        c=tuple(ctx.real(x) for x in exact_c),
        exact_a=tuple(exact_a),
        exact_c=tuple(exact_c),
        n_max=n_max,
    )


def partial_sum_magnetic(beta, d: int, ctx: PrecisionContext) -> BigReal:
    """First d+1 terms of the weak-field expansion: sum of a_n (-beta)^n, n = 2..d+2."""
    mp = ctx.mp
    b = ctx.real(beta)
    if b <= 0:
        raise DomainError("partial_sum_magnetic requires beta > 0")
    if d < 1:
        raise DomainError("need at least one term, d >= 1")
    coeffs = weak_field_coeffs(d + 2, ctx)
    acc = mp.mpf(0)
    power = (-b) ** 2
    for n in range(2, d + 3):
        acc += coeffs.a_n(n) * power
        power *= -b
    return acc


def chi(x, ctx: PrecisionContext) -> BigComplex:
    """x csch(x) - 1 + x^2/6, series-summed near 0 where the closed form cancels."""
    mp = ctx.mp
    z = ctx.complex(x)
    real_input = z.imag == 0
    if abs(z) < mp.mpf(1) / 4:
        # even series starting at x^4; successive-term ratio is below
        # (1/(4 pi))^2 here so a few dozen terms saturate any precision
        zz = z.real * z.real if real_input else z * z
        eps = mp.mpf(10) ** (-(mp.dps + 5))
        acc = zz * 0
        power = zz * zz
        n = 2
        while True:
            cn = _exact_cn(n)
            term = (mp.mpf(cn.numerator) / cn.denominator) * power
            acc += term
            if abs(term) < eps * (1 + abs(acc)):
                break
            power *= zz
            n += 1
        return acc
    s = mp.sinh(z.real) if real_input else mp.sinh(z)
    if s == 0:
        raise PoleError("chi hits a pole of csch on the imaginary axis")
    w = z.real if real_input else z
    return w / s - 1 + w * w / 6


def exact_magnetic(beta, ctx: PrecisionContext) -> BigReal:
    """Closed form of f(beta) for a purely magnetic background."""
    mp = ctx.mp
    b = ctx.real(beta)
    if b <= 0:
        raise DomainError("exact_magnetic requires beta > 0")
    rb = mp.sqrt(b)
    zd = hurwitz_zeta_sderiv_neg1((1 + rb) / (2 * rb), ctx)
    ln4 = 2 * mp.ln2
    lnb = mp.ln(b)
    one = mp.mpf(1)
    return (
        b * lnb / 12
        - lnb / 4
        + b * (ln4 / 12 - one / 6)
        - ln4 / 4
        - one / 4
        - 4 * b * zd
    )


def exact_electric(kappa, ctx: PrecisionContext) -> BigComplex:
    """Closed form of f(kappa) for a purely electric background; Im f > 0."""
    mp = ctx.mp
    k = ctx.real(kappa)
    if k <= 0:
        raise DomainError("exact_electric requires kappa > 0")
    rk = mp.sqrt(k)
    i = mp.mpc(0, 1)
    zd = hurwitz_zeta_sderiv_neg1((rk + i) / (2 * rk), ctx)
    one = mp.mpf(1)
    return (
        k / 6
        - one / 4
        - (k / 6 + one / 2) * mp.ln(2 * rk)
        + i * (mp.pi / 4 + k * mp.pi / 12)
        + 4 * k * zd
    )


def quad_magnetic_oracle(beta, tol, ctx: PrecisionContext) -> BigReal:
    """Adaptive quadrature of the magnetic integral representation.

    Integrates e^(-tau) chi(sqrt(beta) tau) / tau^3 over (0, inf), split at
    tau = 1/sqrt(beta) where the integrand changes scale.  Independent of
    the closed form: only chi is shared, and that is elementary.
    """
    mp = ctx.mp
    b = ctx.real(beta)
    if b <= 0:
        raise DomainError("quad_magnetic_oracle requires beta > 0")
    tol = ctx.real(tol)
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    need = max(ctx.digits, int(mp.ceil(-mp.log10(tol))) + 10)
    work = ctx if need <= ctx.digits else with_precision(need, ctx.guard_digits)
    wmp = work.mp
    wb = wmp.mpf(b)
    rb = wmp.sqrt(wb)

    def integrand(tau):
        return wmp.exp(-tau) * chi(rb * tau, work) / tau**3

    try:
        val, err = wmp.quad(integrand, [0, 1 / rb, wmp.inf], maxdegree=14, error=True)
    except Exception as exc:
        raise NumericalError(f"magnetic quadrature failed: {exc}") from exc
    if not wmp.isfinite(val) or err > tol * max(abs(val), wmp.mpf(1)):
        raise NumericalError(
            f"magnetic quadrature did not reach tol={tol}: error estimate {err}"
        )
    return mp.mpf(val.real if hasattr(val, "imag") else val)


def continuation_check(kappa, ctx: PrecisionContext) -> BigComplex:
    """Magnetic closed form continued to beta = -kappa.

    Branch determined empirically against exact_electric: ln beta picks up
    -i pi and sqrt(beta) maps to -i sqrt(kappa), i.e. beta = e^(-i pi) kappa.
    The opposite sign lands on the complex conjugate, which has Im f < 0
    and is ruled out by vacuum-decay positivity.
    """
    mp = ctx.mp
    k = ctx.real(kappa)
    if k <= 0:
        raise DomainError("continuation_check requires kappa > 0")
    i = mp.mpc(0, 1)
    b = mp.mpc(-k, 0)
    lnb = mp.ln(k) - i * mp.pi
    sb = -i * mp.sqrt(k)
    zd = hurwitz_zeta_sderiv_neg1((1 + sb) / (2 * sb), ctx)
    ln4 = 2 * mp.ln2
    one = mp.mpf(1)
    return (
        b * lnb / 12
        - lnb / 4
        + b * (ln4 / 12 - one / 6)
        - ln4 / 4
        - one / 4
        - 4 * b * zd
    )


def strong_field_asymptote(beta, ctx: PrecisionContext) -> BigReal:
    """Leading strong-field behavior beta ln(beta)/12 + (ln2/6) beta."""
    mp = ctx.mp
    b = ctx.real(beta)
    if b <= 0:
        raise DomainError("strong_field_asymptote requires beta > 0")
    return b * mp.ln(b) / 12 + mp.ln2 / 6 * b


def pair_production_rate(kappa, ctx: PrecisionContext) -> BigReal:
    """Vacuum pair production rate 2 Im f(kappa)."""
    return 2 * exact_electric(kappa, ctx).imag
