"""Hadamard finite-part integrals: closed forms and a canonical oracle.

The closed forms evaluate

    fp  integral_0^inf e^(-b x) / x^m dx = (-1)^m b^(m-1)/(m-1)! (ln b - psi(m))
    fp  integral_0^inf e^(i a x) / x^m dx
        = -(i a)^(m-1)/(m-1)! (ln|a| - i pi/2 sgn(a) - psi(m))

together with the two csch-kernel combinations entering the exact
Heisenberg-Euler assembly.  The oracle implements the defining
Taylor-subtraction limit directly by quadrature and is kept free of any
shared code with the closed forms, so the two routes are independent.
"""

from dataclasses import dataclass

from .errors import DomainError, NumericalError
from .precision import BigComplex, BigReal, PrecisionContext
from .special_functions import digamma_int, hurwitz_zeta_neg1, hurwitz_zeta_sderiv_neg1

_KINDS = ("exponential", "oscillatory", "csch_exponential", "csch_oscillatory")


@dataclass(frozen=True)
class FinitePartValue:
    """A finite-part value tagged with its pole order and integrand family."""

    value: object
    order_m: int
    kind: str

    def __post_init__(self):
        if self.order_m < 1:
            raise DomainError("finite-part pole order must be >= 1")
        if self.kind not in _KINDS:
            raise DomainError(f"unknown finite-part kind {self.kind!r}")


def fp_exp(b, m: int, ctx: PrecisionContext) -> BigReal:
    """Finite part of integral_0^inf e^(-b x)/x^m dx for b > 0, m >= 1."""
    mp = ctx.mp
    b = ctx.real(b)
    if b <= 0:
        raise DomainError("fp_exp requires b > 0; use fp_osc for imaginary exponents")
    if m < 1:
        raise DomainError("pole order m must be >= 1")
    sign = -1 if m % 2 else 1
    return sign * b ** (m - 1) / mp.factorial(m - 1) * (mp.ln(b) - digamma_int(m, ctx))


def fp_osc(a, m: int, ctx: PrecisionContext) -> BigComplex:
    """Finite part of integral_0^inf e^(i a x)/x^m dx for real a != 0."""
    mp = ctx.mp
    a = ctx.real(a)
    if a == 0:
        raise DomainError("fp_osc requires a != 0")
    if m < 1:
        raise DomainError("pole order m must be >= 1")
    sgn = 1 if a > 0 else -1
    ia = mp.mpc(0, 1) * a
    bracket = mp.ln(abs(a)) - mp.mpc(0, 1) * mp.pi / 2 * sgn - digamma_int(m, ctx)
    return -(ia ** (m - 1)) / mp.factorial(m - 1) * bracket


def fp_csch_exp(beta, ctx: PrecisionContext) -> BigReal:
    """csch-kernel finite part entering the magnetic closed form.

    2 sqrt(b) [ (ln b + ln 4 + 2 gamma - 2) zeta(-1, a) - 2 zeta^(1,0)(-1, a) ]
    with a = (1 + sqrt(b)) / (2 sqrt(b)); real for every beta > 0.
    """
    mp = ctx.mp
    beta = ctx.real(beta)
    if beta <= 0:
        raise DomainError("fp_csch_exp requires beta > 0")
    rb = mp.sqrt(beta)
    a = (1 + rb) / (2 * rb)
    z0 = hurwitz_zeta_neg1(a, ctx)
    z1 = hurwitz_zeta_sderiv_neg1(a, ctx)
    out = 2 * rb * ((mp.ln(beta) + mp.ln(4) + 2 * mp.euler - 2) * z0 - 2 * z1)
    return out.real if hasattr(out, "imag") else out


def fp_csch_osc(kappa, ctx: PrecisionContext) -> BigComplex:
    """csch-kernel finite part entering the electric closed form.

    -4 sqrt(k) [ (psi(2) - ln(2 sqrt(k))) zeta(-1, a) + zeta^(1,0)(-1, a) ]
    with the complex argument a = (sqrt(k) + i) / (2 sqrt(k)).
    """
    mp = ctx.mp
    kappa = ctx.real(kappa)
    if kappa <= 0:
        raise DomainError("fp_csch_osc requires kappa > 0")
    rk = mp.sqrt(kappa)
    a = (rk + mp.mpc(0, 1)) / (2 * rk)
    z0 = hurwitz_zeta_neg1(a, ctx)
    z1 = hurwitz_zeta_sderiv_neg1(a, ctx)
    psi2 = digamma_int(2, ctx)
    return -4 * rk * ((psi2 - mp.ln(2 * rk)) * z0 + z1)


def fp_laguerre_exp(k: int, l: int, ctx: PrecisionContext) -> BigReal:
    """fp integral of e^(-x/2)/x^(2k+1-l) as it appears in the tail sums:

        (-1)^(1-l) (1/2)^(2k-l) / (2k-l)! * (ln(1/2) - psi(2k+1-l))

    Identical to fp_exp(1/2, 2k+1-l); the l > 2k regime is an ordinary
    convergent moment and is rejected here.
    """
    if k < 0:
        raise DomainError("k must be non-negative")
    if l < 0 or l > 2 * k:
        raise DomainError(f"l must satisfy 0 <= l <= 2k, got l={l}, k={k}")
    mp = ctx.mp
    sign = 1 if (1 - l) % 2 == 0 else -1
    m = 2 * k + 1 - l
    half = mp.mpf(1) / 2
    return sign * half ** (2 * k - l) / mp.factorial(2 * k - l) * (mp.ln(half) - digamma_int(m, ctx))


def fp_canonical_oracle(f_taylor, f_tail, b_scale, m: int, ctx: PrecisionContext) -> BigReal:
    """Finite part by the canonical definition, independent of the closed forms.

    With T_{m-1} the Taylor polynomial of f at 0 (coefficients f_taylor,
    f^(k)(0)/k! for k = 0..m-1) and f_tail(mp, x) evaluating f:

      fp = integral_0^1 (f - T_{m-1} f)/x^m dx
           + sum_{k=0}^{m-2} f_taylor[k] / (k+1-m)
           + integral_1^inf f/x^m dx.

    This is the defining epsilon-limit with the divergent group removed
    analytically, so plain adaptive quadrature suffices.  The subtracted
    integrand cancels catastrophically as x -> 0, which is absorbed by
    evaluating it on an internal context with heavily boosted precision;
    b_scale only informs that boost (larger scale, more cancellation).
    """
    if m < 1:
        raise DomainError("pole order m must be >= 1")
    if len(f_taylor) < m:
        raise DomainError(f"need Taylor coefficients up to order m-1 = {m - 1}")
    mp = ctx.mp

    # Inner context for the subtracted region.  Computing f - T_{m-1}f at a
    # node x and dividing by x^m amplifies the evaluation error by x^(1-m);
    # nodes are clamped at 10^-(dps+15) (the omitted sliver contributes
    # below tolerance since the subtracted integrand is bounded), so
    # (m+2)*dps plus a fixed cushion of carried digits is always enough.
    from mpmath import ctx_mp

    boost = ctx_mp.MPContext()
    boost.dps = (m + 2) * mp.dps + 120 + int(4 * abs(ctx.real(b_scale)))

    def exact_in(target, c):
        num = getattr(c, "numerator", None)
        if num is not None and not isinstance(c, int):
            return target.mpf(num) / c.denominator
        return target.mpf(c)

    coeffs = [exact_in(boost, c) for c in f_taylor[:m]]
    clamp = mp.mpf(10) ** -(mp.dps + 15)

    def subtracted(x):
        if x < clamp:
            return mp.mpf(0)
        xb = boost.mpf(x)
        taylor = boost.mpf(0)
        xp = boost.mpf(1)
        for c in coeffs:
            taylor += c * xp
            xp *= xb
        val = (f_tail(boost, xb) - taylor) / xb**m
        return mp.mpf(val)

    try:
        head = mp.quad(subtracted, [0, 1], maxdegree=12)
        tail = mp.quad(lambda x: f_tail(mp, x) / x**m, [1, mp.inf], maxdegree=12)
    except Exception as exc:  # mpmath raises bare ValueError on failure
        raise NumericalError(f"finite-part oracle quadrature failed: {exc}") from exc
    mid = mp.mpf(0)
    for k in range(m - 1):
        mid += ctx.real(f_taylor[k]) / (k + 1 - m)
    total = head + mid + tail
    if hasattr(total, "imag") and total.imag != 0:
        total = total.real
    if not mp.isfinite(total):
        raise NumericalError("finite-part oracle produced a non-finite value")
    return total
