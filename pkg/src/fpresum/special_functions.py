"""Bernoulli numbers, digamma at integers, Laguerre polynomials, and the
Hurwitz zeta machinery: zeta(s, a) and its first-argument derivative at
s = -1 for real and complex a.

The zeta evaluations are backed by mpmath's Hurwitz zeta (Euler-Maclaurin
with analytic s-derivatives), exposed here behind the package's contracts:
principal branch of (a+k)^(-s) throughout, relative error within the
context's working digits.  The closed elementary form at s = -1,

    zeta(-1, a) = -(a^2 - a + 1/6)/2,

is implemented independently and used to cross-check the generic path.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DomainError, PoleError
from .precision import BigComplex, BigReal, PrecisionContext


@dataclass(frozen=True)
class BernoulliTable:
    """Even-index Bernoulli numbers B_0, B_2, ..., B_{2N}.

    values[n] holds B_{2n} to the construction context's precision;
    exact[n] is the same number as a Fraction.  Signs alternate for
    n >= 1: sign(B_{2n}) = (-1)^(n+1).
    """

    values: list
    exact: list
    N: int


def bernoulli(N: int, ctx: PrecisionContext) -> BernoulliTable:
    """Table of B_0, B_2, ..., B_{2N}.

    Computed as exact rationals (mpmath.bernfrac uses the zeta/von
    Staudt-Clausen route, stable at any index) and rounded once at the end,
    so the table carries no accumulated error.
    """
    if N < 0:
        raise DomainError("Bernoulli table size must be non-negative")
    exact = []
    for n in range(N + 1):
        p, q = mpmath.bernfrac(2 * n)
        exact.append(Fraction(int(p), int(q)))
    values = [ctx.real(f) for f in exact]
    return BernoulliTable(values=values, exact=exact, N=N)


def digamma_int(m: int, ctx: PrecisionContext) -> BigReal:
    """psi(m) = -euler_gamma + sum_{k=1}^{m-1} 1/k for integer m >= 1."""
    if m < 1:
        raise DomainError(f"digamma_int requires m >= 1, got {m}")
    mp = ctx.mp
    s = -mp.euler
    for k in range(1, m):
        s += mp.mpf(1) / k
    return s


def laguerre(m: int, z, ctx: PrecisionContext) -> BigComplex:
    """Laguerre polynomial L_m(z) by the three-term recurrence

        (k+1) L_{k+1} = (2k+1-z) L_k - k L_{k-1},  L_0 = 1, L_1 = 1 - z.
    """
    if m < 0:
        raise DomainError("Laguerre index must be non-negative")
    mp = ctx.mp
    one = mp.mpf(1)
    if m == 0:
        return one + z * 0
    prev = one
    cur = one - z
    for k in range(1, m):
        prev, cur = cur, ((2 * k + 1 - z) * cur - k * prev) / (k + 1)
    return cur


def _check_a(a):
    # non-positive integers on the real axis are poles of zeta(s, a)
    if a.imag == 0 and a.real <= 0 and a.real == int(a.real):
        raise DomainError(f"Hurwitz zeta undefined at non-positive integer a = {a}")


def hurwitz_zeta(s, a, ctx: PrecisionContext) -> BigComplex:
    """zeta(s, a) = sum_{k>=0} (a+k)^(-s), principal branch, continued in s."""
    mp = ctx.mp
    s = mp.mpc(s) if (hasattr(s, "imag") and s.imag != 0) else mp.mpf(s.real if hasattr(s, "real") else s)
    a = mp.mpc(a)
    if s == 1:
        raise PoleError("zeta(s, a) has a pole at s = 1")
    _check_a(a)
    if a.imag == 0:
        a = a.real
    return mp.zeta(s, a)


def hurwitz_zeta_neg1(a, ctx: PrecisionContext) -> BigComplex:
    """zeta(-1, a) = -(a^2 - a + 1/6)/2, the Bernoulli-polynomial value."""
    mp = ctx.mp
    a = mp.mpc(a)
    if a.imag == 0:
        a = a.real
    return -(a * a - a + mp.mpf(1) / 6) / 2


def hurwitz_zeta_sderiv_neg1(a, ctx: PrecisionContext) -> BigComplex:
    """d/ds zeta(s, a) at s = -1.

    Analytic s-derivative of the Euler-Maclaurin representation (mpmath's
    derivative path), never a finite difference.  Principal branch; valid
    for a off the non-positive real integers.
    """
    mp = ctx.mp
    a = mp.mpc(a)
    _check_a(a)
    if a.imag == 0:
        a = a.real
    return mp.zeta(mp.mpf(-1), a, 1)
