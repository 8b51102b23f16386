"""Convergent extrapolants built on the reconstructed density.

The divergent weak-field series is traded for negative-order moments
mu_{-(2k+2)} of rho plus a boundary term: Delta(beta) on the magnetic side,
Lambda(kappa) and an explicit imaginary reconstruction on the electric side.
The k-sum converges; its terms are recorded so callers can inspect the tail.

Two evaluation routes exist on purpose.  tail_coefficient computes the four
displayed pieces I, J, L, M literally (double sums over Laguerre expansion
indices) and is the slow reference; the extrapolate_* drivers collapse the
inner sums through A_l = sum_{m>=l} c_m m!/(m-l)! once per call, which is
algebraically identical and O(d) per moment.
"""

from dataclasses import dataclass

from .errors import DomainError, InternalConsistencyError
from .precision import BigComplex, BigReal, PrecisionContext
from .finite_part import fp_exp, fp_laguerre_exp
from .moments import MomentSolution, rho_eval


@dataclass(frozen=True)
class ExtrapolantResult:
    """Value plus the convergence record of the k-sum that produced it.

    delta_or_lambda holds everything beyond the moment sum: Delta(beta) for
    the magnetic side, -kappa*Lambda + the imaginary reconstruction for the
    electric side.  kind says which reading applies.
    """

    value: object
    terms_used: int
    term_magnitudes: tuple
    delta_or_lambda: object
    kind: str


def _check_solution(sol: MomentSolution):
    if sol.d + 1 != len(sol.c):
        raise DomainError("solution is inconsistent: d+1 != len(c)")


def _collapsed_weights(sol, ctx):
    # A_l = sum_{m=l}^d c_m m!/(m-l)!  -- the derivative sums of g at 0
    mp = ctx.mp
    d = sol.d
    fact = [mp.mpf(1)]
    for i in range(1, d + 1):
        fact.append(fact[-1] * i)
    A = []
    for l in range(d + 1):
        s = mp.mpf(0)
        for m in range(l, d + 1):
            s += sol.c[m] * fact[m] / fact[m - l]
        A.append(s)
    return A, fact


def _psi_table(mp, top):
    # psi at integers 1..top: psi(1) = -gamma, psi(m+1) = psi(m) + 1/m
    psi = [mp.mpf(0)] * (top + 1)
    psi[1] = -mp.euler
    for m in range(2, top + 1):
        psi[m] = psi[m - 1] + mp.mpf(1) / (m - 1)
    return psi


def _mu_list(sol, K, ctx):
    """Negative-order moments mu_{-(2k+2)} for k = 0..K, collapsed route."""
    mp = ctx.mp
    d = sol.d
    A, _ = _collapsed_weights(sol, ctx)
    psi = _psi_table(mp, 2 * K + 2)
    ln_half = -mp.ln2
    half = mp.mpf(1) / 2
    fact = [mp.mpf(1)]
    for i in range(1, max(d, 2 * K + 1) + 1):
        fact.append(fact[-1] * i)
    mus = []
    for k in range(K + 1):
        mu = mp.mpf(0)
        top_fp = min(2 * k, d)
        for l in range(top_fp + 1):
            order = 2 * k + 1 - l
            fp = (
                (-1 if order % 2 else 1)
                * half ** (order - 1)
                / fact[order - 1]
                * (ln_half - psi[order])
            )
            mu += (-1 if l % 2 else 1) / fact[l] ** 2 * A[l] * fp
        for l in range(2 * k + 1, d + 1):
            # convergent part: moments of x^(l-2k-1) e^(-x/2)
            mu += (
                (-1 if l % 2 else 1)
                * fact[l - 2 * k - 1]
                * mp.mpf(2) ** (l - 2 * k)
                / fact[l] ** 2
                * A[l]
            )
        mus.append(mu)
    return mus


def delta_term(beta, sol: MomentSolution, ctx: PrecisionContext) -> BigReal:
    """Boundary term Delta(beta); real for real coefficients, and checked."""
    mp = ctx.mp
    _check_solution(sol)
    b = ctx.real(beta)
    if b <= 0:
        raise DomainError("delta_term requires beta > 0")
    sb = mp.sqrt(b)
    z = mp.mpc(0, 1) / sb
    rp = rho_eval(sol, z, ctx)
    rm = rho_eval(sol, -z, ctx)
    val = mp.pi * sb / 4 * (rp + rm) + sb * mp.ln(b) / (4 * mp.mpc(0, 1)) * (rp - rm)
    tol = mp.mpf(10) ** (-(ctx.digits - ctx.guard_digits))
    if abs(val.imag) >= tol * max(1, abs(val.real)):
        raise InternalConsistencyError(
            f"Delta(beta) imaginary residue {mp.nstr(abs(val.imag), 5)} "
            f"exceeds tolerance {mp.nstr(tol, 3)}"
        )
    return val.real


def tail_coefficient(kind: str, k: int, sol: MomentSolution, ctx: PrecisionContext) -> BigReal:
    """Literal evaluation of the displayed pieces I_k, J_k, L_k, M_k.

    I + J + L assemble mu_{-(2k+2)} while 2k+1 <= d; M covers the larger k.
    Quadratic in d; meant as the reference route, not the driver.
    """
    mp = ctx.mp
    _check_solution(sol)
    if k < 0:
        raise DomainError("k must be non-negative")
    d = sol.d
    split = (d - 1) // 2
    if kind in ("I", "J", "L") and k > split:
        raise DomainError(f"kind {kind} needs k <= floor((d-1)/2) = {split}")
    if kind == "M" and k <= split:
        raise DomainError(f"kind M applies for k > floor((d-1)/2) = {split}")
    fact = [mp.mpf(1)]
    for i in range(1, max(d, 2 * k) + 2):
        fact.append(fact[-1] * i)
    total = mp.mpf(0)
    if kind == "I":
        for m in range(min(2 * k, d) + 1):
            inner = mp.mpf(0)
            for l in range(m + 1):
                inner += (
                    (-1 if l % 2 else 1)
                    / (fact[l] ** 2 * fact[m - l])
                    * fp_laguerre_exp(k, l, ctx)
                )
            total += sol.c[m] * fact[m] * inner
    elif kind == "J":
        for m in range(2 * k + 1, d + 1):
            inner = mp.mpf(0)
            for l in range(2 * k + 1):
                inner += (
                    (-1 if l % 2 else 1)
                    / (fact[l] ** 2 * fact[m - l])
                    * fp_laguerre_exp(k, l, ctx)
                )
            total += sol.c[m] * fact[m] * inner
    elif kind == "L":
        for m in range(2 * k + 1, d + 1):
            inner = mp.mpf(0)
            for l in range(2 * k + 1, m + 1):
                inner += (
                    (-1 if l % 2 else 1)
                    * fact[l - 2 * k - 1]
                    * mp.mpf(2) ** (l - 2 * k)
                    / (fact[l] ** 2 * fact[m - l])
                )
            total += sol.c[m] * fact[m] * inner
    elif kind == "M":
        for m in range(d + 1):
            inner = mp.mpf(0)
            for l in range(m + 1):
                inner += (
                    (-1 if l % 2 else 1)
                    / (fact[l] ** 2 * fact[m - l])
                    * fp_exp(mp.mpf(1) / 2, 2 * k + 1 - l, ctx)
                )
            total += sol.c[m] * fact[m] * inner
    else:
        raise DomainError(f"unknown tail coefficient kind {kind!r}")
    return total


def extrapolate_magnetic(beta, sol: MomentSolution, K: int = None, ctx: PrecisionContext = None) -> ExtrapolantResult:
    """f(beta) = sum_k (-1)^k beta^(1-k) mu_{-(2k+2)} + beta*Delta(beta)."""
    mp = ctx.mp
    _check_solution(sol)
    b = ctx.real(beta)
    if b <= 0:
        raise DomainError("extrapolate_magnetic requires beta > 0")
    if K is None:
        K = 2 * sol.d
    if K < 0:
        raise DomainError("K must be non-negative")
    mus = _mu_list(sol, K, ctx)
    total = mp.mpf(0)
    mags = []
    power = b  # beta^(1-k) starting at k=0
    for k in range(K + 1):
        term = (-1 if k % 2 else 1) * power * mus[k]
        total += term
        mags.append(abs(term))
        power /= b
    delta = delta_term(b, sol, ctx)
    return ExtrapolantResult(
        value=total + b * delta,
        terms_used=K,
        term_magnitudes=tuple(mags),
        delta_or_lambda=delta,
        kind="magnetic",
    )


def lambda_term(kappa, sol: MomentSolution, ctx: PrecisionContext) -> BigReal:
    """Strong-electric-field boundary term (sqrt(k)/2) ln(sqrt(k)) (rho(1/sqrt(k)) - rho(-1/sqrt(k)))."""
    mp = ctx.mp
    _check_solution(sol)
    k = ctx.real(kappa)
    if k <= 0:
        raise DomainError("lambda_term requires kappa > 0")
    rk = mp.sqrt(k)
    return rk / 2 * mp.ln(rk) * (rho_eval(sol, 1 / rk, ctx) - rho_eval(sol, -1 / rk, ctx))


def extrapolate_electric(kappa, sol: MomentSolution, K: int = None, ctx: PrecisionContext = None, conjugate_branch: bool = False) -> ExtrapolantResult:
    """Complex extrapolant for the electric background.

    The continuation approaches the negative axis from below by default
    (beta -> e^(-i pi) kappa), which puts the reconstructed imaginary part
    at +i(pi/2) kappa^(3/2) rho(1/sqrt(kappa)) and keeps Im f > 0.
    conjugate_branch=True selects the other approach; it exists for branch
    studies and yields the complex conjugate.
    """
    mp = ctx.mp
    _check_solution(sol)
    kap = ctx.real(kappa)
    if kap <= 0:
        raise DomainError("extrapolate_electric requires kappa > 0")
    if K is None:
        K = 2 * sol.d
    if K < 0:
        raise DomainError("K must be non-negative")
    mus = _mu_list(sol, K, ctx)
    total = mp.mpf(0)
    mags = []
    power = kap
    for k in range(K + 1):
        term = -power * mus[k]
        total += term
        mags.append(abs(term))
        power /= kap
    lam = lambda_term(kap, sol, ctx)
    rk = mp.sqrt(kap)
    imag_part = mp.pi / 2 * kap * rk * rho_eval(sol, 1 / rk, ctx)
    if conjugate_branch:
        imag_part = -imag_part
    rest = mp.mpc(-kap * lam, imag_part)
    return ExtrapolantResult(
        value=total + rest,
        terms_used=K,
        term_magnitudes=tuple(mags),
        delta_or_lambda=rest,
        kind="electric",
    )


def convergence_report(result: ExtrapolantResult) -> dict:
    """Tail diagnostics: where the term magnitudes turn monotone, and the
    last magnitude doubling as a truncation estimate."""
    mags = result.term_magnitudes
    if not mags:
        raise DomainError("result carries no terms")
    monotone_from = len(mags) - 1
    for i in range(len(mags) - 1, 0, -1):
        if mags[i - 1] >= mags[i]:
            monotone_from = i - 1
        else:
            break
    return {
        "monotone_from": monotone_from,
        "last_term": mags[-1],
        "truncation_estimate": mags[-1],
    }


def result_to_json(result: ExtrapolantResult, ctx: PrecisionContext) -> dict:
    """JSON-ready dict with decimal strings at the context's display digits."""

    def enc(v):
        if hasattr(v, "imag") and v.imag != 0:
            return {"re": ctx.to_str(v.real), "im": ctx.to_str(v.imag)}
        return ctx.to_str(v.real if hasattr(v, "real") else v)

    return {
        "schema": 1,
        "kind": result.kind,
        "value": enc(result.value),
        "terms_used": result.terms_used,
        "term_magnitudes": [ctx.to_str(m, 8) for m in result.term_magnitudes],
        "delta_or_lambda": enc(result.delta_or_lambda),
    }
