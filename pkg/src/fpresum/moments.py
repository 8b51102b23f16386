"""Linear moment system and the Laguerre-basis density built from it.

The weak-field coefficients a_{n+2} are matched to analytic moments of a
density rho(x) = x g(x), g(x) = e^(-x/2) sum_m c_m L_m(x).  The matching
matrix has exact integer entries but is severely ill-conditioned; the rule
"working digits >= number of moments" keeps the solve meaningful, with the
context guard absorbing the rest.

Solutions are expensive at large d, so they serialize to a small versioned
JSON document that reloads bit-exactly at the same working precision.
"""

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigurationError, DomainError, SolverError
from .precision import BigComplex, BigReal, PrecisionContext, with_precision
from .heisenberg_euler import SeriesCoefficients

_SCHEMA = 1


@dataclass(frozen=True)
class MomentSystem:
    """Dense (d+1) x (d+1) matching system P c = rhs."""

    d: int
    P: tuple  # rows of BigReal, exact integers rounded once at build time
    rhs: tuple  # a_{n+2} for n = 0..d


@dataclass(frozen=True)
class MomentSolution:
    """Solved density coefficients with the solve's own quality record.

    residual is the max relative back-substitution defect; digits_used is
    the precision the solve ran at (excluding guard).
    """

    c: tuple
    d: int
    residual: object
    digits_used: int


def _p_exact(n: int, m: int) -> int:
    # m! 2^(2n+2) sum_k (-2)^k (2n+k+1)! / ((k!)^2 (m-k)!), exact.
    # Terms follow from t_0 = m!(2n+1)!/m! = (2n+1)! by a rational ratio.
    t = Fraction(math.factorial(2 * n + 1))
    acc = t
    for k in range(m):
        t *= Fraction(-2 * (2 * n + k + 2) * (m - k), (k + 1) ** 2)
        acc += t
    total = acc * 4 ** (n + 1)
    assert total.denominator == 1
    return total.numerator


def p_entry(n: int, m: int, ctx: PrecisionContext) -> BigReal:
    """Matrix entry P(n,m): the x^(2n+1) moment of e^(-x/2) L_m(x)."""
    if n < 0 or m < 0:
        raise DomainError("p_entry indices must be non-negative")
    return ctx.real(_p_exact(n, m))


def build_system(coeffs: SeriesCoefficients, d: int, ctx: PrecisionContext) -> MomentSystem:
    """Assemble the (d+1)-moment system; refuses when digits < d+1."""
    if d < 0:
        raise DomainError("d must be non-negative")
    if coeffs.n_max < d + 2:
        raise DomainError(f"coefficients reach n={coeffs.n_max}, need n={d + 2}")
    if ctx.digits < d + 1:
        raise ConfigurationError(
            f"working digits ({ctx.digits}) below the number of moments "
            f"({d + 1}); the precision rule requires digits >= moments"
        )
    rows = tuple(
        tuple(ctx.real(_p_exact(n, m)) for m in range(d + 1)) for n in range(d + 1)
    )
    rhs = tuple(ctx.real(coeffs.exact_a[n]) for n in range(d + 1))
    return MomentSystem(d=d, P=rows, rhs=rhs)


def _lu_solve(mp, A, b, pivot_floor):
    """LU with partial pivoting; A and b are consumed.

    The floor is absolute and tiny: it catches true degeneracy, not
    ill-conditioning, which this system has by construction and which the
    digits >= moments rule absorbs.
    """
    n = len(A)
    perm = list(range(n))
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(A[r][col]))
        if abs(A[pivot_row][col]) <= pivot_floor:
            raise SolverError(
                f"numerically singular pivot at column {col}", pivot_index=col
            )
        if pivot_row != col:
            A[col], A[pivot_row] = A[pivot_row], A[col]
            b[col], b[pivot_row] = b[pivot_row], b[col]
            perm[col], perm[pivot_row] = perm[pivot_row], perm[col]
        inv = 1 / A[col][col]
        for r in range(col + 1, n):
            factor = A[r][col] * inv
            if factor == 0:
                continue
            A[r][col] = factor  # store the multiplier in the eliminated slot
            row, prow = A[r], A[col]
            for c in range(col + 1, n):
                row[c] -= factor * prow[c]
            b[r] -= factor * b[col]
    x = [mp.mpf(0)] * n
    for r in range(n - 1, -1, -1):
        s = b[r]
        row = A[r]
        for c in range(r + 1, n):
            s -= row[c] * x[c]
        x[r] = s / row[r]
    return x, A, perm


def _apply_lu(mp, LU, perm, b):
    n = len(LU)
    pb = [b[perm[r]] for r in range(n)]
    for col in range(n):
        for r in range(col + 1, n):
            pb[r] -= LU[r][col] * pb[col]
    x = [mp.mpf(0)] * n
    for r in range(n - 1, -1, -1):
        s = pb[r]
        row = LU[r]
        for c in range(r + 1, n):
            s -= row[c] * x[c]
        x[r] = s / row[r]
    return x


def solve(system: MomentSystem, ctx: PrecisionContext) -> MomentSolution:
    """Solve P c = rhs by pivoted LU plus one iterative-refinement pass."""
    mp = ctx.mp
    n = system.d + 1
    A = [[mp.mpf(v) for v in row] for row in system.P]
    b = [mp.mpf(v) for v in system.rhs]
    floor = mp.mpf(10) ** (-(ctx.digits) + min(ctx.guard_digits, ctx.digits - 1))
    x, LU, perm = _lu_solve(mp, A, b, floor)

    def residual_vec(xs):
        out = []
        for r in range(n):
            s = -system.rhs[r]
            row = system.P[r]
            for c in range(n):
                s += row[c] * xs[c]
            out.append(s)
        return out

    # one refinement pass: re-solve against the defect using the stored factors
    corr = _apply_lu(mp, LU, perm, residual_vec(x))
    x = [x[i] - corr[i] for i in range(n)]

    # Row defects are scaled by the largest contribution entering the row.
    # Rows mix terms hundreds of orders above their sum, so a defect divided
    # by the right-hand side alone would report that intrinsic cancellation,
    # not solve quality; the scaled measure is what the 1e-20 target governs.
    rel = mp.mpf(0)
    for r, dv in enumerate(residual_vec(x)):
        scale = max(
            abs(system.rhs[r]),
            max(abs(system.P[r][c] * x[c]) for c in range(n)),
        )
        rel = max(rel, abs(dv) / scale)
    return MomentSolution(c=tuple(x), d=system.d, residual=rel, digits_used=ctx.digits)


def _split_number(ctx, z):
    # real stays real so downstream evaluations preserve realness
    if hasattr(z, "imag") and z.imag != 0:
        return ctx.complex(z), True
    return ctx.real(z.real if hasattr(z, "real") else z), False


def g_eval(sol: MomentSolution, z, ctx: PrecisionContext) -> BigComplex:
    """Reconstruction g(z) = e^(-z/2) sum_m c_m L_m(z), single recurrence sweep."""
    mp = ctx.mp
    w, _ = _split_number(ctx, z)
    c = sol.c
    acc = c[0] * 1  # L_0 = 1
    if sol.d >= 1:
        prev = mp.mpf(1)
        cur = 1 - w  # L_1
        acc += c[1] * cur
        for k in range(1, sol.d):
            prev, cur = cur, ((2 * k + 1 - w) * cur - k * prev) / (k + 1)
            acc += c[k + 1] * cur
    return mp.exp(-w / 2) * acc


def rho_eval(sol: MomentSolution, z, ctx: PrecisionContext) -> BigComplex:
    """Density rho(z) = z g(z)."""
    w, _ = _split_number(ctx, z)
    return w * g_eval(sol, w, ctx)


def solution_to_json(sol: MomentSolution, ctx: PrecisionContext) -> str:
    """Serialize with enough decimal digits to round-trip the binary values."""
    mp = ctx.mp
    digits = int(mp.prec * 0.30103) + 5
    return json.dumps(
        {
            "schema": _SCHEMA,
            "d": sol.d,
            "digits_used": sol.digits_used,
            "residual": mp.nstr(mp.mpf(sol.residual), 10),
            "c": [mp.nstr(v, digits) for v in sol.c],
        }
    )


def solution_from_json(text: str) -> MomentSolution:
    """Reload a serialized solution at its recorded precision."""
    doc = json.loads(text)
    if doc.get("schema") != _SCHEMA:
        raise ConfigurationError(f"unsupported solution document schema {doc.get('schema')!r}")
    d = int(doc["d"])
    digits_used = int(doc["digits_used"])
    if len(doc["c"]) != d + 1:
        raise ConfigurationError("solution document is inconsistent: wrong coefficient count")
    ctx = with_precision(max(digits_used, 30))
    mp = ctx.mp
    return MomentSolution(
        c=tuple(mp.mpf(s) for s in doc["c"]),
        d=d,
        residual=mp.mpf(doc["residual"]),
        digits_used=digits_used,
    )
