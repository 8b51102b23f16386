"""Arbitrary-precision contexts and digit-agreement comparison.

Every public operation in this package takes a PrecisionContext and performs
its arithmetic on that context's isolated mpmath instance, carrying
digits + guard_digits decimal places internally.  Contexts are immutable
after construction and safe to share between threads for reads.

BigReal / BigComplex below are documentation aliases: values are mpmath
mpf / mpc instances belonging to a specific context.  Do not mix values
across contexts; convert through strings if you must.
"""

from typing import Any

from mpmath import ctx_mp

from .errors import ConfigurationError

BigReal = Any
BigComplex = Any

MIN_DIGITS = 30
DEFAULT_GUARD = 20


class PrecisionContext:
    """Immutable wrapper around an isolated mpmath context.

    digits       -- decimal working precision presented to the caller
    guard_digits -- extra digits carried internally (default 20, which
                    covers the cancellation seen in the extrapolant tails)
    mp           -- the underlying mpmath context, dps = digits + guard_digits
    """

    __slots__ = ("digits", "guard_digits", "mp")

    def __init__(self, digits: int, guard_digits: int = DEFAULT_GUARD):
        if digits < MIN_DIGITS:
            raise ConfigurationError(
                f"working precision must be at least {MIN_DIGITS} digits, got {digits}"
            )
        if guard_digits < 0:
            raise ConfigurationError("guard_digits must be non-negative")
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "guard_digits", guard_digits)
        mp = ctx_mp.MPContext()
        mp.dps = digits + guard_digits
        object.__setattr__(self, "mp", mp)

    def __setattr__(self, name, value):
        raise AttributeError("PrecisionContext is immutable")

    def __repr__(self):
        return f"PrecisionContext(digits={self.digits}, guard_digits={self.guard_digits})"

    # -- value constructors ------------------------------------------------

    def real(self, x) -> BigReal:
        """Convert x (int, str, Fraction, float, mpf) to this context's mpf.

        Decimal strings are preferred for non-integer literals; Fractions
        convert exactly via numerator/denominator division.
        """
        num = getattr(x, "numerator", None)
        if num is not None and not isinstance(x, int):
            return self.mp.mpf(num) / x.denominator
        return self.mp.mpf(x)

    def complex(self, re, im=0) -> BigComplex:
        """Build an mpc; a complex-valued first argument is split apart."""
        re_imag = getattr(re, "imag", 0)
        if re_imag != 0 or isinstance(re, complex) or hasattr(re, "_mpc_"):
            if im != 0:
                raise ConfigurationError("pass either a complex value or two reals")
            return self.mp.mpc(self.real(re.real), self.real(re.imag))
        return self.mp.mpc(self.real(re.real if hasattr(re, "real") else re), self.real(im))

    # -- formatting --------------------------------------------------------

    def to_str(self, x, n: int | None = None) -> str:
        """Decimal string with n significant digits (default: self.digits)."""
        return self.mp.nstr(x, n if n is not None else self.digits)


def with_precision(digits: int, guard_digits: int = DEFAULT_GUARD) -> PrecisionContext:
    """Create a context carrying `digits` working digits (minimum 30)."""
    return PrecisionContext(digits, guard_digits)


def agree_digits(a, b, n: int) -> bool:
    """True iff a and b agree to n significant digits.

    Criterion: |a - b| <= 5*10^(-n) * max(|a|, |b|), applied componentwise
    for complex inputs with the scale taken from the full complex moduli.
    Exact equality (both zero included) always passes.
    """
    if n < 1:
        raise ConfigurationError("digit count must be positive")
    scale = max(abs(a), abs(b))
    if scale == 0:
        return True
    tol = 5 * scale / 10**n
    d_re = abs(a.real - b.real)
    d_im = abs(a.imag - b.imag)
    return d_re <= tol and d_im <= tol
