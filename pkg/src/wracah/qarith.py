"""Scalar arithmetic at a root of unity.

q-brackets and q-factorials for q = exp(2*pi*i/k), exact unit phases kept as
reduced rational turns, and half-integer bookkeeping for angular momentum
labels.  Fractional powers q^x use the principal branch exp(2*pi*i*x/k); this
is the one choice under which the analytic eigenvectors of the cyclic shift
reproduce its claimed eigenvalues for every real family parameter, which the
verification suites exercise directly.
"""

from __future__ import annotations

import cmath
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidArgumentError, InvalidOrderError

__all__ = [
    "Amplitude",
    "HalfInt",
    "UnitPhase",
    "ToleranceRule",
    "EXACT_DENOMINATOR_LIMIT",
    "halfint_range",
    "root_of_unity",
    "q_power",
    "q_bracket",
    "q_factorial",
    "q_factorial_is_degenerate",
    "alpha_value",
    "alpha_phase",
    "phase_from_turn",
]

# Complex scalars are plain machine complex numbers; the exact layer below
# only ever feeds them through a single final rounding.
Amplitude = complex

# Rational turns with denominators up to this bound take the exact path;
# anything finer (in practice: irrational family parameters stored as
# binary floats) falls back to one floating evaluation of exp.
EXACT_DENOMINATOR_LIMIT = 10**6


def _require_order(k) -> int:
    if not isinstance(k, numbers.Integral) or isinstance(k, bool) or k < 2:
        raise InvalidOrderError(f"order k must be an integer >= 2, got {k!r}")
    return int(k)


def _as_fraction(x) -> Fraction:
    """Exact rational value of x.  Floats convert via their binary expansion."""
    if isinstance(x, HalfInt):
        return x.as_fraction
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Integral) and not isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, numbers.Real):
        xf = float(x)
        if not math.isfinite(xf):
            raise InvalidArgumentError(f"expected a finite real number, got {x!r}")
        return Fraction(xf)
    raise InvalidArgumentError(f"expected a real number, got {x!r}")


@dataclass(frozen=True, order=True)
class HalfInt:
    """Exact half-integer stored as twice its value."""

    twice: int

    @staticmethod
    def of(value) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise InvalidArgumentError("booleans are not half-integers")
        if isinstance(value, numbers.Integral):
            return HalfInt(2 * int(value))
        frac = _as_fraction(value)
        doubled = 2 * frac
        if doubled.denominator != 1:
            raise InvalidArgumentError(f"{value!r} is not a half-integer")
        return HalfInt(int(doubled))

    @staticmethod
    def parse(text: str) -> "HalfInt":
        s = text.strip()
        try:
            if "/" in s:
                num, den = s.split("/", 1)
                return HalfInt.of(Fraction(int(num), int(den)))
            if "." in s or "e" in s.lower():
                return HalfInt.of(float(s))
            return HalfInt(2 * int(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidArgumentError(f"cannot parse {text!r} as a half-integer") from exc

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    @property
    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __float__(self) -> float:
        return self.twice / 2.0

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other):
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __mul__(self, other):
        # Integer multiples stay exact half-integers; a product of two
        # half-integers is generally a quarter-integer, so it is returned
        # as a Fraction and integrality can be read off the denominator.
        if isinstance(other, numbers.Integral) and not isinstance(other, bool):
            return HalfInt(self.twice * int(other))
        if isinstance(other, HalfInt):
            return self.as_fraction * other.as_fraction
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)


def halfint_range(lo, hi) -> list[HalfInt]:
    """Half-integers from lo to hi inclusive, in steps of 1."""
    lo, hi = HalfInt.of(lo), HalfInt.of(hi)
    return [HalfInt(t) for t in range(lo.twice, hi.twice + 1, 2)]


@dataclass(frozen=True)
class UnitPhase:
    """exp(2*pi*i * numerator/denominator), stored as a reduced turn in [0, 1)."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator == 0:
            raise InvalidArgumentError("denominator must be nonzero")
        turn = Fraction(self.numerator, self.denominator) % 1
        object.__setattr__(self, "numerator", turn.numerator)
        object.__setattr__(self, "denominator", turn.denominator)

    @staticmethod
    def from_turn(turn: Fraction) -> "UnitPhase":
        turn = Fraction(turn)
        return UnitPhase(turn.numerator, turn.denominator)

    @property
    def turn(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __mul__(self, other: "UnitPhase") -> "UnitPhase":
        return UnitPhase.from_turn(self.turn + other.turn)

    def __pow__(self, exponent: int) -> "UnitPhase":
        if not isinstance(exponent, numbers.Integral):
            raise InvalidArgumentError("UnitPhase powers must be integers")
        return UnitPhase.from_turn(self.turn * int(exponent))

    def conjugate(self) -> "UnitPhase":
        return UnitPhase.from_turn(-self.turn)

    def to_complex(self) -> complex:
        n, d = self.numerator, self.denominator
        # quarter turns convert without rounding noise
        if d == 1:
            return 1 + 0j
        if d == 2:
            return -1 + 0j
        if d == 4:
            return 1j if n == 1 else -1j
        return cmath.exp(2j * math.pi * n / d)

    def __complex__(self) -> complex:
        return self.to_complex()


@dataclass(frozen=True)
class ToleranceRule:
    """Absolute and relative comparison thresholds for verification checks."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise InvalidArgumentError("tolerances must be positive")

    @staticmethod
    def for_order(k: int) -> "ToleranceRule":
        k = _require_order(k)
        base = 1e-10
        if k > 16:
            base *= (k / 16.0) ** 2
        return ToleranceRule(base, base)

    def bound(self, scale: float = 1.0) -> float:
        return max(self.abs_tol, self.rel_tol * abs(scale))

    def allows(self, residual: float, scale: float = 1.0) -> bool:
        return residual <= self.bound(scale)


def phase_from_turn(turn) -> complex:
    """exp(2*pi*i*turn) with the exact path for coarse rational turns."""
    if isinstance(turn, Fraction):
        reduced = turn % 1
        if reduced.denominator <= EXACT_DENOMINATOR_LIMIT:
            return UnitPhase.from_turn(reduced).to_complex()
        return cmath.exp(2j * math.pi * float(reduced))
    return cmath.exp(2j * math.pi * (float(turn) % 1.0))


def root_of_unity(k) -> UnitPhase:
    """The primitive root exp(2*pi*i/k)."""
    k = _require_order(k)
    return UnitPhase(1, k)


def q_power(x, k) -> complex:
    """Principal fractional power exp(2*pi*i*x/k) of the order-k root."""
    k = _require_order(k)
    turn = (_as_fraction(x) / k) % 1
    return phase_from_turn(turn)


def q_bracket(x, k) -> complex:
    """(1 - q^x) / (1 - q) with q = exp(2*pi*i/k).

    Reduces to 1 + q + ... + q^(n-1) at nonnegative integers n and vanishes
    exactly at multiples of k, where the numerator is an exact zero.
    """
    k = _require_order(k)
    qx = q_power(x, k)
    q = root_of_unity(k).to_complex()
    return (1 - qx) / (1 - q)


def q_factorial(n, k) -> complex:
    """[n]! = [1][2]...[n] with [0]! = 1, built as the literal product.

    For n >= k the product carries the exactly vanishing bracket [k] and the
    result is an exact complex zero; dividing by it must be refused upstream,
    see q_factorial_is_degenerate.
    """
    k = _require_order(k)
    if not isinstance(n, numbers.Integral) or isinstance(n, bool) or n < 0:
        raise InvalidArgumentError(f"q-factorial needs an integer n >= 0, got {n!r}")
    value = complex(1.0)
    for i in range(1, int(n) + 1):
        value *= q_bracket(i, k)
    return value


def q_factorial_is_degenerate(n, k) -> bool:
    """True when [n]! contains the vanishing bracket [k], i.e. n >= k."""
    k = _require_order(k)
    if not isinstance(n, numbers.Integral) or isinstance(n, bool) or n < 0:
        raise InvalidArgumentError(f"q-factorial needs an integer n >= 0, got {n!r}")
    return int(n) >= k


def _alpha_fraction(j: HalfInt, r, s: int) -> Fraction:
    if not 0 <= int(s) <= j.twice:
        raise InvalidArgumentError(f"family label s = {s} outside 0..{j.twice} for j = {j}")
    return Fraction(int(s)) - j.as_fraction * _as_fraction(r)


def alpha_value(j, r, s: int) -> float:
    """The s-th eigenvalue exponent alpha = -j*r + s of a size-(2j+1) family."""
    j = HalfInt.of(j)
    return float(_alpha_fraction(j, r, int(s)))


def alpha_phase(j, r, s: int, m, sign: int = 1) -> complex:
    """exp(sign * 2*pi*i * alpha*m / (2j+1)) with alpha = -j*r + s.

    The turn alpha*m/(2j+1) is accumulated in exact rational arithmetic and
    rounded once, so rational family parameters give bit-stable phases.
    """
    j = HalfInt.of(j)
    m = HalfInt.of(m)
    order = j.twice + 1
    turn = sign * _alpha_fraction(j, r, int(s)) * m.as_fraction / order
    return phase_from_turn(turn)
