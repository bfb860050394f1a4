"""Exact arithmetic over numbers of the form u + v*alpha.

Here alpha is a fixed positive irrational described by an oracle that can
produce arbitrarily tight rational enclosures.  Values are pairs of exact
rationals, so equality is structural: u + v*alpha = u' + v'*alpha forces
u = u' and v = v' because alpha is irrational.  Order comparisons are
decided by refining the enclosure until the sign of the difference is
certain; refinement starts at 64 bits and doubles up to a hard cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction

Rational = Fraction

# Comparison outcomes, cmp-style.
LT, EQ, GT = -1, 0, 1

COMPARISON_START_BITS = 64
REFINEMENT_BITS_CAP = 1 << 20


class PrecisionExhausted(Exception):
    """A comparison could not be decided within the refinement cap.

    For algebraic oracles this means the hard bit cap was hit (which a
    correct input never causes); for decimal-literal oracles it means the
    declared precision of the literal was not enough to decide.
    """


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction, or string like "3/10" to a Fraction.

    Floats are rejected: they carry rounding error and would silently
    break exactness guarantees.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class AlphaLinear:
    """The exact real number u + v*alpha."""

    u: Fraction
    v: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "u", as_rational(self.u))
        object.__setattr__(self, "v", as_rational(self.v))

    @classmethod
    def rational(cls, r) -> "AlphaLinear":
        return cls(as_rational(r), Fraction(0))

    @property
    def is_rational(self) -> bool:
        return self.v == 0

    def __add__(self, other: "AlphaLinear") -> "AlphaLinear":
        return AlphaLinear(self.u + other.u, self.v + other.v)

    def __sub__(self, other: "AlphaLinear") -> "AlphaLinear":
        return AlphaLinear(self.u - other.u, self.v - other.v)

    def __neg__(self) -> "AlphaLinear":
        return AlphaLinear(-self.u, -self.v)

    def __mul__(self, scalar) -> "AlphaLinear":
        s = as_rational(scalar)
        return AlphaLinear(self.u * s, self.v * s)

    __rmul__ = __mul__


ZERO = AlphaLinear(Fraction(0))
ALPHA = AlphaLinear(Fraction(0), Fraction(1))


class AlphaOracle:
    """Base for oracles producing nested rational enclosures of alpha.

    enclosure(bits) returns (lo, hi) with lo < alpha < hi and
    hi - lo <= 2**-bits.  Enclosures are memoized best-so-far, so a later
    call at lower bits returns the tighter interval already computed;
    nesting holds across any call order.  The memo is per-object state;
    separate processes simply recompute it.
    """

    kind = ""

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        raise NotImplementedError

    def max_bits(self) -> int:
        return REFINEMENT_BITS_CAP

    def _check_bits(self, bits: int) -> None:
        if not isinstance(bits, int) or bits < 1:
            raise ValueError(f"bits must be a positive integer, got {bits!r}")
        if bits > self.max_bits():
            raise PrecisionExhausted(
                f"{bits} bits requested but this oracle supports at most {self.max_bits()}"
            )

    def sign(self) -> int:
        for lo, hi in refinements(self):
            if lo > 0:
                return GT
            if hi < 0:
                return LT
        raise AssertionError("unreachable")  # refinements raises at the cap

    def float_approx(self) -> tuple[float, float]:
        """A float approximation of alpha with a certified error bound."""
        cached = self._state.get("float")
        if cached is None:
            lo, hi = self.enclosure(min(128, self.max_bits()))
            mid = (lo + hi) / 2
            approx = float(mid)
            # Interval half-width plus conversion rounding, padded.
            err = float((hi - lo) / 2) * 1.01 + abs(approx) * 1e-15 + 1e-300
            cached = (approx, err)
            self._state["float"] = cached
        return cached


def refinements(oracle: AlphaOracle):
    """Yield enclosures at doubling bit counts until the oracle's cap."""
    bits = min(COMPARISON_START_BITS, oracle.max_bits())
    while True:
        yield oracle.enclosure(bits)
        if bits >= oracle.max_bits():
            raise PrecisionExhausted(
                f"comparison undecided at the oracle's precision limit ({bits} bits)"
            )
        bits = min(bits * 2, oracle.max_bits())


def _bisect_to_width(state: list, f, width: Fraction) -> None:
    # Invariant: f(state[0]) < 0 < f(state[1]); f has exactly one root inside.
    lo, hi = state
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = f(mid)
        if s < 0:
            lo = mid
        elif s > 0:
            hi = mid
        else:  # pragma: no cover - roots are irrational by validation
            raise AssertionError("bisection hit an exact root of the defining polynomial")
    state[0], state[1] = lo, hi


def _int_nth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for nonnegative n, integer k >= 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 0
    if k == 1:
        return n
    x = 1 << (-(-n.bit_length() // k))  # upper bound: 2**ceil(bits/k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


@dataclass(frozen=True)
class Quadratic(AlphaOracle):
    """alpha = a + b*sqrt(radicand) with b != 0 and radicand not a square."""

    a: Fraction
    b: Fraction
    radicand: int
    _state: dict = field(default_factory=dict, init=False, compare=False, repr=False)

    kind = "quadratic"

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))
        if not isinstance(self.radicand, int) or self.radicand <= 0:
            raise ValueError("radicand must be a positive integer")
        if math.isqrt(self.radicand) ** 2 == self.radicand:
            raise ValueError(f"radicand {self.radicand} is a perfect square; value would be rational")
        if self.b == 0:
            raise ValueError("b must be nonzero; value would be rational")

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        self._check_bits(bits)
        root_width = Fraction(1, 1 << bits) / abs(self.b)
        state = self._state.get("root")
        if state is None:
            s = math.isqrt(self.radicand)
            state = [Fraction(s), Fraction(s + 1)]
            self._state["root"] = state
        _bisect_to_width(state, lambda x: x * x - self.radicand, root_width)
        lo = self.a + self.b * state[0]
        hi = self.a + self.b * state[1]
        return (lo, hi) if self.b > 0 else (hi, lo)


@dataclass(frozen=True)
class NthRoot(AlphaOracle):
    """alpha = radicand ** (1/degree) for positive rational radicand.

    Rejected at construction when the radicand is an exact degree-th power
    of a rational, since the value would then be rational.
    """

    radicand: Fraction
    degree: int
    _state: dict = field(default_factory=dict, init=False, compare=False, repr=False)

    kind = "nthroot"

    def __post_init__(self):
        object.__setattr__(self, "radicand", as_rational(self.radicand))
        if self.radicand <= 0:
            raise ValueError("radicand must be positive")
        if not isinstance(self.degree, int) or self.degree < 2:
            raise ValueError("degree must be an integer >= 2")
        num, den = self.radicand.numerator, self.radicand.denominator
        if (_int_nth_root(num, self.degree) ** self.degree == num
                and _int_nth_root(den, self.degree) ** self.degree == den):
            raise ValueError(
                f"{self.radicand} is an exact rational power of degree {self.degree}; "
                "value would be rational"
            )

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        self._check_bits(bits)
        width = Fraction(1, 1 << bits)
        state = self._state.get("root")
        if state is None:
            k = _int_nth_root(math.floor(self.radicand), self.degree)
            state = [Fraction(k), Fraction(k + 1)]
            self._state["root"] = state
        r, n = self.radicand, self.degree
        _bisect_to_width(state, lambda x: x ** n - r, width)
        return state[0], state[1]


@dataclass(frozen=True)
class DecimalLiteral(AlphaOracle):
    """alpha given as a decimal string, trusted to precision_bits bits.

    The literal is taken as the center of an interval of half-width
    2**-(bits+1); asking for more bits than declared raises
    PrecisionExhausted.  Irrationality is the caller's assertion.
    """

    digits: str
    precision_bits: int
    _state: dict = field(default_factory=dict, init=False, compare=False, repr=False)

    kind = "decimal"

    def __post_init__(self):
        if not isinstance(self.precision_bits, int) or self.precision_bits < 1:
            raise ValueError("precision_bits must be a positive integer")
        try:
            object.__setattr__(self, "_value", Fraction(self.digits))
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ValueError(f"not a decimal literal: {self.digits!r}") from exc

    def max_bits(self) -> int:
        return min(self.precision_bits, REFINEMENT_BITS_CAP)

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        self._check_bits(bits)
        half = Fraction(1, 1 << (bits + 1))
        return self._value - half, self._value + half


def compare(x: AlphaLinear, y: AlphaLinear, oracle: AlphaOracle) -> int:
    """Exact three-way comparison of x and y; returns LT, EQ, or GT.

    EQ happens only structurally (u, v both equal); otherwise the sign of
    du + dv*alpha is decided by locating alpha relative to -du/dv.
    """
    du = x.u - y.u
    dv = x.v - y.v
    if dv == 0:
        if du == 0:
            return EQ
        return GT if du > 0 else LT
    threshold = -du / dv
    side = GT if dv > 0 else LT
    for lo, hi in refinements(oracle):
        # alpha is irrational, so alpha != threshold; endpoint touches decide.
        if threshold <= lo:
            return side
        if threshold >= hi:
            return -side
    raise AssertionError("unreachable")


def is_positive(x: AlphaLinear, oracle: AlphaOracle) -> bool:
    return compare(x, ZERO, oracle) == GT


def floor_div(x: AlphaLinear, s, oracle: AlphaOracle) -> int:
    """floor(x / s) for a positive rational step s."""
    s = as_rational(s)
    if s <= 0:
        raise ValueError("step must be positive")
    if x.v == 0:
        return math.floor(x.u / s)
    # Certified float filter first; floats have exact integer ratios, so
    # the only fallback cases are windows straddling a cell boundary.
    approx, err = approx_with_error(x, oracle)
    an, ad = approx.as_integer_ratio()
    en, ed = err.as_integer_ratio()
    scale = ad * ed * s.numerator
    fa = (an * ed - en * ad) * s.denominator // scale
    if fa == (an * ed + en * ad) * s.denominator // scale:
        return fa
    for lo, hi in refinements(oracle):
        if x.v > 0:
            a, b = x.u + x.v * lo, x.u + x.v * hi
        else:
            a, b = x.u + x.v * hi, x.u + x.v * lo
        fa = math.floor(a / s)
        if fa == math.floor(b / s):
            return fa
    raise AssertionError("unreachable")


def reduce_mod(x: AlphaLinear, modulus, oracle: AlphaOracle) -> AlphaLinear:
    """The representative of x modulo a positive rational, in [0, modulus)."""
    modulus = as_rational(modulus)
    k = floor_div(x, modulus, oracle)
    return AlphaLinear(x.u - k * modulus, x.v)


def alpha_enclosure(oracle: AlphaOracle, bits: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of alpha of width at most 2**-bits."""
    return oracle.enclosure(bits)


def approx_with_error(x: AlphaLinear, oracle: AlphaOracle) -> tuple[float, float]:
    """(approx, err) floats with |x - approx| <= err, certified.

    Used as a sorting filter: values whose float intervals do not overlap
    are ordered without exact comparisons.
    """
    af, aerr = oracle.float_approx()
    eu = float(x.u)
    ev = float(x.v)
    prod = ev * af
    approx = eu + prod
    # 1e-15 > 4 ulps covers conversion and rounding terms of each float op.
    err = 1e-15 * (abs(approx) + abs(eu) + 2.2 * abs(prod)) + 1.01 * abs(ev) * aerr + 1e-290
    return approx, err


def approximate(x: AlphaLinear, oracle: AlphaOracle, abs_tol) -> Fraction:
    """A rational r with |x - r| <= abs_tol, from an enclosure midpoint."""
    abs_tol = as_rational(abs_tol)
    if abs_tol <= 0:
        raise ValueError("abs_tol must be positive")
    if x.v == 0:
        return x.u
    bits = min(COMPARISON_START_BITS, oracle.max_bits())
    while True:
        lo, hi = oracle.enclosure(bits)
        width = abs(x.v) * (hi - lo)
        if width <= abs_tol:
            return x.u + x.v * (lo + hi) / 2
        if bits >= oracle.max_bits():
            raise PrecisionExhausted("oracle precision too low for the requested tolerance")
        bits = min(bits * 2, oracle.max_bits())


def decimal_string(x: AlphaLinear, oracle: AlphaOracle, significant_digits: int = 30) -> str:
    """Round x to the given count of significant digits, half away from zero."""
    if significant_digits < 1:
        raise ValueError("significant_digits must be >= 1")
    if x.u == 0 and x.v == 0:
        return "0"
    if x.v == 0:
        mid = x.u
    else:
        # Find the magnitude first: refine until the enclosure excludes 0.
        bits = min(COMPARISON_START_BITS, oracle.max_bits())
        while True:
            lo, hi = oracle.enclosure(bits)
            a, b = x.u + x.v * lo, x.u + x.v * hi
            if a > b:
                a, b = b, a
            if a > 0 or b < 0:
                break
            if bits >= oracle.max_bits():
                raise PrecisionExhausted("cannot separate the value from zero")
            bits = min(bits * 2, oracle.max_bits())
        scale = min(abs(a), abs(b))
        mid = approximate(x, oracle, scale * Fraction(1, 10) ** (significant_digits + 5))
    with localcontext() as ctx:
        ctx.prec = significant_digits
        ctx.rounding = ROUND_HALF_UP
        d = Decimal(mid.numerator) / Decimal(mid.denominator)
    return str(d)


def decimal_places_string(x: AlphaLinear, oracle: AlphaOracle, places: int = 9) -> str:
    """Round x to a fixed number of decimal places, half away from zero."""
    if x.v == 0:
        mid = x.u
    else:
        mid = approximate(x, oracle, Fraction(1, 10) ** (places + 6))
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(mid.numerator) / Decimal(mid.denominator)
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))
