"""Exact scalars: half-integers, gamma values at half-integers, rational polynomials.

Every gamma value that occurs in this package is Gamma(m/2) for a positive
integer m, which is always ``rational * sqrt(pi)**k`` with k in {0, 1}.
Keeping the rational part and the power of sqrt(pi) separately lets all
evaluators agree bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence, Union

from .errors import ConsistencyError, DomainError

RationalLike = Union[int, Fraction]


@dataclass(frozen=True, order=False)
class HalfInt:
    """The number ``twice / 2``."""

    twice: int

    @classmethod
    def of(cls, x) -> "HalfInt":
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, str):
            x = Fraction(x)
        x = Fraction(x)
        if (2 * x).denominator != 1:
            raise DomainError(f"{x} is not a half-integer")
        return cls(int(2 * x))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other):
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return HalfInt(self.twice * k)

    __rmul__ = __mul__

    def __lt__(self, other):
        return self.twice < HalfInt.of(other).twice

    def __le__(self, other):
        return self.twice <= HalfInt.of(other).twice

    def __gt__(self, other):
        return self.twice > HalfInt.of(other).twice

    def __ge__(self, other):
        return self.twice >= HalfInt.of(other).twice

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({self})"


@dataclass(frozen=True)
class GammaValue:
    """``coefficient * sqrt(pi) ** sqrt_pi_power``."""

    coefficient: Fraction
    sqrt_pi_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        if self.coefficient == 0 and self.sqrt_pi_power != 0:
            object.__setattr__(self, "sqrt_pi_power", 0)

    def __mul__(self, other):
        if isinstance(other, GammaValue):
            return GammaValue(self.coefficient * other.coefficient,
                              self.sqrt_pi_power + other.sqrt_pi_power)
        if isinstance(other, (int, Fraction)):
            return GammaValue(self.coefficient * other, self.sqrt_pi_power)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GammaValue):
            return GammaValue(self.coefficient / other.coefficient,
                              self.sqrt_pi_power - other.sqrt_pi_power)
        if isinstance(other, (int, Fraction)):
            return GammaValue(self.coefficient / other, self.sqrt_pi_power)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GammaValue(other)
        if not isinstance(other, GammaValue):
            return NotImplemented
        if self.coefficient == 0:
            return other
        if other.coefficient == 0:
            return self
        if self.sqrt_pi_power != other.sqrt_pi_power:
            raise ConsistencyError("cannot add values with different powers of sqrt(pi)")
        return GammaValue(self.coefficient + other.coefficient, self.sqrt_pi_power)

    __radd__ = __add__

    def is_rational(self) -> bool:
        return self.sqrt_pi_power == 0

    def to_fraction(self) -> Fraction:
        if self.sqrt_pi_power != 0:
            raise ConsistencyError(
                f"value carries sqrt(pi)^{self.sqrt_pi_power}; expected a pure rational")
        return self.coefficient

    def __str__(self):
        if self.sqrt_pi_power == 0:
            return str(self.coefficient)
        return f"{self.coefficient}*sqrt(pi)^{self.sqrt_pi_power}"


ONE = GammaValue(Fraction(1))


def gamma_half(arg) -> GammaValue:
    """Gamma at a positive integer or half-integer."""
    x = HalfInt.of(arg)
    if x.twice <= 0:
        raise DomainError(f"Gamma({x}) is outside the supported domain (argument must be > 0)")
    if x.is_integer():
        return GammaValue(Fraction(factorial(x.twice // 2 - 1)))
    # Gamma(k + 1/2) = (2k)! / (4^k k!) * sqrt(pi)
    k = (x.twice - 1) // 2
    return GammaValue(Fraction(factorial(2 * k), 4 ** k * factorial(k)), 1)


def beta_half(a, b) -> GammaValue:
    a, b = HalfInt.of(a), HalfInt.of(b)
    if a.twice <= 0 or b.twice <= 0:
        raise DomainError(f"B({a}, {b}) needs positive arguments")
    return gamma_half(a) * gamma_half(b) / gamma_half(a + b)


def beta_int(a: int, b: int) -> Fraction:
    """B(a, b) for positive integers, as a Fraction."""
    if a <= 0 or b <= 0:
        raise DomainError(f"B({a}, {b}) needs positive arguments")
    return Fraction(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))


def pochhammer(base, count: int):
    """Rising factorial base (base+1) ... (base+count-1).

    ``base`` may be a rational or a :class:`UniPoly`; the result has the same kind.
    """
    if count < 0:
        raise DomainError("Pochhammer count must be nonnegative")
    if isinstance(base, UniPoly):
        out = UniPoly.one()
        for j in range(count):
            out = out * (base + j)
        return out
    out = Fraction(1)
    for j in range(count):
        out *= base + j
    return out


class UniPoly:
    """Dense univariate polynomial in p over the rationals (ascending coefficients)."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[RationalLike] = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def one(cls) -> "UniPoly":
        return cls([1])

    @classmethod
    def p(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c: RationalLike) -> "UniPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    @staticmethod
    def _lift(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        raise TypeError(f"cannot combine UniPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return UniPoly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                       for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coefficients)

    def __sub__(self, other):
        try:
            return self + (-self._lift(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        q = [Fraction(0)] * max(len(rem) - len(other.coefficients) + 1, 0)
        lead = other.leading
        dd = other.degree
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + dd] / lead
            q[k] = c
            if c:
                for j, y in enumerate(other.coefficients):
                    rem[k + j] -= c * y
        return UniPoly(q), UniPoly(rem[:dd] if dd > 0 else [])

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ConsistencyError("polynomial division left a remainder")
        return q

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def shift(self, h: RationalLike) -> "UniPoly":
        """The polynomial p -> self(p + h)."""
        out = UniPoly()
        arg = UniPoly([h, 1])
        for c in reversed(self.coefficients):
            out = out * arg + c
        return out

    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        from math import gcd, lcm
        if not self.coefficients:
            return Fraction(1)
        den = 1
        for c in self.coefficients:
            den = lcm(den, c.denominator)
        num = 0
        for c in self.coefficients:
            num = gcd(num, int(c * den))
        return Fraction(num, den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coefficients]})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "p", latex: bool = False) -> str:
        if not self.coefficients:
            return "0"
        pieces = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if latex and mag.denominator != 1:
                cs = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            else:
                cs = str(mag)
            if k == 0:
                body = cs
            else:
                mono = var if k == 1 else (f"{var}^{{{k}}}" if latex else f"{var}^{k}")
                body = mono if mag == 1 else (f"{cs}{mono}" if latex else f"{cs}*{mono}")
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def interpolate(points: Sequence[tuple[RationalLike, RationalLike]]) -> UniPoly:
    """Lagrange interpolation through distinct nodes."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise DomainError("interpolation nodes must be distinct")
    out = UniPoly()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        basis = UniPoly.one()
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UniPoly([-xj, 1])
                denom *= xs[i] - xj
        out = out + basis * (Fraction(yi) / denom)
    return out


@dataclass(frozen=True)
class ClosedForm:
    """coefficient * sqrt(pi)^k * prod Gamma(p + shift) / Gamma(a p + b) * phi(p)."""

    coefficient: Fraction
    sqrt_pi_power: int
    numerator_gamma_shifts: tuple[HalfInt, ...]
    denominator_gamma: tuple[int, int]
    phi: UniPoly

    def evaluate_gamma(self, p: int) -> GammaValue:
        val = GammaValue(self.coefficient * self.phi(p), self.sqrt_pi_power)
        for s in self.numerator_gamma_shifts:
            val = val * gamma_half(HalfInt.of(s) + p)
        a, b = self.denominator_gamma
        return val / gamma_half(a * p + b)

    def evaluate(self, p: int) -> Fraction:
        val = self.evaluate_gamma(p)
        if val.coefficient != 0 and val.sqrt_pi_power != 0:
            raise ConsistencyError(
                f"closed form at p={p} leaves sqrt(pi)^{val.sqrt_pi_power} uncancelled")
        return val.coefficient

    def to_latex(self) -> str:
        c = self.coefficient
        num, den = [], []
        if c.numerator != 1 or (not self.numerator_gamma_shifts and self.sqrt_pi_power >= 0):
            num.append(str(c.numerator))
        k = self.sqrt_pi_power
        if k:
            # even powers of sqrt(pi) are written as powers of pi
            base, exp = (r"\pi", abs(k) // 2) if k % 2 == 0 else (r"\sqrt{\pi}", abs(k))
            (num if k > 0 else den).append(base if exp == 1 else f"{base}^{{{exp}}}")
        for s in self.numerator_gamma_shifts:
            num.append(rf"\Gamma\left(p + {_latex_half(s)}\right)")
        if c.denominator != 1:
            den.insert(0, str(c.denominator))
        a, b = self.denominator_gamma
        den.append(rf"\Gamma\left({'' if a == 1 else a}p + {b}\right)")
        phi = self.phi.format(latex=True)
        return rf"\frac{{{' '.join(num) or '1'}}}{{{' '.join(den)}}} \left({phi}\right)"

    def __str__(self):
        shifts = " ".join(f"G(p+{s})" for s in self.numerator_gamma_shifts)
        a, b = self.denominator_gamma
        return (f"{self.coefficient} * sqrt(pi)^{self.sqrt_pi_power} * {shifts} "
                f"/ G({a}p+{b}) * ({self.phi})")


def _latex_half(s) -> str:
    s = HalfInt.of(s)
    if s.is_integer():
        return str(s.twice // 2)
    return rf"\frac{{{s.twice}}}{{2}}"


def closedform_eval(cf: ClosedForm, p: int) -> Fraction:
    """Exact value of a closed form at integer p; sqrt(pi) must cancel."""
    return cf.evaluate(p)
