"""Partitions and exact symmetric polynomials in the monomial basis.

A :class:`SymPoly` stores coordinates with respect to the monomial symmetric
functions m_lambda in a fixed number of variables.  Schur polynomials come
from Kostka numbers, power sums from a direct counting rule, and Jack
polynomials from their defining orthogonality under the alpha-deformed
power-sum scalar product.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import ConsistencyError, DomainError


class Partition(tuple):
    """Weakly decreasing tuple of positive parts; trailing zeros are dropped.

    ``Partition([2, 1, 0]) == Partition([2, 1])``; use :meth:`padded` to get a
    fixed-length vector back.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(x) for x in parts]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise DomainError(f"{parts} is not weakly decreasing")
        if parts and parts[-1] < 0:
            raise DomainError(f"{parts} has negative parts")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("[]()")
        if not text:
            return cls()
        return cls(int(x) for x in text.split(","))

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self) > n:
            raise DomainError(f"{self} has more than {n} nonzero parts")
        return tuple(self) + (0,) * (n - len(self))

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for r in self:
            out[r] = out.get(r, 0) + 1
        return out

    def __repr__(self):
        return f"Partition({list(self)})"

    def __str__(self):
        return ",".join(map(str, self)) if self else "0"


def dominance_leq(mu, lam) -> bool:
    """True iff mu <= lam in dominance order (equal weights, prefix sums of lam dominate)."""
    mu, lam = Partition(mu), Partition(lam)
    if mu.weight != lam.weight:
        return False
    n = max(len(mu), len(lam))
    a, b = mu.padded(n), lam.padded(n)
    s = 0
    for x, y in zip(a, b):
        s += y - x
        if s < 0:
            return False
    return True


def partitions(weight: int, max_length: int | None = None,
               max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``weight`` in reverse lexicographic order (largest first)."""
    if max_length is None:
        max_length = weight
    if max_part is None:
        max_part = weight

    def rec(remaining, cap, slots):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(cap, remaining), 0, -1):
            if first * slots < remaining:
                break
            for rest in rec(remaining - first, first, slots - 1):
                yield (first,) + rest

    for parts in rec(weight, max_part, max_length):
        yield Partition(parts)


def partitions_dominated_by(lam, max_length: int) -> list[Partition]:
    lam = Partition(lam)
    return [mu for mu in partitions(lam.weight, max_length) if dominance_leq(mu, lam)]


def staircase(n: int) -> Partition:
    if n < 1:
        raise DomainError("staircase needs n >= 1")
    return Partition(range(n - 1, -1, -1))


@lru_cache(maxsize=None)
def distinct_permutations(vec: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    if len(vec) <= 1:
        return (vec,)
    out = []
    for v in sorted(set(vec), reverse=True):
        i = vec.index(v)
        rest = vec[:i] + vec[i + 1:]
        for tail in distinct_permutations(rest):
            out.append((v,) + tail)
    return tuple(out)


def _is_decreasing(vec) -> bool:
    return all(a >= b for a, b in zip(vec, vec[1:]))


class SymPoly:
    """Homogeneous symmetric polynomial in ``nvars`` variables, monomial-basis coordinates."""

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int, terms: Mapping | None = None):
        if nvars < 1:
            raise DomainError("a symmetric polynomial needs at least one variable")
        self.nvars = nvars
        self.degree = degree
        clean: dict[Partition, Fraction] = {}
        for lam, c in (terms or {}).items():
            lam = Partition(lam)
            c = Fraction(c)
            if c == 0:
                continue
            if lam.weight != degree:
                raise DomainError(f"term {lam} does not have weight {degree}")
            if len(lam) > nvars:
                raise DomainError(f"term {lam} needs more than {nvars} variables")
            clean[lam] = clean.get(lam, Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v != 0}

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "SymPoly":
        return cls(nvars, degree)

    @classmethod
    def one(cls, nvars: int) -> "SymPoly":
        return cls(nvars, 0, {Partition(): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, lam) -> Fraction:
        return self.terms.get(Partition(lam), Fraction(0))

    def support(self) -> list[Partition]:
        """Partitions with nonzero coefficient, largest first (reverse lex)."""
        return sorted(self.terms, reverse=True)

    def _check(self, other: "SymPoly"):
        if self.nvars != other.nvars:
            raise DomainError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DomainError("cannot add symmetric polynomials of different degrees")
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return SymPoly(self.nvars, self.degree, terms)

    def __neg__(self):
        return SymPoly(self.nvars, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SymPoly):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return SymPoly(self.nvars, self.degree, {k: v * other for k, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SymPoly.one(self.nvars)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms and (
            self.degree == other.degree or not self.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        body = " + ".join(f"{c}*m[{lam}]" for lam, c in sorted(self.terms.items(), reverse=True))
        return f"SymPoly(n={self.nvars}: {body or '0'})"

    def restrict(self, nvars: int) -> "SymPoly":
        """Set the trailing variables to zero (drops partitions longer than ``nvars``)."""
        return SymPoly(nvars, self.degree,
                       {k: v for k, v in self.terms.items() if len(k) <= nvars})

    def shift_parts(self, k: int) -> "SymPoly":
        """Multiply by e_n^k: every part, including zeros, grows by k."""
        n = self.nvars
        return SymPoly(n, self.degree + k * n,
                       {Partition(x + k for x in lam.padded(n)): c
                        for lam, c in self.terms.items()})

    def expand(self) -> dict[tuple[int, ...], Fraction]:
        """Explicit monomial expansion: exponent vector -> coefficient."""
        out: dict[tuple[int, ...], Fraction] = {}
        for lam, c in self.terms.items():
            for alpha in distinct_permutations(lam.padded(self.nvars)):
                out[alpha] = out.get(alpha, 0) + c
        return out

    @classmethod
    def from_expanded(cls, nvars: int, poly: Mapping[tuple[int, ...], Fraction],
                      check: bool = True) -> "SymPoly":
        """Collect a symmetric polynomial given as exponent-vector map."""
        degrees = {sum(a) for a, c in poly.items() if c}
        if len(degrees) > 1:
            raise DomainError("polynomial is not homogeneous")
        degree = degrees.pop() if degrees else 0
        terms = {Partition(a): c for a, c in poly.items() if c and _is_decreasing(a)}
        out = cls(nvars, degree, terms)
        if check:
            expanded = out.expand()
            nonzero = {a: Fraction(c) for a, c in poly.items() if c}
            if expanded != nonzero:
                raise DomainError("polynomial is not symmetric")
        return out

    def __call__(self, point) -> Fraction:
        point = [Fraction(x) for x in point]
        if len(point) != self.nvars:
            raise DomainError("wrong number of coordinates")
        total = Fraction(0)
        for alpha, c in self.expand().items():
            total += c * prod((x ** e for x, e in zip(point, alpha)), start=Fraction(1))
        return total


def monomial(lam, nvars: int) -> SymPoly:
    lam = Partition(lam)
    if len(lam) > nvars:
        raise DomainError(f"m_{lam} needs at least {len(lam)} variables")
    return SymPoly(nvars, lam.weight, {lam: 1})


def elementary(k: int, nvars: int) -> SymPoly:
    return monomial([1] * k, nvars)


def multiply(f: SymPoly, g: SymPoly) -> SymPoly:
    """Exact product.  The m_nu coordinate of f*g is the coefficient of x^nu."""
    f._check(g)
    if f.is_zero() or g.is_zero():
        return SymPoly(f.nvars, f.degree + g.degree)
    if len(g.terms) > len(f.terms):
        f, g = g, f
    f_exp = f.expand()
    out: dict[tuple[int, ...], Fraction] = {}
    for mu, b in g.terms.items():
        for beta in distinct_permutations(mu.padded(f.nvars)):
            for alpha, a in f_exp.items():
                s = tuple(x + y for x, y in zip(alpha, beta))
                if _is_decreasing(s):
                    out[s] = out.get(s, 0) + a * b
    return SymPoly(f.nvars, f.degree + g.degree, {Partition(s): c for s, c in out.items()})


# --- Schur polynomials via Kostka numbers -------------------------------------------------

def _horizontal_strips(lam: tuple[int, ...], size: int) -> Iterator[tuple[int, ...]]:
    """All nu inside lam such that lam/nu is a horizontal strip with ``size`` cells."""
    n = len(lam)

    def rec(i, left, acc):
        if i == n:
            if left == 0:
                yield tuple(acc)
            return
        lower = lam[i + 1] if i + 1 < n else 0
        for nu_i in range(lam[i], lower - 1, -1):
            removed = lam[i] - nu_i
            if removed > left:
                break
            acc.append(nu_i)
            yield from rec(i + 1, left - removed, acc)
            acc.pop()

    yield from rec(0, size, [])


@lru_cache(maxsize=None)
def kostka(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Number of semistandard tableaux of shape lam and content mu.

    The cells holding the largest entry form a horizontal strip; peel it off
    and recurse on the remaining content.
    """
    lam = tuple(Partition(lam))
    mu = tuple(x for x in mu)
    while mu and mu[-1] == 0:
        mu = mu[:-1]
    if sum(lam) != sum(mu):
        return 0
    if not mu:
        return 1 if not lam else 0
    total = 0
    for nu in _horizontal_strips(lam, mu[-1]):
        total += kostka(tuple(Partition(nu)), mu[:-1])
    return total


def schur(lam, nvars: int) -> SymPoly:
    lam = Partition(lam)
    if len(lam) > nvars:
        raise DomainError(f"s_{lam} needs at least {len(lam)} variables")
    terms = {}
    for mu in partitions(lam.weight, nvars):
        if dominance_leq(mu, lam):
            k = kostka(tuple(lam), tuple(mu))
            if k:
                terms[mu] = k
    return SymPoly(nvars, lam.weight, terms)


# --- power sums and the alpha scalar product -----------------------------------------------

@lru_cache(maxsize=None)
def _power_to_monomial(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Coefficient of m_mu in p_lam: ways to drop the parts of lam into bins of sizes mu."""

    @lru_cache(maxsize=None)
    def count(i: int, remaining: tuple[int, ...]) -> int:
        if i == len(lam):
            return 1 if not any(remaining) else 0
        r = lam[i]
        total = 0
        for j, cap in enumerate(remaining):
            if cap >= r:
                total += count(i + 1, remaining[:j] + (cap - r,) + remaining[j + 1:])
        return total

    return count(0, mu)


def power_sum(lam, nvars: int) -> SymPoly:
    lam = Partition(lam)
    terms = {}
    for mu in partitions(lam.weight, nvars):
        c = _power_to_monomial(tuple(lam), tuple(mu))
        if c:
            terms[mu] = c
    return SymPoly(nvars, lam.weight, terms)


def z_weight(lam, alpha) -> Fraction:
    """alpha^len * prod_r r^{m_r} m_r!  (r runs over the distinct part values)."""
    lam = Partition(lam)
    out = Fraction(alpha) ** len(lam)
    for r, m in lam.multiplicities().items():
        out *= r ** m * factorial(m)
    return out


def to_power_sum(f: SymPoly) -> dict[Partition, Fraction]:
    """Coordinates of f in the power-sum basis; needs degree <= nvars."""
    if f.degree > f.nvars:
        raise DomainError(
            f"power sums are not a basis in degree {f.degree} with {f.nvars} variables")
    coords: dict[Partition, Fraction] = {}
    # lex order refines dominance; p_lam involves m_nu only for nu >= lam
    order = list(partitions(f.degree))[::-1]
    for i, nu in enumerate(order):
        acc = f.coefficient(nu)
        for lam in order[:i]:
            a = coords.get(lam)
            if a:
                acc -= a * _power_to_monomial(tuple(lam), tuple(nu))
        if acc:
            coords[nu] = acc / _power_to_monomial(tuple(nu), tuple(nu))
    return coords


def from_power_sum(coords: Mapping, nvars: int, degree: int) -> SymPoly:
    out = SymPoly(nvars, degree)
    for lam, a in coords.items():
        out = out + power_sum(lam, nvars) * Fraction(a)
    return out


def alpha_inner_product(f: SymPoly, g: SymPoly, alpha) -> Fraction:
    f._check(g)
    if not (f.is_zero() or g.is_zero()) and f.degree != g.degree:
        raise DomainError("scalar product needs equal degrees")
    a, b = to_power_sum(f), to_power_sum(g)
    return sum((a[lam] * b[lam] * z_weight(lam, alpha) for lam in a if lam in b), Fraction(0))


# --- Jack polynomials --------------------------------------------------------------------

def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over the rationals."""
    n = len(rhs)
    a = [row[:] + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ConsistencyError("singular orthogonality system")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col]
            if factor:
                factor /= pv
                row, prow = a[r], a[col]
                for k in range(col, n + 1):
                    row[k] -= factor * prow[k]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = a[r][n] - sum((a[r][k] * x[k] for k in range(r + 1, n)), Fraction(0))
        x[r] = acc / a[r][r]
    return x


def _jack_table(weight: int, alpha: Fraction) -> dict[Partition, SymPoly]:
    """P_lambda^(alpha) for every partition of ``weight``, in max(weight, 1) variables."""
    nv = max(weight, 1)
    parts = list(partitions(weight))[::-1]  # lex increasing
    # Gram matrix of the monomial basis
    mono_p = {mu: to_power_sum(monomial(mu, nv)) for mu in parts}
    z = {rho: z_weight(rho, alpha) for rho in parts}
    gram: dict[tuple[Partition, Partition], Fraction] = {}
    for i, mu in enumerate(parts):
        for nu in parts[i:]:
            a, b = mono_p[mu], mono_p[nu]
            v = sum((a[r] * b[r] * z[r] for r in a if r in b), Fraction(0))
            gram[mu, nu] = gram[nu, mu] = v

    table: dict[Partition, SymPoly] = {}
    # image[kappa][mu] = <m_mu, P_kappa>, filled once per finished P_kappa
    image: dict[Partition, dict[Partition, Fraction]] = {}
    for lam in parts:
        below = [mu for mu in parts if mu != lam and dominance_leq(mu, lam)]
        if not below:
            table[lam] = monomial(lam, nv)
        else:
            # <m_lam + sum_mu c_mu m_mu, P_kappa> = 0 for every kappa < lam
            mat = [[image[k][mu] for mu in below] for k in below]
            rhs = [-image[k][lam] for k in below]
            coeffs = _solve(mat, rhs)
            terms = {lam: Fraction(1)}
            terms.update({mu: c for mu, c in zip(below, coeffs)})
            table[lam] = SymPoly(nv, weight, terms)
        items = list(table[lam].terms.items())
        image[lam] = {mu: sum((c * gram[mu, nu] for nu, c in items), Fraction(0)) for mu in parts}
    return table


class JackCache:
    """Thread-safe store of Jack polynomials keyed by (alpha, nvars, lambda).

    Persisted as line-oriented text::

        selberg-jack-cache v1
        alpha=2/1 nvars=3 lambda=2,1 : 2,1=1/1;1,1,1=6/5
    """

    HEADER = "selberg-jack-cache v1"

    def __init__(self):
        self._data: dict[tuple[Fraction, int, Partition], SymPoly] = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._data)

    def __contains__(self, key):
        return key in self._data

    def get(self, alpha, nvars: int, lam) -> SymPoly | None:
        return self._data.get((Fraction(alpha), nvars, Partition(lam)))

    def put(self, alpha, lam, poly: SymPoly) -> None:
        with self._lock:
            self._data[(Fraction(alpha), poly.nvars, Partition(lam))] = poly

    def clear(self):
        with self._lock:
            self._data.clear()

    def dumps(self) -> str:
        lines = [self.HEADER]
        with self._lock:
            items = sorted(self._data.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))
        for (alpha, nv, lam), poly in items:
            body = ";".join(f"{mu}={c.numerator}/{c.denominator}"
                            for mu, c in sorted(poly.terms.items(), reverse=True))
            lines.append(f"alpha={alpha.numerator}/{alpha.denominator} nvars={nv} "
                         f"lambda={lam} : {body}")
        return "\n".join(lines) + "\n"

    def loads(self, text: str) -> None:
        lines = text.splitlines()
        if not lines or lines[0].strip() != self.HEADER:
            raise ValueError("not a selberg jack cache file")
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            try:
                head, body = line.split(" : ", 1)
                fields = dict(item.split("=", 1) for item in head.split())
                if set(fields) != {"alpha", "nvars", "lambda"}:
                    raise ValueError("unexpected fields")
                alpha = Fraction(fields["alpha"])
                nv = int(fields["nvars"])
                lam = Partition.parse(fields["lambda"])
                terms = {}
                for item in body.split(";"):
                    mu, c = item.split("=")
                    terms[Partition.parse(mu)] = Fraction(c)
                poly = SymPoly(nv, lam.weight, terms)
            except (ValueError, DomainError) as exc:
                raise ValueError(f"bad cache record on line {lineno}: {line!r}") from exc
            self.put(alpha, lam, poly)

    def save(self, path) -> None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(self.dumps(), encoding="utf-8")

    def load(self, path) -> None:
        self.loads(Path(path).read_text(encoding="utf-8"))


DEFAULT_CACHE = JackCache()
_table_lock = threading.Lock()


def jack(lam, alpha, nvars: int, cache: JackCache | None = None) -> SymPoly:
    """Jack polynomial P_lambda^(alpha) restricted to ``nvars`` variables.

    Built in max(|lambda|, 1) variables, where power sums form a basis, and
    then restricted; restriction keeps the surviving monomial coordinates.
    """
    lam = Partition(lam)
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise DomainError("Jack parameter must be positive")
    if len(lam) > nvars:
        raise DomainError(f"P_{lam} needs at least {len(lam)} variables")
    cache = DEFAULT_CACHE if cache is None else cache
    nv = max(lam.weight, 1)
    poly = cache.get(alpha, nv, lam)
    if poly is None:
        with _table_lock:
            poly = cache.get(alpha, nv, lam)
            if poly is None:
                for mu, p in _jack_table(lam.weight, alpha).items():
                    cache.put(alpha, mu, p)
                poly = cache.get(alpha, nv, lam)
    return poly.restrict(nvars)
