"""Brute-force exact integration of polynomials over the ordered simplex S_n.

S_n = {x_1 >= ... >= x_n >= 0, sum x <= 1}.  With the cumulative coordinates
T_j = j (x_j - x_{j+1}) the region becomes the standard simplex, dx = dT / n!,
and each T_j is the stick-breaking product t_j prod_{k>j} (1 - t_k).  All
integrals reduce to one-dimensional beta integrals over [0, 1].

The unordered simplex Omega_n is handled separately by the gamma-function
identity for homogeneous integrands, which gives an independent second route
for symmetric integrands.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial, prod
from typing import Mapping, Sequence

from .errors import ConsistencyError, DomainError, ResourceLimitError
from .symfunc import SymPoly

log = logging.getLogger(__name__)


class MultiPoly:
    """Sparse polynomial: exponent tuple -> rational coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise DomainError(f"exponent vector {exps} does not have length {nvars}")
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def const(cls, nvars: int, c=1) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, c=1) -> "MultiPoly":
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): c})

    @classmethod
    def from_sympoly(cls, f: SymPoly) -> "MultiPoly":
        return cls(f.nvars, f.expand())

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DomainError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.nvars, other)
        raise TypeError(type(other).__name__)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {k: -v for k, v in self.terms.items()})

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
        out: dict[tuple[int, ...], object] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.const(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.terms})"

    def __call__(self, point) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * prod((Fraction(x) ** k for x, k in zip(point, e)), start=Fraction(1))
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: x_i -> images[i] (all images share one variable count)."""
        if len(images) != self.nvars:
            raise DomainError("need one image per variable")
        m = images[0].nvars
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i, k):
            if (i, k) not in powers:
                powers[i, k] = MultiPoly.const(m) if k == 0 else power(i, k - 1) * images[i]
            return powers[i, k]

        out = MultiPoly(m)
        for e, c in self.terms.items():
            term = MultiPoly.const(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def is_symmetric(self) -> bool:
        for e, c in self.terms.items():
            for sigma in set(permutations(e)):
                if self.terms.get(sigma) != c:
                    return False
        return True


def vandermonde(nvars: int) -> MultiPoly:
    """prod_{i<j} (x_i - x_j)."""
    out = MultiPoly.const(nvars)
    for i, j in combinations(range(nvars), 2):
        out = out * (MultiPoly.var(nvars, i) - MultiPoly.var(nvars, j))
    return out


# --- S_n: the cumulative change of variables --------------------------------------------

@lru_cache(maxsize=None)
def _beta_by_expansion(a: int, b: int) -> Fraction:
    """int_0^1 t^a (1-t)^b dt by expanding (1-t)^b."""
    return sum((Fraction((-1) ** r * comb(b, r), a + r + 1) for r in range(b + 1)), Fraction(0))


def _stick_breaking_integral(c: Sequence[int]) -> Fraction:
    """int over [0,1]^n of T^c times the Jacobian prod_k (1 - t_k)^{k-1} (without 1/n!).

    T_j = t_j prod_{k>j} (1-t_k), so t_k carries exponent c_k and (1-t_k)
    carries sum_{j<k} c_j plus k-1 from the Jacobian.
    """
    total = Fraction(1)
    below = 0
    for k, ck in enumerate(c, start=1):
        total *= _beta_by_expansion(ck, below + k - 1)
        below += ck
    return total


def integrate_monomial_simplex(exponents: Sequence[int], n: int | None = None) -> Fraction:
    """int_{S_n} x^a dx, substituting x_i = sum_{j>=i} T_j / j and expanding fully."""
    a = tuple(int(x) for x in exponents)
    n = len(a) if n is None else n
    if len(a) != n:
        raise DomainError("exponent vector must have length n")
    if any(x < 0 for x in a):
        raise DomainError("exponents must be nonnegative")
    images = []
    for i in range(n):
        images.append(sum((MultiPoly.var(n, j, Fraction(1, j + 1)) for j in range(i, n)),
                          MultiPoly(n)))
    g = MultiPoly(n, {a: 1}).substitute(images)
    total = sum((c * _stick_breaking_integral(e) for e, c in g.terms.items()), Fraction(0))
    return total / factorial(n)


def _dirichlet_functional(f: MultiPoly) -> dict[int, Fraction]:
    """Eliminate x_1, ..., x_n one at a time via x_i = x_{i+1} + T_i / i.

    Returns, per total degree D, the sum over T-monomials of coeff * prod c_j!,
    i.e. the numerator of the Dirichlet moment prod c_j! / (D + n)!.
    """
    n = f.nvars
    by_degree: dict[int, Fraction] = {}
    cur: dict[tuple[int, ...], object] = {}
    for e, c in f.terms.items():
        cur[e] = cur.get(e, 0) + c
    # carry the total degree alongside the shrinking exponent vector
    state = {}
    for e, c in cur.items():
        key = (sum(e),) + e
        state[key] = state.get(key, 0) + c
    for i in range(1, n):
        nxt: dict[tuple[int, ...], object] = {}
        for key, c in state.items():
            deg, m, q, rest = key[0], key[1], key[2], key[3:]
            for k in range(m + 1):
                w = comb(m, k) * factorial(k)
                coef = c * Fraction(w, i ** k)
                nk = (deg, q + m - k) + rest
                nxt[nk] = nxt.get(nk, 0) + coef
        state = {k: v for k, v in nxt.items() if v}
    for (deg, m), c in state.items():
        by_degree[deg] = by_degree.get(deg, 0) + c * Fraction(factorial(m), n ** m)
    return by_degree


def integrate_poly_simplex(f: MultiPoly, n: int | None = None) -> Fraction:
    """Exact integral of f over S_n."""
    n = f.nvars if n is None else n
    if f.nvars != n:
        raise DomainError("polynomial variable count must equal n")
    if f.is_zero():
        return Fraction(0)
    total = Fraction(0)
    for deg, num in _dirichlet_functional(f).items():
        total += Fraction(num) / factorial(deg + n)
    return total / factorial(n)


# --- Omega_n: the gamma identity -----------------------------------------------------------

def integrate_symmetric_orthant(f: MultiPoly, n: int | None = None,
                                require_symmetric: bool = True) -> Fraction:
    """int_{Omega_n} f dx using int x^a = prod a_i! / (n + |a|)!."""
    n = f.nvars if n is None else n
    if require_symmetric and not f.is_symmetric():
        raise DomainError("integrand is not symmetric")
    total = Fraction(0)
    for e, c in f.terms.items():
        total += c * Fraction(prod(factorial(x) for x in e), factorial(n + sum(e)))
    return total


# --- the integrals themselves --------------------------------------------------------------

@dataclass(frozen=True)
class Guard:
    max_n: int = 4
    max_d: int = 4
    max_p: int = 6

    def check(self, n: int, d: int, p: int = 0, what: str = "oracle") -> None:
        if n > self.max_n or d > self.max_d or p > self.max_p:
            raise ResourceLimitError(
                f"{what}(n={n}, d={d}, p={p}) exceeds the brute-force guard "
                f"(n <= {self.max_n}, d <= {self.max_d}, p <= {self.max_p}); "
                "raise the limits explicitly if you really want this expansion")


DEFAULT_GUARD = Guard()


def selberg_integrand(n: int, d: int, p: int) -> MultiPoly:
    """(prod x_i)^p * prod_{i<j} (x_i^2 - x_j^2)^d, expanded."""
    out = MultiPoly(n, {(p,) * n: 1})
    for i, j in combinations(range(n), 2):
        factor = MultiPoly.var(n, i) * MultiPoly.var(n, i) - MultiPoly.var(n, j) * MultiPoly.var(n, j)
        out = out * factor ** d
        log.debug("integrand expansion n=%d d=%d p=%d: %d terms after (%d,%d)",
                  n, d, p, len(out.terms), i, j)
    return out


def oracle_I(n: int, d: int, p: int, guard: Guard = DEFAULT_GUARD) -> Fraction:
    if n < 1 or d < 0 or p < 0:
        raise DomainError("need n >= 1, d >= 0, p >= 0")
    guard.check(n, d, p, "oracle_I")
    f = selberg_integrand(n, d, p)
    value = integrate_poly_simplex(f, n)
    if d % 2 == 0:
        other = integrate_symmetric_orthant(f, n) / factorial(n)
        if other != value:
            raise ConsistencyError(
                f"S_n and Omega_n routes disagree for I({n},{d},{p}): {value} vs {other}")
    return value


def oracle_J(n: int, kappa: int, f: SymPoly, guard: Guard = DEFAULT_GUARD) -> Fraction:
    """int_{S_n} f(x) Delta(x)^kappa dx for a symmetric polynomial f."""
    if f.nvars != n:
        raise DomainError("f must be a polynomial in n variables")
    guard.check(n, kappa, 0, "oracle_J")
    if f.degree > guard.max_n * guard.max_p:
        raise ResourceLimitError(f"oracle_J: integrand degree {f.degree} exceeds the guard")
    g = MultiPoly.from_sympoly(f) * vandermonde(n) ** kappa
    return integrate_poly_simplex(g, n)
