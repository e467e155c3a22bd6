"""I_{n,d,p} for any positive integer d through Jack polynomials.

(s_delta)^d is expanded in the Jack basis at alpha = 2/d; each Jack term has
a closed-form integral against e_n^p Delta^d (Macdonald's formula), and the
sum factors as a polynomial Phi(p) times a fixed gamma product.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import ConsistencyError, DomainError
from .exact import ClosedForm, GammaValue, HalfInt, ONE, UniPoly, gamma_half, interpolate
from .symfunc import JackCache, Partition, SymPoly, dominance_leq, jack, schur, staircase


@dataclass(frozen=True)
class JackExpansion:
    n: int
    d: int
    alpha: Fraction
    terms: dict = field(hash=False)

    def reconstruct(self, cache: JackCache | None = None) -> SymPoly:
        out = SymPoly(self.n, self.d * self.n * (self.n - 1) // 2)
        for lam, c in self.terms.items():
            out = out + jack(lam, self.alpha, self.n, cache) * c
        return out


@dataclass(frozen=True)
class MinimalParts:
    mu_min: tuple[int, ...]


def minimal_parts(n: int, d: int) -> MinimalParts:
    """Smallest possible i-th part of a lambda <= d*delta: floor((d(n-i)+1)/2)."""
    return MinimalParts(tuple((d * (n - i) + 1) // 2 for i in range(1, n + 1)))


def _expand(n: int, d: int, cache: JackCache | None) -> dict[Partition, Fraction]:
    alpha = Fraction(2, d)
    top = Partition(x * d for x in staircase(n))
    remaining = schur(staircase(n), n) ** d
    terms: dict[Partition, Fraction] = {}
    while not remaining.is_zero():
        lam = remaining.support()[0]
        if not dominance_leq(lam, top):
            raise ConsistencyError(f"{lam} appears in (s_delta)^{d} but is not <= {top}")
        c = remaining.coefficient(lam)
        terms[lam] = c
        remaining = remaining - jack(lam, alpha, n, cache) * c
        if remaining.coefficient(lam) != 0:
            raise ConsistencyError("triangular solve left a residual on the leading term")
    return terms


@lru_cache(maxsize=None)
def _expand_cached(n: int, d: int) -> tuple:
    return tuple(_expand(n, d, None).items())


def expand_sdelta_power(n: int, d: int, cache: JackCache | None = None) -> JackExpansion:
    """Coefficients c_lambda with (s_delta)^d = sum c_lambda P_lambda^(2/d)."""
    if n < 1 or d < 1:
        raise DomainError("need n >= 1 and d >= 1")
    terms = dict(_expand_cached(n, d)) if cache is None else _expand(n, d, cache)
    return JackExpansion(n, d, Fraction(2, d), terms)


def v_lambda(lam, n: int, d: int) -> GammaValue:
    """prod_{i<j} Gamma(l_i - l_j + d(j-i+1)/2) / Gamma(l_i - l_j + d(j-i)/2)."""
    lam = Partition(lam).padded(n)
    out = ONE
    for i in range(n):
        for j in range(i + 1, n):
            diff = lam[i] - lam[j]
            out = out * gamma_half(HalfInt(2 * diff + d * (j - i + 1)))
            out = out / gamma_half(HalfInt(2 * diff + d * (j - i)))
    return out


def macdonald_integral(lam, n: int, d: int) -> ClosedForm:
    """int_{S_n} P_lambda^(2/d) e_n^p Delta^d as a closed form in p.

    = v_lambda(d) prod_i Gamma(lambda_i + p + 1 + d(n-i)/2) / Gamma(a+1),
    a = |lambda| + n(p + 1 + d(n-1)/2).
    """
    lam = Partition(lam)
    if len(lam) > n:
        raise DomainError(f"{lam} has more than {n} parts")
    v = v_lambda(lam, n, d)
    padded = lam.padded(n)
    shifts = tuple(HalfInt(2 * padded[i - 1] + 2 + d * (n - i)) for i in range(1, n + 1))
    b = lam.weight + n + d * n * (n - 1) // 2 + 1
    return ClosedForm(v.coefficient, v.sqrt_pi_power, shifts, (n, b), UniPoly.one())


def macdonald_value(lam, n: int, d: int, p: int) -> Fraction:
    return macdonald_integral(lam, n, d).evaluate(p)


def degree_bound(n: int, d: int) -> int:
    """Upper bound on deg Phi: d n(n-1)/4, minus floor(n/2)/2 when d is odd."""
    bound = Fraction(d * n * (n - 1), 4)
    if d % 2:
        bound -= Fraction(n // 2, 2)
    if bound.denominator != 1:
        raise ConsistencyError(f"degree bound {bound} is not an integer")
    return int(bound)


def gamma_shifts(n: int, d: int) -> tuple[HalfInt, ...]:
    """Common gamma shifts 1 + mu_min[i] + d(n-i)/2 shared by every Jack term."""
    mu = minimal_parts(n, d).mu_min
    return tuple(HalfInt(2 + 2 * mu[i - 1] + d * (n - i)) for i in range(1, n + 1))


def _value(expansion: JackExpansion, p: int) -> Fraction:
    n, d = expansion.n, expansion.d
    total = Fraction(0)
    for lam, c in expansion.terms.items():
        total += c * macdonald_value(lam, n, d, p)
    return total


def closed_form(n: int, d: int, nodes_start: int = 0,
                cache: JackCache | None = None) -> ClosedForm:
    """Recover Phi by interpolation and package I_{n,d,p} as a ClosedForm."""
    expansion = expand_sdelta_power(n, d, cache)
    shifts = gamma_shifts(n, d)
    den = (n, n + d * n * (n - 1) + 1)
    bound = degree_bound(n, d)
    half_count = sum(1 for s in shifts if not s.is_integer())
    points = []
    # one node beyond the bound, so an overshooting degree would be visible
    for p in range(nodes_start, nodes_start + bound + 2):
        gam = GammaValue(1)
        for s in shifts:
            gam = gam * gamma_half(s + p)
        ratio = _value(expansion, p) * gamma_half(den[0] * p + den[1]) / gam
        if ratio.sqrt_pi_power != -half_count and ratio.coefficient != 0:
            raise ConsistencyError("unexpected power of sqrt(pi) in the gamma quotient")
        points.append((p, ratio.coefficient))
    phi = interpolate(points)
    if phi.degree > bound:
        raise ConsistencyError(
            f"deg Phi = {phi.degree} exceeds the bound {bound} for n={n}, d={d}")
    c = phi.content()
    if phi.leading < 0:
        c = -c
    phi = UniPoly(x / c for x in phi.coefficients)
    return ClosedForm(c, -half_count, shifts, den, phi)


def theorem2_eval(n: int, d: int, p: int, nodes_start: int = 0,
                  cache: JackCache | None = None) -> tuple[Fraction, ClosedForm]:
    if d < 1 or n < 1 or p < 0:
        raise DomainError("need n >= 1, d >= 1, p >= 0")
    value = _value(expand_sdelta_power(n, d, cache), p)
    cf = closed_form(n, d, nodes_start, cache)
    if cf.evaluate(p) != value:
        raise ConsistencyError("closed form disagrees with the direct Jack sum")
    return value, cf


def check_lemma33(n: int, d: int) -> int:
    """Every lambda <= d*delta of weight d|delta| has lambda_i >= floor((d(n-i)+1)/2)."""
    from .symfunc import partitions_dominated_by
    top = Partition(x * d for x in staircase(n))
    mu = minimal_parts(n, d).mu_min
    count = 0
    for lam in partitions_dominated_by(top, n):
        padded = lam.padded(n)
        for i in range(n):
            if padded[i] < mu[i]:
                raise ConsistencyError(f"{lam} violates the minimal-part bound at i={i + 1}")
        count += 1
    return count
