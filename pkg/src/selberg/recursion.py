"""Dimension-reduction recursion for J_{n,kappa}(f) = int_{S_n} f Delta^kappa.

Substituting x_i = (1 - t_n) t_i + t_n / n (i < n), x_n = t_n / n maps S_n to
S_{n-1} x [0, 1] with Jacobian (1/n)(1 - t_n)^{n-1}.  Expanding m_lambda by
powers of x_n (Taylor coefficients) and m_mu(t + s*1) by powers of s
(binomial coefficients) separates t_n into a beta integral and leaves an
(n-1)-variable integral of e_{n-1}^kappa m_nu against Delta^kappa.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DomainError
from .exact import beta_int
from .oracle import MultiPoly, vandermonde
from .symfunc import Partition, SymPoly, distinct_permutations, monomial, schur, staircase


@dataclass(frozen=True)
class TaylorExpansion:
    source: Partition
    rows: tuple[tuple[int, Partition, Fraction], ...]


@dataclass(frozen=True)
class BinomialExpansion:
    source: Partition
    rows: tuple[tuple[Partition, Fraction], ...]


def substitute(f: MultiPoly) -> MultiPoly:
    """f(x(t)) with x_i = (1 - t_n) t_i + t_n / n and x_n = t_n / n."""
    n = f.nvars
    tn = MultiPoly.var(n, n - 1)
    one_minus = MultiPoly.const(n) - tn
    images = [one_minus * MultiPoly.var(n, i) + tn * Fraction(1, n) for i in range(n - 1)]
    images.append(tn * Fraction(1, n))
    return f.substitute(images)


def change_of_variables(f: MultiPoly, jacobian: bool = True) -> MultiPoly:
    """Integrand over S_{n-1} x [0, 1] whose integral equals int_{S_n} f."""
    g = substitute(f)
    if not jacobian:
        return g
    n = f.nvars
    tn = MultiPoly.var(n, n - 1)
    return g * ((MultiPoly.const(n) - tn) ** (n - 1)) * Fraction(1, n)


@lru_cache(maxsize=None)
def taylor_coeffs(lam, n: int) -> TaylorExpansion:
    """m_lambda(x_1..x_n) = sum c * m_mu(x_1..x_{n-1}) x_n^i, found by expanding."""
    lam = Partition(lam)
    if len(lam) > n:
        raise DomainError(f"{lam} has more than {n} parts")
    rows: dict[tuple[int, Partition], Fraction] = {}
    for alpha in distinct_permutations(lam.padded(n)):
        head, i = alpha[:-1], alpha[-1]
        if all(a >= b for a, b in zip(head, head[1:])):
            key = (i, Partition(head))
            rows[key] = rows.get(key, Fraction(0)) + 1
    return TaylorExpansion(lam, tuple((i, mu, c) for (i, mu), c in sorted(rows.items())))


@lru_cache(maxsize=None)
def binomial_coeffs(mu, n: int) -> BinomialExpansion:
    """m_mu(x + t*1) = sum (mu over nu) m_nu(x) t^{|mu|-|nu|}, found by expanding."""
    mu = Partition(mu)
    if len(mu) > n:
        raise DomainError(f"{mu} has more than {n} parts")
    rows: dict[Partition, Fraction] = {}

    def rec(k, alpha, acc, coef):
        if k == n:
            if all(a >= b for a, b in zip(acc, acc[1:])):
                nu = Partition(acc)
                rows[nu] = rows.get(nu, Fraction(0)) + coef
            return
        for j in range(alpha[k] + 1):
            rec(k + 1, alpha, acc + (j,), coef * comb(alpha[k], j))

    for alpha in distinct_permutations(mu.padded(n)):
        rec(0, alpha, (), 1)
    ordered = sorted(rows.items(), key=lambda kv: (-kv[0].weight, tuple(kv[0])), reverse=False)
    return BinomialExpansion(mu, tuple(ordered))


@lru_cache(maxsize=None)
def _j_monomial(n: int, kappa: int, lam: Partition) -> Fraction:
    if n == 1:
        return Fraction(1, lam.weight + 1)
    size = lam.weight
    total = Fraction(0)
    tail = n + kappa * n * (n - 1) // 2
    for i, mu, c in taylor_coeffs(lam, n).rows:
        for nu, b in binomial_coeffs(mu, n - 1).rows:
            w = nu.weight
            coef = c * b * Fraction(n) ** (w - size - 1) * beta_int(size - w + 1, tail + w)
            # (prod t_i)^kappa from Delta^kappa raises every part of nu by kappa
            inner = Partition(x + kappa for x in nu.padded(n - 1))
            total += coef * _j_monomial(n - 1, kappa, inner)
    return total


def recursion_eval(n: int, kappa: int, f: SymPoly) -> Fraction:
    if f.nvars != n:
        raise DomainError("f must be a polynomial in n variables")
    if kappa < 0:
        raise DomainError("kappa must be nonnegative")
    return sum((c * _j_monomial(n, kappa, lam) for lam, c in f.terms.items()), Fraction(0))


def recursion_eval_poly(n: int, kappa: int, f: MultiPoly) -> Fraction:
    """Same as :func:`recursion_eval` for an integrand given as an explicit polynomial."""
    try:
        sym = SymPoly.from_expanded(n, f.terms)
    except DomainError as exc:
        raise DomainError(f"recursion needs a homogeneous symmetric integrand: {exc}") from exc
    return recursion_eval(n, kappa, sym)


def selberg_symmetric_factor(n: int, d: int, p: int) -> SymPoly:
    """e_n^p (s_delta)^d in the monomial basis."""
    return (schur(staircase(n), n) ** d).shift_parts(p)


def eval_I_via_recursion(n: int, d: int, p: int) -> Fraction:
    if n < 1 or d < 0 or p < 0:
        raise DomainError("need n >= 1, d >= 0, p >= 0")
    return recursion_eval(n, d, selberg_symmetric_factor(n, d, p))


__all__ = [
    "BinomialExpansion", "TaylorExpansion", "binomial_coeffs", "change_of_variables",
    "eval_I_via_recursion", "recursion_eval", "recursion_eval_poly",
    "selberg_symmetric_factor", "substitute", "taylor_coeffs", "monomial", "vandermonde",
]
