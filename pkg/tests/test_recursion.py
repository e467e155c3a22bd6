import random
from fractions import Fraction

import pytest

from selberg.errors import DomainError
from selberg.jackeval import theorem2_eval
from selberg.oracle import MultiPoly, integrate_poly_simplex, oracle_I, oracle_J, vandermonde
from selberg.recursion import (binomial_coeffs, change_of_variables, eval_I_via_recursion,
                               recursion_eval, recursion_eval_poly, substitute, taylor_coeffs)
from selberg.symfunc import Partition, SymPoly, monomial, partitions


def P(*parts):
    return Partition(parts)


def integrate_cylinder(g: MultiPoly) -> Fraction:
    """int over S_{n-1} x [0,1] of g(t_1..t_n); t_n is the last variable."""
    n = g.nvars
    collapsed: dict[tuple[int, ...], Fraction] = {}
    for e, c in g.terms.items():
        collapsed[e[:-1]] = collapsed.get(e[:-1], 0) + Fraction(c) / (e[-1] + 1)
    return integrate_poly_simplex(MultiPoly(n - 1, collapsed), n - 1)


def test_change_of_variables_examples():
    g = change_of_variables(MultiPoly.const(2))
    assert g == MultiPoly(2, {(0, 0): Fraction(1, 2), (0, 1): Fraction(-1, 2)})
    assert integrate_cylinder(g) == Fraction(1, 4)
    x1_minus_x2 = MultiPoly.var(2, 0) - MultiPoly.var(2, 1)
    assert substitute(x1_minus_x2) == MultiPoly(2, {(1, 0): 1, (1, 1): -1})


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("kappa", [1, 2])
def test_vandermonde_transforms(n, kappa):
    # Delta^(n)(x(t))^kappa = (1-t_n)^{kappa n(n-1)/2} (prod_{i<n} t_i)^kappa Delta^(n-1)(t)^kappa
    t = [MultiPoly.var(n, i) for i in range(n)]
    lower = vandermonde(n - 1).substitute(t[:-1])
    prod_t = MultiPoly.const(n)
    for i in range(n - 1):
        prod_t = prod_t * t[i]
    expected = (1 - t[-1]) ** (kappa * n * (n - 1) // 2) * prod_t ** kappa * lower ** kappa
    assert substitute(vandermonde(n) ** kappa) == expected


def test_change_of_variables_on_random_monomials():
    rng = random.Random(20261015)
    for _ in range(50):
        n = rng.randint(2, 4)
        exps = tuple(rng.randint(0, 3) for _ in range(n))
        f = MultiPoly(n, {exps: 1})
        assert integrate_cylinder(change_of_variables(f)) == integrate_poly_simplex(f, n)


def test_taylor_examples():
    assert taylor_coeffs(P(2, 1), 2).rows == ((1, P(2), 1), (2, P(1), 1))
    for n in (1, 2, 4):
        assert taylor_coeffs(P(), n).rows == ((0, P(), 1),)
    assert taylor_coeffs(P(1, 1), 2).rows == ((1, P(1), 1),)


def test_binomial_examples():
    assert binomial_coeffs(P(1), 2).rows == ((P(1), 1), (P(), 2))
    assert binomial_coeffs(P(2), 2).rows == ((P(2), 1), (P(1), 2), (P(), 2))
    for mu in (P(3, 1), P(2, 2, 1)):
        rows = dict(binomial_coeffs(mu, 3).rows)
        assert rows[mu] == 1
        assert all(nu.weight <= mu.weight for nu in rows)


def _point(n, seed):
    rng = random.Random(seed)
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(n)]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_taylor_reconstruction(n):
    x = _point(n, n)
    for w in range(7):
        for lam in partitions(w, n):
            total = sum((c * monomial(mu, n - 1)(x[:-1]) * x[-1] ** i
                         for i, mu, c in taylor_coeffs(lam, n).rows), Fraction(0))
            assert total == monomial(lam, n)(x)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_binomial_reconstruction(n):
    x, s = _point(n, 10 + n), Fraction(5, 3)
    for w in range(7):
        for mu in partitions(w, n):
            total = sum((c * monomial(nu, n)(x) * s ** (w - nu.weight)
                         for nu, c in binomial_coeffs(mu, n).rows), Fraction(0))
            assert total == monomial(mu, n)([xi + s for xi in x])


def test_recursion_examples():
    assert recursion_eval(2, 1, SymPoly.one(2)) == Fraction(1, 12)
    for kappa in (1, 2, 3):
        assert recursion_eval(1, kappa, monomial(P(3), 1)) == Fraction(1, 4)
    assert recursion_eval(2, 2, SymPoly.one(2)) == Fraction(1, 24)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("kappa", [1, 2])
def test_recursion_matches_oracle(n, kappa):
    for w in range(5):
        for lam in partitions(w, n):
            f = monomial(lam, n)
            assert recursion_eval(n, kappa, f) == oracle_J(n, kappa, f)


def test_eval_I_examples():
    assert eval_I_via_recursion(2, 1, 0) == Fraction(1, 16)
    assert eval_I_via_recursion(2, 1, 1) == Fraction(1, 192)
    for d in (1, 2, 3):
        for p in range(5):
            assert eval_I_via_recursion(1, d, p) == Fraction(1, p + 1)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_three_way_agreement(n, d):
    for p in range(4):
        value = eval_I_via_recursion(n, d, p)
        assert value == theorem2_eval(n, d, p)[0] == oracle_I(n, d, p)


def test_rejects_bad_integrands():
    with pytest.raises(DomainError):
        recursion_eval(3, 1, SymPoly.one(2))
    x0 = MultiPoly.var(2, 0)
    with pytest.raises(DomainError):
        recursion_eval_poly(2, 1, x0)  # not symmetric
    with pytest.raises(DomainError):
        recursion_eval_poly(2, 1, MultiPoly.var(2, 0) + MultiPoly.var(2, 1) + 1)  # not homogeneous
    assert recursion_eval_poly(2, 1, x0 + MultiPoly.var(2, 1)) == oracle_J(2, 1, monomial(P(1), 2))
