from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from selberg.errors import DomainError
from selberg.oracle import MultiPoly
from selberg.symfunc import (DEFAULT_CACHE, JackCache, Partition, SymPoly, alpha_inner_product,
                             dominance_leq, elementary, from_power_sum, jack, kostka, monomial,
                             multiply, partitions, partitions_dominated_by, power_sum, schur,
                             staircase, to_power_sum, z_weight)

ALPHAS = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(2, 3)]


def P(*parts):
    return Partition(parts)


def test_partition_normalises_and_validates():
    assert P(2, 1, 0, 0) == P(2, 1)
    assert P(2, 1).weight == 3 and P(2, 1).length == 2
    assert P(2, 1).padded(4) == (2, 1, 0, 0)
    assert Partition.parse("3,1,1") == P(3, 1, 1)
    assert str(P()) == "0"
    with pytest.raises(DomainError):
        P(1, 2)
    with pytest.raises(DomainError):
        P(1, -1)


def test_dominance_examples():
    assert dominance_leq(P(1, 1), P(2, 0))
    assert not dominance_leq(P(2, 0), P(1, 1))
    assert dominance_leq(P(2, 1, 0), P(2, 1, 0))
    assert not dominance_leq(P(2), P(1))


def test_partitions_dominated_by_examples():
    assert partitions_dominated_by(P(2, 1, 0), 3) == [P(2, 1), P(1, 1, 1)]
    assert partitions_dominated_by(P(1, 0), 2) == [P(1)]
    assert partitions_dominated_by(P(2, 0), 1) == [P(2)]


def test_partitions_are_revlex_and_complete():
    for w in range(8):
        got = list(partitions(w))
        assert got == sorted(got, reverse=True)
        assert len(set(got)) == len(got) == [1, 1, 2, 3, 5, 7, 11, 15][w]


def test_staircase():
    assert staircase(3) == P(2, 1, 0)
    assert staircase(1) == P(0)
    assert staircase(2) == P(1, 0)


def test_monomial_examples():
    x = (Fraction(2), Fraction(5))
    assert monomial(P(1, 1), 2)(x) == 10
    assert monomial(P(0), 3) == SymPoly.one(3)
    assert monomial(P(2, 1), 2)(x) == 4 * 5 + 2 * 25
    with pytest.raises(DomainError):
        monomial(P(1, 1, 1), 2)


def test_multiply_examples():
    m1 = monomial(P(1), 2)
    assert multiply(m1, m1) == monomial(P(2), 2) + monomial(P(1, 1), 2) * 2
    f = schur(P(2, 1), 3)
    assert multiply(f, SymPoly.one(3)) == f
    sd = schur(staircase(2), 2)
    assert sd * sd == monomial(P(2), 2) + monomial(P(1, 1), 2) * 2
    with pytest.raises(DomainError):
        multiply(m1, monomial(P(1), 3))


sym_terms = st.dictionaries(
    st.sampled_from([P(3), P(2, 1), P(1, 1, 1)]),
    st.fractions(max_denominator=5).filter(bool), max_size=3)


@settings(max_examples=30)
@given(sym_terms, sym_terms, st.dictionaries(st.sampled_from([P(1)]), st.integers(-3, 3), max_size=1))
def test_multiply_commutative_associative(a, b, c):
    f, g, h = SymPoly(3, 3, a), SymPoly(3, 3, b), SymPoly(3, 1, c)
    assert multiply(f, g) == multiply(g, f)
    assert multiply(multiply(f, g), h) == multiply(f, multiply(g, h))


def test_schur_examples():
    assert schur(P(1, 0), 2) == monomial(P(1), 2)
    assert schur(P(2, 0), 2) == monomial(P(2), 2) + monomial(P(1, 1), 2)
    assert schur(P(1, 1), 2) == monomial(P(1, 1), 2)
    assert kostka(P(2, 1), P(1, 1, 1)) == 2


def _bialternant(lam, n, point):
    # s_lambda = det(x_i^{lambda_j + n - j}) / det(x_i^{n - j})
    from selberg.errata import _det
    lam = Partition(lam).padded(n)
    num = [[Fraction(point[i]) ** (lam[j] + n - 1 - j) for j in range(n)] for i in range(n)]
    den = [[Fraction(point[i]) ** (n - 1 - j) for j in range(n)] for i in range(n)]
    return _det(num) / _det(den)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_schur_matches_bialternant(n):
    point = [Fraction(k * k + 1, k + 2) for k in range(n)]
    for w in range(6):
        for lam in partitions(w, n):
            assert schur(lam, n)(point) == _bialternant(lam, n, point)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_schur_staircase_is_product_of_sums(n):
    prod = MultiPoly.const(n)
    for i, j in combinations(range(n), 2):
        prod = prod * (MultiPoly.var(n, i) + MultiPoly.var(n, j))
    assert MultiPoly.from_sympoly(schur(staircase(n), n)) == prod


def test_power_sum_examples():
    assert power_sum(P(2), 2) == monomial(P(2), 2)
    assert power_sum(P(1, 1), 2) == monomial(P(2), 2) + monomial(P(1, 1), 2) * 2
    assert power_sum(P(0), 4) == SymPoly.one(4)


def test_inner_product_examples():
    a = Fraction(3, 5)
    p2, p11 = power_sum(P(2), 2), power_sum(P(1, 1), 2)
    assert alpha_inner_product(p2, p2, a) == 2 * a
    assert alpha_inner_product(p11, p2, a) == 0
    assert alpha_inner_product(p11, p11, a) == 2 * a * a
    assert z_weight(P(3, 1, 1), 1) == 3 * 2
    with pytest.raises(DomainError):
        alpha_inner_product(monomial(P(3), 2), monomial(P(3), 2), 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_power_sum_round_trip(n):
    for w in range(n + 1):
        for lam in partitions(w, n):
            m = monomial(lam, n)
            assert from_power_sum(to_power_sum(m), n, w) == m


def test_jack_examples():
    a = Fraction(7, 3)
    assert jack(P(1, 1), a, 2) == monomial(P(1, 1), 2)
    assert jack(P(2), 1, 2) == monomial(P(2), 2) + monomial(P(1, 1), 2)
    assert jack(P(2), 2, 2) == monomial(P(2), 2) + monomial(P(1, 1), 2) * Fraction(2, 3)
    # P_2 = m_2 + 2/(alpha+1) m_11
    assert jack(P(2), a, 2).coefficient(P(1, 1)) == 2 / (a + 1)
    with pytest.raises(DomainError):
        jack(P(1), 0, 2)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_jack_unitriangular_and_orthogonal(alpha):
    for w in range(6):
        table = {lam: jack(lam, alpha, w) for lam in partitions(w)} if w else {P(): SymPoly.one(1)}
        for lam, poly in table.items():
            assert poly.coefficient(lam) == 1
            assert all(dominance_leq(mu, lam) for mu in poly.support())
        if w == 0:
            continue
        for lam, mu in combinations(table, 2):
            assert alpha_inner_product(table[lam], table[mu], alpha) == 0


def test_jack_at_one_is_schur():
    for n in range(1, 5):
        for w in range(7):
            for lam in partitions(w, n):
                assert jack(lam, 1, n) == schur(lam, n)


def test_elementary_is_a_monomial():
    assert elementary(2, 3) == monomial(P(1, 1), 3)
    assert SymPoly.one(3).shift_parts(2) == monomial(P(2, 2, 2), 3)


def test_from_expanded_rejects_bad_input():
    with pytest.raises(DomainError):
        SymPoly.from_expanded(2, {(1, 0): 1})
    with pytest.raises(DomainError):
        SymPoly.from_expanded(2, {(1, 0): 1, (0, 1): 1, (1, 1): 1})


def test_cache_round_trip_is_byte_stable(tmp_path):
    cache = JackCache()
    for lam in partitions(4):
        jack(lam, Fraction(2, 3), 4, cache)
    jack(P(2, 1), 2, 3, cache)
    path = tmp_path / "jack.txt"
    cache.save(path)
    text = path.read_text()
    assert text.splitlines()[0] == "selberg-jack-cache v1"
    again = JackCache()
    again.load(path)
    assert again.dumps() == text
    for lam in partitions(4):
        assert jack(lam, Fraction(2, 3), 4, again) == jack(lam, Fraction(2, 3), 4, DEFAULT_CACHE)


@pytest.mark.parametrize("text", ["nope\n", "selberg-jack-cache v1\ngarbage line\n",
                                  "selberg-jack-cache v1\nalpha=1/1 nvars=2 lambda=2 : 3=1/1\n"])
def test_cache_rejects_malformed_files(text):
    with pytest.raises(ValueError):
        JackCache().loads(text)
