from collections import Counter
from fractions import Fraction
from math import factorial

import pytest

from selberg.errors import UnsupportedParameterError
from selberg.exact import UniPoly
from selberg.oracle import oracle_I
from selberg.perm import (Arrangement, arrangement_classes, arrangements, check_lemma21,
                          gamma_vector, phi_det_d2, phi_eq21, phi_gamma_shifts, s_sum,
                          theorem1_eval)

ID2, SW2 = (1, 2), (2, 1)


def test_arrangement_invariants():
    for n in (1, 2, 3):
        for d in (1, 2):
            for arr in arrangements(n, d):
                assert sum(arr.column_sums) == d * n * (n + 1) // 2
                assert arr.sign in (1, -1)
    assert Arrangement.of([SW2, ID2]).sign == -1


def test_gamma_vector_examples():
    assert gamma_vector(Arrangement.of([ID2, ID2])).gamma == (2, 4)
    assert gamma_vector(Arrangement.of([(1, 2, 3), (3, 2, 1)])).gamma == (4, 4, 4)
    assert gamma_vector(Arrangement.of([SW2, ID2])).gamma == (3, 3)


def test_mu_total_is_degree():
    for n in (2, 3):
        for d in (1, 2, 3):
            for arr in arrangements(n, d):
                mu = gamma_vector(arr).mu
                assert sum(2 * m.value for m in mu) == d * n * (n - 1) // 2


def test_permutation_sum_examples():
    for p in range(5):
        assert theorem1_eval(1, 2, p) == Fraction(1, p + 1)
    assert s_sum(2, 2, 0) == 40
    assert theorem1_eval(2, 2, 0) == Fraction(1, 36)
    assert theorem1_eval(2, 2, 1) == oracle_I(2, 2, 1)


@pytest.mark.parametrize("d", [1, 3])
def test_odd_d_is_unsupported(d):
    with pytest.raises(UnsupportedParameterError):
        theorem1_eval(2, d, 0)
    with pytest.raises(UnsupportedParameterError):
        phi_eq21(2, d)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [2, 4])
def test_permutation_sum_matches_oracle(n, d):
    for p in range(5):
        assert theorem1_eval(n, d, p) == oracle_I(n, d, p)


@pytest.mark.parametrize("n", [2, 3])
def test_pinning_first_permutation(n):
    full = Counter()
    for arr in arrangements(n, 2):
        full[tuple(sorted(arr.column_sums))] += arr.sign
    full = Counter({k: v for k, v in full.items() if v})
    assert arrangement_classes(n, 2, fix_first=False) == full
    assert arrangement_classes(n, 2, fix_first=True) == full


def test_parallel_workers_agree():
    assert arrangement_classes(3, 4, workers=2) == arrangement_classes(3, 4, workers=1)


def test_phi_examples():
    p = UniPoly.p()
    assert phi_eq21(2, 2) == 8 * p + 20
    assert phi_eq21(1, 2) == 1
    assert phi_eq21(2, 2)(0) * factorial(0) * factorial(2) == s_sum(2, 2, 0)
    assert phi_det_d2(2) == 8 * p + 20
    assert phi_det_d2(1) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_determinant_matches_permutation_sum(n):
    phi = phi_eq21(n, 2)
    assert phi_det_d2(n) == phi
    assert phi.degree == n * (n - 1) // 2


@pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (2, 4), (3, 4)])
def test_phi_factorises_the_sum(n, d):
    phi = phi_eq21(n, d)
    for p in range(4):
        g = 1
        for s in phi_gamma_shifts(n, d):
            g *= factorial(p + s - 1)
        assert phi(p) * g == s_sum(n, d, p)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_column_sum_lower_bound(n, d):
    assert check_lemma21(n, d) == factorial(n) ** d
