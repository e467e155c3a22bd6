"""I_{n,d,p} for even d as a signed sum over d-tuples of permutations.

For even d the integrand is symmetric, so the integral over S_n is 1/n! of
the integral over the full simplex, which the gamma identity turns into a
sum of products of Gamma values indexed by the column sums of the tuple.
Only the sorted column sums matter, so tuples are coalesced by that key
before any gamma value is formed.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterator

from .errors import ConsistencyError, DomainError, UnsupportedParameterError
from .exact import HalfInt, UniPoly, pochhammer


def _sign(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    s = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j] - 1
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def _perms(n: int) -> list[tuple[tuple[int, ...], int]]:
    return [(p, _sign(p)) for p in permutations(range(1, n + 1))]


@dataclass(frozen=True)
class Arrangement:
    perms: tuple[tuple[int, ...], ...]
    sign: int
    column_sums: tuple[int, ...]

    @classmethod
    def of(cls, perms) -> "Arrangement":
        perms = tuple(tuple(p) for p in perms)
        n = len(perms[0])
        sign = 1
        for p in perms:
            sign *= _sign(p)
        sums = tuple(sum(p[i] for p in perms) for i in range(n))
        return cls(perms, sign, sums)


@dataclass(frozen=True)
class GammaVector:
    gamma: tuple[int, ...]
    mu: tuple[HalfInt, ...]


def _mu(gamma: tuple[int, ...], d: int) -> tuple[HalfInt, ...]:
    # position i (1-based) is offset by (d/2)(i+1)
    return tuple(HalfInt(2 * g - d * (i + 2)) for i, g in enumerate(gamma))


def gamma_vector(arr: Arrangement | tuple, d: int | None = None) -> GammaVector:
    """Sorted column sums and their excess over the minimum (d/2)(i+1)."""
    if isinstance(arr, Arrangement):
        sums, d = arr.column_sums, len(arr.perms)
    else:
        sums = tuple(arr)
        if d is None:
            raise DomainError("d is required when passing raw column sums")
    gamma = tuple(sorted(sums))
    mu = _mu(gamma, d)
    for i, m in enumerate(mu, start=1):
        if m.twice < 0:
            raise ConsistencyError(f"gamma_{i} = {gamma[i - 1]} < (d/2)({i}+1) for d={d}")
    return GammaVector(gamma, mu)


def arrangements(n: int, d: int) -> Iterator[Arrangement]:
    """Every element of (S_n)^d, odometer order."""
    table = _perms(n)
    idx = [0] * d
    total = len(table) ** d
    for _ in range(total):
        yield Arrangement.of(table[i][0] for i in idx)
        for k in range(d - 1, -1, -1):
            idx[k] += 1
            if idx[k] < len(table):
                break
            idx[k] = 0


def _classes_below(n: int, d_rest: int, start_sums: tuple[int, ...], start_sign: int,
                   table) -> Counter:
    """Signed counts of sorted column sums after adding d_rest more permutations."""
    out: Counter = Counter()

    def rec(level, sums, sign):
        if level == d_rest:
            out[tuple(sorted(sums))] += sign
            return
        for perm, s in table:
            rec(level + 1, [a + b for a, b in zip(sums, perm)], sign * s)

    rec(0, list(start_sums), start_sign)
    return out


def _worker(args):
    n, d_rest, sums, sign = args
    return _classes_below(n, d_rest, sums, sign, _perms(n))


def arrangement_classes(n: int, d: int, fix_first: bool = True, workers: int = 1) -> Counter:
    """Signed multiplicity of each sorted column-sum vector over (S_n)^d.

    With ``fix_first`` the first permutation is pinned to the identity and the
    counts are scaled by n!, which is exact whenever d is even (relabelling
    the columns by sigma_1^{-1} preserves the product and multiplies the sign
    by sgn(sigma_1)^d = 1).
    """
    if n < 1 or d < 1:
        raise DomainError("need n >= 1 and d >= 1")
    table = _perms(n)
    if fix_first:
        if d % 2:
            raise UnsupportedParameterError("pinning sigma_1 is only valid for even d")
        seeds = [(tuple(range(1, n + 1)), 1)]
    else:
        seeds = table
    # split the next free level across workers
    jobs = []
    for perm0, s0 in seeds:
        if d == 1:
            jobs.append((n, 0, perm0, s0))
            continue
        for perm1, s1 in table:
            jobs.append((n, d - 2, tuple(a + b for a, b in zip(perm0, perm1)), s0 * s1))
    total: Counter = Counter()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_worker, jobs, chunksize=max(1, len(jobs) // (4 * workers))):
                total.update(part)
    else:
        for job in jobs:
            total.update(_worker(job))
    scale = factorial(n) if fix_first else 1
    return Counter({k: v * scale for k, v in total.items() if v})


def _require_even(d: int):
    if d < 2 or d % 2:
        raise UnsupportedParameterError(
            f"the permutation-sum evaluator needs even d >= 2 (got d={d})")


def s_sum(n: int, d: int, p: int, workers: int = 1, fix_first: bool = True) -> int:
    """sum over (S_n)^d of sign * prod_i Gamma(2 colsum_i - 2d + p + 1)."""
    _require_even(d)
    total = 0
    for gamma, count in arrangement_classes(n, d, fix_first, workers).items():
        term = count
        for g in gamma:
            term *= factorial(2 * g - 2 * d + p)
        total += term
    return total


def theorem1_eval(n: int, d: int, p: int, workers: int = 1) -> Fraction:
    """I_{n,d,p} = S / (n! Gamma(a+1)) with a = n(p + d(n-1) + 1)."""
    _require_even(d)
    if n < 1 or p < 0:
        raise DomainError("need n >= 1 and p >= 0")
    a = n * (p + d * (n - 1) + 1)
    return Fraction(s_sum(n, d, p, workers), factorial(n) * factorial(a))


def phi_eq21(n: int, d: int, workers: int = 1) -> UniPoly:
    """Polynomial Phi with S_{n,d}(p) = Phi(p) * prod_i Gamma(p + 1 + d(i-1))."""
    _require_even(d)
    p = UniPoly.p()
    out = UniPoly()
    for gamma, count in arrangement_classes(n, d, True, workers).items():
        mu = gamma_vector(gamma, d).mu
        term = UniPoly.const(count)
        for i, m in enumerate(mu, start=1):
            term = term * pochhammer(p + (1 + d * (i - 1)), m.twice)
        out = out + term
    return out


def phi_gamma_shifts(n: int, d: int) -> list[int]:
    """Shifts s_i with S_{n,d}(p) = Phi(p) prod Gamma(p + s_i)."""
    return [1 + d * (i - 1) for i in range(1, n + 1)]


def _bareiss_det(m: list[list[UniPoly]]) -> UniPoly:
    n = len(m)
    if n == 0:
        return UniPoly.one()
    m = [row[:] for row in m]
    sign = 1
    prev = UniPoly.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if swap is None:
                return UniPoly()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def phi_det_d2(n: int) -> UniPoly:
    """n! det[(p - 1 + 2i)_{2j-2}] for i, j = 1..n."""
    if n < 1:
        raise DomainError("need n >= 1")
    p = UniPoly.p()
    mat = [[pochhammer(p + (2 * i - 1), 2 * j - 2) for j in range(1, n + 1)]
           for i in range(1, n + 1)]
    return _bareiss_det(mat) * factorial(n)


def check_lemma21(n: int, d: int) -> int:
    """Check gamma_i >= (d/2)(i+1) on every arrangement; returns how many were checked."""
    count = 0
    table = _perms(n)

    def rec(level, sums):
        nonlocal count
        if level == d:
            gamma_vector(tuple(sums), d)
            count += 1
            return
        for perm, _ in table:
            rec(level + 1, [a + b for a, b in zip(sums, perm)])

    rec(0, [0] * n)
    return count
