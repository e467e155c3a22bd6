"""Ledger of printed formulas that disagree with brute-force integration.

Each entry carries three zero-argument callables evaluated at one fixture:
the formula as printed, the formula as implemented in this package, and the
oracle.  An entry is "arbitrated" when printed != oracle == implemented.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable

from .exact import (ClosedForm, GammaValue, HalfInt, ONE, UniPoly, beta_int, gamma_half, interpolate,
                    pochhammer)
from .jackeval import closed_form, degree_bound, macdonald_value, v_lambda
from .oracle import oracle_I, oracle_J
from .perm import arrangement_classes, gamma_vector, phi_eq21, s_sum, theorem1_eval
from .recursion import binomial_coeffs, recursion_eval, taylor_coeffs
from .symfunc import Partition, SymPoly, jack, monomial, schur, staircase

Value = Fraction | GammaValue | int


@dataclass(frozen=True)
class ErrataEntry:
    key: str
    location: str
    printed_form: str
    implemented_form: str
    arbitration: str
    printed: Callable[[], Value]
    implemented: Callable[[], Value]
    oracle: Callable[[], Value]

    def values(self) -> dict[str, GammaValue]:
        return {"printed": as_gamma(self.printed()), "implemented": as_gamma(self.implemented()),
                "oracle": as_gamma(self.oracle())}

    def arbitrated(self) -> bool:
        v = self.values()
        return v["printed"] != v["oracle"] and v["implemented"] == v["oracle"]


def as_gamma(x: Value) -> GammaValue:
    if isinstance(x, GammaValue):
        return x
    return GammaValue(Fraction(x), 0)


def render(x: Value) -> str:
    g = as_gamma(x)
    return str(g.coefficient) if g.sqrt_pi_power == 0 else str(g)


# --- printed variants --------------------------------------------------------------------

def printed_perm_exponent(n: int, d: int, p: int) -> Fraction:
    """The permutation sum normalised with a = n(p+1) + d n(n-1)/2."""
    a = n * (p + 1) + d * n * (n - 1) // 2
    return Fraction(s_sum(n, d, p), factorial(n) * factorial(a))


def phi_eq21_printed_base(n: int, d: int) -> UniPoly:
    """Phi with Pochhammer base p + 1 + d(i+1)."""
    p = UniPoly.p()
    out = UniPoly()
    for gamma, count in arrangement_classes(n, d).items():
        term = UniPoly.const(count)
        for i, m in enumerate(gamma_vector(gamma, d).mu, start=1):
            term = term * pochhammer(p + (1 + d * (i + 1)), m.twice)
        out = out + term
    return out


def eval_from_phi(phi: UniPoly, n: int, d: int, p: int) -> Fraction:
    s = phi(p) * prod_factorials(p + d * (i - 1) for i in range(1, n + 1))
    return s / (factorial(n) * factorial(n * (p + d * (n - 1) + 1)))


def prod_factorials(args) -> int:
    out = 1
    for a in args:
        out *= factorial(a)
    return out


def printed_closed_form_denominator(n: int, d: int, p: int) -> Value:
    """Closed form with denominator Gamma(n(p + d(n-1)) + 1)."""
    cf = closed_form(n, d)
    return cf.evaluate_gamma(p) * gamma_half(HalfInt(2 * (n * p + n + d * n * (n - 1) + 1))) \
        / gamma_half(HalfInt(2 * (n * (p + d * (n - 1)) + 1)))


def printed_macdonald_shift(lam, n: int, d: int, p: int) -> Value:
    """Macdonald integral with shifts d(n-i+1)/2."""
    lam = Partition(lam)
    padded = lam.padded(n)
    out = v_lambda(lam, n, d)
    for i in range(1, n + 1):
        out = out * gamma_half(HalfInt(2 * (padded[i - 1] + p + 1) + d * (n - i + 1)))
    a = lam.weight + n * (p + 1) + d * n * (n - 1) // 2
    return out / gamma_half(HalfInt(2 * (a + 1)))


def printed_closed_form_shifts(n: int, d: int, p_eval: int) -> Value:
    """Fit Phi against prod Gamma(p + 1 + d(n-i)/2) on bound+1 nodes, then predict p_eval."""
    den = lambda p: gamma_half(HalfInt(2 * (n * p + n + d * n * (n - 1) + 1)))
    shifts = [HalfInt(2 + d * (n - i)) for i in range(1, n + 1)]

    def gam(p):
        out = ONE
        for s in shifts:
            out = out * gamma_half(s + p)
        return out

    bound = degree_bound(n, d)
    points = []
    for p in range(bound + 1):
        ratio = as_gamma(oracle_I(n, d, p)) * den(p) / gam(p)
        points.append((p, ratio.coefficient))
    power = (as_gamma(oracle_I(n, d, 0)) * den(0) / gam(0)).sqrt_pi_power
    phi = interpolate(points)
    return GammaValue(phi(p_eval), power) * gam(p_eval) / den(p_eval)


def jack_sum(n: int, d: int, p: int, expand_alpha: Fraction, v_d) -> Value:
    """sum_lambda c_lambda v_lambda int P_lambda e_n^p Delta^d with selectable readings."""
    target = schur(staircase(n), n) ** d
    terms: dict[Partition, Fraction] = {}
    remaining = target
    while not remaining.is_zero():
        lam = remaining.support()[0]
        c = remaining.coefficient(lam)
        terms[lam] = c
        remaining = remaining - jack(lam, expand_alpha, n) * c
    total = GammaValue(0, 0)
    for lam, c in terms.items():
        padded = lam.padded(n)
        g = v_lambda(lam, n, v_d)
        for i in range(1, n + 1):
            g = g * gamma_half(HalfInt(2 * (padded[i - 1] + p + 1) + d * (n - i)))
        g = g / gamma_half(HalfInt(2 * (lam.weight + n * (p + 1) + d * n * (n - 1) // 2 + 1)))
        g = GammaValue(g.coefficient * c, g.sqrt_pi_power)
        if total.coefficient == 0:
            total = g
        elif g.coefficient != 0:
            total = total + g
    return total


RECURSION_CORRECTIONS = ("first_beta", "second_beta", "power_of_n", "inner_factor")


@lru_cache(maxsize=None)
def recursion_variant(n: int, kappa: int, lam: Partition, reverted: frozenset = frozenset()) -> Fraction:
    """The dimension-reduction recursion with any subset of its corrections undone."""
    if n == 1:
        return Fraction(1, lam.weight + 1)
    size = lam.weight
    total = Fraction(0)
    for i, mu, c in taylor_coeffs(lam, n).rows:
        for nu, b in binomial_coeffs(mu, n - 1).rows:
            w = nu.weight
            first = size + w + 1 if "first_beta" in reverted else size - w + 1
            second = (n - 1 if "second_beta" in reverted else n) + kappa * n * (n - 1) // 2 + w
            power = w - n - i - 1 if "power_of_n" in reverted else w - size - 1
            inner = nu if "inner_factor" in reverted else Partition(x + kappa for x in nu.padded(n - 1))
            total += c * b * Fraction(n) ** power * beta_int(first, second) \
                * recursion_variant(n - 1, kappa, inner, reverted)
    return total


def d1_display(n: int) -> ClosedForm:
    """The displayed I_{n,1,p} closed forms for n = 2..5, read literally in p.

    The n = 3 display carries a stray Gamma(2p+3) and prints Gamma(3p+7) in
    the numerator; it is read here as (8p+15) / Gamma(3p+7).
    """
    h = HalfInt.of
    table = {
        2: (Fraction(2), -1, (h(0), h("3/2")), (2, 3), UniPoly.one()),
        3: (Fraction(1, 2), -1, (h(0), h("3/2"), h(2)), (3, 7), UniPoly([15, 8])),
        4: (Fraction(2), -2, (h(0), h("3/2"), h(2), h("7/2")), (4, 13), UniPoly([93, 80, 16])),
        5: (Fraction(3, 8), -2, (h(0), h("3/2"), h(2), h("7/2"), h(4)), (5, 21),
            UniPoly([99855, 135232, 65456, 13568, 1024])),
    }
    if n not in table:
        raise KeyError(n)
    c, k, shifts, den, phi = table[n]
    return ClosedForm(c, k, shifts, den, phi)


def d1_display_n3_literal(p: int) -> Value:
    """(8p+15) Gamma(3p+7) / Gamma(2p+3) * (1/(2 sqrt(pi))) Gamma(p) Gamma(p+3/2) Gamma(p+2)."""
    g = GammaValue(Fraction(8 * p + 15, 2), -1) * gamma_half(3 * p + 7) / gamma_half(2 * p + 3)
    for s in (HalfInt(2 * p), HalfInt(2 * p + 3), HalfInt(2 * p + 4)):
        g = g * gamma_half(s)
    return g


def det_identity_printed(point) -> Fraction:
    """det(y_j^{2(i-1)}) at a point."""
    n = len(point)
    rows = [[Fraction(point[j]) ** (2 * i) for j in range(n)] for i in range(n)]
    return _det(rows)


def _det(m) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    out = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            out = -out
        out *= m[k][k]
        for r in range(k + 1, n):
            f = m[r][k] / m[k][k]
            for j in range(k, n):
                m[r][j] -= f * m[k][j]
    return out


def _product_diff_squares(point) -> Fraction:
    out = Fraction(1)
    for i in range(len(point)):
        for j in range(i + 1, len(point)):
            out *= Fraction(point[i]) ** 2 - Fraction(point[j]) ** 2
    return out


def _falling(k: int, m: int) -> int:
    out = 1
    for r in range(m):
        out *= k - r
    return out


def _gamma_ratio(k: int, m: int) -> Fraction:
    return Fraction(factorial(k + m - 1), factorial(k - 1))


def _sum_pairs(point, sign) -> Fraction:
    pt = [Fraction(x) for x in point]
    return sum((pt[i] + sign * pt[j] for i in range(len(pt)) for j in range(i + 1, len(pt))),
               Fraction(0))


def _prod_pairs(point, sign) -> Fraction:
    pt = [Fraction(x) for x in point]
    out = Fraction(1)
    for i in range(len(pt)):
        for j in range(i + 1, len(pt)):
            out *= pt[i] + sign * pt[j]
    return out


# --- the ledger ------------------------------------------------------------------------------

def _recursion_entry(name: str, printed: str, implemented: str, lam=()) -> ErrataEntry:
    # with lambda = 0 the first beta argument cannot tell |lambda|-|nu| from |lambda|+|nu|
    lam = Partition(lam)
    f = monomial(lam, 2)
    return ErrataEntry(
        key=f"recursion-{name.replace('_', '-')}",
        location="recursion for J_{n,kappa} over n",
        printed_form=printed,
        implemented_form=implemented,
        arbitration=f"J_{{2,1}}(m_[{lam}])",
        printed=lambda: recursion_variant(2, 1, lam, frozenset({name})),
        implemented=lambda: recursion_eval(2, 1, f),
        oracle=lambda: oracle_J(2, 1, f),
    )


def build_ledger() -> list[ErrataEntry]:
    pt = (Fraction(1), Fraction(2), Fraction(3))
    return [
        ErrataEntry(
            "perm-exponent", "exponent a of the permutation-sum formula, short statement",
            "a = n(p+1) + d n(n-1)/2", "a = n(p + d(n-1) + 1)", "I(2,2,0)",
            lambda: printed_perm_exponent(2, 2, 0), lambda: theorem1_eval(2, 2, 0),
            lambda: oracle_I(2, 2, 0)),
        ErrataEntry(
            "phi-pochhammer-base", "Pochhammer base in the permutation formula for Phi",
            "Pochhammer base p + 1 + d(i+1)", "Pochhammer base p + 1 + d(i-1)", "I(2,2,0)",
            lambda: eval_from_phi(phi_eq21_printed_base(2, 2), 2, 2, 0),
            lambda: eval_from_phi(phi_eq21(2, 2), 2, 2, 0),
            lambda: oracle_I(2, 2, 0)),
        ErrataEntry(
            "closed-form-denominator", "gamma denominator of the closed form",
            "1/Gamma(n(p + d(n-1)) + 1)", "1/Gamma(n(p+1) + d n(n-1) + 1)", "I(2,2,0)",
            lambda: printed_closed_form_denominator(2, 2, 0), lambda: closed_form(2, 2).evaluate(0),
            lambda: oracle_I(2, 2, 0)),
        ErrataEntry(
            "macdonald-shift", "gamma shifts in the Macdonald integral",
            "Gamma(lambda_i + p + 1 + d(n-i+1)/2)", "Gamma(lambda_i + p + 1 + d(n-i)/2)",
            "J_{2,2}(1) = int_{S_2} P_0 Delta^2",
            lambda: printed_macdonald_shift((), 2, 2, 0), lambda: macdonald_value((), 2, 2, 0),
            lambda: oracle_J(2, 2, SymPoly.one(2))),
        ErrataEntry(
            "closed-form-gamma-shifts", "gamma product of the closed form",
            "prod Gamma(p + 1 + d(n-i)/2), Phi of degree <= bound",
            "prod Gamma(p + 1 + mu_i + d(n-i)/2), mu_i = floor((d(n-i)+1)/2)",
            "I(2,2,2) predicted from a degree-<=1 fit at p = 0, 1",
            lambda: printed_closed_form_shifts(2, 2, 2), lambda: closed_form(2, 2).evaluate(2),
            lambda: oracle_I(2, 2, 2)),
        ErrataEntry(
            "jack-parameter", "Jack parameter used to expand (s_delta)^d",
            "expand (s_delta)^d with alpha = d/2", "expand (s_delta)^d in P^(2/d)", "I(3,1,0)",
            lambda: jack_sum(3, 1, 0, Fraction(1, 2), 1), lambda: jack_sum(3, 1, 0, Fraction(2), 1),
            lambda: oracle_I(3, 1, 0)),
        ErrataEntry(
            "jack-norm-factor", "argument of v_lambda in the Jack assembly",
            "v_lambda(d/2)", "v_lambda(d)", "I(2,2,0)",
            lambda: jack_sum(2, 2, 0, Fraction(1), 1), lambda: jack_sum(2, 2, 0, Fraction(1), 2),
            lambda: oracle_I(2, 2, 0)),
        _recursion_entry("first_beta", "B(|lambda| + |nu| + 1, ...)", "B(|lambda| - |nu| + 1, ...)", (1,)),
        _recursion_entry("second_beta", "B(..., n - 1 + (kappa/2) n(n-1) + |nu|)",
                        "B(..., n + (kappa/2) n(n-1) + |nu|)"),
        _recursion_entry("power_of_n", "n^{|nu| - n - i - 1}", "n^{|nu| - |lambda| - 1}"),
        _recursion_entry("inner_factor", "J_{n-1,kappa}(Phi_nu)", "J_{n-1,kappa}(e_{n-1}^kappa m_nu)"),
        ErrataEntry(
            "d1-display-shift", "explicit d = 1 closed forms for n = 2..5",
            "displayed expressions read at exponent p", "displayed expressions equal I_{n,1,p-1}",
            "I(2,1,1)",
            lambda: d1_display(2).evaluate_gamma(1), lambda: d1_display(2).evaluate_gamma(2),
            lambda: oracle_I(2, 1, 1)),
        ErrataEntry(
            "d1-display-n3", "explicit d = 1 closed form for n = 3",
            "(8p+15) Gamma(3p+7)/Gamma(2p+3) (1/(2 sqrt(pi))) Gamma(p) Gamma(p+3/2) Gamma(p+2)",
            "(8p+15)/Gamma(3p+7) (1/(2 sqrt(pi))) Gamma(p) Gamma(p+3/2) Gamma(p+2), at p+1",
            "I(3,1,1)",
            lambda: d1_display_n3_literal(2), lambda: d1_display(3).evaluate_gamma(2),
            lambda: oracle_I(3, 1, 1)),
        ErrataEntry(
            "det-sign", "determinant identity for prod(y_i^2 - y_j^2)",
            "prod_{i<j}(y_i^2 - y_j^2) = det(y_j^{2(i-1)})",
            "prod_{i<j}(y_i^2 - y_j^2) = (-1)^{n(n-1)/2} det(y_j^{2(i-1)}); harmless for even d",
            "y = (1, 2, 3)",
            lambda: det_identity_printed(pt), lambda: det_identity_printed(pt) * (-1) ** 3,
            lambda: _product_diff_squares(pt)),
        ErrataEntry(
            "pochhammer-falling", "definition of the Pochhammer symbol",
            "(n)_k = n(n-1)...(n-k-1)", "(k)_m = Gamma(k+m)/Gamma(k), the rising factorial",
            "(3)_2",
            lambda: _falling(3, 2), lambda: pochhammer(Fraction(3), 2), lambda: _gamma_ratio(3, 2)),
        ErrataEntry(
            "vandermonde-sum", "definition of Delta and s_delta",
            "Delta = sum_{i<j}(x_i - x_j), s_delta = sum_{i<j}(x_i + x_j)",
            "Delta = prod_{i<j}(x_i - x_j), s_delta = prod_{i<j}(x_i + x_j)",
            "s_delta(3, 2, 1)",
            lambda: _sum_pairs((3, 2, 1), 1), lambda: _prod_pairs((3, 2, 1), 1),
            lambda: schur(staircase(3), 3)((3, 2, 1))),
    ]


@lru_cache(maxsize=1)
def ledger() -> tuple[ErrataEntry, ...]:
    return tuple(build_ledger())


def printed_recursion(n: int, kappa: int, lam=()) -> Fraction:
    """All four recursion corrections undone at once."""
    return recursion_variant(n, kappa, Partition(lam), frozenset(RECURSION_CORRECTIONS))
