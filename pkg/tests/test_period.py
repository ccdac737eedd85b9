from fractions import Fraction

import pytest
import sympy

from dgmzv.period import (
    PeriodPolynomial,
    coefficient_vanishing_check,
    embed_period,
    pair_v,
    period_bases_upto,
    period_space,
)
from dgmzv.series import ss

x1, x2 = sympy.symbols("x1 x2")


def relation_holds(p: PeriodPolynomial) -> bool:
    """Independent check of p(x1,x2) + p(x1-x2,x1) - p(x1-x2,x2) = 0 in sympy."""
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x1 ** (s - 1) * x2 ** (t - 1)
               for (s, t), c in p.coefficients.items())
    u, v = sympy.symbols("u v")
    q = expr.subs({x1: u, x2: v}, simultaneous=True)
    total = q.subs({u: x1, v: x2}) + q.subs({u: x1 - x2, v: x1}) - q.subs({u: x1 - x2, v: x2})
    return sympy.expand(total) == 0


def test_weight_twelve_basis_element():
    (p,) = period_space(12).elements
    assert dict(p.coefficients) == {(3, 9): 1, (5, 7): -3, (7, 5): 3, (9, 3): -1}


def test_dimensions_follow_cusp_series():
    s = ss(30)
    for n, basis in period_bases_upto(30).items():
        assert basis.dim == s[n], n


def test_bases_satisfy_all_conditions_independently():
    for n in (12, 16, 18, 20, 22, 24, 26, 28, 30):
        for p in period_space(n):
            assert relation_holds(p)
            assert coefficient_vanishing_check(p)
            assert all(t != 1 for (_, t) in p.coefficients)


def test_pairing_is_antisymmetric():
    for n in (12, 16, 18):
        for p in period_space(n):
            for s in range(1, n):
                assert pair_v(s, n - s, p) == -pair_v(n - s, s, p)


def test_embedding_over_odd_pairs():
    (p,) = period_space(12).elements
    assert embed_period(p) == (1, -3, 3, -1)
    with pytest.raises(ValueError):
        pair_v(3, 7, p)


def test_construction_rejects_violations():
    with pytest.raises(ValueError):
        PeriodPolynomial(12, {(2, 10): 1})  # even index
    with pytest.raises(ValueError):
        PeriodPolynomial(12, {(11, 1): 1})  # p(x1, 0) != 0
    with pytest.raises(ValueError):
        PeriodPolynomial(12, {(3, 9): 1})  # relation fails
    with pytest.raises(ValueError):
        PeriodPolynomial(12, {(3, 7): 1})  # wrong weight
    p = PeriodPolynomial(12, {(3, 9): 2, (5, 7): -6, (7, 5): 6, (9, 3): -2})
    assert p.coefficient(5, 7) == -6 and p.coefficient(4, 8) == 0
    assert PeriodPolynomial(12, {}).is_zero()


def test_screening_raw_coefficients():
    assert not coefficient_vanishing_check({(2, 10): Fraction(1)})
    assert coefficient_vanishing_check({(3, 9): 1, (2, 10): 0})


def test_empty_weights():
    assert period_space(11).dim == 0
    assert period_space(14).dim == 0
    assert period_space(24).dim == 2
    with pytest.raises(ValueError):
        period_space(0)
