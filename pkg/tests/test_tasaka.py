import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dgmzv.linalg import QMatrix, left_kernel, rank, row_action
from dgmzv.period import embed_period, period_space
from dgmzv.poly import enumerate_compositions
from dgmzv.tasaka import (
    b_coeff,
    binom,
    build_C,
    build_E,
    build_E_power,
    build_E_shifted,
    build_identity,
    d_labels,
    d_matrix,
    dtilde_labels,
    dtilde_matrix,
    e_entry,
    eta_map,
    is_injective_rows,
    needed_period_weights,
    w_relation,
    w_space,
    xi_image_in_kernel,
    xi_map,
)


def test_binomial_conventions():
    assert binom(2, 8) == 0 and binom(4, 2) == 6 and binom(3, -1) == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 31).filter(lambda m: m % 2), st.integers(1, 31), st.integers(1, 31))
def test_b_coefficient_antisymmetry(m, n, n2):
    assert b_coeff(m, n, n2) + b_coeff(m, n2, n) == 0


def test_b_coefficient_values():
    # (-1)^3 C(2,2) + (-1)^(9-3) C(2,8) = -1
    assert b_coeff(3, 3, 9) == -1
    assert b_coeff(3, 9, 3) == 1
    # -C(4,2) + C(4,6), the second binomial vanishing
    assert b_coeff(5, 3, 7) == -6
    assert b_coeff(5, 5, 3) == -1 + 6
    with pytest.raises(ValueError):
        b_coeff(0, 1, 1)


def test_e_entry_hand_values():
    # delta plus b(3; 3, 9) = 1 - 1
    assert e_entry((3, 9), (3, 9)) == 0
    assert e_entry((3, 9), (9, 3)) == 1
    assert e_entry((5, 5, 5), (5, 5, 5)) == 1 + b_coeff(5, 5, 5) + b_coeff(5, 5, 5)
    with pytest.raises(ValueError):
        e_entry((3, 9), (3, 3, 5))


def test_e_matrix_weight_twelve():
    assert build_E(12, 2).matrix.rows == (
        (0, 0, 0, 1),
        (-6, 0, 1, 6),
        (-15, -14, 15, 15),
        (-27, -42, 42, 28),
    )


def test_period_vector_in_left_kernel():
    for n in (12, 16, 18, 20, 22, 24):
        e = build_E(n, 2).matrix
        for p in period_space(n):
            assert not any(row_action(embed_period(p), e))


def test_depth_two_ranks():
    assert [rank(build_E(n, 2).matrix) for n in range(6, 31, 2)] == [1, 2, 3, 3, 5, 5, 6, 7, 8, 8, 10, 10, 11]


def test_depth_three_ranks_and_w_dims():
    odd = range(9, 28, 2)
    assert [rank(build_C(n, 3).matrix) for n in odd] == [1, 3, 6, 8, 13, 17, 22, 28, 35, 41]
    assert [w_space(n, 3).dim for n in odd] == [0, 0, 0, 1, 1, 2, 3, 4, 5, 7]


def test_c_is_product_of_shifted_matrices():
    for n in (11, 15, 17):
        assert build_C(n, 3).matrix == build_E_shifted(n, 3, 1).matrix @ build_E(n, 3).matrix
    n = 15
    four = build_C(n, 4).matrix
    expected = build_E_power(n, 4, 2).matrix @ build_E_power(n, 4, 3).matrix @ build_E(n, 4).matrix
    assert four == expected


def test_shifted_matrix_is_block_diagonal():
    e2 = build_E_shifted(15, 3, 1)
    comps = e2.ordering
    for i, m in enumerate(comps):
        for j, n in enumerate(comps):
            if m[0] != n[0]:
                assert e2.matrix[i, j] == 0
            else:
                assert e2.matrix[i, j] == e_entry(m[1:], n[1:])
    with pytest.raises(ValueError):
        build_E_shifted(15, 3, 2)
    assert build_E_power(12, 2, 2) is build_E(12, 2)
    assert build_identity(11, 3).matrix == QMatrix.identity(3)


def test_w_space_solves_functional_equation_in_sympy():
    x = sympy.symbols("x1:4")
    for n, r in ((12, 2), (15, 3), (21, 3)):
        ws = w_space(n, r)
        for k in range(ws.dim):
            p = ws.polynomial(k)
            assert w_relation(p).is_zero()
            expr = sum(c * sympy.prod([x[j] ** a for j, a in enumerate(e)]) for e, c in p.terms.items())
            sub1 = {x[0]: x[1] - x[0], x[1]: x[1]}
            sub2 = {x[0]: x[1] - x[0], x[1]: x[0]}
            lhs = expr - expr.subs(sub1, simultaneous=True) + expr.subs(sub2, simultaneous=True)
            assert sympy.expand(lhs) == 0
    with pytest.raises(ValueError):
        w_space(5, 1)


def test_w_two_equals_kernel_of_e():
    for n in range(6, 31, 2):
        assert w_space(n, 2).subspace == left_kernel(build_E(n, 2).matrix)


def test_eta_and_xi():
    for n in (15, 17, 21):
        assert is_injective_rows(eta_map(n, 3))
        assert is_injective_rows(xi_map(n, 3))
        assert xi_image_in_kernel(n, 3)
    with pytest.raises(ValueError):
        xi_map(12, 2)
    with pytest.raises(ValueError):
        eta_map(5, 1)


def test_d_after_dtilde_vanishes():
    for n in (9, 13, 15, 19):
        d = d_matrix(n, 3)
        assert (d @ dtilde_matrix(n, 3)).is_zero()
        assert rank(d) == d.nrows


def test_d_labels_and_period_weights():
    assert needed_period_weights(15, 3) == [6, 8, 10, 12]
    labels = d_labels(15, 3, {w: period_space(w) for w in needed_period_weights(15, 3)})
    assert labels == [(12, 0, (3,))]
    assert dtilde_labels(11, 3) == ((3, (3, 5)), (3, (5, 3)), (5, (3, 3)))
    with pytest.raises(ValueError):
        d_matrix(15, 3, period_bases={})
    with pytest.raises(ValueError):
        d_matrix(12, 2)


def test_empty_index_sets():
    e = build_E(11, 2)
    assert e.size == 0 and e.matrix.shape == (0, 0)
    assert len(enumerate_compositions(10, 3)) == 0
