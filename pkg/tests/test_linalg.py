from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dgmzv.linalg import (
    QMatrix,
    Subspace,
    contains,
    format_rational,
    intersect,
    is_subspace,
    left_kernel,
    nullspace,
    rank,
    row_action,
    row_space,
    rref,
    solve_left,
    subspace_sum,
    to_rational,
    vstack,
)


def naive_rref(rows, ncols):
    """Textbook Gauss-Jordan over Fraction; the oracle for the Bareiss path."""
    a = [[Fraction(x) for x in row] for row in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return a, r


@st.composite
def matrices(draw, max_rows=6, max_cols=7, entries=st.integers(-6, 6)):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    return [[draw(entries) for _ in range(n)] for _ in range(m)], n


@st.composite
def low_rank_matrices(draw):
    # product of an m x k and a k x n matrix: rank <= k, often deficient
    m, n, k = draw(st.integers(1, 6)), draw(st.integers(1, 6)), draw(st.integers(1, 3))
    ent = st.integers(-4, 4)
    a = [[draw(ent) for _ in range(k)] for _ in range(m)]
    b = [[draw(ent) for _ in range(n)] for _ in range(k)]
    rows = [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(n)] for i in range(m)]
    return rows, n


rational_entries = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@settings(max_examples=150, deadline=None)
@given(st.one_of(matrices(), low_rank_matrices(), matrices(entries=rational_entries)))
def test_rref_and_rank_match_naive_elimination(data):
    rows, n = data
    m = QMatrix(rows, n)
    expected, r = naive_rref(rows, n)
    assert rank(m) == r
    assert rref(m).rows == tuple(tuple(row) for row in expected)


@settings(max_examples=80, deadline=None)
@given(st.one_of(matrices(), low_rank_matrices()))
def test_rank_matches_sympy(data):
    rows, n = data
    assert rank(QMatrix(rows, n)) == sympy.Matrix(rows).rank()


@settings(max_examples=120, deadline=None)
@given(st.one_of(matrices(), low_rank_matrices(), matrices(entries=rational_entries)))
def test_nullspace_is_kernel_of_right_dimension(data):
    rows, n = data
    m = QMatrix(rows, n)
    ker = nullspace(m)
    assert ker.dim == n - rank(m)
    for v in ker.vectors():
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in m.rows)


@settings(max_examples=80, deadline=None)
@given(st.one_of(matrices(), low_rank_matrices()))
def test_left_kernel_annihilates_under_row_action(data):
    rows, n = data
    m = QMatrix(rows, n)
    lk = left_kernel(m)
    assert lk.dim == m.nrows - rank(m)
    for a in lk.vectors():
        assert not any(row_action(a, m))


@settings(max_examples=80, deadline=None)
@given(st.one_of(matrices(), low_rank_matrices()), st.data())
def test_span_is_canonical(data, draw):
    rows, n = data
    # scaling and permuting generators and adding combinations leaves the span fixed
    perm = draw.draw(st.permutations(range(len(rows))))
    scales = [draw.draw(st.integers(1, 5)) for _ in rows]
    other = [[scales[i] * x for x in rows[i]] for i in perm]
    other.append([sum(col) for col in zip(*rows)])
    assert Subspace.span(rows, n) == Subspace.span(other, n)


@settings(max_examples=60, deadline=None)
@given(low_rank_matrices(), low_rank_matrices())
def test_intersection_dimension_formula(d1, d2):
    (r1, n1), (r2, n2) = d1, d2
    if n1 != n2:
        r2 = [row[:n1] + [0] * (n1 - len(row)) for row in r2]
    u, v = Subspace.span(r1, n1), Subspace.span(r2, n1)
    meet, total = intersect(u, v), subspace_sum(u, v)
    assert meet.dim == u.dim + v.dim - total.dim
    assert is_subspace(meet, u) and is_subspace(meet, v)
    assert is_subspace(u, total) and is_subspace(v, total)


@settings(max_examples=80, deadline=None)
@given(st.one_of(matrices(), low_rank_matrices()), st.data())
def test_solve_left_recovers_a_combination(data, draw):
    rows, n = data
    m = QMatrix(rows, n)
    coeffs = [draw.draw(st.integers(-3, 3)) for _ in rows]
    b = row_action(coeffs, m)
    a = solve_left(m, b)
    assert a is not None
    assert row_action(a, m) == b


def test_solve_left_reports_inconsistency():
    m = QMatrix([[1, 0, 0], [0, 1, 0]])
    assert solve_left(m, [0, 0, 1]) is None
    assert solve_left(m, [2, 3, 0]) == (2, 3)


def test_small_known_values():
    m = QMatrix([[1, 2], [2, 4]])
    assert rank(m) == 1
    # bases come back in canonical RREF
    assert nullspace(m).vectors() == ((Fraction(1), Fraction(-1, 2)),)
    assert rref(QMatrix([[2, 4, 6], [1, 1, 1]])).rows == ((1, 0, -1), (0, 1, 2), )
    assert rank(QMatrix.zeros(3, 4)) == 0
    assert nullspace(QMatrix.zeros(2, 3)).dim == 3
    assert rank(QMatrix.identity(5)) == 5


def test_matrix_arithmetic():
    a = QMatrix([[1, 2], [3, 4]])
    b = QMatrix([[0, 1], [1, 0]])
    assert (a @ b).rows == ((2, 1), (4, 3))
    assert (a + b - b) == a
    assert (-a).scale(-1) == a
    assert a.T.rows == ((1, 3), (2, 4))
    assert a[1, 0] == 3 and a.column(1) == (2, 4)
    assert vstack(a, b).shape == (4, 2)
    with pytest.raises(ValueError):
        a @ QMatrix([[1, 2, 3]])
    with pytest.raises(ValueError):
        QMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        a + QMatrix([[1, 2, 3]])


def test_rationals_are_exact_only():
    assert to_rational("3/6") == Fraction(1, 2)
    assert to_rational(7) == 7
    with pytest.raises(TypeError):
        to_rational(0.5)
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(Fraction(8, 4)) == "2"


def test_csv_dump_format():
    m = QMatrix([[1, Fraction(-1, 2)], [0, 3]])
    assert m.to_csv(["3.9", "5.7"]) == "3.9,5.7\n1,-1/2\n0,3\n"
    assert QMatrix([], 0).to_csv([]) == "\n"
    with pytest.raises(ValueError):
        m.to_csv(["only-one"])


def test_subspace_membership_and_ambient_checks():
    s = row_space(QMatrix([[1, 1, 0]]))
    assert contains(s, [2, 2, 0]) and not contains(s, [1, 0, 0])
    assert Subspace.zero(3).dim == 0 and Subspace.full(3).dim == 3
    assert s.complement().dim == 2
    with pytest.raises(ValueError):
        intersect(s, Subspace.full(2))
    with pytest.raises(ValueError):
        row_action([1, 2], QMatrix.identity(3))
