"""Tasaka's coaction matrices over the totally odd index sets S_{N,r}.

Rows and columns of every square matrix follow ``enumerate_compositions``
(ascending lex).  Square matrices act on row vectors, ``a -> aP``, so
"Ker P" means the left kernel and "Im P" the row space.  The coordinate
matrices of the linear maps dtilde and D use the column convention
(rows = target coordinates, columns = source coordinates) so that
composition is plain matrix multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

from .linalg import QMatrix, Subspace, nullspace, rank, row_action
from .period import PeriodBasis, pair_v, period_space
from .poly import Composition, MultiPoly, coefficient_vector, enumerate_compositions, monomial_basis, substitute


def binom(a: int, b: int) -> int:
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def b_coeff(m: int, n: int, n2: int) -> int:
    """b^m_{n,n'} = (-1)^n C(m-1, n-1) + (-1)^(n'-m) C(m-1, n'-1)."""
    if min(m, n, n2) < 1:
        raise ValueError("b-coefficient indices must be >= 1")
    return _sign(n) * binom(m - 1, n - 1) + _sign(n2 - m) * binom(m - 1, n2 - 1)


def e_entry(m: Sequence[int], n: Sequence[int]) -> int:
    """Coefficient e(m; n) of zeta(m1) ⊗ zeta(m2..mr) in dtilde zeta(n)."""
    m, n = tuple(m), tuple(n)
    if len(m) != len(n) or sum(m) != sum(n):
        raise ValueError(f"e-entry needs equal depth and weight: {m} vs {n}")
    return _e_entry(m, n)


@lru_cache(maxsize=None)
def _e_entry(m: Composition, n: Composition) -> int:
    r = len(m)
    total = int(m == n)
    m1 = m[0]
    for i in range(1, r):
        # delta(m_2..m_i, m_{i+2}..m_r ; n_1..n_{i-1}, n_{i+2}..n_r), empty tuples equal
        if m[1:i] + m[i + 1:] == n[: i - 1] + n[i + 1:]:
            total += b_coeff(m1, n[i - 1], n[i])
    return total


@dataclass(frozen=True)
class TasakaMatrix:
    weight: int
    depth: int
    kind: str  # "E", "E(k)", "C" or "I"
    ordering: tuple[Composition, ...]
    matrix: QMatrix

    @property
    def size(self) -> int:
        return len(self.ordering)


def _square(weight: int, depth: int, entry) -> QMatrix:
    comps = enumerate_compositions(weight, depth)
    return QMatrix([[entry(m, n) for n in comps] for m in comps], len(comps))


@lru_cache(maxsize=None)
def build_E(weight: int, depth: int) -> TasakaMatrix:
    if weight < 1 or depth < 1:
        raise ValueError("weight and depth must be positive")
    mat = _square(weight, depth, _e_entry)
    return TasakaMatrix(weight, depth, "E", enumerate_compositions(weight, depth), mat)


@lru_cache(maxsize=None)
def build_E_shifted(weight: int, depth: int, i: int) -> TasakaMatrix:
    """E^{(r-i)}: entries delta(m1..mi; n1..ni) e(m_{i+1}..m_r; n_{i+1}..n_r)."""
    if not 1 <= i <= depth - 2:
        raise ValueError(f"shift index must satisfy 1 <= i <= depth-2, got i={i}, depth={depth}")

    def entry(m, n):
        if m[:i] != n[:i]:
            return 0
        return _e_entry(m[i:], n[i:])

    mat = _square(weight, depth, entry)
    return TasakaMatrix(weight, depth, f"E({depth - i})", enumerate_compositions(weight, depth), mat)


def build_E_power(weight: int, depth: int, k: int) -> TasakaMatrix:
    """E^{(k)} for 2 <= k <= r-1; k = r gives E itself."""
    if k == depth:
        return build_E(weight, depth)
    return build_E_shifted(weight, depth, depth - k)


@lru_cache(maxsize=None)
def build_C(weight: int, depth: int) -> TasakaMatrix:
    """C = E^{(2)} E^{(3)} ... E^{(r-1)} E."""
    mat = build_E(weight, depth).matrix
    for k in range(depth - 1, 1, -1):
        mat = build_E_power(weight, depth, k).matrix @ mat
    return TasakaMatrix(weight, depth, "C", enumerate_compositions(weight, depth), mat)


def build_identity(weight: int, depth: int) -> TasakaMatrix:
    comps = enumerate_compositions(weight, depth)
    return TasakaMatrix(weight, depth, "I", comps, QMatrix.identity(len(comps)))


# --- W spaces -------------------------------------------------------------------------

@dataclass(frozen=True)
class WSpace:
    """Solutions of p(x) = p(x2-x1, x2, x3..) - p(x2-x1, x1, x3..) inside the
    span of totally odd monomials, in S_{N,r} coordinates."""

    weight: int
    depth: int
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def vectors(self):
        return self.subspace.vectors()

    def polynomial(self, k: int) -> MultiPoly:
        """The k-th basis element as a polynomial in x1..xr."""
        comps = enumerate_compositions(self.weight, self.depth)
        terms = {tuple(c - 1 for c in comp): a for comp, a in zip(comps, self.vectors()[k])}
        return MultiPoly(self.depth, self.weight - self.depth, terms)


def w_relation(p: MultiPoly) -> MultiPoly:
    """p(x) - p(x2-x1, x2, x3, ...) + p(x2-x1, x1, x3, ...); zero on W."""
    r = p.num_vars
    xs = [MultiPoly.variable(j, r) for j in range(r)]
    d = xs[1] - xs[0]
    first = substitute(p, [d, xs[1]] + xs[2:])
    second = substitute(p, [d, xs[0]] + xs[2:])
    return p - first + second


@lru_cache(maxsize=None)
def w_space(weight: int, depth: int) -> WSpace:
    if depth < 2:
        raise ValueError("the functional equation needs depth >= 2")
    comps = enumerate_compositions(weight, depth)
    if not comps:
        return WSpace(weight, depth, Subspace.zero(0))
    basis = monomial_basis(depth, weight - depth)
    columns = [
        coefficient_vector(w_relation(MultiPoly.monomial([c - 1 for c in comp])), basis)
        for comp in comps
    ]
    system = QMatrix(zip(*columns), len(comps))
    return WSpace(weight, depth, nullspace(system))


def eta_map(weight: int, depth: int) -> QMatrix:
    """Rows: pi_1(w)(E - I) for w running over the W basis."""
    if depth < 2:
        raise ValueError("eta needs depth >= 2")
    w = w_space(weight, depth)
    e = build_E(weight, depth).matrix
    shifted = e - QMatrix.identity(e.nrows)
    return QMatrix([row_action(v, shifted) for v in w.vectors()], e.ncols)


def xi_map(weight: int, depth: int) -> QMatrix:
    """Rows: pi_1(w) E^{(r-1)} for w running over the W basis."""
    if depth < 3:
        raise ValueError("xi needs depth >= 3")
    w = w_space(weight, depth)
    e = build_E_shifted(weight, depth, 1).matrix
    return QMatrix([row_action(v, e) for v in w.vectors()], e.ncols)


def is_injective_rows(m: QMatrix) -> bool:
    """A map given by its row images is injective iff the rows are independent."""
    return rank(m) == m.nrows


def xi_image_in_kernel(weight: int, depth: int) -> bool:
    """Every row of xi is annihilated by E, i.e. pi_1(W) lies in Ker E^{(r-1)}E."""
    xi = xi_map(weight, depth)
    return (xi @ build_E(weight, depth).matrix).is_zero()


# --- coaction maps in coordinates -------------------------------------------------------

def dtilde_labels(weight: int, depth: int) -> tuple[tuple[int, Composition], ...]:
    """Target coordinates (m1, (m2..mr)) grouped by ascending m1."""
    return tuple((m[0], m[1:]) for m in enumerate_compositions(weight, depth))


def dtilde_matrix(weight: int, depth: int) -> QMatrix:
    """Column n holds the coordinates of dtilde zeta(n); row (m1, tail) has e(m; n)."""
    if depth < 2:
        raise ValueError("dtilde needs depth >= 2")
    comps = enumerate_compositions(weight, depth)
    return QMatrix([[_e_entry(m, n) for n in comps] for m in comps], len(comps))


def needed_period_weights(weight: int, depth: int) -> list[int]:
    return [w for w in range(6, weight - 3 * (depth - 2) + 1, 2)]


def d_labels(weight: int, depth: int, period_bases: Mapping[int, PeriodBasis]) -> list[tuple[int, int, Composition]]:
    """Target coordinates (w, k, tail): k-th dual basis vector of weight w, tail in S_{N-w, r-2}."""
    out = []
    for w in needed_period_weights(weight, depth):
        basis = _basis_for(period_bases, w)
        for k in range(len(basis)):
            for tail in enumerate_compositions(weight - w, depth - 2):
                out.append((w, k, tail))
    return out


def _basis_for(period_bases: Mapping[int, PeriodBasis], w: int) -> PeriodBasis:
    try:
        return period_bases[w]
    except KeyError:
        raise ValueError(f"missing period basis for weight {w}") from None


def d_matrix(weight: int, depth: int, period_bases: Mapping[int, PeriodBasis] | None = None) -> QMatrix:
    """Matrix of D = (v ⊗ id)(id ⊗ dtilde).

    Source coordinates (n1, n2..nr) follow S_{N,r}; the entry at target
    (w, k, tail) is e((w-n1, *tail); (n2..nr)) * p^{(w,k)}_{n1, w-n1}.
    """
    if depth < 3:
        raise ValueError("D needs depth >= 3")
    if period_bases is None:
        period_bases = {w: period_space(w) for w in needed_period_weights(weight, depth)}
    sources = enumerate_compositions(weight, depth)
    rows = []
    for w, k, tail in d_labels(weight, depth, period_bases):
        p = _basis_for(period_bases, w)[k]
        row = []
        for n in sources:
            m2 = w - n[0]
            if m2 < 3 or m2 % 2 == 0:
                row.append(0)
                continue
            v = pair_v(n[0], m2, p)
            row.append(v * _e_entry((m2,) + tail, n[1:]) if v else 0)
        rows.append(row)
    return QMatrix(rows, len(sources))

