"""Circle product, Ihara bracket and the free Lie algebra on the depth-one
generators sigma_3, sigma_5, ...

Bracket words are nested pairs with odd integer leaves: ``3`` is sigma_3,
``((3, 9), 5)`` is [[sigma_3, sigma_9], sigma_5].  Formal Lie elements are
handled inside the tensor algebra (dicts word -> coefficient), which is
enough to compare dimensions of Lie_n pieces.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .linalg import QMatrix, Subspace, rank, solve_left
from .period import PeriodPolynomial, period_space
from .poly import (
    MultiPoly,
    coefficient_vector,
    enumerate_compositions,
    monomial_basis,
    odd_coeff_vector,
    sigma,
)

BracketWord = Union[int, tuple]


@dataclass(frozen=True, eq=False)
class DepthGradedElement:
    """A depth-r element, given by its polynomial in y_0..y_r."""

    poly: MultiPoly

    @property
    def depth(self) -> int:
        return self.poly.num_vars - 1

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def weight(self) -> int:
        return self.poly.degree + self.depth

    def __eq__(self, other):
        if not isinstance(other, DepthGradedElement):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __add__(self, other: "DepthGradedElement") -> "DepthGradedElement":
        return DepthGradedElement(self.poly + other.poly)

    def __sub__(self, other: "DepthGradedElement") -> "DepthGradedElement":
        return DepthGradedElement(self.poly - other.poly)

    def scale(self, c) -> "DepthGradedElement":
        return DepthGradedElement(self.poly.scale(c))

    def is_zero(self) -> bool:
        return self.poly.is_zero()


def generator(n: int) -> DepthGradedElement:
    return DepthGradedElement(sigma(n))


def _as_poly(x) -> MultiPoly:
    return x.poly if isinstance(x, DepthGradedElement) else x


def brown_formula(f, g) -> DepthGradedElement:
    """The polynomial-representation formula, for f of depth r and g of depth s::

        sum_{i=0}^{s} f(y_i..y_{i+r}) g(y_0..y_i, y_{i+r+1}..y_{r+s})
        + (-1)^(deg f + r) sum_{i=1}^{s} f(y_{i+r}..y_i) g(y_0..y_{i-1}, y_{i+r}..y_{r+s})

    It computes the enveloping-algebra product only when f is a Lie element.
    On arbitrary polynomials it is a pre-Lie product, not an associative one.
    """
    fp, gp = _as_poly(f), _as_poly(g)
    r, s = fp.num_vars - 1, gp.num_vars - 1
    if r < 1 or s < 1:
        raise ValueError("circle product is defined here for depth >= 1 factors")
    n = r + s + 1
    acc = MultiPoly.zero(n, fp.degree + gp.degree)
    for i in range(s + 1):
        ff = fp.rename([i + j for j in range(r + 1)], n)
        gg = gp.rename(list(range(i + 1)) + list(range(i + r + 1, r + s + 1)), n)
        acc = acc + ff * gg
    tail = MultiPoly.zero(n, fp.degree + gp.degree)
    for i in range(1, s + 1):
        ff = fp.rename([i + r - j for j in range(r + 1)], n)
        gg = gp.rename(list(range(i)) + list(range(i + r, r + s + 1)), n)
        tail = tail + ff * gg
    if (fp.degree + r) % 2:
        tail = -tail
    return DepthGradedElement(acc + tail)


def product_decomposition(f) -> list[tuple[Fraction, tuple[int, ...]]] | None:
    """Write f as a combination of right-nested generator products
    sigma_{n1} ∘ (... ∘ sigma_{nr}), or return None if f lies outside their span.
    The coefficients are one particular solution; products may be dependent."""
    fp = _as_poly(f)
    r = fp.num_vars - 1
    weight = fp.degree + r
    comps = enumerate_compositions(weight, r) if r >= 1 else ()
    if fp.is_zero():
        return []
    if not comps:
        return None
    sol = solve_left(_product_matrix(weight, r), coefficient_vector(fp, monomial_basis(r + 1, fp.degree)))
    if sol is None:
        return None
    return [(c, comp) for c, comp in zip(sol, comps) if c]


@lru_cache(maxsize=None)
def _product_matrix(weight: int, depth: int) -> QMatrix:
    return poly_matrix(span_generators(weight, depth, "product"), depth + 1, weight - depth)


def circle_product(f, g) -> DepthGradedElement:
    """The associative product of the enveloping algebra, on polynomial
    representations.

    A depth-one left factor is a generator multiple and acts through
    ``brown_formula``.  A deeper left factor is first expanded in right-nested
    generator products; each product then acts factor by factor, which is
    what associativity demands.  A deeper left factor outside the generated
    subalgebra is assumed to be a Lie element and acts through the formula.
    """
    fp, gp = _as_poly(f), _as_poly(g)
    if fp.num_vars - 1 < 1 or gp.num_vars - 1 < 1:
        raise ValueError("circle product is defined here for depth >= 1 factors")
    if fp.num_vars == 2:
        return brown_formula(fp, gp)
    parts = product_decomposition(fp)
    if parts is None:
        return brown_formula(fp, gp)
    out = DepthGradedElement(MultiPoly.zero(fp.num_vars + gp.num_vars - 1, fp.degree + gp.degree))
    for c, comp in parts:
        acc = DepthGradedElement(gp)
        for k in reversed(comp):
            acc = brown_formula(generator(k), acc)
        out = out + acc.scale(c)
    return out


def ihara_bracket(f, g) -> DepthGradedElement:
    """{f, g} = f∘g - g∘f."""
    return circle_product(f, g) - circle_product(g, f)


@lru_cache(maxsize=None)
def generator_product(parts: tuple[int, ...]) -> DepthGradedElement:
    """sigma_{n1} ∘ (sigma_{n2} ∘ (... ∘ sigma_{nr}))."""
    if not parts:
        raise ValueError("empty product")
    if len(parts) == 1:
        return generator(parts[0])
    return brown_formula(generator(parts[0]), generator_product(parts[1:]))


def sigma_pair_closed_form(a: int, b: int) -> MultiPoly:
    """(y1-y0)^(a-1)(y2-y0)^(b-1) + (y2-y1)^(a-1)(y1-y0)^(b-1) - (y2-y1)^(a-1)(y2-y0)^(b-1)."""
    y = [MultiPoly.variable(i, 3) for i in range(3)]
    d10, d20, d21 = y[1] - y[0], y[2] - y[0], y[2] - y[1]
    return d10 ** (a - 1) * d20 ** (b - 1) + d21 ** (a - 1) * d10 ** (b - 1) - d21 ** (a - 1) * d20 ** (b - 1)


def sigma_triple_closed_form(a: int, b: int, c: int) -> MultiPoly:
    """The five-block expansion of sigma_a ∘ (sigma_b ∘ sigma_c)."""
    y = [MultiPoly.variable(i, 4) for i in range(4)]

    def d(i, j):
        return (y[i] - y[j])

    def inner(u, v, w):
        # G(y_u, y_v, y_w) with G the depth-two closed form, u playing y0
        return d(v, u) ** (b - 1) * d(w, u) ** (c - 1) + d(w, v) ** (b - 1) * d(v, u) ** (c - 1) - d(w, v) ** (b - 1) * d(w, u) ** (c - 1)

    A = a - 1
    return (
        d(1, 0) ** A * inner(0, 2, 3)
        + d(2, 1) ** A * inner(0, 1, 3)
        + d(3, 2) ** A * inner(0, 1, 2)
        - d(2, 1) ** A * inner(0, 2, 3)
        - d(3, 2) ** A * inner(0, 1, 3)
    )


# --- bracket words and Lyndon bases ---------------------------------------------------------

def leaves(bw: BracketWord) -> tuple[int, ...]:
    if isinstance(bw, int):
        return (bw,)
    return leaves(bw[0]) + leaves(bw[1])


def bracket_weight(bw: BracketWord) -> int:
    return sum(leaves(bw))


def bracket_depth(bw: BracketWord) -> int:
    return len(leaves(bw))


def format_bracket(bw: BracketWord) -> str:
    if isinstance(bw, int):
        return f"s{bw}"
    return f"[{format_bracket(bw[0])},{format_bracket(bw[1])}]"


def is_lyndon(word: Sequence[int]) -> bool:
    w = tuple(word)
    return bool(w) and all(w < w[i:] for i in range(1, len(w)))


def standard_bracketing(word: Sequence[int]) -> BracketWord:
    """Bracket a Lyndon word along its standard factorization w = uv, v the
    longest proper Lyndon suffix."""
    w = tuple(word)
    if not is_lyndon(w):
        raise ValueError(f"{w} is not a Lyndon word")
    if len(w) == 1:
        return w[0]
    # the longest proper Lyndon suffix starts at the smallest such index
    i = next(i for i in range(1, len(w)) if is_lyndon(w[i:]))
    return (standard_bracketing(w[:i]), standard_bracketing(w[i:]))


def lyndon_words(weight: int, n: int) -> list[tuple[int, ...]]:
    return [w for w in enumerate_compositions(weight, n) if is_lyndon(w)]


def lyndon_basis(weight: int, n: int) -> list[BracketWord]:
    """Bracketed Lyndon words of n odd letters >= 3 summing to ``weight``."""
    return [standard_bracketing(w) for w in lyndon_words(weight, n)]


@lru_cache(maxsize=None)
def evaluate_bracket(bw: BracketWord) -> DepthGradedElement:
    """Replace formal brackets by Ihara brackets and leaves by sigma."""
    if isinstance(bw, int):
        return generator(bw)
    return ihara_bracket(evaluate_bracket(bw[0]), evaluate_bracket(bw[1]))


def evaluate_combination(terms: Iterable[tuple[object, BracketWord]]) -> DepthGradedElement:
    acc = None
    for c, bw in terms:
        v = evaluate_bracket(bw).scale(c)
        acc = v if acc is None else acc + v
    if acc is None:
        raise ValueError("empty combination")
    return acc


def tensor_expansion(bw: BracketWord) -> dict[tuple[int, ...], int]:
    """The bracket as a noncommutative polynomial: [u, v] = uv - vu."""
    return dict(_tensor_expansion(bw))


@lru_cache(maxsize=None)
def _tensor_expansion(bw: BracketWord) -> tuple:
    if isinstance(bw, int):
        return (((bw,), 1),)
    left, right = dict(_tensor_expansion(bw[0])), dict(_tensor_expansion(bw[1]))
    out: dict[tuple[int, ...], int] = {}
    for u, a in left.items():
        for v, b in right.items():
            out[u + v] = out.get(u + v, 0) + a * b
            out[v + u] = out.get(v + u, 0) - a * b
    return tuple((k, c) for k, c in sorted(out.items()) if c)


def tensor_vector(terms: Iterable[tuple[object, BracketWord]], weight: int, n: int) -> list:
    index = {w: i for i, w in enumerate(enumerate_compositions(weight, n))}
    v = [0] * len(index)
    for c, bw in terms:
        for w, k in _tensor_expansion(bw):
            v[index[w]] += c * k
    return v


def left_normed(word: Sequence[int]) -> BracketWord:
    bw: BracketWord = word[0]
    for a in word[1:]:
        bw = (bw, a)
    return bw


def free_lie_dimension(weight: int, n: int) -> int:
    """dim of the weight part of Lie_n, as the rank of all left-normed
    brackets in the tensor algebra.  Independent of the Lyndon machinery."""
    comps = enumerate_compositions(weight, n)
    if not comps:
        return 0
    rows = [tensor_vector([(1, left_normed(w))], weight, n) for w in comps]
    return rank(QMatrix(rows, len(comps)))


# --- alpha and spans ------------------------------------------------------------------------

def alpha_map(p: PeriodPolynomial, tail: Sequence[int] = ()) -> list[tuple[Fraction, BracketWord]]:
    """p ⊗ sigma_{i1} ⊗ ... ↦ sum p_{r,s} [...[[sigma_r, sigma_s], sigma_{i1}], ...]."""
    for i in tail:
        if i < 3 or i % 2 == 0:
            raise ValueError(f"tail entries must be odd >= 3, got {i}")
    out = []
    for (r, s), c in p.coefficients.items():
        bw: BracketWord = (r, s)
        for i in tail:
            bw = (bw, i)
        out.append((c, bw))
    return out


def alpha_generators(weight: int, n: int) -> list[list[tuple[Fraction, BracketWord]]]:
    """Images under alpha of a spanning set of the weight part of P ⊗ dg_1^{n-2}."""
    out = []
    for w in range(12, weight + 1, 2):
        rest = weight - w
        tails = [()] if n == 2 and rest == 0 else list(enumerate_compositions(rest, n - 2)) if n > 2 else []
        if not tails:
            continue
        basis = period_space(w)
        for p in basis:
            for tail in tails:
                out.append(alpha_map(p, tail))
    return out


def poly_matrix(polys: Sequence[MultiPoly], num_vars: int, degree: int) -> QMatrix:
    basis = monomial_basis(num_vars, degree)
    return QMatrix([coefficient_vector(p, basis) for p in polys], len(basis))


def span_generators(weight: int, depth: int, mode: str = "lie") -> list[MultiPoly]:
    if mode == "lie":
        if depth == 1:
            words = [weight] if weight >= 3 and weight % 2 else []
            return [generator(w).poly for w in words]
        return [evaluate_bracket(bw).poly for bw in lyndon_basis(weight, depth)]
    if mode == "product":
        return [generator_product(c).poly for c in enumerate_compositions(weight, depth)]
    raise ValueError(f"unknown span mode {mode!r}; expected 'lie' or 'product'")


def dg_span(weight: int, depth: int, mode: str = "lie") -> Subspace:
    """Span of Lie brackets (mode 'lie') or of ∘-products (mode 'product') of
    generators, as coefficient vectors over the degree weight-depth monomials
    in y_0..y_depth (``monomial_basis`` order)."""
    polys = span_generators(weight, depth, mode)
    ambient = len(monomial_basis(depth + 1, weight - depth))
    return Subspace.span(poly_matrix(polys, depth + 1, weight - depth), ambient)


def odd_coefficient_matrix(weight: int, depth: int, mode: str = "product") -> QMatrix:
    """Rows: odd-coefficient projections of the span generators."""
    polys = span_generators(weight, depth, mode)
    return QMatrix([odd_coeff_vector(p, weight, depth) for p in polys], len(enumerate_compositions(weight, depth)))


def quasi_uneven_free(weight: int, depth: int, mode: str = "product") -> bool:
    """True when the only quasi-uneven element of the span is 0, i.e. the
    odd-coefficient projection is injective on it."""
    polys = span_generators(weight, depth, mode)
    if not polys:
        return True
    full = rank(poly_matrix(polys, depth + 1, weight - depth))
    return full == rank(odd_coefficient_matrix(weight, depth, mode))


# --- non-degeneracy -------------------------------------------------------------------------

@dataclass(frozen=True)
class NondegeneracyReport:
    weight: int
    n: int
    lie_dim: int
    beta_rank: int
    ker_beta_dim: int
    alpha_image_dim: int
    alpha_in_ker_beta: bool
    status: str  # "EXACT" or "NOT-EXACT"
    by_theorem: bool  # the n = 2, 3 cases are proven

    @property
    def exact(self) -> bool:
        return self.status == "EXACT"


def check_nondegenerate(weight: int, n: int) -> NondegeneracyReport:
    """Compare Ker(beta) with Im(alpha) in the weight part of Lie_n(dg_1)."""
    if n < 2:
        raise ValueError("non-degeneracy is stated for n >= 2")
    basis = lyndon_basis(weight, n)
    lie_dim = len(basis)
    if basis:
        beta_rank = rank(poly_matrix([evaluate_bracket(bw).poly for bw in basis], n + 1, weight - n))
    else:
        beta_rank = 0
    ker_beta = lie_dim - beta_rank

    gens = alpha_generators(weight, n)
    if gens:
        alpha_dim = rank(QMatrix([tensor_vector(g, weight, n) for g in gens], len(enumerate_compositions(weight, n))))
        inside = all(evaluate_combination(g).is_zero() for g in gens)
    else:
        alpha_dim, inside = 0, True
    exact = inside and alpha_dim == ker_beta
    return NondegeneracyReport(
        weight=weight,
        n=n,
        lie_dim=lie_dim,
        beta_rank=beta_rank,
        ker_beta_dim=ker_beta,
        alpha_image_dim=alpha_dim,
        alpha_in_ker_beta=inside,
        status="EXACT" if exact else "NOT-EXACT",
        by_theorem=n in (2, 3),
    )
