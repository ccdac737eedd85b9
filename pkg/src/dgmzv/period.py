"""Restricted even period polynomials.

A weight-N element is ``p(x1, x2) = sum_{s+t=N} p_{s,t} x1^(s-1) x2^(t-1)``
subject to

  (i)   p(x1, 0) = 0
  (ii)  p(±x1, ±x2) = p(x1, x2)
  (iii) p(x1, x2) + p(x1 - x2, x1) - p(x1 - x2, x2) = 0.

The space is computed as an exact nullspace; the period relation is expanded
over every monomial of degree N-2 because the substitution produces
mixed-parity terms that only cancel as a whole.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .linalg import QMatrix, nullspace, vstack
from .poly import MultiPoly, coefficient_vector, enumerate_compositions, monomial_basis, substitute

_X1 = MultiPoly.variable(0, 2)
_X2 = MultiPoly.variable(1, 2)


def _relation(p: MultiPoly) -> MultiPoly:
    """Left-hand side of the period relation (iii)."""
    diff = _X1 - _X2
    return p + substitute(p, [diff, _X1]) - substitute(p, [diff, _X2])


def _raw_poly(weight: int, coeffs: Mapping[tuple[int, int], object]) -> MultiPoly:
    return MultiPoly(2, weight - 2, {(s - 1, t - 1): c for (s, t), c in coeffs.items()})


@dataclass(frozen=True)
class PeriodPolynomial:
    """Element of the weight-N restricted even period polynomial space.

    ``coefficients`` maps (s, t), s + t = N, to the coefficient of
    x1^(s-1) x2^(t-1); only nonzero entries are kept.  Construction rejects
    anything violating (i)-(iii).
    """

    weight: int
    coefficients: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (s, t), c in dict(self.coefficients).items():
            c = Fraction(c)
            if c == 0:
                continue
            if s < 1 or t < 1 or s + t != self.weight:
                raise ValueError(f"index ({s}, {t}) does not belong to weight {self.weight}")
            clean[(s, t)] = c
        object.__setattr__(self, "coefficients", dict(sorted(clean.items())))
        for (s, t) in clean:
            if t == 1:
                raise ValueError("not restricted: p(x1, 0) != 0")
            if s % 2 == 0 or t % 2 == 0:
                raise ValueError(f"not even: nonzero coefficient at ({s}, {t})")
        if clean and not _relation(self.as_poly()).is_zero():
            raise ValueError("period relation p(x1,x2) + p(x1-x2,x1) - p(x1-x2,x2) = 0 fails")

    def coefficient(self, s: int, t: int) -> Fraction:
        return self.coefficients.get((s, t), Fraction(0))

    def as_poly(self) -> MultiPoly:
        if self.weight < 2:
            return MultiPoly.zero(2, 0)
        return _raw_poly(self.weight, self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __hash__(self):
        return hash((self.weight, tuple(self.coefficients.items())))


@dataclass(frozen=True)
class PeriodBasis:
    weight: int
    elements: tuple[PeriodPolynomial, ...]

    @property
    def dim(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


def period_space(weight: int) -> PeriodBasis:
    if weight < 1:
        raise ValueError("weight must be positive")
    return _period_space(weight)


@lru_cache(maxsize=None)
def _period_space(weight: int) -> PeriodBasis:
    # unknowns p_{s, N-s}, ascending s
    unknowns = [(s, weight - s) for s in range(1, weight - 1 + 1)]
    n = len(unknowns)
    if n == 0:
        return PeriodBasis(weight, ())
    rows = []
    for k, (s, t) in enumerate(unknowns):
        # conditions (i) and (ii) force these coefficients to vanish
        if t == 1 or s % 2 == 0 or t % 2 == 0:
            rows.append([int(j == k) for j in range(n)])
    degree = weight - 2
    basis = monomial_basis(2, degree)
    columns = []
    for s, t in unknowns:
        columns.append(coefficient_vector(_relation(MultiPoly.monomial((s - 1, t - 1))), basis))
    relation = QMatrix(zip(*columns), n)
    system = vstack(QMatrix(rows, n), relation)
    kernel = nullspace(system)
    elements = tuple(
        PeriodPolynomial(weight, {unknowns[j]: c for j, c in enumerate(vec) if c})
        for vec in kernel.vectors()
    )
    return PeriodBasis(weight, elements)


def period_bases_upto(max_weight: int) -> dict[int, PeriodBasis]:
    return {w: period_space(w) for w in range(1, max_weight + 1)}


def coefficient_vanishing_check(p: PeriodPolynomial | Mapping[tuple[int, int], object]) -> bool:
    """True when every coefficient p_{s,t} with s or t even vanishes.

    Accepts a raw coefficient mapping so unvalidated data can be screened.
    """
    coeffs = p.coefficients if isinstance(p, PeriodPolynomial) else p
    return all(c == 0 for (s, t), c in coeffs.items() if s % 2 == 0 or t % 2 == 0)


def pair_v(n1: int, n2: int, p: PeriodPolynomial) -> Fraction:
    """Value at p of the functional attached to zeta(n1) ⊗ zeta(n2): p_{n1,n2}."""
    if n1 + n2 != p.weight:
        raise ValueError(f"weights disagree: {n1} + {n2} != {p.weight}")
    return p.coefficient(n1, n2)


def embed_period(p: PeriodPolynomial) -> tuple[Fraction, ...]:
    """Coordinates of sum p_{r,s} sigma_r ⊗ sigma_s over S_{N,2}."""
    return tuple(p.coefficient(s, t) for s, t in enumerate_compositions(p.weight, 2))
