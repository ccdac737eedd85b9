"""Depth-graded words, their polynomial representation, and homogeneous
multivariate polynomials over Q.

A word ``e0^a0 e1 e0^a1 e1 ... e1 e0^ar`` of depth r is sent to the
monomial ``y0^a0 y1^a1 ... yr^ar``.  Polynomials are sparse maps from
exponent vectors to nonzero rationals; integral coefficients are kept as
``int`` (an exact rational all the same) because almost everything here is
integral and ``Fraction`` arithmetic is an order of magnitude slower.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .linalg import format_rational

Exponents = tuple[int, ...]
Composition = tuple[int, ...]


def _normalize(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class MultiPoly:
    """Homogeneous polynomial in y_0..y_{num_vars-1} over Q."""

    __slots__ = ("num_vars", "degree", "terms")

    def __init__(self, num_vars: int, degree: int, terms: Mapping[Exponents, object] | None = None):
        self.num_vars = num_vars
        self.degree = degree
        clean: dict[Exponents, object] = {}
        for exps, c in (terms or {}).items():
            c = _normalize(c)
            if c == 0:
                continue
            exps = tuple(exps)
            if len(exps) != num_vars:
                raise ValueError(f"exponent vector {exps} has wrong length for {num_vars} variables")
            if sum(exps) != degree or min(exps, default=0) < 0:
                raise ValueError(f"monomial {exps} is not of degree {degree}")
            clean[exps] = c
        self.terms = clean

    @classmethod
    def _raw(cls, num_vars: int, degree: int, terms: dict) -> "MultiPoly":
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.num_vars = num_vars
        p.degree = degree
        p.terms = terms
        return p

    @classmethod
    def zero(cls, num_vars: int, degree: int) -> "MultiPoly":
        return cls._raw(num_vars, degree, {})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "MultiPoly":
        exps = tuple(exps)
        return cls(len(exps), sum(exps), {exps: coeff})

    @classmethod
    def variable(cls, i: int, num_vars: int) -> "MultiPoly":
        e = [0] * num_vars
        e[i] = 1
        return cls.monomial(e)

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "MultiPoly":
        """sum_i coeffs[i] * y_i."""
        n = len(coeffs)
        return cls(n, 1, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    # --- basic protocol

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    def sorted_terms(self) -> list[tuple[Exponents, object]]:
        """Terms in descending lexicographic order of exponent vectors."""
        return sorted(self.terms.items(), reverse=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.num_vars == other.num_vars
        return self.num_vars == other.num_vars and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        if not self.terms:
            return hash((self.num_vars, 0))
        return hash((self.num_vars, self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({format_poly(self)})"

    def __str__(self) -> str:
        return format_poly(self)

    # --- arithmetic

    def _check_compatible(self, other: "MultiPoly"):
        if self.num_vars != other.num_vars:
            raise ValueError(f"variable counts differ: {self.num_vars} vs {other.num_vars}")
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(f"degrees differ: {self.degree} vs {other.degree}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _normalize(v)
            else:
                out.pop(e, None)
        deg = self.degree if self.terms else other.degree
        return MultiPoly._raw(self.num_vars, deg, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.num_vars, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, c) -> "MultiPoly":
        c = _normalize(c)
        if c == 0:
            return MultiPoly.zero(self.num_vars, self.degree)
        return MultiPoly._raw(self.num_vars, self.degree, {e: _normalize(c * v) for e, v in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        if self.num_vars != other.num_vars:
            raise ValueError(f"variable counts differ: {self.num_vars} vs {other.num_vars}")
        out: dict[Exponents, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        out = {e: _normalize(c) for e, c in out.items() if c}
        return MultiPoly._raw(self.num_vars, self.degree + other.degree, out)

    __rmul__ = scale

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.monomial([0] * self.num_vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def rename(self, targets: Sequence[int], num_vars: int) -> "MultiPoly":
        """Send y_j to y_{targets[j]} in a ring with ``num_vars`` variables."""
        if len(targets) != self.num_vars:
            raise ValueError("one target per variable required")
        out: dict[Exponents, object] = {}
        for e, c in self.terms.items():
            new = [0] * num_vars
            for j, a in enumerate(e):
                if a:
                    new[targets[j]] += a
            key = tuple(new)
            out[key] = out.get(key, 0) + c
        out = {e: c for e, c in out.items() if c}
        return MultiPoly._raw(num_vars, self.degree, out)

    def evaluate(self, point: Sequence):
        if len(point) != self.num_vars:
            raise ValueError("point has wrong dimension")
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, a in zip(point, e):
                if a:
                    t = t * x**a
            total += t
        return _normalize(total)

    def y0_free_part(self) -> "MultiPoly":
        return MultiPoly._raw(self.num_vars, self.degree, {e: c for e, c in self.terms.items() if e[0] == 0})


def format_poly(f: MultiPoly, var: str = "y") -> str:
    """Text form, e.g. ``1*y0^2 - 2*y0^1*y1^1 + 1*y1^2``."""
    if f.is_zero():
        return "0"
    parts = []
    for i, (e, c) in enumerate(f.sorted_terms()):
        mono = "*".join(f"{var}{j}^{a}" for j, a in enumerate(e) if a)
        mag = format_rational(abs(Fraction(c)))
        body = f"{mag}*{mono}" if mono else mag
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def monomial_basis(num_vars: int, degree: int) -> tuple[Exponents, ...]:
    """All exponent vectors of the given total degree, ascending lex order."""
    return _monomial_basis(num_vars, degree)


@lru_cache(maxsize=None)
def _monomial_basis(num_vars: int, degree: int) -> tuple[Exponents, ...]:
    if num_vars == 0:
        return ((),) if degree == 0 else ()
    out = []
    # stars and bars over bar positions gives every vector once
    for bars in combinations(range(degree + num_vars - 1), num_vars - 1):
        prev = -1
        e = []
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(degree + num_vars - 2 - prev)
        out.append(tuple(e))
    return tuple(sorted(out))


def coefficient_vector(f: MultiPoly, basis: Sequence[Exponents]) -> list:
    index = {e: i for i, e in enumerate(basis)}
    v = [0] * len(basis)
    for e, c in f.terms.items():
        try:
            v[index[e]] = c
        except KeyError:
            raise ValueError(f"monomial {e} is outside the supplied basis") from None
    return v


# --- words --------------------------------------------------------------------

@dataclass(frozen=True)
class DepthWord:
    """``e0^a0 e1 e0^a1 ... e1 e0^ar`` stored as ``(a0, ..., ar)``."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        if not self.exponents or min(self.exponents) < 0:
            raise ValueError("exponents must be a non-empty tuple of non-negative integers")

    @property
    def depth(self) -> int:
        return len(self.exponents) - 1

    @property
    def weight(self) -> int:
        return self.depth + sum(self.exponents)

    def letters(self) -> str:
        return "e1".join("e0" * a for a in self.exponents)


def polyrep(word: DepthWord | Mapping[DepthWord, object] | Iterable[tuple[object, DepthWord]]) -> MultiPoly:
    """Polynomial representation of a word or of a formal sum of words of one
    depth (a mapping word -> coefficient, or (coefficient, word) pairs)."""
    if isinstance(word, DepthWord):
        return MultiPoly.monomial(word.exponents)
    items = list(word.items()) if isinstance(word, Mapping) else [(w, c) for c, w in word]
    if not items:
        raise ValueError("empty formal sum has no depth; build MultiPoly.zero directly")
    depths = {w.depth for w, _ in items}
    if len(depths) != 1:
        raise ValueError("formal sum mixes depths")
    acc: dict[Exponents, object] = {}
    for w, c in items:
        acc[w.exponents] = acc.get(w.exponents, 0) + c
    first = items[0][0]
    return MultiPoly(first.depth + 1, sum(first.exponents), acc)


def word_of_monomial(exps: Sequence[int]) -> DepthWord:
    return DepthWord(tuple(exps))


def ad_e0_power_e1(k: int) -> dict[DepthWord, int]:
    """(ad e0)^k e1 expanded into words: sum_j (-1)^j C(k,j) e0^(k-j) e1 e0^j."""
    return {DepthWord((k - j, j)): (-1) ** j * comb(k, j) for j in range(k + 1)}


def sigma(n: int) -> MultiPoly:
    """Depth-one image of the generator sigma_n: (y1 - y0)^(n-1)."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"generator index must be odd and >= 3, got {n}")
    return _sigma(n)


@lru_cache(maxsize=None)
def _sigma(n: int) -> MultiPoly:
    d = n - 1
    return MultiPoly._raw(2, d, {(d - k, k): (-1) ** (d - k) * comb(d, k) for k in range(d + 1)})


# --- compositions -----------------------------------------------------------------

def enumerate_compositions(weight: int, depth: int) -> tuple[Composition, ...]:
    """All (n1..nr) of odd parts >= 3 summing to ``weight``, ascending lex."""
    return _compositions(weight, depth)


@lru_cache(maxsize=None)
def _compositions(weight: int, depth: int) -> tuple[Composition, ...]:
    if depth == 0:
        return ((),) if weight == 0 else ()
    if weight < 3 * depth or (weight - depth) % 2:
        return ()
    out = []
    for first in range(3, weight - 3 * (depth - 1) + 1, 2):
        for rest in _compositions(weight - first, depth - 1):
            out.append((first,) + rest)
    return tuple(out)


def is_composition(parts: Sequence[int]) -> bool:
    return all(isinstance(n, int) and n >= 3 and n % 2 == 1 for n in parts)


def composition_label(parts: Sequence[int]) -> str:
    return ".".join(str(n) for n in parts)


# --- substitution and coefficient extraction ------------------------------------------

def substitute(f: MultiPoly, forms: Sequence[MultiPoly], num_vars: int | None = None) -> MultiPoly:
    """Replace y_j by the linear form ``forms[j]`` (each of degree 1)."""
    if len(forms) != f.num_vars:
        raise ValueError(f"need {f.num_vars} linear forms, got {len(forms)}")
    if num_vars is None:
        if not forms:
            raise ValueError("cannot infer the target ring from an empty substitution")
        num_vars = forms[0].num_vars
    for g in forms:
        if g.num_vars != num_vars or (g.terms and g.degree != 1):
            raise ValueError("substitution requires linear forms in a common ring")
    powers: list[dict[int, MultiPoly]] = [{} for _ in forms]

    def power(j: int, a: int) -> MultiPoly:
        cache = powers[j]
        if a not in cache:
            cache[a] = forms[j] ** a if forms[j].terms or a == 0 else MultiPoly.zero(num_vars, a)
        return cache[a]

    acc: dict[Exponents, object] = {}
    for e, c in f.terms.items():
        term = MultiPoly.monomial([0] * num_vars, c)
        for j, a in enumerate(e):
            if a:
                term = term * power(j, a)
                if term.is_zero():
                    break
        for k, v in term.terms.items():
            acc[k] = acc.get(k, 0) + v
    acc = {k: _normalize(v) for k, v in acc.items() if v}
    return MultiPoly._raw(num_vars, f.degree, acc)


def odd_coeff_vector(f: MultiPoly, weight: int, depth: int) -> tuple:
    """Coefficients of y1^(n1-1)...yr^(nr-1) for n in S_{N,r} (lex order)."""
    if f.num_vars != depth + 1:
        raise ValueError(f"expected a polynomial in {depth + 1} variables, got {f.num_vars}")
    if f.terms and f.degree != weight - depth:
        raise ValueError(f"expected degree {weight - depth}, got {f.degree}")
    return tuple(
        f.terms.get((0,) + tuple(n - 1 for n in comp), 0)
        for comp in enumerate_compositions(weight, depth)
    )


def is_totally_even(exps: Exponents) -> bool:
    """y0-free monomial y1^(2m1)...yr^(2mr) with every m_i >= 1."""
    return exps[0] == 0 and all(a >= 2 and a % 2 == 0 for a in exps[1:])


def is_quasi_uneven(f: MultiPoly) -> bool:
    return not any(is_totally_even(e) for e in f.terms)
