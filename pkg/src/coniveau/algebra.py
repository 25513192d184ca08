"""Quotients of graded polynomial algebras over F2, one degree at a time.

Normal forms come from plain linear algebra: in degree ``d`` the ideal is
spanned by all products ``m * r`` of a monomial and a relation landing in
degree ``d``.  Row-reducing that span with columns in the fixed monomial
order makes the pivot monomials redundant; the remaining monomials form the
basis of the quotient in that degree.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .f2core import F2Matrix, reduce_vector, row_reduce
from .presentation import Monomial, Poly, Presentation, monomial_product

DEFAULT_MAX_DEGREE = 20


class BoundError(ValueError):
    """A computation would exceed the algebra's degree bound."""


@lru_cache(maxsize=None)
def _monomials(degrees: tuple[int, ...], d: int) -> tuple[Monomial, ...]:
    n = len(degrees)
    out: list[Monomial] = []

    def rec(k: int, left: int, acc: list[int]):
        if k == n:
            if left == 0:
                out.append(tuple(acc))
            return
        for e in range(left // degrees[k], -1, -1):
            acc.append(e)
            rec(k + 1, left - e * degrees[k], acc)
            acc.pop()

    rec(0, d, [])
    # the recursion already walks exponents from largest to smallest
    # in declaration order, which is the fixed order within a degree
    return tuple(out)


def monomials_of_degree(pres: Presentation, d: int, max_degree: int | None = None) -> list[Monomial]:
    """All monomials of degree ``d``, in the fixed monomial order."""
    if d < 0:
        return []
    if max_degree is not None and d > max_degree:
        raise BoundError(f"degree {d} exceeds the bound {max_degree}")
    return list(_monomials(pres.degrees, d))


@dataclass(frozen=True)
class DegreeBasis:
    degree: int
    all_monomials: tuple[Monomial, ...]
    relation_span: F2Matrix
    pivots: tuple[int, ...]
    basis_monomials: tuple[Monomial, ...]

    @property
    def dim(self) -> int:
        return len(self.basis_monomials)

    def __post_init__(self):
        object.__setattr__(self, "_index", {m: j for j, m in enumerate(self.all_monomials)})

    def encode(self, p) -> int:
        word = 0
        for m in p:
            word ^= 1 << self._index[m]
        return word

    def decode(self, word: int) -> Poly:
        mons = self.all_monomials
        if bin(word).count("1") * 8 > len(mons):
            return Poly(m for j, m in enumerate(mons) if (word >> j) & 1)
        out = []
        while word:
            low = word & -word
            out.append(mons[low.bit_length() - 1])
            word ^= low
        return Poly(out)


class GradedAlgebra:
    """``F2[generators] / (relations)``, computed through ``max_degree``."""

    def __init__(self, pres: Presentation, max_degree: int = DEFAULT_MAX_DEGREE):
        if max_degree < 0:
            raise BoundError("max_degree must be non-negative")
        self.pres = pres
        self.max_degree = max_degree
        self._bases: dict[int, DegreeBasis] = {}
        self._lock = threading.RLock()
        self._relations = [(r, pres.poly_degree(r)) for r in pres.relations if r]

    def __repr__(self):
        return f"GradedAlgebra({', '.join(self.pres.names)}; {len(self.pres.relations)} relations; D={self.max_degree})"

    def _check_bound(self, d: int) -> None:
        if d > self.max_degree:
            raise BoundError(f"degree {d} exceeds the bound {self.max_degree}")

    def monomials(self, d: int) -> list[Monomial]:
        return monomials_of_degree(self.pres, d, self.max_degree)

    def degree_basis(self, d: int) -> DegreeBasis:
        self._check_bound(d)
        basis = self._bases.get(d)
        if basis is not None:
            return basis
        with self._lock:
            basis = self._bases.get(d)
            if basis is None:
                basis = self._build_basis(d)
                self._bases[d] = basis
        return basis

    def _build_basis(self, d: int) -> DegreeBasis:
        mons = tuple(self.monomials(d)) if d >= 0 else ()
        index = {m: j for j, m in enumerate(mons)}
        rows = []
        for r, e in self._relations:
            if e > d:
                continue
            for m in _monomials(self.pres.degrees, d - e):
                word = 0
                for t in r:
                    word ^= 1 << index[monomial_product(m, t)]
                rows.append(word)
        red = row_reduce(F2Matrix(tuple(rows), len(mons)))
        pivot_set = set(red.pivots)
        basis = tuple(m for j, m in enumerate(mons) if j not in pivot_set)
        return DegreeBasis(d, mons, red.rref, tuple(red.pivots), basis)

    def relation_span(self, d: int) -> F2Matrix:
        return self.degree_basis(d).relation_span

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        return self.degree_basis(d).dim

    def degree(self, p: Poly) -> int | None:
        return self.pres.poly_degree(p)

    def normal_form(self, p: Poly) -> Poly:
        if not p:
            return Poly()
        d = self.pres.poly_degree(p)
        basis = self.degree_basis(d)
        word = reduce_vector(basis.relation_span, basis.pivots, basis.encode(p))
        return basis.decode(word)

    def is_zero(self, p: Poly) -> bool:
        return not self.normal_form(p)

    def equal(self, p: Poly, q: Poly) -> bool:
        return not self.normal_form(p + q)

    def multiply(self, p: Poly, q: Poly) -> Poly:
        if not p or not q:
            return Poly()
        dp, dq = self.pres.poly_degree(p), self.pres.poly_degree(q)
        self._check_bound(dp + dq)
        return self.normal_form(Poly.from_terms(monomial_product(a, b) for a in p for b in q))

    def power(self, p: Poly, n: int) -> Poly:
        result = self.pres.one()
        for _ in range(n):
            result = self.multiply(result, p)
        return result

    def poincare_series(self, through: int) -> list[int]:
        self._check_bound(through)
        return [self.dim(d) for d in range(through + 1)]

    def basis_polys(self, d: int) -> list[Poly]:
        return [Poly([m]) for m in self.degree_basis(d).basis_monomials]

    def format(self, p: Poly) -> str:
        return self.pres.format(p)

    def parse(self, text: str) -> Poly:
        return self.pres.poly(text)
