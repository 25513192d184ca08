"""Steenrod squares and Milnor operations on presented algebras.

Squares of generators come from the presentation's table, completed by the
unstable conditions (``Sq^i g = g^2`` when ``i = deg g``, zero above).
Squares of products follow from the Cartan formula.  Table entries that are
absent are only an error when an evaluation actually reaches them.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, NamedTuple

from .algebra import BoundError, GradedAlgebra
from .presentation import Monomial, Poly, monomial_product

SqWord = tuple[int, ...]
AdmissibleSum = frozenset  # of admissible SqWords


class UnknownSteenrodValue(LookupError):
    """An evaluation needs ``Sq^i`` of a generator that the table leaves open."""

    def __init__(self, generator: str, i: int):
        self.generator = generator
        self.i = i
        super().__init__(f"unknown Steenrod value Sq^{i}({generator})")


def binom_mod2(n: int, k: int) -> int:
    """``binom(n, k) mod 2`` by Lucas' theorem."""
    if k < 0 or n < 0 or k > n:
        return 0
    return int(k & ~n == 0)


def milnor_degree(i: int) -> int:
    return 2 ** (i + 1) - 1


# ---------- Adem relations ----------

def is_admissible(w: SqWord) -> bool:
    return all(a >= 2 * b for a, b in zip(w, w[1:]))


def adem_relation(a: int, b: int) -> frozenset[SqWord]:
    """Admissible expansion of ``Sq^a Sq^b`` for ``0 < a < 2b``."""
    terms: set[SqWord] = set()
    for c in range(a // 2 + 1):
        if binom_mod2(b - c - 1, a - 2 * c):
            terms ^= {(a + b - c, c) if c else (a + b - c,)}
    return frozenset(terms)


@lru_cache(maxsize=None)
def _normalize(w: SqWord) -> frozenset[SqWord]:
    for j in range(len(w) - 1):
        a, b = w[j], w[j + 1]
        if a < 2 * b:
            acc: set[SqWord] = set()
            for middle in adem_relation(a, b):
                acc ^= _normalize(w[:j] + middle + w[j + 2:])
            return frozenset(acc)
    return frozenset([w])


def adem_normalize(w: Iterable[int]) -> AdmissibleSum:
    """Rewrite a composite of squares as a sum of admissible composites.

    The leftmost inadmissible adjacent pair is rewritten first; ``Sq^0``
    factors are dropped.
    """
    w = tuple(w)
    if any(s < 0 for s in w):
        raise ValueError(f"negative superscript in {w}")
    return _normalize(tuple(s for s in w if s))


def parse_word(text: str) -> SqWord:
    tokens = text.split()
    word = []
    for tok in tokens:
        mt = re.fullmatch(r"Sq\^?(\d+)", tok)
        if not mt:
            raise ValueError(f"bad Steenrod word token {tok!r}; expected Sq<k>")
        k = int(mt.group(1))
        if k:
            word.append(k)
    return tuple(word)


def format_word(w: SqWord) -> str:
    return " ".join(f"Sq{k}" for k in w) if w else "1"


def format_sum(words: Iterable[SqWord]) -> str:
    words = sorted(words, key=lambda w: (-sum(w), tuple(-k for k in w)))
    return " + ".join(format_word(w) for w in words) if words else "0"


# ---------- action on an algebra ----------

class SteenrodAction:
    """Steenrod and Milnor operations on one ``GradedAlgebra``."""

    def __init__(self, alg: GradedAlgebra):
        self.alg = alg
        pres = alg.pres
        self._gen_units = [tuple(int(j == k) for j in range(pres.ngens)) for k in range(pres.ngens)]
        self._table = {(pres.index(name), i): img for (name, i), img in pres.sq_table.items()}
        self._mono_cache: dict[tuple[int, Monomial], Poly] = {}
        self._milnor_cache: dict[tuple[int, Poly], Poly] = {}

    def _free_product(self, p: Poly, q: Poly) -> Poly:
        return Poly.from_terms(monomial_product(a, b) for a in p for b in q)

    def sq_generator(self, k: int, i: int) -> Poly:
        """``Sq^i`` of generator ``k`` in the free polynomial ring."""
        g = self.alg.pres.generators[k]
        if i == 0:
            return Poly([self._gen_units[k]])
        if i > g.degree:
            return Poly()
        if i == g.degree:
            return Poly([tuple(2 * e for e in self._gen_units[k])])
        try:
            return self._table[(k, i)]
        except KeyError:
            raise UnknownSteenrodValue(g.name, i) from None

    def _sq_monomial(self, i: int, m: Monomial) -> Poly:
        key = (i, m)
        cached = self._mono_cache.get(key)
        if cached is not None:
            return cached
        if i == 0:
            result = Poly([m])
        elif not any(m):
            result = Poly()
        elif any(e > 1 for e in m):
            # m = s^2 r with r squarefree; Sq(s^2) = Sq(s)^2 in characteristic 2,
            # so unknown values that cancel in pairs are never looked up
            pres = self.alg.pres
            s = tuple(e // 2 for e in m)
            r = tuple(e % 2 for e in m)
            s_deg, r_deg = pres.monomial_degree(s), pres.monomial_degree(r)
            result = Poly()
            for a in range(max(0, (i - r_deg + 1) // 2), min(i // 2, s_deg) + 1):
                right = self._sq_monomial(i - 2 * a, r)
                if not right:
                    continue
                half = self._sq_monomial(a, s)
                if half:
                    square = Poly(tuple(2 * e for e in t) for t in half)
                    result = result + self._free_product(square, right)
        else:
            pres = self.alg.pres
            k = next(j for j, e in enumerate(m) if e)
            rest = tuple(e - (j == k) for j, e in enumerate(m))
            rest_deg = pres.monomial_degree(rest)
            gdeg = pres.generators[k].degree
            result = Poly()
            for j in range(max(0, i - gdeg), min(i, rest_deg) + 1):
                right = self._sq_monomial(j, rest)
                if not right:
                    continue
                left = self.sq_generator(k, i - j)
                if left:
                    result = result + self._free_product(left, right)
        self._mono_cache[key] = result
        return result

    def sq(self, i: int, p: Poly) -> Poly:
        if i < 0:
            raise ValueError("Steenrod superscripts are non-negative")
        q = self.alg.normal_form(p)
        if not q:
            return q
        if i == 0:
            return q
        d = self.alg.degree(q)
        if d + i > self.alg.max_degree:
            raise BoundError(f"Sq^{i} of a degree-{d} class exceeds the bound {self.alg.max_degree}")
        total: set[Monomial] = set()
        for m in q:
            total.symmetric_difference_update(self._sq_monomial(i, m))
        return self.alg.normal_form(Poly(total))

    def sq_word(self, w: Iterable[int], p: Poly) -> Poly:
        w = tuple(w)
        result = self.alg.normal_form(p)
        for i in reversed(w):
            result = self.sq(i, result)
        return result

    def act(self, words: Iterable[SqWord], p: Poly) -> Poly:
        total = Poly()
        for w in words:
            total = total + self.sq_word(w, p)
        return self.alg.normal_form(total)

    def milnor(self, i: int, p: Poly) -> Poly:
        if i < 0:
            raise ValueError("Milnor index must be non-negative")
        q = self.alg.normal_form(p)
        if not q:
            return q
        d = self.alg.degree(q)
        if d + milnor_degree(i) > self.alg.max_degree:
            raise BoundError(f"Q_{i} of a degree-{d} class exceeds the bound {self.alg.max_degree}")
        key = (i, q)
        if key in self._milnor_cache:
            return self._milnor_cache[key]
        if i == 0:
            result = self.sq(1, q)
        else:
            s = 2 ** i
            # Q_i = Sq^{2^i} Q_{i-1} + Q_{i-1} Sq^{2^i}
            result = self.sq(s, self.milnor(i - 1, q)) + self.milnor(i - 1, self.sq(s, q))
        self._milnor_cache[key] = result
        return result


def action(alg: GradedAlgebra) -> SteenrodAction:
    """The (cached) Steenrod action attached to ``alg``."""
    act = alg.__dict__.get("_steenrod_action")
    if act is None:
        act = alg.__dict__.setdefault("_steenrod_action", SteenrodAction(alg))
    return act


def apply_sq(alg: GradedAlgebra, i: int, p: Poly) -> Poly:
    return action(alg).sq(i, p)


def apply_sq_word(alg: GradedAlgebra, w: Iterable[int], p: Poly) -> Poly:
    """Apply ``Sq^{i_1} ... Sq^{i_k}`` to ``p``, rightmost square first."""
    return action(alg).sq_word(w, p)


def apply_sq_sum(alg: GradedAlgebra, words: Iterable[SqWord], p: Poly) -> Poly:
    return action(alg).act(words, p)


def milnor_q(alg: GradedAlgebra, i: int, p: Poly) -> Poly:
    """``Q_i(p)`` via ``Q_0 = Sq^1`` and ``Q_i = Sq^{2^i} Q_{i-1} + Q_{i-1} Sq^{2^i}``."""
    return action(alg).milnor(i, p)


# ---------- table consistency ----------

class Violation(NamedTuple):
    generator: str
    word: SqWord
    direct: Poly
    admissible: Poly


class Skipped(NamedTuple):
    generator: str
    word: SqWord
    reason: str


class TableCheck(NamedTuple):
    violations: list[Violation]
    skipped: list[Skipped]

    @property
    def consistent(self) -> bool:
        return not self.violations


def check_table_consistency(alg: GradedAlgebra, through: int) -> TableCheck:
    """Compare ``Sq^a Sq^b g`` with its Adem expansion on every generator.

    Covers every inadmissible pair ``a < 2b`` with ``deg g + a + b <= through``.
    Pairs whose evaluation needs an unknown table value are skipped.
    """
    if through > alg.max_degree:
        raise BoundError(f"degree {through} exceeds the bound {alg.max_degree}")
    act = action(alg)
    violations: list[Violation] = []
    skipped: list[Skipped] = []
    for g in alg.pres.generators:
        x = alg.pres.gen(g.name)
        room = through - g.degree
        for total in range(2, room + 1):
            for b in range(1, total):
                a = total - b
                if a >= 2 * b:
                    continue
                try:
                    direct = act.sq_word((a, b), x)
                    admissible = act.act(adem_normalize((a, b)), x)
                except UnknownSteenrodValue as exc:
                    skipped.append(Skipped(g.name, (a, b), str(exc)))
                    continue
                if direct != admissible:
                    violations.append(Violation(g.name, (a, b), direct, admissible))
    return TableCheck(violations, skipped)
