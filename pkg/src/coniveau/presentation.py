"""Graded F2-algebra presentations and their text format.

A presentation file is line oriented::

    # comment
    gen x3 3
    rel x2*x3
    sq 2 x3 = x5

Polynomials use ``+`` between terms, ``*`` between factors and ``^`` for
powers; ``0`` and ``1`` are reserved literals.  Coefficients live in F2, so
a polynomial is just a set of monomials and a monomial is an exponent
vector over the generators in declaration order.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Mapping, NamedTuple

Monomial = tuple[int, ...]

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[+*^]))")


class PresentationError(ValueError):
    """Base class for invalid presentations and polynomials."""


class ParseError(PresentationError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class UnknownGeneratorError(ParseError):
    pass


class HomogeneityError(PresentationError):
    pass


class UnstableConditionError(PresentationError):
    pass


class Poly(frozenset):
    """An F2 polynomial: a frozen set of exponent vectors.

    ``+`` is symmetric difference.  Multiplication needs the ambient
    algebra and lives there.
    """

    __slots__ = ()

    def __add__(self, other):
        return Poly(frozenset.__xor__(self, other))

    __radd__ = __add__
    __sub__ = __add__

    def __repr__(self):
        return f"Poly({sorted(self)!r})"

    @classmethod
    def zero(cls) -> Poly:
        return cls()

    @classmethod
    def one(cls, ngens: int) -> Poly:
        return cls([(0,) * ngens])

    @classmethod
    def from_terms(cls, terms: Iterable[Monomial]) -> Poly:
        """Build a polynomial, cancelling repeated terms in pairs."""
        acc: set[Monomial] = set()
        for t in terms:
            if t in acc:
                acc.remove(t)
            else:
                acc.add(t)
        return cls(acc)


class Generator(NamedTuple):
    name: str
    degree: int


def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[Generator, ...]
    relations: tuple[Poly, ...] = ()
    sq_table: Mapping[tuple[str, int], Poly] = field(default_factory=dict)
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise PresentationError(f"generator {dup!r} declared twice")
        for g in self.generators:
            if not IDENT.fullmatch(g.name) or g.name in ("0", "1"):
                raise PresentationError(f"invalid generator name {g.name!r}")
            if g.degree < 1:
                raise PresentationError(f"generator {g.name} has degree {g.degree} < 1")
        for r in self.relations:
            self.poly_degree(r)
        for (name, i), img in self.sq_table.items():
            _check_sq_entry(self, name, i, img)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def index(self, name: str) -> int:
        for k, g in enumerate(self.generators):
            if g.name == name:
                return k
        raise UnknownGeneratorError(f"unknown generator {name!r}")

    def monomial_degree(self, m: Monomial) -> int:
        return sum(map(operator.mul, m, self.degrees))

    def poly_degree(self, p: Poly) -> int | None:
        """Degree of a homogeneous polynomial; ``None`` for zero."""
        degs = {self.monomial_degree(m) for m in p}
        if len(degs) > 1:
            raise HomogeneityError(f"{format_poly(p, self)} mixes degrees {sorted(degs)}")
        return degs.pop() if degs else None

    def gen(self, name: str) -> Poly:
        k = self.index(name)
        return Poly([tuple(int(j == k) for j in range(self.ngens))])

    def one(self) -> Poly:
        return Poly.one(self.ngens)

    def poly(self, text: str) -> Poly:
        return parse_poly(text, self)

    def format(self, p: Poly) -> str:
        return format_poly(p, self)


def _check_sq_entry(pres: Presentation, name: str, i: int, img: Poly) -> None:
    k = pres.index(name)
    deg = pres.generators[k].degree
    if i < 1:
        raise PresentationError(f"sq {i} {name}: superscript must be positive")
    d = pres.poly_degree(img)
    if d is not None and d != deg + i:
        raise HomogeneityError(f"sq {i} {name}: image has degree {d}, expected {deg + i}")
    if i > deg and img:
        raise UnstableConditionError(f"sq {i} {name}: must be 0 since {i} > deg {name} = {deg}")
    if i == deg:
        square = tuple(2 if j == k else 0 for j in range(pres.ngens))
        if img != Poly([square]):
            raise UnstableConditionError(f"sq {i} {name}: must equal {name}^2 since {i} = deg {name}")


def monomial_key(m: Monomial, degrees: tuple[int, ...]):
    """Sort key of the fixed monomial order.

    Graded by cohomological degree; within a degree, lexicographic in
    generator declaration order with the larger exponent first.
    """
    return (sum(e * d for e, d in zip(m, degrees)), tuple(-e for e in m))


def sorted_monomials(ms: Iterable[Monomial], pres: Presentation) -> list[Monomial]:
    degs = pres.degrees
    return sorted(ms, key=lambda m: monomial_key(m, degs))


def format_monomial(m: Monomial, pres: Presentation) -> str:
    factors = []
    for e, g in zip(m, pres.generators):
        if e == 1:
            factors.append(g.name)
        elif e > 1:
            factors.append(f"{g.name}^{e}")
    return "*".join(factors) if factors else "1"


def format_poly(p: Poly, pres: Presentation) -> str:
    if not p:
        return "0"
    return " + ".join(format_monomial(m, pres) for m in sorted_monomials(p, pres))


# ---------- parsing ----------

def _tokenize(text: str, line: int | None, col0: int):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + col0
            raise ParseError(f"unexpected character {text[col - col0]!r}", line, col)
        kind = mt.lastgroup
        start = mt.start(kind) + col0
        tokens.append((kind, mt.group(kind), start))
        pos = mt.end()
    return tokens


def parse_poly(text: str, pres: Presentation, *, line: int | None = None, col0: int = 1) -> Poly:
    """Parse ``text`` against the generators of ``pres``."""
    tokens = _tokenize(text, line, col0)
    end_col = col0 + len(text.rstrip())
    if not tokens:
        raise ParseError("empty polynomial", line, end_col)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def expect(kind, value=None):
        nonlocal pos
        tok = peek()
        if tok is None:
            raise ParseError(f"expected {value or kind} at end of input", line, end_col)
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or kind}, found {tok[1]!r}", line, tok[2])
        pos += 1
        return tok

    def factor() -> Monomial | None:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise ParseError("expected a term at end of input", line, end_col)
        if tok[0] == "int":
            if tok[1] == "1":
                pos += 1
                return (0,) * pres.ngens
            if tok[1] == "0":
                pos += 1
                return None
            raise ParseError(f"coefficient {tok[1]} is not allowed; use 0 or 1", line, tok[2])
        kind, name, col = expect("ident")
        try:
            k = pres.index(name)
        except UnknownGeneratorError:
            raise UnknownGeneratorError(f"unknown generator {name!r}", line, col) from None
        e = 1
        nxt = peek()
        if nxt is not None and nxt[1] == "^":
            pos += 1
            _, digits, dcol = expect("int")
            e = int(digits)
            if e < 1:
                raise ParseError("exponent must be positive", line, dcol)
        return tuple(e if j == k else 0 for j in range(pres.ngens))

    def term() -> Monomial | None:
        nonlocal pos
        m = factor()
        while (tok := peek()) is not None and tok[1] == "*":
            pos += 1
            f = factor()
            m = None if m is None or f is None else monomial_product(m, f)
        return m

    terms = []
    m = term()
    if m is not None:
        terms.append(m)
    while (tok := peek()) is not None:
        if tok[1] != "+":
            raise ParseError(f"expected '+', found {tok[1]!r}", line, tok[2])
        pos += 1
        m = term()
        if m is not None:
            terms.append(m)
    return Poly.from_terms(terms)


def parse_presentation(text: str) -> Presentation:
    gens: list[Generator] = []
    raw_rels: list[tuple[int, int, str]] = []
    raw_sq: list[tuple[int, int, str, int, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        keyword = stripped.split(None, 1)[0]
        rest_col = col + len(keyword)
        rest = line[rest_col - 1:]
        if keyword == "gen":
            parts = rest.split()
            if len(parts) != 2:
                raise ParseError("expected 'gen <name> <degree>'", lineno, col)
            name, deg = parts
            if not IDENT.fullmatch(name):
                raise ParseError(f"invalid generator name {name!r}", lineno, line.index(name, rest_col - 1) + 1)
            if not deg.isdigit() or int(deg) < 1:
                raise ParseError(f"degree must be a positive integer, got {deg!r}", lineno,
                                 line.index(deg, rest_col - 1 + len(name)) + 1)
            if any(g.name == name for g in gens):
                raise ParseError(f"generator {name!r} declared twice", lineno, col)
            gens.append(Generator(name, int(deg)))
        elif keyword == "rel":
            raw_rels.append((lineno, rest_col, rest))
        elif keyword == "sq":
            mt = re.match(r"\s*(\d+)\s+([A-Za-z][A-Za-z0-9_]*)\s*=", rest)
            if not mt:
                raise ParseError("expected 'sq <i> <name> = <poly>'", lineno, col)
            i = int(mt.group(1))
            if i < 1:
                raise ParseError("superscript must be positive", lineno, rest_col + mt.start(1))
            raw_sq.append((lineno, rest_col + mt.start(2), mt.group(2), i, rest[mt.end():], rest_col + mt.end()))
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno, col)

    base = Presentation(tuple(gens))
    warnings: list[str] = []
    relations: list[Poly] = []
    for lineno, c, body in raw_rels:
        p = parse_poly(body, base, line=lineno, col0=c)
        try:
            base.poly_degree(p)
        except HomogeneityError as exc:
            raise HomogeneityError(f"line {lineno}: relation is not homogeneous: {exc}") from None
        if not p:
            warnings.append(f"line {lineno}: relation is the zero polynomial")
        relations.append(p)
    table: dict[tuple[str, int], Poly] = {}
    for lineno, name_col, name, i, body, body_col in raw_sq:
        try:
            base.index(name)
        except UnknownGeneratorError:
            raise UnknownGeneratorError(f"unknown generator {name!r}", lineno, name_col) from None
        if (name, i) in table:
            raise ParseError(f"duplicate entry sq {i} {name}", lineno, name_col)
        img = parse_poly(body, base, line=lineno, col0=body_col)
        try:
            _check_sq_entry(base, name, i, img)
        except PresentationError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
        table[(name, i)] = img
    return Presentation(tuple(gens), tuple(relations), table, tuple(warnings))


def presentation_to_text(pres: Presentation) -> str:
    lines = [f"gen {g.name} {g.degree}" for g in pres.generators]
    lines += [f"rel {format_poly(r, pres)}" for r in pres.relations]
    order = {n: k for k, n in enumerate(pres.names)}
    for (name, i) in sorted(pres.sq_table, key=lambda key: (order[key[0]], key[1])):
        lines.append(f"sq {i} {name} = {format_poly(pres.sq_table[(name, i)], pres)}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class IntegralCertificate:
    """Declared integral data: ``H^degree(X; Z)`` is cyclic of the given
    order and a generator reduces mod 2 to ``reduction_of_generator``."""

    degree: int
    group_order: int | Literal["infinite"]
    reduction_of_generator: Poly

    @property
    def is_torsion(self) -> bool:
        return self.group_order != "infinite"

    def __post_init__(self):
        if self.degree < 1:
            raise PresentationError("certificate degree must be positive")
        if self.group_order != "infinite" and (not isinstance(self.group_order, int) or self.group_order < 1):
            raise PresentationError(f"group order must be a positive integer or 'infinite', got {self.group_order!r}")
