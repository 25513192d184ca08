"""Bundled cohomology models and constructions on presentations."""

from __future__ import annotations

from typing import Sequence

from .presentation import (
    Generator,
    HomogeneityError,
    Poly,
    Presentation,
    parse_presentation,
)

MODEL_TEXTS = {
    "BPU4": """\
# H*(BPU(4); Z/2), model version 1
gen x2 2
gen x3 3
gen x5 5
gen x8 8
gen x9 9
gen x12 12
rel x2*x3
rel x2*x5
rel x2*x9
rel x9^2 + x3^2*x12 + x5^2*x8
# x3 is the reduction of an integral class, so its Bockstein vanishes
sq 1 x3 = 0
sq 2 x3 = x5
# forced by Sq1 Sq2 = Sq3 on x3
sq 1 x5 = x3^2
""",
    "BS1": """\
# H*(BS^1; Z/2), model version 1
gen t 2
""",
    "P1": """\
# F2[x1], deg x1 = 1, model version 1
gen x1 1
""",
    "P1x4": """\
# F2[x1, x2, x3, x4], all of degree 1, model version 1
gen x1 1
gen x2 1
gen x3 1
gen x4 1
""",
}

MODEL_NAMES = tuple(MODEL_TEXTS)


def bundled_model(name: str) -> Presentation:
    try:
        text = MODEL_TEXTS[name]
    except KeyError:
        raise KeyError(f"unknown model {name!r}; choose from {', '.join(MODEL_NAMES)}") from None
    return parse_presentation(text)


def _fresh_name(name: str, taken: set[str]) -> str:
    k = 1
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def kunneth_product(a: Presentation, b: Presentation) -> Presentation:
    """Tensor product of two presentations.

    Generators of ``b`` that clash with a name in ``a`` get a ``_<k>``
    suffix; each rename is recorded in the result's ``warnings``.
    """
    taken = set(a.names) | set(b.names)
    notes = []
    b_gens = []
    for g in b.generators:
        name = g.name
        if name in a.names:
            name = _fresh_name(g.name, taken)
            taken.add(name)
            notes.append(f"renamed {g.name} -> {name} in the second factor")
        b_gens.append(Generator(name, g.degree))
    na, nb = a.ngens, b.ngens

    def left(p: Poly) -> Poly:
        return Poly(m + (0,) * nb for m in p)

    def right(p: Poly) -> Poly:
        return Poly((0,) * na + m for m in p)

    table = {key: left(img) for key, img in a.sq_table.items()}
    for (name, i), img in b.sq_table.items():
        table[(b_gens[b.index(name)].name, i)] = right(img)
    return Presentation(
        tuple(a.generators) + tuple(b_gens),
        tuple(left(r) for r in a.relations) + tuple(right(r) for r in b.relations),
        table,
        tuple(notes),
    )


def quotient_by_ideal(a: Presentation, ideal_gens: Sequence[Poly]) -> Presentation:
    """Add ``ideal_gens`` to the relations of ``a``."""
    if not ideal_gens:
        return a
    for p in ideal_gens:
        try:
            a.poly_degree(p)
        except HomogeneityError as exc:
            raise HomogeneityError(f"ideal generator is not homogeneous: {exc}") from None
    return Presentation(a.generators, tuple(a.relations) + tuple(ideal_gens), dict(a.sq_table), a.warnings)


def convolve(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Poincare series of a tensor product, truncated to the shorter input."""
    n = min(len(f), len(g))
    return [sum(f[k] * g[d - k] for k in range(d + 1)) for d in range(n)]
