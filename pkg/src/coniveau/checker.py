"""Coniveau certificates and the end-to-end replay for BPU(4) x BS^1.

Two one-directional criteria are checked:

* a nonzero mod 2 reduction of a generator of a finite cyclic integral
  cohomology group has coniveau >= 1;
* a degree-3 class ``x`` spanning ``H^3`` has strong coniveau < 1 when
  ``Q_2 x`` survives in ``H/I`` and ``(H/I)^7 = 0``.

Both only ever conclude "established" or "inconclusive".  The commutation of
``Q_i`` with Gysin pushforwards is differential topology and enters the
evidence as a trusted rule.  The strong-coniveau verdict is labelled
``strong_coniveau_lt_1`` even though the criterion is sometimes stated as
plain "coniveau < 1"; the argument only ever rules out Gysin images.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Literal, NamedTuple, Sequence

from .algebra import DEFAULT_MAX_DEGREE, BoundError, GradedAlgebra
from .presentation import Generator, IntegralCertificate, Poly, Presentation, PresentationError
from .spaces import bundled_model, kunneth_product, quotient_by_ideal
from .steenrod import (
    UnknownSteenrodValue,
    adem_normalize,
    apply_sq,
    apply_sq_sum,
    apply_sq_word,
    check_table_consistency,
    milnor_degree,
    milnor_q,
)

Verdict = Literal["established", "inconclusive"]


class HypothesisError(ValueError):
    """A certificate's standing hypothesis fails, so the criterion does not apply."""


class DegreeMismatchError(ValueError):
    pass


class Fact(NamedTuple):
    name: str
    inputs: dict
    holds: bool
    value: str
    trusted: bool = False


@dataclass(frozen=True)
class ConiveauCertificate:
    kind: Literal["coniveau_ge_1", "strong_coniveau_lt_1"]
    subject: Poly
    subject_text: str
    evidence: tuple[Fact, ...]
    required: tuple[str, ...] = field(default=(), repr=False)

    @property
    def verdict(self) -> Verdict:
        return decide(self.evidence, self.required)

    def without(self, name: str) -> ConiveauCertificate:
        """The same certificate with one fact dropped from consideration."""
        kept = tuple(f for f in self.evidence if f.name != name)
        return ConiveauCertificate(self.kind, self.subject, self.subject_text, kept, self.required)


def decide(evidence: Sequence[Fact], required: Sequence[str]) -> Verdict:
    """``established`` iff every required fact is present and every fact holds."""
    present = {f.name for f in evidence}
    if all(r in present for r in required) and all(f.holds for f in evidence):
        return "established"
    return "inconclusive"


def check_coniveau_ge1(cert: IntegralCertificate, alg: GradedAlgebra) -> ConiveauCertificate:
    red = cert.reduction_of_generator
    nf = alg.normal_form(red)
    # a reduction that vanishes in the quotient has no degree to disagree with
    d = alg.degree(nf)
    if d is not None and d != cert.degree:
        raise DegreeMismatchError(f"reduction has degree {d}, certificate declares {cert.degree}")
    text = alg.format(red)
    facts = (
        Fact(
            "torsion_cyclic",
            {"degree": cert.degree, "group_order": cert.group_order},
            cert.is_torsion,
            f"H^{cert.degree}(X;Z) = " + (f"Z/{cert.group_order}" if cert.is_torsion else "Z"),
        ),
        Fact(
            "reduction_nonzero",
            {"reduction": text},
            bool(nf),
            f"rho(generator) = {alg.format(nf)}",
        ),
    )
    return ConiveauCertificate("coniveau_ge_1", red, text, facts, ("torsion_cyclic", "reduction_nonzero"))


_STRONG_REQUIRED = (
    "q2_nonzero",
    "degree7_vanishes",
    "degree_one_milnor_identity",
    "gysin_commutes_with_milnor",
)


def _degree_one_identity() -> tuple[bool, str]:
    # in F2[y1]: Q_2(y1) = y1^8 = Q_1(y1^5)
    y_alg = GradedAlgebra(Presentation((Generator("y1", 1),)), max_degree=8)
    y = y_alg.pres.gen("y1")
    q2 = milnor_q(y_alg, 2, y)
    q1 = milnor_q(y_alg, 1, y_alg.power(y, 5))
    target = y_alg.power(y, 8)
    holds = q2 == target and q1 == target
    return holds, f"Q2(y1) = {y_alg.format(q2)}, Q1(y1^5) = {y_alg.format(q1)}"


def check_strong_coniveau_lt1(alg: GradedAlgebra, x: Poly) -> ConiveauCertificate:
    """Certificate that ``x`` in degree 3 is not a Gysin image from codimension >= 1.

    ``alg`` is the quotient ``H/I`` by a Milnor-stable ideal ``I``.
    """
    d = alg.degree(x)
    if d != 3:
        raise HypothesisError(f"class has degree {d}, expected 3")
    if alg.dim(3) != 1:
        raise HypothesisError(f"degree-3 part has dimension {alg.dim(3)}, expected 1")
    xn = alg.normal_form(x)
    if not xn:
        raise HypothesisError("class is zero, so it does not generate the degree-3 part")
    text = alg.format(x)

    try:
        q2 = milnor_q(alg, 2, xn)
        q2_fact = Fact("q2_nonzero", {"x": text}, bool(q2), f"Q2({text}) = {alg.format(q2)}")
    except (UnknownSteenrodValue, BoundError) as exc:
        q2_fact = Fact("q2_nonzero", {"x": text}, False, f"not computable: {exc}")

    dim7 = alg.dim(7)
    ident_holds, ident_value = _degree_one_identity()
    shift2, shift1 = milnor_degree(2), milnor_degree(1)
    facts = (
        Fact("degree3_generated", {"x": text}, True, f"dim (H/I)^3 = 1, spanned by {alg.format(xn)}"),
        q2_fact,
        Fact("degree7_vanishes", {"degree": 7}, dim7 == 0, f"dim (H/I)^7 = {dim7}"),
        Fact(
            "gysin_source_degree",
            {"target_degree": 3},
            all(3 - 2 * j < 0 for j in range(2, 4)),
            "a codimension-j pushforward into degree 3 starts in degree 3-2j; only j=1 (degree 1) is nonempty",
        ),
        Fact(
            "degree_bookkeeping",
            {"q2_shift": shift2, "q1_shift": shift1},
            3 + shift2 == 10 and 7 + shift1 == 10 and 1 + 2 * 1 == 3 and 5 + 2 * 1 == 7,
            f"Q2: 3 -> {3 + shift2}; Q1: 7 -> {7 + shift1}; y1 pushes to degree 3, y1^5 to degree 7",
        ),
        Fact("degree_one_milnor_identity", {"ring": "F2[y1]"}, ident_holds, ident_value),
        Fact(
            "gysin_commutes_with_milnor",
            {"rule": "Q_i f_* = f_* Q_i"},
            True,
            "trusted rule: Milnor operations commute with Gysin pushforward",
            trusted=True,
        ),
    )
    return ConiveauCertificate("strong_coniveau_lt_1", xn, text, facts, _STRONG_REQUIRED)


# ---------- the replay suite ----------

class CheckResult(NamedTuple):
    name: str
    statement: str
    passed: bool
    value: str


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        lines = []
        for k, c in enumerate(self.checks, start=1):
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"[{mark}] {k:2d}. {c.name}: {c.statement}")
            lines.append(f"         -> {c.value}")
        npass = sum(c.passed for c in self.checks)
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'} ({npass}/{len(self.checks)} checks)")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "checks": [
                {"name": c.name, "statement": c.statement, "pass": c.passed, "value": c.value}
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["overall", "checks"],
    "additionalProperties": False,
    "properties": {
        "overall": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "statement", "pass", "value"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "statement": {"type": "string"},
                    "pass": {"type": "boolean"},
                    "value": {"type": "string"},
                },
            },
        },
    },
}

BPU4_INTEGRAL_CERTIFICATE = dict(degree=3, group_order=4, reduction="x3")


def milnor_sweep(alg: GradedAlgebra, max_i: int = 3) -> list[tuple[int, int, bool]]:
    """``Q_i(x^(2j+1)) = x^(2j+2^(i+1))`` and ``Q_i(x^(2j)) = 0`` in ``F2[x]``, deg x = 1.

    Covers every ``(i, j)`` that fits under the algebra's degree bound.
    Returns ``(i, j, ok)`` triples.
    """
    (name,) = alg.pres.names
    x = alg.pres.gen(name)
    out = []
    for i in range(max_i + 1):
        j = 0
        while 2 * j + 1 + milnor_degree(i) <= alg.max_degree:
            odd = milnor_q(alg, i, alg.power(x, 2 * j + 1))
            even = milnor_q(alg, i, alg.power(x, 2 * j))
            ok = odd == alg.power(x, 2 * j + 2 ** (i + 1)) and not even
            out.append((i, j, ok))
            j += 1
    return out


def _run(name: str, statement: str, body: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        passed, value = body()
    except (UnknownSteenrodValue, BoundError, PresentationError, HypothesisError, KeyError) as exc:
        passed, value = False, f"error: {exc}"
    return CheckResult(name, statement, bool(passed), value)


def verify_paper_suite(bpu4: Presentation | None = None, max_degree: int = DEFAULT_MAX_DEGREE) -> VerificationReport:
    """Replay every finite computation behind the strictness of N~^1 H^3 in N^1 H^3.

    ``bpu4`` defaults to the bundled model; pass a modified presentation to
    see which checks a change breaks.
    """
    pres = bpu4 if bpu4 is not None else bundled_model("BPU4")
    alg = GradedAlgebra(pres, max_degree)
    fmt = alg.format

    def g(name):
        return pres.gen(name)

    def dims():
        got = [alg.dim(d) for d in (3, 5, 7)]
        detail = []
        for d in (3, 5, 7):
            basis = [fmt(b) for b in alg.basis_polys(d)]
            detail.append(f"H^{d} = {{{', '.join(basis)}}}")
        return got == [1, 1, 0], f"dims {got}; " + "; ".join(detail)

    def squares():
        s3 = alg.multiply(g("x3"), g("x3"))
        s5 = alg.multiply(g("x5"), g("x5"))
        return bool(s3) and bool(s5), f"x3^2 = {fmt(s3)}, x5^2 = {fmt(s5)}"

    def table():
        tc = check_table_consistency(alg, min(12, alg.max_degree))
        bad = [f"{v.word} on {v.generator}: {fmt(v.direct)} != {fmt(v.admissible)}" for v in tc.violations]
        value = f"{len(tc.violations)} violations, {len(tc.skipped)} undetermined pairs skipped"
        if bad:
            value += "; " + "; ".join(bad)
        return tc.consistent, value

    def q1():
        x3 = g("x3")
        q0 = milnor_q(alg, 0, x3)
        val = milnor_q(alg, 1, x3)
        target = alg.multiply(x3, x3)
        return val == target and bool(val), f"Q0(x3) = {fmt(q0)}, Q1(x3) = {fmt(val)}"

    def sq2_deduction():
        x3 = g("x3")
        composite = apply_sq_word(alg, (1, 2), x3)
        via_adem = apply_sq_sum(alg, adem_normalize((1, 2)), x3)
        basis5 = alg.basis_polys(5)
        sq2 = apply_sq(alg, 2, x3)
        forced_nonzero = composite == via_adem and bool(composite)
        unique = len(basis5) == 1
        ok = forced_nonzero and unique and bool(sq2) and sq2 == basis5[0] == alg.normal_form(g("x5"))
        return ok, (
            f"Sq1 Sq2 x3 = {fmt(composite)}, Sq3 x3 = {fmt(via_adem)}, "
            f"H^5 = {{{', '.join(fmt(b) for b in basis5)}}}, Sq2 x3 = {fmt(sq2)}"
        )

    def q2():
        x3 = g("x3")
        val = milnor_q(alg, 2, x3)
        target = alg.multiply(g("x5"), g("x5"))
        return val == target and bool(val), f"Q2(x3) = {fmt(val)}"

    def sweep():
        p1 = GradedAlgebra(bundled_model("P1"), max_degree)
        results = milnor_sweep(p1)
        failed = [(i, j) for i, j, ok in results if not ok]
        value = f"{len(results)} (i, j) pairs checked, {len(failed)} failures"
        if failed:
            value += f": {failed}"
        return not failed and bool(results), value

    quotient_pres = None

    def quotient_model() -> Presentation:
        nonlocal quotient_pres
        if quotient_pres is None:
            prod = kunneth_product(pres, bundled_model("BS1"))
            t = prod.gen(prod.names[-1])
            quotient_pres = quotient_by_ideal(prod, [t])
        return quotient_pres

    def iso():
        through = min(10, alg.max_degree)
        quot = GradedAlgebra(quotient_model(), max_degree).poincare_series(through)
        base = alg.poincare_series(through)
        return quot == base, f"H/I: {quot}; H*(BPU4): {base}"

    def coniveau():
        c = BPU4_INTEGRAL_CERTIFICATE
        cert = IntegralCertificate(c["degree"], c["group_order"], pres.poly(c["reduction"]))
        out = check_coniveau_ge1(cert, alg)
        return out.verdict == "established", f"{out.verdict}: " + "; ".join(f.value for f in out.evidence)

    def strong():
        quot = GradedAlgebra(quotient_model(), max_degree)
        out = check_strong_coniveau_lt1(quot, quot.pres.gen("x3"))
        shown = [f.value for f in out.evidence if f.name in ("q2_nonzero", "degree7_vanishes")]
        return out.verdict == "established", f"{out.verdict}: " + "; ".join(shown)

    checks = (
        _run("bpu4_degree_dims", "dim H^3, H^5, H^7 of BPU4 are 1, 1, 0", dims),
        _run("squares_nonzero", "x3^2 != 0 in degree 6 and x5^2 != 0 in degree 10", squares),
        _run("sq_table_consistent", "the Sq table agrees with the Adem relations on generators through degree 12", table),
        _run("q1_x3", "Q1(x3) = Q0 Sq2(x3) = x3^2 != 0", q1),
        _run("sq2_x3_deduction", "Sq1 Sq2 x3 = Sq3 x3 != 0 forces Sq2 x3 != 0; dim H^5 = 1 gives Sq2 x3 = x5", sq2_deduction),
        _run("q2_x3", "Q2(x3) = Sq4(x3^2) = x5^2 != 0", q2),
        _run("milnor_degree_one_sweep", "Q_i(x1^(2j+1)) = x1^(2j+2^(i+1)) and Q_i(x1^(2j)) = 0 in F2[x1], i <= 3", sweep),
        _run("kunneth_quotient_iso", "H*(BPU4 x BS1)/(t) has the Poincare series of H*(BPU4) through degree 10", iso),
        _run("coniveau_ge_1", "x3 reduces a generator of H^3(BPU4;Z) = Z/4, so it has coniveau >= 1", coniveau),
        _run("strong_coniveau_lt_1", "Q2(x3) != 0 and (H/I)^7 = 0 in the quotient model, so x3 has strong coniveau < 1", strong),
    )
    return VerificationReport(checks)
