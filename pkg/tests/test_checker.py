import json

import jsonschema
import pytest

from coniveau.algebra import GradedAlgebra
from coniveau.checker import (
    REPORT_SCHEMA,
    DegreeMismatchError,
    HypothesisError,
    check_coniveau_ge1,
    check_strong_coniveau_lt1,
    verify_paper_suite,
)
from coniveau.presentation import IntegralCertificate, Poly, parse_presentation
from coniveau.spaces import MODEL_TEXTS, bundled_model, kunneth_product, quotient_by_ideal

BPU4_TEXT = MODEL_TEXTS["BPU4"]
MUTATIONS = {
    "deleted_relation": BPU4_TEXT.replace("rel x2*x3\n", ""),
    "zeroed_sq2": BPU4_TEXT.replace("sq 2 x3 = x5", "sq 2 x3 = 0"),
    "added_x5_squared": BPU4_TEXT + "rel x5^2\n",
}


@pytest.fixture(scope="module")
def bpu4():
    return GradedAlgebra(bundled_model("BPU4"))


def quotient_model(text=BPU4_TEXT):
    prod = kunneth_product(parse_presentation(text), bundled_model("BS1"))
    return GradedAlgebra(quotient_by_ideal(prod, [prod.gen("t")]))


def test_coniveau_examples(bpu4):
    P = bpu4.pres
    ok = check_coniveau_ge1(IntegralCertificate(3, 4, P.gen("x3")), bpu4)
    assert ok.verdict == "established"
    assert [f.name for f in ok.evidence] == ["torsion_cyclic", "reduction_nonzero"]

    zero = check_coniveau_ge1(IntegralCertificate(3, 4, P.poly("x2*x3")), bpu4)
    assert zero.verdict == "inconclusive"

    free = check_coniveau_ge1(IntegralCertificate(3, "infinite", P.gen("x3")), bpu4)
    assert free.verdict == "inconclusive"
    assert not next(f for f in free.evidence if f.name == "torsion_cyclic").holds


def test_coniveau_degree_mismatch(bpu4):
    with pytest.raises(DegreeMismatchError):
        check_coniveau_ge1(IntegralCertificate(3, 4, bpu4.pres.gen("x5")), bpu4)


def test_strong_coniveau_established():
    alg = quotient_model()
    cert = check_strong_coniveau_lt1(alg, alg.pres.gen("x3"))
    assert cert.verdict == "established"
    facts = {f.name: f for f in cert.evidence}
    assert facts["q2_nonzero"].value == "Q2(x3) = x5^2"
    assert facts["degree7_vanishes"].value == "dim (H/I)^7 = 0"
    assert facts["gysin_commutes_with_milnor"].trusted
    assert facts["degree_one_milnor_identity"].holds


def test_strong_coniveau_inconclusive_when_q2_dies():
    alg = quotient_model(MUTATIONS["added_x5_squared"])
    cert = check_strong_coniveau_lt1(alg, alg.pres.gen("x3"))
    assert cert.verdict == "inconclusive"
    assert not next(f for f in cert.evidence if f.name == "q2_nonzero").holds


def test_strong_coniveau_on_free_degree_one_ring():
    alg = GradedAlgebra(bundled_model("P1"))
    cert = check_strong_coniveau_lt1(alg, alg.power(alg.pres.gen("x1"), 3))
    facts = {f.name: f for f in cert.evidence}
    assert facts["q2_nonzero"].value == "Q2(x1^3) = x1^10"
    assert facts["degree7_vanishes"].value == "dim (H/I)^7 = 1"
    assert cert.verdict == "inconclusive"


@pytest.mark.parametrize(
    "text, poly",
    [
        (BPU4_TEXT, "x5"),  # wrong degree
        (BPU4_TEXT.replace("rel x2*x3\n", "") + "gen y 3\n", "x3"),  # H^3 two-dimensional
        (BPU4_TEXT + "rel x3\n", "x3"),  # H^3 = 0
    ],
)
def test_strong_coniveau_hypothesis_errors(text, poly):
    alg = GradedAlgebra(parse_presentation(text))
    with pytest.raises(HypothesisError):
        check_strong_coniveau_lt1(alg, alg.pres.poly(poly))


def test_zero_class_is_a_hypothesis_error():
    alg = GradedAlgebra(parse_presentation("gen a 3\ngen b 3\nrel a"))
    with pytest.raises(HypothesisError):
        check_strong_coniveau_lt1(alg, alg.pres.gen("a"))


def test_unknown_values_make_strong_check_inconclusive():
    # nothing pins down Sq^1, Sq^2 of a degree-3 generator here
    alg = GradedAlgebra(parse_presentation("gen a 3"))
    cert = check_strong_coniveau_lt1(alg, alg.pres.gen("a"))
    assert cert.verdict == "inconclusive"
    assert "not computable" in next(f for f in cert.evidence if f.name == "q2_nonzero").value


def test_never_established_under_mutation():
    for name, text in MUTATIONS.items():
        alg = quotient_model(text)
        try:
            cert = check_strong_coniveau_lt1(alg, alg.pres.gen("x3"))
        except HypothesisError:
            continue
        q2 = next(f for f in cert.evidence if f.name == "q2_nonzero").holds
        h7 = alg.dim(7) == 0
        if not (q2 and h7):
            assert cert.verdict == "inconclusive", name


def test_verdicts_are_monotone_in_evidence(bpu4):
    alg = quotient_model()
    certs = [
        check_strong_coniveau_lt1(alg, alg.pres.gen("x3")),
        check_coniveau_ge1(IntegralCertificate(3, 4, bpu4.pres.gen("x3")), bpu4),
        check_coniveau_ge1(IntegralCertificate(3, "infinite", bpu4.pres.gen("x3")), bpu4),
    ]
    for cert in certs:
        for fact in cert.evidence:
            if not fact.holds:
                continue
            weaker = cert.without(fact.name)
            if cert.verdict == "inconclusive":
                assert weaker.verdict == "inconclusive"
            if fact.name in cert.required:
                assert weaker.verdict == "inconclusive"


def test_suite_default_run():
    report = verify_paper_suite()
    assert len(report.checks) == 10
    assert all(c.passed for c in report.checks), report.to_text()
    assert report.overall
    assert [c.name for c in report.checks] == [
        "bpu4_degree_dims",
        "squares_nonzero",
        "sq_table_consistent",
        "q1_x3",
        "sq2_x3_deduction",
        "q2_x3",
        "milnor_degree_one_sweep",
        "kunneth_quotient_iso",
        "coniveau_ge_1",
        "strong_coniveau_lt_1",
    ]


def failing(text):
    return {c.name for c in verify_paper_suite(parse_presentation(text)).checks if not c.passed}


def test_suite_deleted_relation():
    fails = failing(MUTATIONS["deleted_relation"])
    assert "bpu4_degree_dims" in fails
    report = verify_paper_suite(parse_presentation(MUTATIONS["deleted_relation"]))
    assert "dims [1, 2, 1]" in report.checks[0].value
    assert not report.overall


def test_suite_zeroed_sq2():
    fails = failing(MUTATIONS["zeroed_sq2"])
    assert {"q1_x3", "sq2_x3_deduction", "q2_x3", "strong_coniveau_lt_1"} <= fails
    # Sq1 Sq2 x3 = 0 now contradicts Sq3 x3 = x3^2 as well
    assert "sq_table_consistent" in fails


def test_suite_added_relation():
    fails = failing(MUTATIONS["added_x5_squared"])
    assert {"squares_nonzero", "q2_x3", "strong_coniveau_lt_1"} <= fails


def test_suite_is_deterministic():
    assert verify_paper_suite().to_json() == verify_paper_suite().to_json()
    assert verify_paper_suite().to_text() == verify_paper_suite().to_text()


def test_report_json_matches_schema():
    for text in [BPU4_TEXT, *MUTATIONS.values()]:
        doc = json.loads(verify_paper_suite(parse_presentation(text)).to_json())
        jsonschema.validate(doc, REPORT_SCHEMA)
        assert doc["overall"] == all(c["pass"] for c in doc["checks"])


def test_missing_generator_fails_cleanly():
    report = verify_paper_suite(parse_presentation("gen x2 2\ngen x3 3"))
    assert not report.overall
    assert any(c.value.startswith("error:") for c in report.checks)


def test_subject_is_normalised(bpu4):
    cert = check_coniveau_ge1(IntegralCertificate(3, 4, bpu4.pres.gen("x3")), bpu4)
    assert cert.subject == bpu4.pres.gen("x3")
    assert cert.subject_text == "x3"
    assert Poly() != cert.subject
