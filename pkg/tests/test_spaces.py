import itertools

import pytest

from coniveau.algebra import GradedAlgebra
from coniveau.presentation import HomogeneityError, Poly, parse_presentation
from coniveau.spaces import (
    MODEL_NAMES,
    MODEL_TEXTS,
    bundled_model,
    convolve,
    kunneth_product,
    quotient_by_ideal,
)
from coniveau.steenrod import check_table_consistency


def test_bpu4_model():
    pres = bundled_model("BPU4")
    assert pres.names == ("x2", "x3", "x5", "x8", "x9", "x12")
    assert [pres.format(r) for r in pres.relations] == [
        "x2*x3",
        "x2*x5",
        "x2*x9",
        "x3^2*x12 + x5^2*x8 + x9^2",
    ]
    assert {k: pres.format(v) for k, v in pres.sq_table.items()} == {
        ("x3", 1): "0",
        ("x3", 2): "x5",
        ("x5", 1): "x3^2",
    }


def test_bs1_model():
    pres = bundled_model("BS1")
    assert pres.names == ("t",) and pres.degrees == (2,)
    assert pres.relations == () and dict(pres.sq_table) == {}


def test_unknown_model():
    with pytest.raises(KeyError):
        bundled_model("BPU5")


def test_bpu4_table_is_consistent():
    assert check_table_consistency(GradedAlgebra(bundled_model("BPU4")), 12).consistent


def test_kunneth_examples():
    bpu4, bs1 = bundled_model("BPU4"), bundled_model("BS1")
    prod = kunneth_product(bpu4, bs1)
    assert prod.ngens == 7 and len(prod.relations) == 4
    assert GradedAlgebra(prod).dim(4) == 3

    tt = kunneth_product(bs1, bs1)
    assert tt.names == ("t", "t_1")
    assert tt.warnings == ("renamed t -> t_1 in the second factor",)
    assert GradedAlgebra(tt).poincare_series(8) == [1, 0, 2, 0, 3, 0, 4, 0, 5]


def test_kunneth_carries_tables():
    prod = kunneth_product(bundled_model("BS1"), bundled_model("BPU4"))
    assert prod.format(prod.sq_table[("x3", 2)]) == "x5"
    alg = GradedAlgebra(prod)
    assert alg.format(alg.normal_form(prod.poly("x2*x3*t"))) == "0"


def test_rename_avoids_all_existing_names():
    a = parse_presentation("gen t 2\ngen t_1 2")
    prod = kunneth_product(a, parse_presentation("gen t 2"))
    assert prod.names == ("t", "t_1", "t_2")


PAIRS = list(itertools.combinations_with_replacement(MODEL_NAMES, 2))


@pytest.mark.parametrize("a, b", PAIRS)
def test_kunneth_dimension_convolution(a, b):
    A, B = bundled_model(a), bundled_model(b)
    through = 12
    fa = GradedAlgebra(A).poincare_series(through)
    fb = GradedAlgebra(B).poincare_series(through)
    assert GradedAlgebra(kunneth_product(A, B)).poincare_series(through) == convolve(fa, fb)


@pytest.mark.parametrize("a, b", PAIRS)
def test_kunneth_table_stays_consistent(a, b):
    A, B = bundled_model(a), bundled_model(b)
    for pres in (A, B):
        assert check_table_consistency(GradedAlgebra(pres), 12).consistent
    assert check_table_consistency(GradedAlgebra(kunneth_product(A, B)), 12).consistent


def test_quotient_examples():
    bpu4, bs1 = bundled_model("BPU4"), bundled_model("BS1")
    prod = kunneth_product(bpu4, bs1)
    quot = quotient_by_ideal(prod, [prod.gen("t")])
    assert GradedAlgebra(quot).poincare_series(10) == GradedAlgebra(bpu4).poincare_series(10)
    assert quotient_by_ideal(bpu4, []) == bpu4
    assert GradedAlgebra(quotient_by_ideal(bs1, [bs1.gen("t")])).poincare_series(6) == [1, 0, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_killing_t_undoes_the_product(name):
    A = bundled_model(name)
    prod = kunneth_product(A, bundled_model("BS1"))
    t = prod.gen(prod.names[-1])
    quot = GradedAlgebra(quotient_by_ideal(prod, [t]))
    assert quot.poincare_series(14) == GradedAlgebra(A).poincare_series(14)


def test_quotient_rejects_mixed_degrees():
    bpu4 = bundled_model("BPU4")
    with pytest.raises(HomogeneityError):
        quotient_by_ideal(bpu4, [bpu4.poly("x2 + x3")])


def test_model_texts_are_versioned():
    for text in MODEL_TEXTS.values():
        assert "model version 1" in text.splitlines()[0]


def test_convolve():
    assert convolve([1, 1, 1], [1, 0, 1]) == [1, 1, 2]
    assert convolve([1], []) == []
    assert Poly() == Poly.zero()
