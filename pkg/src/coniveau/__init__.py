"""Graded F2-algebras with Steenrod and Milnor operations, and coniveau certificates."""

from .algebra import BoundError, DegreeBasis, GradedAlgebra, monomials_of_degree
from .checker import (
    ConiveauCertificate,
    HypothesisError,
    VerificationReport,
    check_coniveau_ge1,
    check_strong_coniveau_lt1,
    verify_paper_suite,
)
from .presentation import (
    Generator,
    IntegralCertificate,
    Poly,
    Presentation,
    PresentationError,
    format_poly,
    parse_poly,
    parse_presentation,
)
from .spaces import bundled_model, kunneth_product, quotient_by_ideal
from .steenrod import (
    UnknownSteenrodValue,
    adem_normalize,
    apply_sq,
    apply_sq_word,
    check_table_consistency,
    milnor_q,
)

__version__ = "0.1.0"
