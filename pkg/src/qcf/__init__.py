"""q-continued fractions outside the unit circle.

Exact polynomial families, overflow-safe approximants, odd/even
contractions, tail-map classification, convergence verdicts and a
region scanner.
"""

from qcf.qpoly import FamilySpec, HypothesisReport, PolynomialQX, element_at
from qcf.cfeval import (
    ConvergenceReport,
    ElementStream,
    approximants,
    limit_estimate,
    odd_even_reports,
    to_unit_denominators,
)
from qcf.contract import even_part, odd_part
from qcf.classify import Classification, classify_lft, fixed_points, tail_parameter
from qcf.verdict import Verdict, verdict
from qcf.catalog import catalog_get, catalog_names

__version__ = "0.1.0"

__all__ = [
    "PolynomialQX",
    "FamilySpec",
    "HypothesisReport",
    "element_at",
    "ElementStream",
    "ConvergenceReport",
    "approximants",
    "limit_estimate",
    "odd_even_reports",
    "to_unit_denominators",
    "even_part",
    "odd_part",
    "Classification",
    "classify_lft",
    "fixed_points",
    "tail_parameter",
    "Verdict",
    "verdict",
    "catalog_get",
    "catalog_names",
]
