"""Exact verification of a binomial identity and its generalization.

Direct sums live in :mod:`binomverify.sums`; the configuration engines and
their sign-reversing involutions in :mod:`binomverify.dominoes`,
:mod:`binomverify.ominoes` and :mod:`binomverify.matrices`; sweeps and reports
in :mod:`binomverify.verifier`.
"""
from .exact import Polynomial, binomial, binomial_poly, leading_coefficient, poly_equal, poly_eval
from .verifier import CheckCase, VerificationReport, run, sweep

__all__ = [
    "Polynomial",
    "binomial",
    "binomial_poly",
    "leading_coefficient",
    "poly_equal",
    "poly_eval",
    "CheckCase",
    "VerificationReport",
    "run",
    "sweep",
]

__version__ = "0.1.0"
