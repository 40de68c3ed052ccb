"""Differential and boomerang analysis of x^r (1 + u chi(x)) over F_q, q = 3 (mod 4)."""
from .boom import BoomSpectrum, bct, bct_row, beta, boom_spectrum, boomerang_uniformity, predict_boom_spectrum
from .charsum import Poly, char_sum, gamma, identity_suite
from .diff import (
    DiffSpectrum,
    IdentityViolation,
    classify_locality,
    ddt,
    ddt_row,
    delta,
    diff_spectrum,
    differential_uniformity,
    predict_diff_spectrum_u1,
    predict_quadrants_general,
    predict_quadrants_u1,
    quadrant_counts,
)
from .field import FieldElement, FiniteField, make_field
from .funcs import FunctionTable, build_binomial, build_power, is_permutation, predict_permutation, special_u
from .verify import ScanConfig, VerificationReport, scan, verify_field

__version__ = "0.1.0"

__all__ = [
    "BoomSpectrum",
    "DiffSpectrum",
    "FieldElement",
    "FiniteField",
    "FunctionTable",
    "IdentityViolation",
    "Poly",
    "ScanConfig",
    "VerificationReport",
    "bct",
    "bct_row",
    "beta",
    "boom_spectrum",
    "boomerang_uniformity",
    "build_binomial",
    "build_power",
    "char_sum",
    "classify_locality",
    "ddt",
    "ddt_row",
    "delta",
    "diff_spectrum",
    "differential_uniformity",
    "gamma",
    "identity_suite",
    "is_permutation",
    "make_field",
    "predict_boom_spectrum",
    "predict_diff_spectrum_u1",
    "predict_permutation",
    "predict_quadrants_general",
    "predict_quadrants_u1",
    "quadrant_counts",
    "scan",
    "special_u",
    "verify_field",
]
