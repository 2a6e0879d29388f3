"""Numerical laboratory for operator monotone and operator convex functions."""
from .catalog import ScalarFunctionSpec, catalog_list, lookup, parse_selector
from .errors import (
    ConvergenceError,
    DomainError,
    GenerationError,
    HypothesisError,
    NotHermitianError,
    OperatorLabError,
    ReportSchemaError,
    UnsupportedError,
)
from .hermitian import PsdCertificate, Spectrum, apply_function, eigh, psd_check, symmetrized_product
from .inequalities import SpectralWindow, ContractionFamily
from .report import SuiteReport
from .sampler import InstanceSpec, generate, shrink
from .suites import SUITE_NAMES, run_suite

__version__ = "0.1.0"
