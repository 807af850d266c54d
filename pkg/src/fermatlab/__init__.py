"""fermatlab: a verification laboratory for power-sum functional equations.

The package builds the catalog of explicit entire/meromorphic solution
families for equations of the shape f^m + g^n = 1 (and their quadratic and
cubic cross-term variants), certifies or refutes each printed identity twice
over -- exactly, via truncated Laurent series and quotient-ring reduction,
and numerically, via pole-aware residual scans -- and reconciles zero sets
against the argument principle.
"""

__version__ = "0.1.0"

from .errors import (
    AnalyzerError,
    ConvergenceError,
    DegenerateLatticeError,
    FermatLabError,
    LatticeReductionError,
    PoleProximityError,
)
from .families import FAMILY_IDS, SolutionFamily, adjudicate, build_family
from .verify import (
    ScanWindow,
    derivative_identity_scan,
    residual_scan,
    zero_scan,
    zero_set_compare,
)
from .wp import Invariants, engine_for, invariants_from_case, invariants_from_tau

__all__ = [
    "__version__",
    "AnalyzerError",
    "ConvergenceError",
    "DegenerateLatticeError",
    "FermatLabError",
    "LatticeReductionError",
    "PoleProximityError",
    "FAMILY_IDS",
    "SolutionFamily",
    "adjudicate",
    "build_family",
    "ScanWindow",
    "derivative_identity_scan",
    "residual_scan",
    "zero_scan",
    "zero_set_compare",
    "Invariants",
    "engine_for",
    "invariants_from_case",
    "invariants_from_tau",
]
