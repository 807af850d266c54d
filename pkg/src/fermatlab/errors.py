"""Exception types shared across the package.

Invalid user input raises the builtin ValueError; the classes here cover
numeric and analyzer failures that deserve distinct handling (and distinct
process exit codes at the CLI boundary).
"""


class FermatLabError(Exception):
    """Base class for package-specific failures."""


class ConvergenceError(FermatLabError):
    """An iteration (AGM, Newton polish, ...) failed to reach its target."""


class PoleProximityError(FermatLabError):
    """Evaluation was requested too close to a pole of an elliptic function."""


class DegenerateLatticeError(FermatLabError):
    """Invariants with vanishing discriminant: no honest period lattice."""


class LatticeReductionError(FermatLabError):
    """Argument reduction / duplication ladder exceeded its depth budget."""


class AnalyzerError(FermatLabError):
    """Zero-set analysis could not certify its result (winding mismatch,
    ambiguous root matching, root too close to the integration contour)."""
