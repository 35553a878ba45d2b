"""Exception hierarchy.

``DomainError`` covers semantic/validation failures (CLI exit code 1);
``FileFormatError`` covers malformed input files (CLI exit code 2, like a
usage error); ``SolverError`` signals an internal failure of the exact
transportation solver, which should be unreachable for valid inputs.
"""


class DomainError(ValueError):
    """Base class for semantic failures on structurally well-formed input."""


class TreeStructureError(DomainError):
    """The tree description violates a structural invariant."""


class PointLocationError(DomainError):
    """A point reference does not denote a location on the tree."""


class GeodesicError(DomainError):
    """A geodesic is malformed, or a point/coordinate is not on it."""


class CompletenessError(DomainError):
    """An operation requiring a leafless (geodesically complete) tree was
    invoked on a tree with leaves."""


class MeasureError(DomainError):
    """A measure definition violates positivity or total-mass-one."""


class RadonError(DomainError):
    """Flag table or inversion preconditions are violated."""


class OracleInconsistencyError(DomainError):
    """Radon oracle answers are mutually inconsistent, or the hidden measure
    violates the reconstruction preconditions."""


class GenerationError(DomainError):
    """Random-generation bounds are unsatisfiable."""


class FileFormatError(ValueError):
    """An input file could not be parsed against its schema."""


class SolverError(RuntimeError):
    """Internal transportation-solver failure (pivot limit, broken basis)."""
