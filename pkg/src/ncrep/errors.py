"""Exception types shared across the package.

Input problems (bad shapes, unknown names, malformed files) raise
:class:`ValidationError`; violated mathematical preconditions raise a
subclass of :class:`MathError`.  The CLI maps the two families to exit
codes 2 and 3.
"""


class NcrepError(Exception):
    kind = "error"


class ValidationError(NcrepError, ValueError):
    kind = "validation"


class DimensionError(ValidationError):
    kind = "dimension-mismatch"


class MathError(NcrepError):
    kind = "precondition"


class RelationViolated(MathError):
    kind = "relation-violated"

    def __init__(self, index, detail=""):
        self.index = index
        super().__init__(f"relation {index} does not vanish{': ' + detail if detail else ''}")


class SingularMatrixError(MathError):
    kind = "singular-matrix"


class CyclicQuiverError(MathError):
    kind = "cyclic-quiver"


class SchurCheckError(MathError):
    kind = "schur-check"
