"""Exception taxonomy.

Every error carries an ``exit_code`` so the CLI can map failures uniformly:
1 = invalid cut / failed certificate, 2 = malformed input, 3 = unsupported
construct.  Library callers catch the classes; the codes are a CLI concern.
"""


class ConeCutsError(Exception):
    exit_code = 1


class MalformedInputError(ConeCutsError):
    """Input violates a structural precondition (dimension, schema, emptiness)."""

    exit_code = 2


class UnsupportedConstructError(ConeCutsError):
    """Input is well formed but outside the exactly-representable fragment."""

    exit_code = 3


class UnsupportedRotationError(UnsupportedConstructError):
    """Conic cannot be put in rational SOC form (irrational eigen data or scale)."""


class DegenerateConicError(UnsupportedConstructError):
    """Conic degenerates (crossing lines, parallel lines, empty quadric...)."""


class NonConvexRegionError(UnsupportedConstructError):
    """The selected inequality side of the conic is not convex."""


class MixedRadicandError(ConeCutsError):
    """Arithmetic combining sqrt(r) and sqrt(r') with r != r' is not closed."""


class InadmissibleGammaError(ConeCutsError):
    """gamma fails both admissibility conditions; cut guarantees do not apply."""


class ProjectionInvalidError(ConeCutsError):
    """Free-variable projection needs f(A_j) = -f(-A_j); a column violates it."""


class DegenerateAggregationError(ConeCutsError):
    """Aggregation weights collapse to the zero functional."""


class HypothesisViolationError(ConeCutsError):
    """A theorem hypothesis fails on this input (reported, never assumed)."""


class NotSeparableError(ConeCutsError):
    """The point lies in the set; nothing to separate."""


class NotEmptyError(ConeCutsError):
    """An integer point of the set was exhibited; emptiness cannot be certified."""


class InvalidInequalityError(ConeCutsError):
    """The queried inequality is violated by an integer point of the set."""


class NotAFaceError(ConeCutsError):
    """The queried inequality is valid but not tight; carries the true face."""

    def __init__(self, message, true_rhs=None):
        super().__init__(message)
        self.true_rhs = true_rhs


class InternalInconsistencyError(ConeCutsError):
    """A structural invariant the theory guarantees failed; indicates a bug
    or an input outside the theory's hypotheses."""
