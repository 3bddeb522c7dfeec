"""Exception hierarchy.

Two families matter to callers: :class:`InputError` (bad curves, bad files,
bad preconditions; the CLI exits with 2) and :class:`GenericityError`
(viewpoint or projection degeneracies that survived resampling; exit 3).
"""


class RP3LinkError(Exception):
    pass


class InputError(RP3LinkError):
    pass


class GenericityError(RP3LinkError):
    pass


# kernel

class ZeroVector(InputError, ValueError):
    pass


class DegenerateSpan(RP3LinkError, ValueError):
    pass


class NotOnLine(RP3LinkError, ValueError):
    pass


# curves

class CurveFormatError(InputError):
    pass


class DegenerateEdge(InputError):
    def __init__(self, curve, index, message=""):
        self.curve = curve
        self.index = index
        super().__init__(message or f"curve {curve!r}: degenerate edge {index}")


class SelfIntersection(InputError):
    def __init__(self, curve, indices, message=""):
        self.curve = curve
        self.indices = tuple(indices)
        super().__init__(
            message or f"curve {curve!r}: edges {self.indices[0]} and {self.indices[1]} intersect"
        )


class CurvesNotDisjoint(InputError):
    pass


class NotNullHomologous(InputError):
    pass


class GenerationFailure(InputError):
    pass


# viewpoints / projections

class DegeneratePair(GenericityError):
    pass


class SignMarginViolation(GenericityError):
    pass


class AmbiguousClass(GenericityError):
    pass


class TooManyDegenerateViewpoints(GenericityError):
    pass


class InconsistentDegree(GenericityError):
    """Different generic viewpoints produced different degrees."""


class DegenerateProjection(GenericityError):
    pass
