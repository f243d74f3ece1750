"""Exception hierarchy for conix.

Every error raised by the library derives from :class:`ConixError`, which is a
``ValueError`` so callers that only care about "bad input" can catch that.
"""


class ConixError(ValueError):
    """Base class for all library errors."""


class AllZeroCoefficients(ConixError):
    pass


class ZeroMatrix(ConixError):
    pass


class DegenerateResult(ConixError):
    """An operation produced the zero vector (e.g. polar of a singular point)."""


class DegenerateConic(ConixError):
    pass


class ParallelInputs(ConixError):
    """Cross product of two projectively equal triples."""


class ZeroLeadingCoefficient(ConixError):
    pass


class NonConvergence(ConixError):
    """Iterative root finder hit its iteration cap.

    The best iterate is kept on ``roots`` and the final max correction on
    ``correction``.
    """

    def __init__(self, message, roots=None, correction=None):
        super().__init__(message)
        self.roots = roots
        self.correction = correction


class CollinearFrame(ConixError):
    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class SingularSystem(ConixError):
    pass


class IdenticalConics(ConixError):
    pass


class FrameFailure(ConixError):
    pass


class DenominatorCollapse(ConixError):
    pass


class TangentPointNotOnConics(ConixError):
    pass


class OracleInconclusive(ConixError):
    pass


class ParseError(ConixError):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position
