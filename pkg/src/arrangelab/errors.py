"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 for a failed invariant or certificate, 3 for bad input.
"""


class ArrangeLabError(Exception):
    exit_code = 3


class InputError(ArrangeLabError):
    exit_code = 3


class ParseError(InputError):
    pass


class InvalidGraph(InputError):
    pass


class NotChordal(InputError):
    def __init__(self, message="graph is not chordal", witness=None):
        super().__init__(message)
        self.witness = witness


class NotPerfectEliminationOrder(InputError):
    pass


class GenusZeroUnsupported(InputError):
    pass


class VarTableMismatch(ArrangeLabError):
    pass


class CapExceeded(ArrangeLabError):
    pass


class SizeLimitExceeded(CapExceeded):
    pass


class InvariantFailure(ArrangeLabError):
    exit_code = 2


class NotQuadratic(InvariantFailure):
    def __init__(self, min_degree):
        super().__init__(f"NotQuadratic({min_degree})")
        self.min_degree = min_degree


class NotQuadraticInput(InvariantFailure):
    pass


class HilbertIdentityFails(InvariantFailure):
    def __init__(self, degree):
        super().__init__(f"HilbertIdentityFails({degree})")
        self.degree = degree


class NotAntisymmetric(InvariantFailure):
    pass


class MalformedQla(InvariantFailure):
    pass
