"""Exception types.  Every error carries a short machine-readable ``code``."""


class QcqpError(Exception):
    code = "ERROR"

    def __init__(self, message="", code=None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def __str__(self):
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


class DimensionError(QcqpError, ValueError):
    code = "DIMENSION"


class NumericError(QcqpError, ArithmeticError):
    code = "NUMERIC"


class AlreadyConvexError(QcqpError):
    code = "ALREADY_CONVEX"


class SlaterViolatedError(QcqpError):
    code = "SLATER_VIOLATED"


class UnboundedFeasibleSetError(QcqpError):
    code = "UNBOUNDED_FEASIBLE_SET"


class DegenerateCoverError(QcqpError):
    code = "DEGENERATE_COVER"


class DegenerateSimplexError(QcqpError):
    code = "DEGENERATE"


class WeightsInvalidError(QcqpError, ValueError):
    code = "WEIGHTS_INVALID"


class NoFeasibleGridPointError(QcqpError):
    code = "NO_FEASIBLE_GRID_POINT"


class PreconditionViolatedError(QcqpError, ValueError):
    code = "PRECONDITION_VIOLATED"


class ParseError(QcqpError, ValueError):
    code = "PARSE"

    def __init__(self, message, path=None, offset=None):
        super().__init__(message)
        self.path = path
        self.offset = offset


class ValidationError(QcqpError, ValueError):
    code = "VALIDATION"

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)
