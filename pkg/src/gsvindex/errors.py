"""Exception hierarchy shared by every module of the package."""


class GSVError(Exception):
    """Base class for all errors raised by :mod:`gsvindex`."""


class PolySyntaxError(GSVError):
    """Malformed polynomial or problem text.

    ``line`` and ``column`` are 1-based; ``line`` is ``None`` when the error
    comes from a bare expression rather than a problem file.
    """

    def __init__(self, message, column=None, line=None):
        self.msg = message
        self.column = column
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class UnknownVariable(PolySyntaxError):
    pass


class ArityMismatch(GSVError):
    pass


class NotAGerm(GSVError):
    pass


class TangencyMismatch(GSVError):
    pass


class NotTangent(GSVError):
    pass


class NonPolynomialFactor(GSVError):
    """The tangency factor exists only as a power series.

    ``c`` holds the series truncated below ``order``.
    """

    def __init__(self, message, c=None, order=None):
        super().__init__(message)
        self.c = c
        self.order = order


class SingularMatrix(GSVError):
    pass


class DegreeOverflow(GSVError):
    pass


class RingMismatch(GSVError):
    pass


class NotNested(GSVError):
    pass


class NoStabilization(GSVError):
    """Truncated values did not settle before the truncation cap.

    ``values`` maps each truncation order tried to the value observed there.
    """

    def __init__(self, message, values=None):
        self.values = dict(values or {})
        if self.values:
            seen = ", ".join(f"N={k}: {v}" for k, v in self.values.items())
            message = f"{message} [{seen}]"
        super().__init__(message)


class NotRegular(GSVError):
    pass


class NormalizationFailed(GSVError):
    def __init__(self, message, last_matrix=None):
        super().__init__(message)
        self.last_matrix = last_matrix


class InternalInconsistency(GSVError):
    pass


class OracleRefused(GSVError):
    pass


class NotIsolated(GSVError):
    """The germ ``f`` does not have an isolated singularity (infinite Milnor number),
    or ``X`` has a non-isolated zero on the hypersurface."""
