"""Exception hierarchy shared by every module of the package."""


class PolarError(Exception):
    """Base class for all library errors."""


class InputError(PolarError):
    """Malformed problem data (bad polynomial string, inhomogeneous relation, ...)."""

    def __init__(self, message, *, line=None, column=None, token=None, field=None):
        self.line = line
        self.column = column
        self.token = token
        self.field = field
        where = []
        if field is not None:
            where.append(f"in {field}")
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if token is not None:
            where.append(f"near {token!r}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)


class BudgetExceeded(PolarError):
    """A completion loop (Buchberger, saturation, scans) ran past its step budget."""


class RankMismatch(PolarError, ValueError):
    pass


class NotContained(PolarError):
    """A submodule that should sit inside another one does not."""


class Unstable(PolarError):
    """The Hilbert data did not stabilize inside the permitted window.

    ``suggestion`` carries an enlarged window origin the caller may retry with.
    """

    def __init__(self, message, suggestion=None):
        self.suggestion = suggestion
        super().__init__(message)


class NonIntegerCoefficient(Unstable):
    pass


class EmptySupport(PolarError):
    """The sheaf attached to the module is zero and no dimension override was given."""


class InvalidDepth(PolarError):
    """A cut was requested below dimension zero."""


class GenericityFailure(PolarError):
    """Randomly sampled 'general' elements kept landing in the degeneracy locus."""


class NoBaseVariables(PolarError):
    """General elements of the maximal ideal were requested over a field base."""


class RankDeficient(PolarError):
    """A module-pair column set does not have full rank."""


class NotMonomial(PolarError):
    pass
