"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """Arguments fall outside a function's documented domain."""


class InvalidElementError(ValueError):
    """An integer is not a valid element index for the field it was used with."""


class IncompatibleFieldError(ValueError):
    """Operands belong to different fields, or a field does not match a stated subfield."""


class IncompatibleSpacesError(ValueError):
    """Two subspaces do not share an ambient space, so no distance is defined."""


class RankDeficiencyError(ValueError):
    """A generator matrix has linearly dependent rows."""


class BudgetExceededError(InvalidParameterError):
    """An enumeration or construction would produce more codewords than allowed.

    Subclasses InvalidParameterError so callers that map parameter problems to
    an exit code catch this one for free.
    """


class CodeFileError(ValueError):
    """A code file is malformed and cannot be parsed."""


class InternalConsistencyError(RuntimeError):
    """An exact-arithmetic identity that must always hold has failed.

    This is never a user error; it means a bug in this package.
    """
