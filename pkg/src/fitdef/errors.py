"""Exception hierarchy shared by every fitdef module."""


class FitdefError(Exception):
    """Base class for all library errors."""


class GroupConstructionError(FitdefError, ValueError):
    """A multiplication table or permutation generator set is malformed."""


class OrderLimitError(FitdefError):
    """A group would exceed the configured maximum order."""


class GroupFileError(GroupConstructionError):
    """A Cayley-table or permutation file could not be parsed."""


class NotNormalError(FitdefError, ValueError):
    """A subgroup required to be normal is not."""


class NotASubgroupError(FitdefError, ValueError):
    """An element set is not closed under the group operation."""


class SeriesMismatchError(FitdefError):
    """The word-generator and commutator routes produced different series terms."""

    def __init__(self, message, *, index=None, direct=None, words=None):
        super().__init__(message)
        self.index = index
        self.direct = direct
        self.words = words


class OracleInfeasibleError(FitdefError):
    """The conjugacy-class-union enumeration would exceed its budget."""


class ArityError(FitdefError, ValueError):
    """Argument count does not match a word's or formula's arity."""


class FormulaSyntaxError(FitdefError, ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class UnboundVariableError(FitdefError, ValueError):
    """A free variable has no value (or was not declared)."""


class FormulaBudgetError(FitdefError):
    """Materializing a formula would exceed the conjunct budget."""
