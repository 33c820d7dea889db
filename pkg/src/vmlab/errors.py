"""Exception hierarchy shared by every vmlab module."""


class VmlabError(Exception):
    """Base class for all errors raised by vmlab."""


class DomainError(VmlabError, ValueError):
    """An argument names a vertex, class or parameter outside its domain."""


class PreconditionError(VmlabError, ValueError):
    """An operation was called on inputs violating its stated precondition."""


class FaultyComplementation(PreconditionError):
    """Local complementation of a set that is not independent.

    ``step`` is the witness step (0-based) and ``relation`` the relation
    index for structure minors; either may be ``None``.
    """

    def __init__(self, message, *, step=None, relation=None, offending=None):
        super().__init__(message)
        self.step = step
        self.relation = relation
        self.offending = offending


class CapacityError(VmlabError):
    """A configured size cap would be exceeded; no partial answer is given."""


class ValidationError(VmlabError, ValueError):
    """An input object (model, map, file) is internally inconsistent."""


class InvariantError(VmlabError, AssertionError):
    """A verified postcondition failed. Never swallowed."""


class FormulaSyntaxError(VmlabError, ValueError):
    def __init__(self, message, position=None):
        self.detail = message
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class EvaluationError(VmlabError, ValueError):
    """A formula could not be evaluated (e.g. an unassigned free variable)."""
