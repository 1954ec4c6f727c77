"""Exception hierarchy for window-space."""


class WindowSpaceError(Exception):
    """Base class for all errors raised by window-space."""


class BudgetExceededError(WindowSpaceError):
    """A construction or exploration grew past its configured cap."""

    def __init__(self, what: str, budget: int):
        self.what = what
        self.budget = budget
        super().__init__(f"{what} exceeds budget of {budget}")


class AlphabetMismatchError(WindowSpaceError, ValueError):
    """Two automata (or an automaton and a word) disagree on the alphabet."""


class PreconditionError(WindowSpaceError, ValueError):
    """An operation was called on input outside its domain."""


class TrivialLanguageError(PreconditionError):
    """The language is empty or universal, where the operation is undefined."""


class ParseError(WindowSpaceError, ValueError):
    """Malformed automaton, stream or certificate input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InternalConsistencyError(WindowSpaceError, AssertionError):
    """A machine check failed: two computations disagree or a witness does not replay."""
