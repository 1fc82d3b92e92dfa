"""Exception hierarchy shared by every module."""


class PtlsepError(Exception):
    """Base class for all errors raised by this package."""


class AlphabetMismatch(PtlsepError):
    """Binary operation on automata/grammars over different alphabets."""


class ReservedSymbolError(PtlsepError):
    """A user alphabet contains a '$'-prefixed (marker) symbol."""


class GuardError(PtlsepError):
    """An input exceeds one of the desk-scale size guards."""


class NotDownwardClosed(PtlsepError):
    pass


class IllFormedSupInstance(PtlsepError):
    """L is not contained in b1* ... bn* for the given order."""


class ParseError(PtlsepError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class InvariantViolation(PtlsepError):
    """Internal consistency check failed; always a bug."""
