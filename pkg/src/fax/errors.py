"""Exception hierarchy shared by all fax modules."""


class FaxError(Exception):
    """Base class for every error raised by the library."""


class AlphabetError(FaxError, ValueError):
    """Invalid alphabet, unknown symbol or mismatched alphabets."""


class UnknownSymbol(AlphabetError):
    def __init__(self, symbol, position=None):
        self.symbol = symbol
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"unknown symbol {symbol!r}{where}")


class AlphabetMismatch(AlphabetError):
    pass


class RegexError(FaxError, ValueError):
    """Regex parse error; ``position`` is a 0-based offset into the text."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} (at offset {position})")


class FormatError(FaxError, ValueError):
    """Malformed automaton, maze or dataset file."""

    def __init__(self, message, line=None):
        self.line = line
        prefix = "" if line is None else f"line {line}: "
        super().__init__(prefix + message)


class NotDeterministic(FaxError):
    pass


class StateExplosion(FaxError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"subset construction exceeded {cap} states")


class BudgetExceeded(FaxError):
    """A node or time budget ran out; never signals a wrong answer."""


class NotWeakAxp(FaxError, ValueError):
    pass


class InvalidDual(FaxError, ValueError):
    pass


class EmptyAttribution(FaxError, ValueError):
    pass


class GenerationError(FaxError):
    """A benchmark generator gave up after its retry cap."""
