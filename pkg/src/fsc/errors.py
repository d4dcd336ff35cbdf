"""Exception hierarchy shared by every module of the calculus."""


class FscError(Exception):
    """Base class for all errors raised by fsc."""


class EmptyName(FscError):
    pass


class ReservedName(FscError):
    pass


class NotAnAutomaton(FscError):
    """An operation that is only defined on languages got a genuine relation."""


class EpsilonInUpper(FscError):
    """A directed replacement was asked to match the empty string."""


class EmptyRuleSet(FscError):
    pass


class UnsupportedContextOrientation(FscError):
    pass


class UnsupportedRule(FscError):
    """Rule shapes the compiler refuses, e.g. contexts on a directed rule."""


class ActionLanguageInfinite(FscError):
    pass


class UnknownName(FscError):
    def __init__(self, name, line=None, column=None):
        self.name = name
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"undefined name {name!r}{where}")


class RegexSyntaxError(FscError):
    """Syntax error in a regular expression or rule file.

    ``offset`` is the character offset into the source; ``line`` and
    ``column`` are 1-based and filled in when the source text is known.
    """

    def __init__(self, message, offset=0, source=None):
        self.message = message
        self.offset = offset
        self.line, self.column = _line_col(source, offset) if source is not None else (None, None)
        where = f"line {self.line}, column {self.column}" if self.line else f"offset {offset}"
        super().__init__(f"{message} at {where}")


class UnterminatedQuote(RegexSyntaxError):
    pass


class DanglingEscape(RegexSyntaxError):
    pass


class AmbiguousOutput(FscError):
    def __init__(self, chunk, count):
        self.chunk = chunk
        self.count = count
        super().__init__(f"chunk {chunk}: transducer produced {count} outputs, expected exactly 1")


class ArtifactError(FscError):
    pass


def _line_col(source, offset):
    offset = max(0, min(offset, len(source)))
    line = source.count("\n", 0, offset) + 1
    column = offset - (source.rfind("\n", 0, offset) + 1) + 1
    return line, column
