"""Exception and warning types raised by dialectdist."""


class DialectDistError(Exception):
    """Base class for all dialectdist errors."""


class InputError(DialectDistError):
    """Problem reading an input file (exit status 2 on the command line)."""


class ParseError(InputError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
            if line is not None:
                where += f"{line}:"
            where += " "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(f"{where}{message}")


class EncodingError(ParseError):
    """Input bytes are not valid UTF-8."""


class ValidationError(DialectDistError):
    """Input parsed fine but violates the concept-list contract."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        prefix = f"{path}:{line}: " if path is not None and line is not None else ""
        super().__init__(prefix + message)


class AnalysisError(DialectDistError):
    """Comparison or classification cannot proceed (exit status 1)."""


class NoOverlapError(AnalysisError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"no overlap: varieties {pair[0]} and {pair[1]} share no attested concept")


class UnknownMetricError(KeyError):
    def __init__(self, name, valid):
        self.name = name
        self.valid = tuple(valid)
        super().__init__(name)

    def __str__(self):
        return f"unknown metric {self.name!r}; valid metrics are {{{', '.join(self.valid)}}}"


class DuplicateFormWarning(UserWarning):
    """The same normalized form was listed twice for one concept; the copy is dropped."""
