"""Exception hierarchy shared by the kernel and the command line."""


class Z2nError(Exception):
    """Base class for domain errors (bad input, failed preconditions)."""


class DimensionError(Z2nError):
    """Mismatched ambient rank n between degrees or shapes."""


class AlgebraMismatch(Z2nError):
    pass


class ShapeMismatch(Z2nError):
    pass


class DegreeViolation(Z2nError):
    """An entry or component is not homogeneous of the required degree."""


class ParityViolation(Z2nError):
    """An exponent > 1 on a generator with odd self-pairing."""


class NonInvertible(Z2nError):
    pass


# both names are used for the same failure
NotInvertible = NonInvertible


class WrongDegreeComponent(DegreeViolation):
    pass


class CapTooSmall(Z2nError):
    pass


class NotNatural(Z2nError):
    pass


class NotLinear(Z2nError):
    pass


class ParseError(Z2nError):
    """Text input could not be read. Carries an optional line/column."""

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


class GrammarError(ParseError):
    """Malformed text (the grammar-level syntax error)."""
