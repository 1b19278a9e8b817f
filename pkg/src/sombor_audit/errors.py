"""Exception types raised across the package."""


class SomborAuditError(Exception):
    """Base class for all package errors."""


class ParseError(SomborAuditError, ValueError):
    """Malformed input text.

    ``line`` is set by line-oriented readers (edge lists, family files),
    ``position`` and ``expected`` by the expression parser.
    """

    def __init__(self, message, *, line=None, position=None, expected=()):
        self.line = line
        self.position = position
        self.expected = tuple(sorted(expected))
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"position {position}")
        text = message
        if where:
            text = f"{', '.join(where)}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


class ValidationError(SomborAuditError, ValueError):
    """Structurally invalid graph (self-loop, duplicate edge, bad endpoint)."""


class NoCoveringPiece(SomborAuditError, LookupError):
    """No region of a piecewise form contains the requested (p, q)."""


class RegionMismatch(SomborAuditError, ValueError):
    """Piecewise forms split the parameter plane incompatibly."""


class _LookupMessage(SomborAuditError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class UnknownFamily(_LookupMessage):
    pass


class UnknownTheorem(_LookupMessage):
    pass


class NegativeCount(SomborAuditError, ValueError):
    """A partition count evaluated below zero."""

    def __init__(self, family, pair, p, q, value):
        self.family = family
        self.pair = pair
        self.p = p
        self.q = q
        self.value = value
        super().__init__(
            f"{family}: |E{{{pair[0]},{pair[1]}}}| = {value} < 0 at (p, q) = ({p}, {q})"
        )


class NotRadicalClosed(SomborAuditError, TypeError):
    """An index weight is not expressible as an exact radical value."""


class ZeroVertices(SomborAuditError, ValueError):
    pass


class DivisionByZero(SomborAuditError, ZeroDivisionError):
    pass


class NegativeSqrt(SomborAuditError, ValueError):
    pass
