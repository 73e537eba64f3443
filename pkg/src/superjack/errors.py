"""Exception types shared across the package."""


class SuperJackError(Exception):
    """Base class for all package errors."""


class ValidationError(SuperJackError, ValueError):
    """Malformed input: bad superpartition, bad degree, bad string."""


class ParseError(ValidationError):
    """Unparseable text input; carries the offending position."""

    def __init__(self, message, text, pos):
        super().__init__("%s (at position %d in %r)" % (message, pos, text))
        self.text = text
        self.pos = pos


class PoleError(SuperJackError, ZeroDivisionError):
    """Substitution hit a zero of the denominator."""


class LinearAlgebraError(SuperJackError):
    """Singular system or unexpected kernel dimension in an exact solve."""


class IdentityViolation(SuperJackError):
    """An identity that must hold exactly failed.

    Carries the name of the violated identity and both offending sides,
    serialized, so a caller can print or minimize the counterexample.
    """

    def __init__(self, tag, lhs, rhs, context=""):
        self.tag = tag
        self.lhs = str(lhs)
        self.rhs = str(rhs)
        self.context = context
        msg = "identity %r violated" % tag
        if context:
            msg += " [%s]" % context
        msg += ": lhs=%s rhs=%s" % (self.lhs, self.rhs)
        super().__init__(msg)
