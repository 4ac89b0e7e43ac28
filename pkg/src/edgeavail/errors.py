"""Exception types shared across the package."""


class EdgeavailError(Exception):
    """Base class for every error raised by this package."""


class ParseError(EdgeavailError):
    """Syntax error in an expression, model document, or fault-tree file.

    Carries the 1-based ``line`` and ``column`` of the offending token and
    the set of token descriptions that would have been accepted there.
    """

    def __init__(self, message, line=None, column=None, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        loc = f" at line {line}, column {column}" if line is not None else ""
        hint = f" (expected: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{loc}{hint}")


class SemanticError(EdgeavailError):
    """Well-formed syntax but an invalid model (undeclared name, bad probability, ...)."""


class EvaluationError(EdgeavailError):
    """Expression evaluation failed."""


class UnknownIdentifier(EvaluationError):
    def __init__(self, name, kind="identifier"):
        self.name = name
        super().__init__(f"unknown {kind} '{name}'")


class DivisionByZero(EvaluationError):
    def __init__(self, context=""):
        suffix = f" in {context}" if context else ""
        super().__init__(f"division by zero{suffix}")


class NotEnabled(EdgeavailError):
    def __init__(self, activity):
        self.activity = activity
        super().__init__(f"activity '{activity}' is not enabled in this marking")


class NegativeTokens(EdgeavailError):
    def __init__(self, place, activity):
        self.place = place
        self.activity = activity
        super().__init__(
            f"firing '{activity}' would drive place '{place}' below zero tokens"
        )


class StateSpaceExceeded(EdgeavailError):
    def __init__(self, max_states):
        self.max_states = max_states
        super().__init__(f"state space exceeds max_states={max_states}")


class VanishingLoop(EdgeavailError):
    """A cycle of vanishing markings with return probability ~1."""


class NotIrreducible(EdgeavailError):
    """The tangible chain is not a single strongly connected class."""


class UnknownReward(EdgeavailError):
    def __init__(self, name, known):
        self.name = name
        super().__init__(f"unknown reward '{name}' (declared: {', '.join(known) or 'none'})")


class NotConverged(EdgeavailError):
    def __init__(self, iterations, change, residual):
        self.iterations = iterations
        self.change = change
        self.residual = residual
        super().__init__(
            f"iterative solver did not converge after {iterations} sweeps "
            f"(last change {change:.3e}, residual {residual:.3e})"
        )


class VanishingLivelock(EdgeavailError):
    def __init__(self, limit):
        super().__init__(
            f"more than {limit} consecutive instantaneous firings without time advance"
        )
