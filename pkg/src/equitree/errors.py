"""Exception hierarchy for parsing, state mutation and solver failures."""


class EquitreeError(Exception):
    pass


# -- edge-list parsing ------------------------------------------------------


class ParseError(EquitreeError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SelfLoop(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class BadToken(ParseError):
    pass


class VertexOutOfRange(ParseError):
    pass


# -- coloring state ---------------------------------------------------------


class PreconditionViolated(EquitreeError):
    pass


class FrozenVertex(PreconditionViolated):
    pass


class InvariantBroken(EquitreeError):
    """Raised by debug checks when a class stops being a forest or sizes drift."""


# -- solver failures --------------------------------------------------------


class SolverFailure(EquitreeError):
    """A solver could not finish. Only reachable on the BestEffort branch."""

    kind = "SolverFailure"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        return {"kind": self.kind, "message": str(self), **self.details}


class NoMoveAvailable(SolverFailure):
    kind = "NoMoveAvailable"


class NotEnoughVertices(SolverFailure):
    kind = "NotEnoughVertices"


class NoClassAvailable(SolverFailure):
    kind = "NoClassAvailable"


class NoAugmentingClass(SolverFailure):
    kind = "NoAugmentingClass"


class EmptyY0(SolverFailure):
    kind = "EmptyY0"


class BudgetExceeded(EquitreeError):
    pass
