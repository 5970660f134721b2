class SimbeliefError(Exception):
    """Base class for all library errors."""


class ModelError(SimbeliefError, ValueError):
    """Structurally malformed model input."""


class ModelFormatError(ModelError):
    """A model or map file that cannot be decoded."""


class InvalidModelError(ModelError):
    """An operation that needs a validated model got one that fails validation."""

    def __init__(self, report):
        self.report = report
        lines = "; ".join(str(v) for v in report.violations[:3])
        super().__init__(f"model fails validation: {lines}")


class QueryError(SimbeliefError, KeyError):
    """Unknown agent, world, or similar lookup failure."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class FormulaSyntaxError(SimbeliefError, ValueError):
    def __init__(self, message: str, text: str, pos: int, expected=()):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"line {self.line}, column {self.column}: {message}{detail}")


class MapError(SimbeliefError, ValueError):
    """Vertex map that is not total on the faces it is applied to."""


class PreconditionError(SimbeliefError, ValueError):
    pass
