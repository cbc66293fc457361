"""Exception hierarchy.

Every error carries a short machine-parseable ``code`` used by the CLI
for single-line error reporting.
"""


class DagexError(Exception):
    code = "error"


class GraphError(DagexError):
    """Malformed graph input or a graph violating an operation's precondition."""

    code = "graph"


class BudgetError(DagexError):
    """An exhaustive search would exceed its configured budget."""

    code = "budget"

    def __init__(self, message: str, required: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class EmptyResultError(DagexError):
    """An operation would produce an empty graph."""

    code = "empty-result"


class ParseError(DagexError):
    """Malformed serialized input."""

    code = "parse"
