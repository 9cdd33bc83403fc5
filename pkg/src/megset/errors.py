"""Exception hierarchy shared by all modules."""


class MegError(Exception):
    pass


class GraphError(MegError, ValueError):
    pass


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class IndexOutOfRange(GraphError):
    pass


class UnknownEdge(GraphError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class UnknownVertex(GraphError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class EmptyFactor(GraphError):
    pass


class BadParameter(MegError, ValueError):
    pass


class ParseError(MegError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class AssumptionViolated(MegError):
    """A CNF formula does not meet the preconditions of the gadget construction."""

    def __init__(self, assumption: str, detail: str = ""):
        self.assumption = assumption
        super().__init__(f"{assumption}: {detail}" if detail else assumption)


class BudgetExhausted(MegError):
    """The search hit its node or time limit.

    ``lower`` and ``upper`` bracket the optimum; ``witness`` is the best
    MEG-set found so far (it always has size ``upper``).
    """

    def __init__(self, lower: int, upper: int, witness=None, nodes: int = 0):
        self.lower = lower
        self.upper = upper
        self.witness = witness
        self.nodes = nodes
        super().__init__(f"search budget exhausted after {nodes} nodes; meg in [{lower}, {upper}]")


class LimitExceeded(MegError):
    def __init__(self, partial, limit: int):
        self.partial = partial
        self.limit = limit
        super().__init__(f"more than {limit} minimal MEG-sets; returned the first {len(partial)}")
