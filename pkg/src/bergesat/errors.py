"""Exception types raised across the package."""


class HypergraphError(ValueError):
    """Malformed hypergraph input."""


class EdgeOutOfRange(HypergraphError):
    pass


class WrongArity(HypergraphError):
    pass


class DuplicateVertexInEdge(HypergraphError):
    pass


class DuplicateEdge(HypergraphError):
    pass


class ParseError(HypergraphError):
    """Bad hypergraph or pattern text.

    ``line`` is 1-based; ``cause`` is the underlying exception when the
    failure came from edge validation, else None.
    """

    def __init__(self, line: int, message: str, cause: Exception | None = None):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.cause = cause


class InvalidParams(ValueError):
    pass


class NotDivisible(InvalidParams):
    pass


class NoFeasibleA(ValueError):
    pass


class TrialsExhausted(RuntimeError):
    def __init__(self, max_trials: int):
        super().__init__(f"no defect-free configuration within {max_trials} trials")
        self.max_trials = max_trials


class PatternTooLarge(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"search budget of {budget} candidate sets exceeded")
        self.budget = budget
