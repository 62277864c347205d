"""Exception hierarchy. The CLI maps each class to an exit code."""


class VulnetError(Exception):
    exit_code = 1


class ParseError(VulnetError, ValueError):
    exit_code = 2


class DomainError(VulnetError, ValueError):
    """A node index or parameter lies outside its valid range."""

    exit_code = 3


class ContractError(VulnetError):
    """An operation was called outside its documented preconditions."""

    exit_code = 3


class DisconnectedGraphError(ContractError):
    def __init__(self, n_components: int):
        super().__init__(f"graph is disconnected ({n_components} components)")
        self.n_components = n_components


class NotBipartiteError(ContractError):
    def __init__(self, cycle_edge=None):
        super().__init__("odd cycle found")
        self.cycle_edge = cycle_edge


class HallViolation(ContractError):
    """No saturating matching exists; ``violator`` is a set T with |T| > |N(T)|."""

    def __init__(self, violator):
        super().__init__(f"Hall condition violated by a set of {len(violator)} nodes")
        self.violator = violator


class BudgetExceeded(VulnetError):
    exit_code = 4
