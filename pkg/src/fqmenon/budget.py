import os

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured term budget."""

    def __init__(self, cost, budget):
        super().__init__(f"enumeration of {cost} terms exceeds budget {budget}")
        self.cost = cost
        self.budget = budget


def default_budget() -> int:
    env = os.environ.get("FQMENON_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def check_budget(cost: int, budget: int | None = None) -> None:
    if budget is None:
        budget = default_budget()
    if cost > budget:
        raise BudgetExceeded(cost, budget)
