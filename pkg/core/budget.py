"""
FIBRA - Node budget for backtracking searches.
"""

import threading
from typing import Optional

from core.config import settings
from core.errors import BudgetExceededError


class SearchBudget:
    """Counts search nodes; raises BudgetExceededError once `limit` is passed.

    One budget may be shared by several searches (and threads) of a single job.
    """

    def __init__(self, limit: Optional[int] = None, label: str = "search"):
        self.limit = int(limit if limit is not None else settings.SEARCH_BUDGET)
        if self.limit <= 0:
            raise ValueError("budget must be positive")
        self.label = label
        self.nodes = 0
        self._lock = threading.Lock()

    def tick(self, n: int = 1) -> None:
        with self._lock:
            self.nodes += n
            if self.nodes > self.limit:
                raise BudgetExceededError(
                    f"{self.label}: node budget {self.limit} exhausted; result inconclusive",
                    nodes=self.nodes,
                )


def ensure_budget(budget: Optional[SearchBudget], label: str = "search") -> SearchBudget:
    """Return `budget`, or a fresh one with the configured default limit."""
    return budget if budget is not None else SearchBudget(label=label)
