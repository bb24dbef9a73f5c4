class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured size cap."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: {size} exceeds budget {limit}")
        self.what = what
        self.size = size
        self.limit = limit


def check_budget(what: str, size: int, limit: int) -> None:
    if size > limit:
        raise BudgetExceeded(what, size, limit)
