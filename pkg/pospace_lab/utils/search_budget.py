"""Context-local bound on exhaustive searches (the ``--max-maps`` guard)."""
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator

from pospace_lab.exception import SizeGuardExceeded
from pospace_lab.utils.config_loader import load_config

_MAX_MAPS: ContextVar[int | None] = ContextVar("pospace_lab_max_maps", default=None)


def current_limit() -> int:
    limit = _MAX_MAPS.get()
    if limit is None:
        return int(load_config().get("search", {}).get("max_maps", 1_000_000))
    return limit


@contextmanager
def search_limit(max_maps: int) -> Iterator[int]:
    if max_maps <= 0:
        raise ValueError(f"max_maps must be positive, got {max_maps}")
    token = _MAX_MAPS.set(max_maps)
    try:
        yield max_maps
    finally:
        _MAX_MAPS.reset(token)


class SearchCounter:
    """Counts visited nodes of one backtracking search and trips the guard."""

    __slots__ = ("bound", "context", "visited")

    def __init__(self, context: str, bound: int | None = None):
        self.bound = current_limit() if bound is None else bound
        self.context = context
        self.visited = 0

    def tick(self, amount: int = 1) -> None:
        self.visited += amount
        if self.visited > self.bound:
            raise SizeGuardExceeded(self.bound, self.context)
