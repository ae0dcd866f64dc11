"""Cooperative cancellation for long-running eliminations.

A deadline is installed per invocation (the CLI wires --timeout-sec here).
Inner loops of determinants, resultants and divisions call check() between
pivots; the check is a no-op unless a deadline is set.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from contextvars import ContextVar

from .errors import ComputationCancelled

_deadline: ContextVar[float | None] = ContextVar("codim2_deadline", default=None)


def check() -> None:
    limit = _deadline.get()
    if limit is not None and time.monotonic() > limit:
        raise ComputationCancelled("computation exceeded the configured deadline")


@contextmanager
def deadline(seconds: float | None):
    """Run the enclosed computation with a wall-clock budget (None = unlimited)."""
    if seconds is None:
        yield
        return
    token = _deadline.set(time.monotonic() + seconds)
    try:
        yield
    finally:
        _deadline.reset(token)
