"""Per-invocation operation tallies.

Group operations in :mod:`idring.groups` and the hashes in :mod:`idring.hashing`
report into whichever :class:`OpCounts` is active in the current context. The
active tally lives in a :class:`contextvars.ContextVar`, so two measurements
running in different threads (or interleaved via nested ``counting()`` blocks)
never see each other's increments.
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses
from typing import Iterator, Optional


@dataclasses.dataclass
class OpCounts:
    pairings: int = 0
    base_muls: int = 0
    base_adds: int = 0
    key_muls: int = 0
    key_adds: int = 0
    gt_muls: int = 0
    gt_pows: int = 0
    scalar_muls: int = 0
    hash_calls: int = 0
    h2_calls: int = 0

    def as_dict(self) -> dict[str, int]:
        return dataclasses.asdict(self)


_active: contextvars.ContextVar[Optional[OpCounts]] = contextvars.ContextVar(
    "idring_op_counts", default=None
)


@contextlib.contextmanager
def counting() -> Iterator[OpCounts]:
    """Start a fresh, zeroed tally for the duration of the block."""
    counts = OpCounts()
    token = _active.set(counts)
    try:
        yield counts
    finally:
        _active.reset(token)


def tally(field: str, n: int = 1) -> None:
    counts = _active.get()
    if counts is not None:
        setattr(counts, field, getattr(counts, field) + n)
