"""Optional process-level parallelism with deterministic output order."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
U = TypeVar("U")


def pmap(fn: Callable[[T], U], items: Iterable[T], jobs: int = 1) -> list[U]:
    """list(map(fn, items)), fanned out over processes when jobs > 1.

    Results keep input order regardless of jobs, so callers produce
    identical output at any parallelism level.  fn must be picklable
    (a module-level function).
    """
    work = list(items)
    if jobs <= 1 or len(work) <= 1:
        return [fn(x) for x in work]
    with ProcessPoolExecutor(max_workers=min(jobs, len(work))) as ex:
        return list(ex.map(fn, work))
