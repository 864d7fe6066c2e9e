"""Deterministic parallel map."""
import logging
import os
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from multiprocessing.context import BaseContext
from typing import TypeVar

from src.core.config import get_config, set_config

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_jobs(jobs: int | None) -> int:
    """Number of workers to use; None means all available cores."""
    if jobs is None:
        return max(1, os.cpu_count() or 1)
    return max(1, jobs)


def ordered_map(
    fn: Callable[[T], R],
    items: Iterable[T],
    jobs: int | None = 1,
    mp_context: BaseContext | None = None,
) -> list[R]:
    """
    Apply fn to every item, returning results in item order.

    Scheduling never changes the result order, so output built from the
    returned list is identical for any worker count. fn and items must be
    picklable when more than one worker is used. Workers start with a copy
    of the calling process's active config.
    """
    work: Sequence[T] = list(items)
    workers = min(resolve_jobs(jobs), len(work)) if work else 1
    if workers <= 1:
        return [fn(item) for item in work]

    logger.debug("mapping %d tasks over %d workers", len(work), workers)
    with ProcessPoolExecutor(
        max_workers=workers,
        mp_context=mp_context,
        initializer=set_config,
        initargs=(get_config(),),
    ) as ex:
        return list(ex.map(fn, work))
