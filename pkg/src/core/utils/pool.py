"""Bounded worker pool with order-preserving results"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from config import settings

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(threads: Optional[int]) -> int:
    """Return the pool size for an optional ``--threads`` value.

    Args:
        threads: Requested worker count; ``None`` or 0 falls back to settings

    Returns:
        Worker count, at least 1
    """
    if threads:
        return max(1, threads)
    return settings.worker_threads


def ordered_map(
    fn: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None
) -> List[R]:
    """Apply ``fn`` to every item, results in input order.

    numpy releases the GIL inside its kernels, so threads give real parallelism for
    the array work done per item. With one worker the calls run inline.

    Args:
        fn: Function applied to each item
        items: Items to process
        workers: Pool size (see ``resolve_workers``)

    Returns:
        List of results aligned with ``items``
    """
    items = list(items)
    count = resolve_workers(workers)
    if count == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(count, len(items))) as executor:
        return list(executor.map(fn, items))
