"""
Worker pool - runs independent benchmark blocks

Results come back in block order whatever the worker count; aggregation of
block results is associative.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_blocks(fn: Callable[[T], R], blocks: Sequence[T], threads: int = 1) -> List[R]:
    """
    Apply `fn` to every block

    Args:
        fn: Picklable module-level function (or functools.partial of one)
        blocks: Work items
        threads: Worker processes; 1 runs inline in this process

    Returns:
        List: One result per block, in block order
    """
    if threads <= 1 or len(blocks) <= 1:
        return [fn(block) for block in blocks]
    workers = min(threads, len(blocks))
    logger.info("Running %d blocks on %d worker processes", len(blocks), workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, blocks))


__all__ = ["map_blocks"]
