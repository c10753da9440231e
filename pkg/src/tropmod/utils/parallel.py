"""
Worker Pool
===========

Runs independent pieces of an exhaustive computation (subset contractions,
per-base comparisons) either inline or across worker processes. Results
always come back in input order, so merged outputs do not depend on the
schedule.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

from loguru import logger

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """
    Bounded process pool with an inline fast path.

    ``workers == 1`` never spawns a process; callables then need not be
    picklable. With more workers, ``fn`` must be a module-level function.
    """

    def __init__(self, workers: int = 1, chunksize: int = 16):
        """
        Initialize the pool.

        Args:
            workers: Number of worker processes (1 = run inline)
            chunksize: Items handed to a worker per round trip
        """
        self.workers = max(1, int(workers))
        self.chunksize = max(1, int(chunksize))

    def map(self, fn: Callable[[T], R], items: Iterable[T], label: Optional[str] = None) -> List[R]:
        """
        Apply ``fn`` to every item, preserving order.

        Args:
            fn: Function to apply
            items: Inputs
            label: Short description for the log

        Returns:
            List of results in input order
        """
        work: Sequence[T] = list(items)
        if label:
            logger.debug(f"{label}: {len(work)} jobs on {self.workers} worker(s)")
        if self.workers == 1 or len(work) < 2:
            return [fn(item) for item in work]

        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            return list(executor.map(fn, work, chunksize=self.chunksize))
