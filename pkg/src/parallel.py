"""Ordered worker-pool map with a progress bar."""
import logging
from multiprocessing import Pool
from typing import Callable, Iterable, List, Optional, TypeVar

from tqdm import tqdm

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

BAR_FORMAT = '{l_bar}{bar}| {n_fmt}/{total_fmt} [{elapsed}<{remaining}, {rate_fmt}]'


def progress(items: Iterable[T], total: Optional[int] = None, desc: Optional[str] = None,
             verbose: bool = True) -> Iterable[T]:
    """Wrap an iterable in a tqdm bar when verbose, otherwise return it untouched."""
    if not verbose:
        return items
    return tqdm(items, total=total, desc=desc, unit="inst", ncols=100,
                bar_format=BAR_FORMAT, leave=False)


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1,
                 desc: Optional[str] = None, verbose: bool = False,
                 chunksize: int = 64) -> List[R]:
    """Apply fn to every item; results come back in input order.

    With workers > 1 the items are farmed out to a process pool, so fn and the
    items must be picklable (module-level functions, frozen dataclasses). Each
    worker process keeps its own module-level evaluation cache.
    """
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in progress(items, len(items), desc, verbose)]
    logger.debug("%s: %d items on %d workers", desc or "parallel_map", len(items), workers)
    with Pool(processes=workers) as pool:
        results = pool.imap(fn, items, chunksize=max(1, min(chunksize, len(items) // workers or 1)))
        return list(progress(results, len(items), desc, verbose))
