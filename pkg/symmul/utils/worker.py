import multiprocessing
import os
import traceback
from typing import Callable, Iterable, List, TypeVar

__all__ = ['WorkerPool']

T = TypeVar('T')


class WorkerPool:
    def __init__(self, worker_cnt: int, log: Callable = None, verbose: bool = False):
        self._log = log or print
        self._verbose = verbose
        self._worker_cnt = max(1, int(worker_cnt))
        self.log(f'WorkerPool (size: {self._worker_cnt}) generated', debug=True)

    def __len__(self):
        return self._worker_cnt

    @property
    def parallel(self) -> bool:
        return self._worker_cnt > 1

    def log(self, *args, debug: bool = False):
        if debug and not self._verbose:
            return
        self._log('[parent]', *args)

    def _chunksize(self, size: int) -> int:
        return max(1, (size + 4 * self._worker_cnt - 1) // (4 * self._worker_cnt))

    def map(self, func: Callable[..., T], items: Iterable, name: str = None) -> List[T]:
        items = list(items)
        name = name or f'{func.__name__}s'
        if not items:
            self.log(f'no {name} to process', debug=True)
            return []

        if not self.parallel:
            self.log(f'process {len(items)} {name} in {os.getpid()}', debug=True)
            return [func(item) for item in items]

        chunksize = self._chunksize(len(items))
        self.log(f'distribute {len(items)} {name} (chunk: {chunksize}, func: {func.__name__})', debug=True)
        try:
            with multiprocessing.Pool(self._worker_cnt) as pool:
                results = pool.map(func, items, chunksize=chunksize)
        except Exception:
            self.log('task failed')
            self.log(traceback.format_exc())
            raise
        self.log('all workers done', debug=True)
        return results

    def starmap(self, func: Callable[..., T], items: Iterable[tuple], name: str = None) -> List[T]:
        return self.map(_Star(func), items, name=name or f'{func.__name__}s')


class _Star:
    def __init__(self, func: Callable):
        self.func = func
        self.__name__ = func.__name__

    def __call__(self, args: tuple):
        return self.func(*args)
