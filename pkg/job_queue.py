import logging
import threading
from queue import Queue
from traceback import print_exc
from typing import Callable, TypeVar

from config import settings

T = TypeVar("T")


class _Failure:
    def __init__(self, error: BaseException):
        self.error = error


def _worker(task_queue: Queue, results: list):
    while True:
        position, task = task_queue.get()
        try:
            results[position] = task()
        except Exception as e:
            logging.error(f"Worker error on job {position}: {e}")
            if settings.debug:
                print_exc()
            results[position] = _Failure(e)
        finally:
            task_queue.task_done()


def run_jobs(tasks: list[Callable[[], T]], jobs: int = 1) -> list[T]:
    """
    Runs the tasks on `jobs` daemon worker threads and returns their results in task order.
    The first failing task (in task order) has its exception re-raised once every task is done.
    """
    results: list = [None] * len(tasks)
    if jobs <= 1 or len(tasks) <= 1:
        for position, task in enumerate(tasks):
            results[position] = task()
        return results
    task_queue = Queue()
    for _ in range(min(jobs, len(tasks))):
        threading.Thread(target=_worker, args=(task_queue, results), daemon=True).start()
    for position, task in enumerate(tasks):
        task_queue.put((position, task))
    task_queue.join()
    for result in results:
        if isinstance(result, _Failure):
            raise result.error
    return results
