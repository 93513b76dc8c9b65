import threading

import pytest

from job_queue import run_jobs


def test_results_keep_task_order():
    tasks = [lambda value=value: value * value for value in range(20)]
    assert run_jobs(tasks) == [value * value for value in range(20)]
    assert run_jobs(tasks, jobs=4) == [value * value for value in range(20)]


def test_uses_worker_threads():
    names = run_jobs([lambda: threading.current_thread().name for _ in range(8)], jobs=3)
    assert threading.main_thread().name not in names


def test_empty():
    assert run_jobs([], jobs=4) == []


def test_first_failure_is_raised_after_all_tasks():
    finished = []

    def fail(message):
        raise KeyError(message)

    tasks = [lambda: finished.append(1), lambda: fail("first"), lambda: fail("second"), lambda: finished.append(2)]
    with pytest.raises(KeyError, match="first"):
        run_jobs(tasks, jobs=2)
    assert sorted(finished) == [1, 2]


def test_sequential_failure():
    with pytest.raises(ZeroDivisionError):
        run_jobs([lambda: 1 / 0])
