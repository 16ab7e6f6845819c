import pytest

from utils.constants import THREADS_ENV
from utils.parallel import ordered_map, worker_count


@pytest.mark.parametrize("workers", [1, 2, 3, 8])
def test_ordered_map_keeps_input_order(workers):
    items = list(range(25))
    assert ordered_map(lambda x: x * x, items, workers=workers) == [x * x for x in items]


def test_ordered_map_empty():
    assert ordered_map(str, [], workers=4) == []


def test_worker_count_from_env(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert worker_count() == 3


@pytest.mark.parametrize("raw", ["zero", "0", "-2", ""])
def test_worker_count_ignores_bad_values(monkeypatch, raw):
    monkeypatch.setenv(THREADS_ENV, raw)
    assert worker_count(default=5) == 5
