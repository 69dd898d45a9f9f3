"""Bounded LRU memo used for carrier tables."""

from src.cache import CacheLayer


def test_hits_and_misses():
    cache = CacheLayer(max_entries=4)
    assert cache.get("k") is None
    cache.set("k", 1)
    assert cache.get("k") == 1
    stats = cache.stats()
    assert stats["hits"] == 1 and stats["misses"] == 1
    assert stats["hit_rate"] == 0.5
    assert stats["total_requests"] == 2


def test_least_recently_used_is_evicted():
    cache = CacheLayer(max_entries=2)
    cache.set("a", 1)
    cache.set("b", 2)
    cache.get("a")
    cache.set("c", 3)
    assert cache.get("b") is None
    assert cache.get("a") == 1 and cache.get("c") == 3
    assert cache.stats()["size"] == 2


def test_get_or_build_builds_once():
    cache = CacheLayer()
    calls = []

    def build():
        calls.append(1)
        return "table"

    assert cache.get_or_build("t", build) == "table"
    assert cache.get_or_build("t", build) == "table"
    assert len(calls) == 1


def test_clear_resets_stats():
    cache = CacheLayer()
    cache.set("a", 1)
    cache.get("a")
    cache.clear()
    assert cache.stats() == {"hits": 0, "misses": 0, "hit_rate": 0, "size": 0, "total_requests": 0}


def test_make_key_is_stable():
    cache = CacheLayer()
    key = cache.make_key(5, 3, [[1, 0], [0, 1]], kind="tables")
    assert key == cache.make_key(5, 3, [[1, 0], [0, 1]], kind="tables")
    assert key != cache.make_key(7, 3, [[1, 0], [0, 1]], kind="tables")
    assert len(key) == 32
