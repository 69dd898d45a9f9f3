"""
Simple bounded memo for expensive carrier computations.
Prevents rebuilding the same addition/bracket tables for equal algebras.
"""

import hashlib
import json
import logging
from collections import OrderedDict
from typing import Any, Callable, Dict, Optional

logger = logging.getLogger(__name__)


class CacheLayer:
    """
    A simple in-memory cache with a size bound.
    Entries are evicted least-recently-used first; values never expire
    because everything cached here is a pure function of its key.
    """

    def __init__(self, max_entries: int = 64):
        """
        Initialize cache.

        Args:
            max_entries: Maximum number of cached values before eviction
        """
        self._cache: "OrderedDict[str, Any]" = OrderedDict()
        self.max_entries = max_entries
        self._hits = 0
        self._misses = 0

    def get(self, key: str) -> Optional[Any]:
        """
        Get value from cache if present.

        Args:
            key: Cache key

        Returns:
            Cached value if found, None otherwise
        """
        if key in self._cache:
            self._hits += 1
            self._cache.move_to_end(key)
            logger.debug(f"Cache hit for key: {key[:32]}...")
            return self._cache[key]

        self._misses += 1
        return None

    def set(self, key: str, value: Any):
        """
        Store a value, evicting the oldest entry when full.

        Args:
            key: Cache key
            value: Value to cache
        """
        self._cache[key] = value
        self._cache.move_to_end(key)
        while len(self._cache) > self.max_entries:
            evicted, _ = self._cache.popitem(last=False)
            logger.debug(f"Evicted cache key: {evicted[:32]}...")

    def get_or_build(self, key: str, builder: Callable[[], Any]) -> Any:
        """Return the cached value for key, building and storing it on a miss."""
        value = self.get(key)
        if value is None:
            value = builder()
            self.set(key, value)
        return value

    def clear(self):
        """Clear all cached values."""
        self._cache.clear()
        self._hits = 0
        self._misses = 0
        logger.info("Cache cleared")

    def stats(self) -> Dict[str, Any]:
        """Get cache statistics."""
        total_requests = self._hits + self._misses
        hit_rate = self._hits / total_requests if total_requests > 0 else 0

        return {
            "hits": self._hits,
            "misses": self._misses,
            "hit_rate": hit_rate,
            "size": len(self._cache),
            "total_requests": total_requests,
        }

    def make_key(self, *args, **kwargs) -> str:
        """
        Create a cache key from arguments.

        Args:
            *args: Positional arguments to include in key
            **kwargs: Keyword arguments to include in key

        Returns:
            MD5 hash of the combined arguments
        """
        key_data = {"args": args, "kwargs": kwargs}

        # JSON gives a stable serialization for nested tuples/lists of ints
        key_str = json.dumps(key_data, sort_keys=True)

        return hashlib.md5(key_str.encode()).hexdigest()
