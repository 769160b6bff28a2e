"""Shared cached fixtures: enumerated families and their tables."""

from functools import lru_cache

from chainisom import Family, build_table, enumerate_fast


@lru_cache(maxsize=None)
def elements(n: int, family: Family):
    return tuple(enumerate_fast(n, family))


@lru_cache(maxsize=None)
def table(n: int, family: Family):
    return build_table(list(elements(n, family)))
