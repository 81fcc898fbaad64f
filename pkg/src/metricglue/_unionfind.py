from __future__ import annotations

from typing import Hashable, Iterable


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: dict = {}
        self.size: dict = {}
        for x in items:
            self.add(x)

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        self.add(x)
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return True

    def connected(self, x, y) -> bool:
        return self.find(x) == self.find(y)

    def blocks(self, order: Iterable | None = None) -> list[tuple]:
        """Blocks as tuples; members and blocks follow ``order`` (insertion order by default)."""
        order = list(self.parent) if order is None else list(order)
        groups: dict = {}
        for x in order:
            groups.setdefault(self.find(x), []).append(x)
        return [tuple(g) for g in groups.values()]
