"""Union-find over text positions keyed by source, and the scratch overlay used by LF.

A *source* is the position of the character phrase that ultimately supplies
a position's byte.  Every set in :class:`SourceForest` contains exactly one
source, and ``find_source`` returns it.  :class:`ScratchOverlay` simulates
appending a tentative target phrase on top of a forest without touching it.
"""

from __future__ import annotations

from typing import List


class CycleError(ValueError):
    """A union would make a position reference itself through a chain of copies."""


class SourceForest:
    """Disjoint sets over positions ``1..n`` with union by rank and path compression.

    ``steps`` counts parent-pointer hops made by ``find_source``; it exists so
    callers can check the amortized cost of a whole parse.
    """

    def __init__(self, n: int):
        self.n = n
        self.parent: List[int] = list(range(n + 1))
        self.rank: List[int] = [0] * (n + 1)
        # source position of the set, valid at roots only
        self.label: List[int] = list(range(n + 1))
        self.steps = 0
        self.finds = 0

    def __len__(self) -> int:
        return self.n

    def _root(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
            self.steps += 1
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def find_source(self, x: int) -> int:
        if not 1 <= x <= self.n:
            raise IndexError(f"position {x} out of range 1..{self.n}")
        self.finds += 1
        return self.label[self._root(x)]

    def commit_union(self, copied: int, referenced: int) -> None:
        """Make ``copied`` a copy of ``referenced``.

        The merged set keeps the source of ``referenced``.  Raises
        :class:`CycleError` when both already share a source.
        """
        if not (1 <= copied <= self.n and 1 <= referenced <= self.n):
            raise IndexError(f"positions ({copied}, {referenced}) out of range 1..{self.n}")
        a = self._root(copied)
        b = self._root(referenced)
        if a == b:
            raise CycleError(f"positions {copied} and {referenced} already share source {self.label[a]}")
        source = self.label[b]
        rank = self.rank
        if rank[a] > rank[b]:
            a, b = b, a
        elif rank[a] == rank[b]:
            rank[b] += 1
        self.parent[a] = b
        self.label[b] = source

    def sources(self) -> List[int]:
        """``find_source`` for every position, 1-based and padded."""
        return [0] + [self.find_source(x) for x in range(1, self.n + 1)]


class ScratchOverlay:
    """Second union-find emulating ``forest`` extended by a tentative phrase.

    The tentative phrase starts at ``start`` and currently spans ``length``
    positions.  Only positions on it and their sources are registered in the
    overlay; ``w[x]`` maps such a position to its overlay id, ``-1`` otherwise.
    ``w`` is allocated once and cleared through ``touched``.
    """

    def __init__(self, forest: SourceForest):
        self.forest = forest
        self.w: List[int] = [-1] * (forest.n + 1)
        self.touched: List[int] = []
        self.parent: List[int] = []
        self.rank: List[int] = []
        self.label: List[int] = []
        self.start = 1
        self.length = 0
        self.last_touched = 0

    def begin(self, start: int) -> None:
        if self.touched or self.length:
            self.reset()
        self.start = start

    def _make_set(self, x: int) -> int:
        w = self.w[x]
        if w != -1:
            return w
        w = len(self.parent)
        self.parent.append(w)
        self.rank.append(0)
        self.label.append(x)
        self.w[x] = w
        self.touched.append(x)
        return w

    def _root(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def source(self, x: int) -> int:
        """Source of ``x`` once the tentative phrase is appended; the forest is only read."""
        y = self.forest.find_source(x)
        if self.start <= y < self.start + self.length:
            return self.label[self._root(self.w[y])]
        return y

    def union(self, copied: int, referenced: int) -> None:
        """Grow the tentative phrase by one position: ``copied`` now copies ``referenced``."""
        if copied != self.start + self.length:
            raise ValueError(f"expected the next phrase position {self.start + self.length}, got {copied}")
        source = self.source(referenced)
        if source == copied:
            raise CycleError(f"position {copied} would reach itself through {referenced}")
        self.attach(copied, source)

    def attach(self, copied: int, source: int) -> None:
        """``union`` with the referenced side's source already resolved."""
        a = self._root(self._make_set(copied))
        b = self._root(self._make_set(source))
        rank = self.rank
        if rank[a] > rank[b]:
            a, b = b, a
        elif rank[a] == rank[b]:
            rank[b] += 1
        self.parent[a] = b
        self.label[b] = source
        self.length += 1

    def extension(self, start: int, ref: int, bound: int) -> int:
        """Longest ``length <= bound`` such that copying ``ref..`` onto ``start..`` stays acyclic.

        Same result as ``begin(start)`` followed by ``union`` calls while
        ``source(ref + k) != start + k``, fused into one loop.  Resets the
        overlay before returning.
        """
        self.begin(start)
        forest = self.forest
        fparent = forest.parent
        flabel = forest.label
        w = self.w
        parent = self.parent
        rank = self.rank
        label = self.label
        touched = self.touched
        hops = 0
        length = 0
        while length < bound:
            c = start + length
            x = ref + length
            root = x
            while fparent[root] != root:
                root = fparent[root]
                hops += 1
            while fparent[x] != root:
                fparent[x], x = root, fparent[x]
            s = flabel[root]
            if start <= s < c:
                x = w[s]
                root = x
                while parent[root] != root:
                    root = parent[root]
                while parent[x] != root:
                    parent[x], x = root, parent[x]
                s = label[root]
            # c is not parsed yet, so it is its own source
            if s == c:
                break
            a = w[c]
            if a == -1:
                a = w[c] = len(parent)
                parent.append(a)
                rank.append(0)
                label.append(c)
                touched.append(c)
            else:
                while parent[a] != a:
                    a = parent[a]
            b = w[s]
            if b == -1:
                b = w[s] = len(parent)
                parent.append(b)
                rank.append(0)
                label.append(s)
                touched.append(s)
            else:
                while parent[b] != b:
                    b = parent[b]
            if rank[a] > rank[b]:
                a, b = b, a
            elif rank[a] == rank[b]:
                rank[b] += 1
            parent[a] = b
            label[b] = s
            length += 1
        forest.steps += hops
        forest.finds += length + 1
        self.length = length
        self.reset()
        return length

    def reset(self) -> None:
        w = self.w
        for x in self.touched:
            w[x] = -1
        self.last_touched = len(self.touched)
        self.touched.clear()
        self.parent.clear()
        self.rank.clear()
        self.label.clear()
        self.length = 0
