"""Suffix array, LCP, LPF and the online SA_k enumeration.

All arrays are Python lists padded with a dummy slot at index 0, so that
``index.sa[r]`` is the suffix of rank ``r`` and ``index.lpf[i]`` belongs to
text position ``i``, both 1-based.  ``index.sa[1:]`` gives the plain array.
"""

from __future__ import annotations

from typing import Iterator, List, Optional, Tuple

import numpy as np


def suffix_array(data: bytes) -> np.ndarray:
    """Return the 0-based suffix array of ``data`` by prefix doubling.

    Each round sorts on a single combined (rank, next rank) key, so the cost
    is dominated by ``log(max lcp)`` argsorts.
    """
    n = len(data)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    rank = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while k < n:
        second = np.zeros(n, dtype=np.int64)
        second[: n - k] = rank[k:] + 1
        key = rank * (int(rank.max()) + 2) + second
        sa = np.argsort(key, kind="stable")
        ordered = key[sa]
        fresh = np.empty(n, dtype=np.int64)
        fresh[sa] = np.concatenate(([0], np.cumsum(ordered[1:] != ordered[:-1])))
        rank = fresh
        if rank[sa[-1]] == n - 1:
            break
        k *= 2
    return sa


def kasai_lcp(data: bytes, sa: List[int], isa: List[int]) -> List[int]:
    """LCP array (1-based, padded) from a padded SA/ISA pair in O(n)."""
    n = len(data)
    lcp = [0] * (n + 1)
    h = 0
    for i in range(n):
        r = isa[i + 1]
        if r == 1:
            h = 0
            continue
        j = sa[r - 1] - 1
        while i + h < n and j + h < n and data[i + h] == data[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


def _factor_sweep(sa: List[int], lcp: List[int], n: int, earlier: bool) -> Tuple[List[int], List[int]]:
    """Longest previous (``earlier``) or next factor with an occurrence for each position.

    Single pass over SA with a stack of ranks whose positions are monotone.
    When a rank is popped, the element below it is its nearest qualifying
    neighbour on the left and the current rank is the one on the right; the
    stack entries carry the lcp with the element beneath them.  Ties between
    the two neighbours go to the smaller rank.
    """
    lengths = [0] * (n + 1)
    refs = [0] * (n + 1)
    if n == 0:
        return lengths, refs
    keys = sa if earlier else [-x for x in sa]
    work = lcp[:]
    stack = [1]
    pop = stack.pop
    push = stack.append
    for r in range(2, n + 1):
        cur = work[r]
        key = keys[r]
        pos = sa[r]
        while stack and key < keys[stack[-1]]:
            top = pop()
            left = work[top]
            if left >= cur:
                if left:
                    lengths[sa[top]] = left
                    refs[sa[top]] = sa[stack[-1]]
            else:
                lengths[sa[top]] = cur
                refs[sa[top]] = pos
                cur = left
        work[r] = cur
        push(r)
    while stack:
        top = pop()
        left = work[top]
        if left:
            lengths[sa[top]] = left
            refs[sa[top]] = sa[stack[-1]]
    return lengths, refs


class TextIndex:
    """SA, ISA, LCP and LPF over one text, plus previous-occurrence references.

    ``prev_occ[i]`` is a position ``p < i`` with ``lcp(i, p) == lpf[i]``
    (0 when ``lpf[i] == 0``).  Immutable once built.
    """

    def __init__(self, text: bytes):
        self.text = bytes(text)
        self.n = n = len(self.text)
        sa0 = suffix_array(self.text)
        self.sa: List[int] = [0] + (sa0 + 1).tolist()
        isa = np.empty(n + 1, dtype=np.int64)
        isa[0] = 0
        if n:
            isa[sa0 + 1] = np.arange(1, n + 1)
        self.isa: List[int] = isa.tolist()
        self.lcp = kasai_lcp(self.text, self.sa, self.isa)
        self.lpf, self.prev_occ = _factor_sweep(self.sa, self.lcp, n, earlier=True)
        self._sparse: Optional[List[np.ndarray]] = None

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"TextIndex(n={self.n})"

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} out of range 1..{self.n}")

    def _range_min_table(self) -> List[np.ndarray]:
        if self._sparse is None:
            levels = [np.asarray(self.lcp, dtype=np.int64)]
            width = 1
            while 2 * width <= self.n:
                prev = levels[-1]
                levels.append(np.minimum(prev[:-width], prev[width:]))
                width *= 2
            self._sparse = levels
        return self._sparse

    def lcp_of(self, i: int, j: int) -> int:
        """Length of the longest common prefix of suffixes ``i`` and ``j``."""
        self._check(i)
        self._check(j)
        if i == j:
            return self.n - i + 1
        a, b = sorted((self.isa[i], self.isa[j]))
        # lcp = min LCP[a+1..b]
        lo, hi = a + 1, b
        level = (hi - lo + 1).bit_length() - 1
        table = self._range_min_table()[level]
        return int(min(table[lo], table[hi - (1 << level) + 1]))

    def neighborhood(self, k: int) -> "SuffixNeighborhood":
        return SuffixNeighborhood(self, k)

    def next_factors(self) -> Tuple[List[int], List[int]]:
        """LNF lengths and a later occurrence (``ref > i``) for each position."""
        return _factor_sweep(self.sa, self.lcp, self.n, earlier=False)


class SuffixNeighborhood:
    """Iterator over ``(j, lcp(k, j))`` in SA_k order.

    The window ``[lo..hi]`` of SA ranks around ``isa[k]`` grows by one rank
    per step; ``p`` and ``q`` cache the lcp of ``k`` with the suffixes at the
    window ends.  On equal lcp the left (smaller-rank) side is taken first.
    Exhaustion raises ``StopIteration`` like any iterator.
    """

    __slots__ = ("index", "origin", "lo", "hi", "p", "q", "_started")

    def __init__(self, index: TextIndex, k: int):
        index._check(k)
        self.index = index
        self.origin = k
        self.lo = self.hi = index.isa[k]
        self.p = self.q = index.n - k + 1
        self._started = False

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return self

    def __next__(self) -> Tuple[int, int]:
        if not self._started:
            self._started = True
            return self.origin, self.p
        index = self.index
        lo, hi = self.lo, self.hi
        left = min(index.lcp[lo], self.p) if lo > 1 else -1
        right = min(index.lcp[hi + 1], self.q) if hi < index.n else -1
        if left < 0 and right < 0:
            raise StopIteration
        if left >= right:
            self.lo = lo - 1
            self.p = left
            return index.sa[lo - 1], left
        self.hi = hi + 1
        self.q = right
        return index.sa[hi + 1], right


def build_index(text: bytes) -> TextIndex:
    return TextIndex(text)


def lnf(text: bytes) -> List[int]:
    """Longest next factor: ``lnf[i]`` is the longest prefix of ``T[i..]`` occurring in ``T[i+1..]``.

    Returned 1-based and padded like the index arrays.
    """
    return TextIndex(text).next_factors()[0]


def lpf_prime(text: bytes) -> List[int]:
    """Longest factor ending at ``i`` that also occurs inside ``T[1..i-1]``.

    Computed as the LNF of the reversed text read backwards.
    """
    n = len(text)
    rev = lnf(bytes(reversed(text)))
    return [0] + [rev[n - x + 1] for x in range(1, n + 1)]
