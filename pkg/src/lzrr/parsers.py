"""LZ77, LZ', LZOR, lex-parse and LZRR.

Every parser maps ``bytes`` to a :class:`~lzrr.parse_core.Parse` that is valid
for that text.  Only phrase lengths are determined by the algorithms; where
several references would do, the choice is documented per function.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Tuple

from lzrr.parse_core import Literal, Parse, Phrase, Target
from lzrr.source_forest import ScratchOverlay, SourceForest
from lzrr.text_index import TextIndex


def lz77(text: bytes, index: Optional[TextIndex] = None) -> Parse:
    """Greedy left-to-right parse, each phrase the longest previous factor.

    References come from the LPF sweep and always point left.
    """
    if index is None:
        index = TextIndex(text)
    lpf, prev = index.lpf, index.prev_occ
    n = len(text)
    phrases: List[Phrase] = []
    i = 1
    while i <= n:
        length = lpf[i]
        if length:
            phrases.append(Target(prev[i], length))
            i += length
        else:
            phrases.append(Literal(text[i - 1]))
            i += 1
    return Parse(tuple(phrases), n)


def lz_prime(text: bytes) -> Parse:
    """Greedy right-to-left parse; each phrase is the longest factor ending
    at its last position that also occurs strictly before it.

    Uses the next-factor sweep over the reversed text, where a later
    occurrence at ``q`` of a length-``L`` factor maps back to the earlier
    occurrence starting at ``n - q - L + 2``.
    """
    n = len(text)
    rev_lengths, rev_refs = TextIndex(bytes(reversed(text))).next_factors()
    phrases: List[Phrase] = []
    e = n
    while e >= 1:
        a = n - e + 1
        length = rev_lengths[a]
        if length:
            phrases.append(Target(n - rev_refs[a] - length + 2, length))
            e -= length
        else:
            phrases.append(Literal(text[e - 1]))
            e -= 1
    phrases.reverse()
    return Parse(tuple(phrases), n)


def lzor(text: bytes, index: Optional[TextIndex] = None) -> Parse:
    """Greedy left-to-right parse with each phrase copied from a later occurrence."""
    if index is None:
        index = TextIndex(text)
    lengths, refs = index.next_factors()
    n = len(text)
    phrases: List[Phrase] = []
    i = 1
    while i <= n:
        length = lengths[i]
        if length:
            phrases.append(Target(refs[i], length))
            i += length
        else:
            phrases.append(Literal(text[i - 1]))
            i += 1
    return Parse(tuple(phrases), n)


def lex_parse(text: bytes, index: Optional[TextIndex] = None) -> Parse:
    """Copy each phrase from the lexicographically preceding suffix.

    The phrase at ``i`` has length ``LCP[ISA[i]]`` and references
    ``SA[ISA[i] - 1]``; a literal is emitted when that lcp is zero.
    """
    if index is None:
        index = TextIndex(text)
    sa, isa, lcp = index.sa, index.isa, index.lcp
    n = len(text)
    phrases: List[Phrase] = []
    i = 1
    while i <= n:
        r = isa[i]
        length = lcp[r] if r > 1 else 0
        if length:
            phrases.append(Target(sa[r - 1], length))
            i += length
        else:
            phrases.append(Literal(text[i - 1]))
            i += 1
    return Parse(tuple(phrases), n)


class LzrrSession:
    """State of an LZRR parse in progress.

    ``phrases`` is the committed prefix parse, ``pos`` the start of the next
    phrase, and ``forest`` groups positions by source under that prefix.
    """

    def __init__(self, text: bytes, index: Optional[TextIndex] = None):
        self.text = bytes(text)
        self.n = len(self.text)
        self.index = index if index is not None else TextIndex(self.text)
        self.forest = SourceForest(self.n)
        self.overlay = ScratchOverlay(self.forest)
        self.phrases: List[Phrase] = []
        self.pos = 1

    @property
    def done(self) -> bool:
        return self.pos > self.n

    def lf(self, j: int, bound: Optional[int] = None) -> int:
        """Longest valid phrase at ``pos`` with reference position ``j``.

        Extends one position at a time while the bytes agree and the two
        positions have different sources under the tentative parse.  ``bound``
        may pass a known ``lcp(pos, j)`` to skip byte comparisons.  The
        committed forest is left untouched.
        """
        n = self.n
        if not 1 <= j <= n:
            raise IndexError(f"reference position {j} out of range 1..{n}")
        i = self.pos
        if i > n:
            return 0
        if bound is None:
            text = self.text
            limit = n - max(i, j) + 1
            bound = 0
            while bound < limit and text[i - 1 + bound] == text[j - 1 + bound]:
                bound += 1
        return self.overlay.extension(i, j, bound)

    def lp(self) -> Phrase:
        """Longest phrase that keeps the parse valid, or a literal when none exists.

        Candidates come in SA_pos order; the scan stops once the lcp with the
        next candidate cannot beat the best length found.  The first candidate
        reaching the maximum wins.
        """
        i = self.pos
        best_j = best = 0
        # SA_i enumeration inlined from SuffixNeighborhood (left side wins ties)
        index = self.index
        sa, lcp, n = index.sa, index.lcp, index.n
        extension = self.overlay.extension
        lo = hi = index.isa[i]
        p = q = n - i + 1
        j, bound = i, p
        while bound > best:
            length = extension(i, j, bound)
            if length > best:
                best_j, best = j, length
            left = min(lcp[lo], p) if lo > 1 else -1
            right = min(lcp[hi + 1], q) if hi < n else -1
            if left < 0 and right < 0:
                break
            if left >= right:
                lo -= 1
                p = bound = left
                j = sa[lo]
            else:
                hi += 1
                q = bound = right
                j = sa[hi]
        if best:
            return Target(best_j, best)
        return Literal(self.text[i - 1])

    def commit(self, phrase: Phrase) -> None:
        i = self.pos
        if type(phrase) is Target:
            union = self.forest.commit_union
            for m in range(phrase.length):
                union(i + m, phrase.ref + m)
        self.phrases.append(phrase)
        self.pos += phrase.length

    def parse(self) -> Parse:
        return Parse(tuple(self.phrases), self.n)


def lzrr(text: bytes, index: Optional[TextIndex] = None) -> Parse:
    """LZ77 parsing with right reference: repeatedly commit the longest valid phrase."""
    session = LzrrSession(text, index)
    while not session.done:
        session.commit(session.lp())
    return session.parse()


ALGORITHMS: Dict[str, Callable[[bytes], Parse]] = {
    "lz77": lz77,
    "lzp": lz_prime,
    "lzor": lzor,
    "lex": lex_parse,
    "lzrr": lzrr,
}


def best_of_reverse(algorithm: Callable[[bytes], Parse], text: bytes) -> Tuple[Parse, bool]:
    """Parse ``text`` and its reverse and keep whichever has fewer phrases.

    Ties keep the forward parse.  A reversed result is flagged on the parse
    itself and by the returned boolean.
    """
    forward = algorithm(text)
    backward = algorithm(bytes(reversed(text)))
    if len(backward) < len(forward):
        return Parse(backward.phrases, backward.n, True), True
    return forward, False
