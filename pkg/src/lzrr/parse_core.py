"""Bidirectional parses: data model, validity check, decoding and the BDP1 file format.

A parse is a sequence of phrases laid end to end from position 1.  A
:class:`Literal` stores one byte; a :class:`Target` copies ``length`` bytes
starting at reference position ``ref``, which may lie left or right of the
phrase and may overlap it.  A parse covering only a prefix of the text is
completed by implicit literals over the rest.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

MAGIC = b"BDP1"
VERSION = 1
FLAG_REVERSED = 0x01

_HEADER = struct.Struct("<4sBBQQ")
_TARGET = struct.Struct("<QQ")
TAG_LITERAL = 0x00
TAG_TARGET = 0x01


class MalformedParseError(ValueError):
    """The parse does not describe a partition of the text into legal phrases."""


class ParseFormatError(MalformedParseError):
    """Serialized bytes are not a well-formed BDP1 or JSON parse."""


class CyclicParseError(ValueError):
    """Some position reaches itself by following references."""

    def __init__(self, witness: int):
        super().__init__(f"cyclic reference through position {witness}")
        self.witness = witness


@dataclass(frozen=True)
class Literal:
    ch: int

    @property
    def length(self) -> int:
        return 1

    def __repr__(self) -> str:
        return f"Literal({bytes([self.ch])!r})"


@dataclass(frozen=True)
class Target:
    ref: int
    length: int

    def __repr__(self) -> str:
        return f"<{self.ref},{self.length}>"


Phrase = Union[Literal, Target]


@dataclass(frozen=True)
class Parse:
    """Phrases plus the text length ``n`` they describe.

    ``reversed`` records that the phrases describe the reversed text, as
    produced by best-of-reverse parsing.
    """

    phrases: Tuple[Phrase, ...]
    n: int
    reversed: bool = False

    def __post_init__(self):
        if not isinstance(self.phrases, tuple):
            object.__setattr__(self, "phrases", tuple(self.phrases))

    def __len__(self) -> int:
        return len(self.phrases)

    def __iter__(self) -> Iterator[Phrase]:
        return iter(self.phrases)

    @property
    def covered(self) -> int:
        return sum(f.length for f in self.phrases)

    def starts(self) -> List[int]:
        out = []
        s = 1
        for f in self.phrases:
            out.append(s)
            s += f.length
        return out

    def lengths(self) -> List[int]:
        return [f.length for f in self.phrases]


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witness: Optional[int] = field(default=None)

    def __bool__(self) -> bool:
        return self.valid


def _reference_map(parse: Parse, text: Optional[bytes] = None) -> Tuple[List[int], bytearray]:
    """One-step reference ``g[x]`` for every position (0 for literals) and the literal bytes.

    Checks everything that does not need the text, and phrase contents too
    when ``text`` is given.
    """
    n = parse.n
    if n < 0:
        raise MalformedParseError(f"negative length {n}")
    g = [0] * (n + 1)
    chars = bytearray(n + 1)
    s = 1
    for f in parse.phrases:
        if type(f) is Literal:
            try:
                # bytearray rejects non-bytes, and s > n falls off the end
                chars[s] = f.ch
            except (ValueError, TypeError):
                raise MalformedParseError(f"literal at {s} is not a byte: {f.ch!r}") from None
            except IndexError:
                raise MalformedParseError(f"phrase at {s} lies past the end of the text (n={n})") from None
            s += 1
        elif type(f) is Target:
            ref, length = f.ref, f.length
            if length < 1:
                raise MalformedParseError(f"target at {s} has length {length}")
            if s + length - 1 > n:
                raise MalformedParseError(f"phrase at {s} of length {length} runs past n={n}")
            if ref == s:
                raise MalformedParseError(f"target at {s} copies itself")
            if ref < 1 or ref + length - 1 > n:
                raise MalformedParseError(f"target at {s} references {ref}..{ref + length - 1} outside 1..{n}")
            if text is not None and text[s - 1 : s - 1 + length] != text[ref - 1 : ref - 1 + length]:
                raise MalformedParseError(f"target <{ref},{length}> at {s} does not match the text")
            g[s : s + length] = range(ref, ref + length)
            s += length
        else:
            raise MalformedParseError(f"not a phrase: {f!r}")
    if text is not None and s > 1:
        _check_literals(g, chars, text, s - 1)
    return g, chars


def _check_literals(g: List[int], chars: bytearray, text: bytes, covered: int) -> None:
    stored = np.frombuffer(chars, dtype=np.uint8)[1 : covered + 1]
    actual = np.frombuffer(text, dtype=np.uint8)[:covered]
    literal = np.asarray(g[1 : covered + 1]) == 0
    bad = np.flatnonzero(literal & (stored != actual))
    if bad.size:
        x = int(bad[0]) + 1
        raise MalformedParseError(f"literal at {x} is {chars[x]!r}, text has {text[x - 1]!r}")


def _resolve(g: List[int], n: int) -> Tuple[List[int], Optional[int]]:
    """Memoized source of every position; returns ``(sources, witness)``.

    Each position is walked at most once.  A position met again while its own
    chain is still open lies on a cycle; the witness is the smallest position
    on the first cycle found.
    """
    src = [0 if y else x for x, y in enumerate(g)]
    for x in [x for x, y in enumerate(g) if y]:
        if src[x]:
            continue
        y = g[x]
        path = [x]
        src[x] = -1
        while True:
            s = src[y]
            if s > 0:
                break
            if s < 0:
                cycle = path[path.index(y):]
                return src, min(cycle)
            src[y] = -1
            path.append(y)
            y = g[y]
        for z in path:
            src[z] = s
    return src, None


def validate(parse: Parse, text: bytes) -> Verdict:
    """Check that ``parse`` is a valid bidirectional parse of ``text``.

    Raises :class:`MalformedParseError` for structural problems; returns an
    invalid :class:`Verdict` carrying a witness position when references cycle.
    A parse covering only a prefix is judged with literals over the remainder.
    """
    if parse.n != len(text):
        raise MalformedParseError(f"parse is for n={parse.n}, text has {len(text)} bytes")
    g, _ = _reference_map(parse, text)
    _, witness = _resolve(g, parse.n)
    if witness is not None:
        return Verdict(False, witness)
    return Verdict(True)


def decode(parse: Parse) -> bytes:
    """Recover the text described by a complete, acyclic parse."""
    if parse.covered != parse.n:
        raise MalformedParseError(f"phrases cover {parse.covered} of {parse.n} positions")
    g, chars = _reference_map(parse)
    src, witness = _resolve(g, parse.n)
    if witness is not None:
        raise CyclicParseError(witness)
    return bytes(map(chars.__getitem__, src[1:]))


def source_of(parse: Parse, x: int) -> int:
    """Position of the literal that supplies byte ``x``."""
    n = parse.n
    if not 1 <= x <= n:
        raise IndexError(f"position {x} out of range 1..{n}")
    g, _ = _reference_map(parse)
    seen = set()
    while g[x]:
        if x in seen:
            raise CyclicParseError(x)
        seen.add(x)
        x = g[x]
    return x


def reference_steps(parse: Parse) -> List[int]:
    """The one-step reference map (0 marks a literal), 1-based and padded."""
    return _reference_map(parse)[0]


def serialize(parse: Parse) -> bytes:
    """Encode in the canonical binary BDP1 layout."""
    flags = FLAG_REVERSED if parse.reversed else 0
    out = bytearray(_HEADER.pack(MAGIC, VERSION, flags, parse.n, len(parse.phrases)))
    pack = _TARGET.pack
    for f in parse.phrases:
        if type(f) is Literal:
            out.append(TAG_LITERAL)
            out.append(f.ch)
        else:
            out.append(TAG_TARGET)
            out += pack(f.ref, f.length)
    return bytes(out)


def _check_coverage(phrases: Sequence[Phrase], n: int) -> None:
    covered = sum(f.length for f in phrases)
    if covered > n:
        raise ParseFormatError(f"phrases cover {covered} positions but n={n}")


def deserialize(data: bytes) -> Parse:
    """Decode BDP1 bytes, or the JSON mirror when ``data`` starts with ``{``."""
    if data[:1] == b"{":
        return from_json(data.decode("utf-8"))
    if len(data) < _HEADER.size:
        raise ParseFormatError("truncated header")
    magic, version, flags, n, b = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise ParseFormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ParseFormatError(f"unsupported version {version}")
    if flags & ~FLAG_REVERSED:
        raise ParseFormatError(f"unknown flags {flags:#04x}")
    phrases: List[Phrase] = []
    off = _HEADER.size
    unpack = _TARGET.unpack_from
    end = len(data)
    for _ in range(b):
        if off >= end:
            raise ParseFormatError("truncated phrase list")
        tag = data[off]
        if tag == TAG_LITERAL:
            if off + 2 > end:
                raise ParseFormatError("truncated literal")
            phrases.append(Literal(data[off + 1]))
            off += 2
        elif tag == TAG_TARGET:
            if off + 1 + _TARGET.size > end:
                raise ParseFormatError("truncated target")
            ref, length = unpack(data, off + 1)
            if length == 0 or ref == 0:
                raise ParseFormatError(f"target <{ref},{length}> uses a zero field")
            phrases.append(Target(ref, length))
            off += 1 + _TARGET.size
        else:
            raise ParseFormatError(f"bad tag {tag:#04x} at byte {off}")
    if off != end:
        raise ParseFormatError(f"{end - off} trailing bytes")
    _check_coverage(phrases, n)
    return Parse(tuple(phrases), n, bool(flags & FLAG_REVERSED))


def to_json(parse: Parse) -> str:
    doc = {
        "format": MAGIC.decode(),
        "version": VERSION,
        "reversed": parse.reversed,
        "n": parse.n,
        "phrases": [
            {"char": f.ch} if type(f) is Literal else {"ref": f.ref, "len": f.length}
            for f in parse.phrases
        ],
    }
    return json.dumps(doc, separators=(",", ":"))


def from_json(doc: str) -> Parse:
    try:
        obj = json.loads(doc)
        if obj.get("format") != MAGIC.decode() or obj.get("version") != VERSION:
            raise ParseFormatError("not a BDP1 JSON document")
        n = int(obj["n"])
        phrases: List[Phrase] = []
        for item in obj["phrases"]:
            if "char" in item:
                phrases.append(Literal(int(item["char"])))
            else:
                phrases.append(Target(int(item["ref"]), int(item["len"])))
        reversed_ = bool(obj.get("reversed", False))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        if isinstance(exc, ParseFormatError):
            raise
        raise ParseFormatError(f"bad JSON parse: {exc}") from exc
    _check_coverage(phrases, n)
    return Parse(tuple(phrases), n, reversed_)
