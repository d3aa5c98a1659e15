"""Bidirectional parsing toolkit: LZRR plus the LZ77, LZ', LZOR and lex-parse baselines."""

from lzrr.parse_core import (
    CyclicParseError,
    Literal,
    MalformedParseError,
    Parse,
    Target,
    Verdict,
    decode,
    deserialize,
    serialize,
    source_of,
    validate,
)
from lzrr.parsers import (
    ALGORITHMS,
    LzrrSession,
    best_of_reverse,
    lex_parse,
    lz77,
    lz_prime,
    lzor,
    lzrr,
)
from lzrr.source_forest import ScratchOverlay, SourceForest
from lzrr.text_index import TextIndex, build_index, lnf, lpf_prime

__all__ = [
    "ALGORITHMS",
    "CyclicParseError",
    "Literal",
    "LzrrSession",
    "MalformedParseError",
    "Parse",
    "ScratchOverlay",
    "SourceForest",
    "Target",
    "TextIndex",
    "Verdict",
    "best_of_reverse",
    "build_index",
    "decode",
    "deserialize",
    "lex_parse",
    "lnf",
    "lpf_prime",
    "lz77",
    "lz_prime",
    "lzor",
    "lzrr",
    "serialize",
    "source_of",
    "validate",
]
