"""Deterministic test strings: Fibonacci and Thue-Morse words, runs, random and versioned text."""

from __future__ import annotations

import random


def fibonacci(order: int) -> bytes:
    """Fibonacci word with ``F_1 = b``, ``F_2 = a`` and ``F_k = F_{k-1} F_{k-2}``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if order == 1:
        return b"b"
    prev, cur = b"b", b"a"
    for _ in range(order - 2):
        prev, cur = cur, cur + prev
    return cur


def thue_morse(order: int) -> bytes:
    """Prefix of length ``2**order``: byte ``i`` is ``b`` when ``i`` has odd popcount."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return bytes(b"ab"[bin(i).count("1") & 1] for i in range(1 << order))


def run(length: int, char: bytes = b"a") -> bytes:
    return char[:1] * length


def random_text(length: int, sigma: int = 4, seed: int = 0) -> bytes:
    """Uniform letters from the first ``sigma`` lowercase letters."""
    if not 1 <= sigma <= 26:
        raise ValueError("sigma must be in 1..26")
    rng = random.Random(seed)
    alphabet = bytes(range(ord("a"), ord("a") + sigma))
    return bytes(rng.choice(alphabet) for _ in range(length))


def versions(length: int, block: int = 20000, rate: float = 0.001, sigma: int = 4, seed: int = 0) -> bytes:
    """Concatenated revisions of one random block, each mutating about ``rate * block`` bytes.

    A small stand-in for versioned collections of real repetitive data.
    """
    rng = random.Random(seed)
    alphabet = bytes(range(ord("a"), ord("a") + sigma))
    base = bytearray(rng.choice(alphabet) for _ in range(block))
    out = bytearray()
    edits = int(block * rate) + 1
    while len(out) < length:
        for _ in range(edits):
            base[rng.randrange(block)] = rng.choice(alphabet)
        out += base
    return bytes(out[:length])
