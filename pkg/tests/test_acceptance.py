"""Acceptance criteria 1-10, one PASS/FAIL line each.

The lines are printed as the tests run (visible with ``-s``) and repeated in
the terminal summary.  Set ``LZRR_CORPUS`` to extra files, separated by the
path separator, to include them in criterion 9.
"""

import csv
import io
import os
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from lzrr.cli import main
from lzrr.parse_core import Literal, Parse, Target, decode, source_of, validate
from lzrr.parsers import ALGORITHMS, LzrrSession, best_of_reverse, lz77, lz_prime, lzor, lzrr
from lzrr.text_index import build_index, lnf, lpf_prime
from lzrr.textgen import fibonacci, thue_morse, versions
from oracles import (
    binary_strings,
    brute_lp_length,
    naive_arrays,
    naive_lnf,
    naive_lpf_prime,
    random_corpus,
    to_tuples,
)


def record(number, title, ok, detail):
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES.append((number, line))
    print(line)
    assert ok, line


def best_ms(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best * 1000


@pytest.fixture(scope="module")
def corpus():
    return random_corpus(2000, 512, seed=2024) + list(binary_strings(12))


def test_criterion_01_golden_arrays():
    text = b"abababaabb"
    ix = build_index(text)
    ok = (
        ix.sa[1:] == [7, 5, 3, 1, 8, 10, 6, 4, 2, 9]
        and ix.isa[1:] == [4, 9, 3, 8, 2, 7, 1, 5, 10, 6]
        and ix.lcp[1:] == [0, 1, 3, 5, 2, 0, 1, 2, 4, 1]
        and ix.lpf[1:] == [0, 0, 5, 4, 3, 2, 1, 2, 1, 1]
        and [j for j, _ in ix.neighborhood(1)] == [1, 3, 5, 8, 7, 10, 6, 4, 2, 9]
    )
    ms = best_ms(lambda: build_index(text))
    record(1, "golden SA/ISA/LCP/LPF and SA_1", ok and ms < 1, f"exact={ok}, build {ms:.3f} ms")


def test_criterion_02_golden_validity():
    text = b"ababbab"
    good = Parse((Target(3, 2), Literal(97), Literal(98), Target(2, 3)), 7)
    bad = Parse((Target(3, 2), Target(1, 2), Literal(98), Literal(97), Literal(98)), 7)
    partial = Parse((Target(3, 2), Target(6, 2)), 7)

    def check():
        return (validate(good, text).valid and decode(good) == text
                and not validate(bad, text).valid and source_of(partial, 1) == 6)

    ok = check()
    ms = best_ms(check)
    record(2, "golden validity and source", ok and ms < 1, f"exact={ok}, {ms:.3f} ms")


def test_criterion_03_golden_lf_lp():
    text = b"abababaababa"
    index = build_index(text)

    def check():
        session = LzrrSession(text, index)
        session.commit(Target(3, 5))
        vector = [session.lf(j) for j in range(1, 13)]
        first, second = lzrr(text, index).phrases[:2]
        return (vector == [0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 2, 0] and first == Target(3, 5)
                and second.length == 2 and second.ref in {9, 11})

    ok = check()
    ms = best_ms(check)
    record(3, "golden LF vector and first LZRR phrases", ok and ms < 1, f"exact={ok}, {ms:.3f} ms")


def test_criterion_04_lzrr_vs_reverse_lz77(corpus):
    t0 = time.perf_counter()
    violations = [t for t in corpus if len(lzrr(t)) > len(lz77(t[::-1]))]
    seconds = time.perf_counter() - t0
    record(4, "|lzrr(T)| <= |lz77(T^R)|", not violations and seconds < 60,
           f"{len(corpus)} strings, {len(violations)} violations, {seconds:.1f} s")


def test_criterion_05_count_identities(corpus):
    bad = 0
    for t in corpus:
        r = t[::-1]
        n_lzp = len(lz_prime(t))
        n_lzor = len(lzor(t))
        if n_lzp != len(lz77(t)) or n_lzor != len(lz_prime(r)) or len(lzrr(t)) > n_lzor:
            bad += 1
    record(5, "lz' = lz77, lzor = lz'(T^R), lzrr <= lzor", bad == 0,
           f"{len(corpus)} strings, {bad} violations")


def test_criterion_06_oracle_equivalence():
    t0 = time.perf_counter()
    strings = 0
    array_bad = 0
    phrase_bad = 0
    for text in binary_strings(12):
        strings += 1
        ix = build_index(text)
        sa, isa, lcp, lpf = naive_arrays(text)
        if (ix.sa[1:], ix.isa[1:], ix.lcp[1:], ix.lpf[1:]) != (sa, isa, lcp, lpf):
            array_bad += 1
        if lnf(text)[1:] != naive_lnf(text) or lpf_prime(text)[1:] != naive_lpf_prime(text):
            array_bad += 1
        # each phrase is checked against every (j, l) on the same committed prefix
        committed = to_tuples(lzrr(text, ix))
        for k, f in enumerate(committed):
            brute = brute_lp_length(text, committed[:k])
            if (f[0] == "c" and brute) or (f[0] == "t" and f[2] != brute):
                phrase_bad += 1
    seconds = time.perf_counter() - t0
    ok = array_bad == 0 and phrase_bad == 0 and seconds < 120
    record(6, "brute-force oracles, binary n <= 12", ok,
           f"{strings} strings, {array_bad} array and {phrase_bad} phrase mismatches, {seconds:.1f} s")


def test_criterion_07_overlay_non_interference():
    rng = random.Random(7)
    instances = mutated = 0
    for text in random_corpus(700, 120, seed=77):
        n = len(text)
        session = LzrrSession(text)
        for _ in range(rng.randint(0, 8)):
            if session.done:
                break
            j = rng.randint(1, n)
            length = session.lf(j)
            if length and rng.random() < 0.8:
                session.commit(Target(j, rng.randint(1, length)))
            else:
                session.commit(Literal(text[session.pos - 1]))
        if session.done:
            continue
        forest = session.forest
        before = [forest.find_source(x) for x in range(1, n + 1)]
        session.lf(rng.randint(1, n))
        after = [forest.find_source(x) for x in range(1, n + 1)]
        instances += 1
        mutated += before != after
    record(7, "lf leaves the committed forest unchanged", instances >= 500 and mutated == 0,
           f"{instances} instances, {mutated} mutations")


def test_criterion_08_round_trip(corpus):
    words = [fibonacci(k) for k in range(1, 21)] + [thue_morse(k) for k in range(0, 13)]
    failures = checked = 0
    for text in corpus + words:
        for algo in ALGORITHMS.values():
            parse = algo(text)
            checked += 1
            if not validate(parse, text) or decode(parse) != text:
                failures += 1
    record(8, "every parser validates and decodes", failures == 0,
           f"{checked} parses, {failures} failures")


def test_criterion_09_repetitive_trend(tmp_path):
    worse = []
    for name, text in [(f"fib{k}", fibonacci(k)) for k in range(3, 26)] + \
                      [(f"tm{k}", thue_morse(k)) for k in range(1, 17)]:
        a = len(best_of_reverse(lz77, text)[0])
        b = len(best_of_reverse(lzrr, text)[0])
        if b > a:
            worse.append(name)

    big = tmp_path / "versions.txt"
    big.write_bytes(versions(1 << 20))
    files = [str(big)] + [p for p in os.environ.get("LZRR_CORPUS", "").split(os.pathsep) if p]
    report = tmp_path / "stats.csv"
    code = main(["stats", *files, "--algos", "lz77,lzrr", "-o", str(report), "-j", "2"])
    text = report.read_text()
    rows = list(csv.DictReader(io.StringIO(text)))
    well_formed = (code == 0 and text.splitlines()[0] == "file,n,algo,direction,phrases,seconds"
                   and len(rows) == 2 * len(files))
    counts = {(r["file"], r["algo"]): int(r["phrases"]) for r in rows}
    for path in files:
        if counts[(path, "lzrr")] > counts[(path, "lz77")]:
            worse.append(os.path.basename(path))
    seconds = max(float(r["seconds"]) for r in rows if r["file"] == str(big))
    ok = not worse and well_formed and seconds < 60
    record(9, "best-of-reverse |LZRR| <= |LZ77| on repetitive text", ok,
           f"fib<=25, tm<=16, {len(files)} file(s) >= 1 MiB, "
           f"1 MiB: lz77 {counts[(str(big), 'lz77')]} vs lzrr {counts[(str(big), 'lzrr')]} phrases, "
           f"slowest run {seconds:.1f} s, csv ok={well_formed}, worse={worse}")


def test_criterion_10_validator_linear():
    n = 1_000_000
    text = b"a" * n
    flat = Parse(tuple(Literal(97) for _ in range(n)), n)
    chain = Parse((Target(2, n - 1), Literal(97)), n)  # x -> x + 1 down the whole text
    flat_ms = best_ms(lambda: validate(flat, text), repeat=3)
    chain_ms = best_ms(lambda: validate(chain, text), repeat=3)
    ok = validate(flat, text).valid and validate(chain, text).valid and max(flat_ms, chain_ms) < 1000
    record(10, "validate on 10^6 positions", ok,
           f"all-literal {flat_ms:.0f} ms, chain {chain_ms:.0f} ms")
