"""Command-line front end: ``parse``, ``decode``, ``verify``, ``stats`` and ``gen``.

Exit codes: 0 success, 1 usage, 2 I/O, 3 verification or format failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
import tracemalloc
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence

from lzrr import textgen
from lzrr.parse_core import (
    CyclicParseError,
    MalformedParseError,
    Parse,
    decode,
    deserialize,
    serialize,
    to_json,
    validate,
)
from lzrr.parsers import ALGORITHMS, best_of_reverse

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VERIFY = 3

CSV_FIELDS = ["file", "n", "algo", "direction", "phrases", "seconds"]


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class ReportRow:
    file: str
    n: int
    algo: str
    direction: str
    phrases: int
    seconds: float
    peak_bytes: Optional[int] = None


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: Optional[str], data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with open(path, "wb") as fh:
        fh.write(data)


def _algorithm(name: str):
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise UsageError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None


def run_algorithm(name: str, text: bytes, reverse: bool = True) -> Parse:
    algo = _algorithm(name)
    if reverse:
        return best_of_reverse(algo, text)[0]
    return algo(text)


def cmd_parse(args) -> int:
    text = _read(args.input)
    parse = run_algorithm(args.algo, text, args.best_of_reverse)
    data = to_json(parse).encode() if args.format == "json" else serialize(parse)
    _write(args.output, data)
    line = {
        "algo": args.algo,
        "n": parse.n,
        "phrases": len(parse),
        "direction": "reverse" if parse.reversed else "forward",
    }
    print(json.dumps(line), file=sys.stderr if args.output in (None, "-") else sys.stdout)
    return EXIT_OK


def _load_parse(path: str) -> Parse:
    return deserialize(_read(path))


def cmd_decode(args) -> int:
    parse = _load_parse(args.parse)
    text = decode(parse)
    if parse.reversed:
        text = text[::-1]
    _write(args.output, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    parse = _load_parse(args.parse)
    text = _read(args.text)
    target = text[::-1] if parse.reversed else text
    verdict = validate(parse, target)
    if not verdict:
        print(f"verify: cyclic reference through position {verdict.witness}", file=sys.stderr)
        return EXIT_VERIFY
    if parse.covered != parse.n:
        print(f"verify: phrases cover {parse.covered} of {parse.n} positions", file=sys.stderr)
        return EXIT_VERIFY
    if decode(parse) != target:
        print("verify: decoded text differs", file=sys.stderr)
        return EXIT_VERIFY
    print(f"verify: ok ({len(parse)} phrases, n={parse.n})")
    return EXIT_OK


def _measure(path: str, algo: str, reverse: bool, memory: bool) -> ReportRow:
    text = _read(path)
    if memory:
        tracemalloc.start()
    start = time.perf_counter()
    parse = run_algorithm(algo, text, reverse)
    seconds = time.perf_counter() - start
    peak = None
    if memory:
        peak = tracemalloc.get_traced_memory()[1]
        tracemalloc.stop()
    return ReportRow(
        file=path,
        n=len(text),
        algo=algo,
        direction="reverse" if parse.reversed else "forward",
        phrases=len(parse),
        seconds=seconds,
        peak_bytes=peak,
    )


def collect(files: Sequence[str], algos: Sequence[str], reverse: bool = True,
            memory: bool = False, jobs: int = 1) -> List[ReportRow]:
    """One row per (file, algorithm), in input order."""
    for name in algos:
        _algorithm(name)
    tasks = [(path, algo) for path in files for algo in algos]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_measure, path, algo, reverse, memory) for path, algo in tasks]
            return [f.result() for f in futures]
    return [_measure(path, algo, reverse, memory) for path, algo in tasks]


def ratios(rows: Sequence[ReportRow]) -> dict:
    """``|LZRR| / |LZ77|`` per file, where both were run."""
    counts = {}
    for row in rows:
        counts.setdefault(row.file, {})[row.algo] = row.phrases
    out = {}
    for path, by_algo in counts.items():
        if "lzrr" in by_algo and "lz77" in by_algo and by_algo["lz77"]:
            out[path] = by_algo["lzrr"] / by_algo["lz77"]
    return out


def render_csv(rows: Sequence[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow([row.file, row.n, row.algo, row.direction, row.phrases, f"{row.seconds:.6f}"])
    return buf.getvalue()


def render_json(rows: Sequence[ReportRow]) -> str:
    doc = {
        "time": "wall-clock seconds",
        "rows": [asdict(row) for row in rows],
        "lzrr_over_lz77": ratios(rows),
    }
    return json.dumps(doc, indent=2)


def cmd_stats(args) -> int:
    algos = [a for a in args.algos.split(",") if a]
    rows = collect(args.inputs, algos, reverse=not args.forward_only,
                   memory=args.memory, jobs=args.jobs)
    report = render_csv(rows) if args.format == "csv" else render_json(rows)
    _write(args.output, report.encode())
    if args.output not in (None, "-"):
        for path, ratio in ratios(rows).items():
            print(f"{os.path.basename(path)}: |LZRR|/|LZ77| = {ratio:.3f}")
    return EXIT_OK


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "fibonacci":
        data = textgen.fibonacci(args.order)
    elif kind == "thue-morse":
        data = textgen.thue_morse(args.order)
    elif kind == "run":
        data = textgen.run(args.length, args.char.encode())
    elif kind == "random":
        data = textgen.random_text(args.length, args.sigma, args.seed)
    else:
        data = textgen.versions(args.length, args.block, args.rate, args.sigma, args.seed)
    _write(args.output, data)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="lzrr", description="Bidirectional parsing with LZRR and baselines.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("parse", help="parse a file and write the phrases")
    p.add_argument("input")
    p.add_argument("-a", "--algo", default="lzrr", help=f"one of {', '.join(ALGORITHMS)}")
    p.add_argument("-o", "--output", help="parse file (default stdout)")
    p.add_argument("-r", "--best-of-reverse", action="store_true",
                   help="also parse the reversed text and keep the shorter parse")
    p.add_argument("-f", "--format", choices=["bin", "json"], default="bin")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("decode", help="recover the text from a parse file")
    p.add_argument("parse")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", help="check a parse file against a text file")
    p.add_argument("parse")
    p.add_argument("text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="phrase counts and timings, best of both directions")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--algos", default="lz77,lex,lzrr")
    p.add_argument("-o", "--output", help="report path (default stdout)")
    p.add_argument("-f", "--format", choices=["csv", "json"], default="csv")
    p.add_argument("-j", "--jobs", type=int, default=1)
    p.add_argument("--memory", action="store_true", help="record peak traced allocation per run")
    p.add_argument("--forward-only", action="store_true", help="skip the reversed text")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="write a generated test string")
    p.add_argument("kind", choices=["fibonacci", "thue-morse", "run", "random", "versions"])
    p.add_argument("--order", type=int, default=20)
    p.add_argument("--length", type=int, default=1 << 16)
    p.add_argument("--char", default="a")
    p.add_argument("--sigma", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--block", type=int, default=20000)
    p.add_argument("--rate", type=float, default=0.001)
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lzrr: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"lzrr: {exc}", file=sys.stderr)
        return EXIT_IO
    except CyclicParseError as exc:
        print(f"lzrr: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except MalformedParseError as exc:
        print(f"lzrr: malformed parse: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
