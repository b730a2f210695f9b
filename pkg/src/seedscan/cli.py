"""Command-line front end: ``python3 -m seedscan <command> ...``."""
from __future__ import annotations

import argparse
import gc
import json
import re
import sys
import time
from collections import Counter
from fractions import Fraction
from typing import Sequence

from .factorization import compute_lpnf, f_factorize
from .generators import FAMILIES, generate
from .quasigap import INF
from .solver import Analysis, InvariantError, solve_tree
from .staircase import RELEASE, Params
from .text_index import Text

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

# small constants that force the recursion on tiny inputs (used by ``verify``)
TEST_PARAMS = Params(Fraction(1, 8), Fraction(1, 2), 4)


class InputError(Exception):
    pass


# ------------------------------------------------------------------ input


def read_text(source: str, alphabet: str, keep_newline: bool) -> Text:
    try:
        if source == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(source, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror or exc}") from None
    if alphabet == "tokens":
        try:
            tokens = [int(t) for t in data.split()]
        except ValueError:
            raise InputError("tokens must be whitespace-separated non-negative integers") from None
        if any(t < 0 for t in tokens):
            raise InputError("tokens must be non-negative")
        if not tokens:
            raise InputError("empty input")
        return Text(tokens, tokens=True)
    if not keep_newline:
        if data.endswith(b"\r\n"):
            data = data[:-2]
        elif data.endswith(b"\n"):
            data = data[:-1]
    if not data:
        raise InputError("empty input")
    return Text(bytes(data))


def parse_sizes(spec: str) -> list[int]:
    """``2^14..2^22`` (every power of two), ``1000,5000`` or a mix."""
    out: list[int] = []
    for part in spec.split(","):
        part = part.strip()
        m = re.fullmatch(r"2\^(\d+)\.\.2\^(\d+)", part)
        if m:
            a, b = int(m.group(1)), int(m.group(2))
            if a > b:
                raise InputError(f"empty size range {part!r}")
            out.extend(1 << e for e in range(a, b + 1))
            continue
        m = re.fullmatch(r"2\^(\d+)", part)
        try:
            n = 1 << int(m.group(1)) if m else int(part)
        except ValueError:
            raise InputError(f"bad size {part!r}") from None
        if n < 1:
            raise InputError(f"bad size {part!r}")
        out.append(n)
    return out


# ------------------------------------------------------------------ output


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.format == "json":
        json.dump(payload, sys.stdout)
        sys.stdout.write("\n")
    else:
        for line in lines:
            print(line)


def _value(v: int) -> int | None:
    return None if v >= INF else v


# ------------------------------------------------------------------ commands


def cmd_seeds(args) -> int:
    an = Analysis(read_text(args.input, args.alphabet, args.keep_trailing_newline))
    seeds = an.all_seeds()
    pos, length = seeds.shortest()
    payload = {
        "n": an.n,
        "seeds": [{"edgeNode": r.node, "start": r.start, "lo": r.lo, "hi": r.hi}
                  for r in seeds.ranges],
        "shortest": {"pos": pos, "len": length},
        "count": seeds.count(),
    }
    lines = [f"n={an.n} ranges={len(seeds.ranges)} seeds={seeds.count()}",
             f"shortest pos={pos} len={length} {an.text.render(pos, length)}"]
    for r in seeds.ranges:
        lines.append(f"node {r.node}\tstart {r.start}\tlengths {r.lo}..{r.hi}")
    if args.enumerate:
        words = []
        for k, (s, ell) in enumerate(seeds):
            if args.max_count is not None and k >= args.max_count:
                break
            words.append({"pos": s, "len": ell, "word": an.text.render(s, ell)})
        payload["enumerated"] = words
        lines.extend(w["word"] for w in words)
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_shortest(args) -> int:
    an = Analysis(read_text(args.input, args.alphabet, args.keep_trailing_newline))
    pos, length = an.shortest_seed()
    word = an.text.render(pos, length)
    _emit(args, {"n": an.n, "shortest": {"pos": pos, "len": length}, "word": word},
          [word, f"length {length} (pos {pos})"])
    return EXIT_OK


def cmd_quasigaps(args) -> int:
    an = Analysis(read_text(args.input, args.alphabet, args.keep_trailing_newline))
    vals, t = an.values, an.tree
    rows = []
    for v in an.nodes():
        start, length = t.word_key(v)
        rows.append({"node": v, "start": start, "len": length,
                     "quasigap": _value(vals[v]), "word": an.text.render(start, length)})
    lines = ["node\tstart\tlen\tquasigap\tword"]
    lines += [f"{r['node']}\t{r['start']}\t{r['len']}\t"
              f"{'inf' if r['quasigap'] is None else r['quasigap']}\t{r['word']}" for r in rows]
    _emit(args, {"n": an.n, "nodes": rows}, lines)
    return EXIT_OK


def cmd_factorize(args) -> int:
    text = read_text(args.input, args.alphabet, args.keep_trailing_newline)
    factors = f_factorize(text)
    lpnf = compute_lpnf(text)
    lines = [f"factors {len(factors)}"]
    lines += [f"{s}\t{ell}\t{text.render(s, ell)}" for s, ell in factors]
    lines.append("lpnf " + " ".join(map(str, lpnf)))
    _emit(args, {"n": text.n, "factors": [{"pos": s, "len": ell} for s, ell in factors],
                 "lpnf": lpnf}, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import oracle

    text = read_text(args.input, args.alphabet, args.keep_trailing_newline)
    if text.n > args.max_n:
        raise InputError(f"verify is limited to n <= {args.max_n} (got {text.n}); "
                         "raise --max-n to override")
    w = tuple(text.raw)
    want_q = oracle.brute_quasigap_map(w)
    want_s = oracle.brute_all_seeds(w)
    report = []
    ok = True
    for name, params in (("release", RELEASE), ("test-scaled", TEST_PARAMS)):
        try:
            an = Analysis(text, params, debug=True)
            got_q = {tuple(text.word(s, k)): (v if v < INF else oracle.INFINITE)
                     for (s, k), v in an.quasigap_map().items()}
            got_s = an.all_seeds().words()
        except InvariantError as exc:
            print(f"verify: {name}: {exc}", file=sys.stderr)
            got_q, got_s = {}, set()
        q_bad = sorted(k for k in want_q.keys() | got_q.keys() if want_q.get(k) != got_q.get(k))
        s_bad = sorted(want_s ^ got_s)
        ok &= not q_bad and not s_bad
        report.append({"params": name, "quasigapMismatches": len(q_bad),
                       "seedMismatches": len(s_bad)})
    lines = [f"{r['params']}: quasigap mismatches {r['quasigapMismatches']}, "
             f"seed mismatches {r['seedMismatches']}" for r in report]
    lines.append("OK" if ok else "MISMATCH")
    _emit(args, {"n": text.n, "ok": ok, "checks": report}, lines)
    if not ok:
        print("verify: fast path disagrees with the oracle", file=sys.stderr)
    return EXIT_OK if ok else EXIT_MISMATCH


def bench_row(family: str, n: int, seed: int, repeat: int) -> dict:
    text = Text(generate(family, n, seed))
    t0 = time.perf_counter()
    an = Analysis(text)
    build = time.perf_counter() - t0
    best = float("inf")
    ops: Counter = Counter()
    enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(repeat):
            ops = Counter()
            t0 = time.perf_counter()
            solve_tree(an.tree, ops=ops)
            best = min(best, time.perf_counter() - t0)
    finally:
        if enabled:
            gc.enable()
    row = {"family": family, "n": n, "build_s": round(build, 4), "solve_s": round(best, 4)}
    row.update({k: int(v) for k, v in sorted(ops.items())})
    return row


def cmd_bench(args) -> int:
    sizes = parse_sizes(args.sizes)
    bench_row(args.family, 256, args.seed, 1)  # compile the kernels outside the timings
    rows = [bench_row(args.family, n, args.seed, args.repeat) for n in sizes]
    if args.format == "json":
        _emit(args, {"rows": rows}, [])
        return EXIT_OK
    keys = list(dict.fromkeys(k for r in rows for k in r))
    print("\t".join(keys))
    for r in rows:
        print("\t".join(str(r.get(k, 0)) for k in keys))
    return EXIT_OK


# ------------------------------------------------------------------ parser


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # the copy attached to each subcommand must not reset flags given earlier
    def default(value):
        return argparse.SUPPRESS if suppress else value

    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--format", choices=("text", "json"), default=default("text"))
    g.add_argument("--alphabet", choices=("bytes", "tokens"), default=default("bytes"),
                   help="raw bytes, or whitespace-separated integer tokens")
    g.add_argument("--seed", type=int, default=default(0), help="generator seed")
    g.add_argument("--keep-trailing-newline", action="store_true", default=default(False))
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    p = argparse.ArgumentParser(prog="seedscan", parents=[_global_flags(suppress=False)],
                                description="All seeds and the shortest seed of a word in linear time.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, takes_input=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if takes_input:
            sp.add_argument("input", metavar="FILE|-")
        sp.set_defaults(func=func)
        return sp

    sp = add("seeds", cmd_seeds, "all seeds as edge ranges")
    sp.add_argument("--enumerate", action="store_true", help="also list the seeds")
    sp.add_argument("--max-count", type=int, default=None, metavar="K")
    add("shortest-seed", cmd_shortest, "a shortest seed and its length")
    add("quasigaps", cmd_quasigaps, "quasigap of every explicit node")
    add("factorize", cmd_factorize, "f-factorization and LPnF table")
    sp = add("verify", cmd_verify, "compare the fast path with brute force")
    sp.add_argument("--max-n", type=int, default=64)
    sp = add("bench", cmd_bench, "timings and operation counts", takes_input=False)
    sp.add_argument("--sizes", default="2^14..2^18")
    sp.add_argument("--family", choices=FAMILIES, default="random")
    sp.add_argument("--repeat", type=int, default=1)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "max_count", None) is not None and args.max_count < 0:
        print("seedscan: --max-count must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"seedscan: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
