"""Command line: run traces, generate traces, benchmark, self-test."""

from __future__ import annotations

import argparse
import csv
import io
import random
import statistics
import sys
import time
from dataclasses import dataclass
from typing import Optional, TextIO

from . import oracle
from .branching import CompletionAnswer, Engine
from .graph_core import Graph
from .instances import adversarial_pairs, random_pairs
from .trace import Query, Splittance, Toggle, Trace, TraceError, parse_trace

BENCH_COLUMNS = ["n", "mean_update_us", "p99_update_us", "query_us", "failures"]
BRUTE_NO_LIMIT = 20  # largest n at which NO answers are re-checked by brute force


def verify_answer(graph: Graph, k: int, ans: CompletionAnswer) -> bool:
    if ans.decision:
        g = graph.copy()
        if len(ans.witness) > k:
            return False
        for u, v in ans.witness:
            if g.has_edge(u, v):
                return False
            g.toggle_edge(u, v)
        return oracle.degree_splittance(g) == 0
    if graph.n <= BRUTE_NO_LIMIT:
        return not oracle.brute_completion(graph, k).decision
    return True


def run_trace(trace: Trace, verify: bool = False, err: Optional[TextIO] = None) -> tuple[list[str], int]:
    """Replay ``trace``; return the output lines and the number of failed checks."""
    eng = Engine(trace.n, trace.k, trace.d, trace.seed, eager=True)
    out: list[str] = []
    failures = 0
    for cmd in trace.commands:
        if isinstance(cmd, Toggle):
            eng.update(cmd.u, cmd.v)
        elif isinstance(cmd, Query):
            ans = eng.answer()
            out.append(ans.format())
            if verify and not verify_answer(eng.wrapper.graph, trace.k, ans):
                failures += 1
                if err is not None:
                    print(f"verify failed on output line {len(out)}: {out[-1]}", file=err)
        elif isinstance(cmd, Splittance):
            out.append(str(eng.splittance()))
    return out, failures


def generate(n: int, k: int, steps: int, seed: int, mode: str = "random", d: int = 4,
             query_every: int = 1) -> Trace:
    rng = random.Random(seed)
    if mode == "random":
        pairs = random_pairs(rng, n, steps) if n > 1 else []
    elif mode == "adversarial":
        pairs = adversarial_pairs(rng, n, k, steps) if n > 1 else []
    else:
        raise ValueError(f"unknown mode {mode!r}")
    trace = Trace(n, k, d, seed)
    for i, (u, v) in enumerate(pairs, start=1):
        trace.commands.append(Toggle(u, v))
        if query_every and i % query_every == 0:
            trace.commands.append(Query())
    return trace


@dataclass
class BenchRow:
    n: int
    mean_update_us: float
    p99_update_us: float
    query_us: float
    failures: int

    def as_list(self) -> list:
        return [self.n, f"{self.mean_update_us:.1f}", f"{self.p99_update_us:.1f}",
                f"{self.query_us:.1f}", self.failures]


def bench_one(n: int, k: int, d: int, steps: int, seed: int, mode: str = "random",
              verify: bool = False, lazy_layers: bool = True) -> BenchRow:
    trace = generate(n, k, steps, seed, mode, d, query_every=0)
    eng = Engine(n, k, d, seed, eager=False, lazy_layers=lazy_layers)
    upd, qry = [], []
    failures = 0
    for cmd in trace.commands:
        t0 = time.perf_counter()
        eng.wrapper.update(cmd.u, cmd.v)
        t1 = time.perf_counter()
        ans = eng.recompute()
        t2 = time.perf_counter()
        upd.append(t1 - t0)
        qry.append(t2 - t1)
        if verify and not verify_answer(eng.wrapper.graph, k, ans):
            failures += 1
    failures += eng.stats.search.sampling_failures + eng.stats.false_splits
    upd_us = [x * 1e6 for x in upd] or [0.0]
    p99 = statistics.quantiles(upd_us, n=100)[98] if len(upd_us) > 1 else upd_us[0]
    return BenchRow(n, statistics.fmean(upd_us), p99,
                    statistics.fmean(qry) * 1e6 if qry else 0.0, failures)


def write_csv(rows: list[BenchRow], fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(BENCH_COLUMNS)
    for r in rows:
        w.writerow(r.as_list())


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def cmd_run(args) -> int:
    try:
        trace = parse_trace(_read_text(args.trace))
    except TraceError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    out, failures = run_trace(trace, verify=args.verify, err=sys.stderr)
    sys.stdout.write("".join(line + "\n" for line in out))
    return 1 if failures else 0


def cmd_gen(args) -> int:
    trace = generate(args.n, args.k, args.steps, args.seed, args.mode, args.d, args.query_every)
    text = trace.dumps()
    if args.trace and args.trace != "-":
        with open(args.trace, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    rows = []
    for n in args.n:
        rows.append(bench_one(n, args.k, args.d, args.steps, args.seed, args.mode, args.verify,
                              lazy_layers=not args.all_layers))
        print(f"n={n} done", file=sys.stderr)
    buf = io.StringIO()
    write_csv(rows, buf)
    sys.stdout.write(buf.getvalue())
    if args.csv_out:
        with open(args.csv_out, "w", encoding="ascii") as fh:
            fh.write(buf.getvalue())
    return 0


def cmd_selftest(args) -> int:
    from .selftest import SUITES, run_selftest

    unknown = [m for m in args.module or () if m not in SUITES]
    if unknown:
        print(f"error: unknown module {unknown[0]!r}; choose from {', '.join(SUITES)}", file=sys.stderr)
        return 2
    checks = run_selftest(args.trials, args.seed, args.module)
    hard_fail = False
    for c in checks:
        status = "ok"
        if c.failed:
            status = "FAIL" if c.hard else f"warn ({c.failed} probabilistic misses)"
            hard_fail |= c.hard
        print(f"{c.module:12s} {c.passed:6d}/{c.total:<6d} {status:8s} {c.name}")
    return 1 if hard_fail else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="splitcomp", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="replay a trace and print the answers")
    r.add_argument("--trace", required=True, help="trace file, or - for stdin")
    r.add_argument("--verify", action="store_true",
                   help="check each answer against its witness or brute force")
    r.set_defaults(func=cmd_run)

    g = sub.add_parser("gen", help="generate a trace")
    g.add_argument("n", type=int)
    g.add_argument("k", type=int)
    g.add_argument("steps", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--mode", choices=["random", "adversarial"], default="random")
    g.add_argument("--d", type=int, default=4)
    g.add_argument("--query-every", type=int, default=1, help="QUERY after every N toggles (0: never)")
    g.add_argument("--trace", help="output file (default stdout)")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time updates and queries over generated traces")
    b.add_argument("--n", type=int, nargs="+", default=[1024, 131072])
    b.add_argument("--k", type=int, default=3)
    b.add_argument("--d", type=int, default=2)
    b.add_argument("--steps", type=int, default=2000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--mode", choices=["random", "adversarial"], default="random")
    b.add_argument("--verify", action="store_true")
    b.add_argument("--all-layers", action="store_true",
                   help="build every sampling layer even where the global instance suffices")
    b.add_argument("--csv-out")
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("selftest", help="run the property suites at desk scale")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--module", action="append", help="restrict to a module (repeatable)")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)
