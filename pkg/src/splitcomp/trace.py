"""Line-oriented trace files: ``INIT n k d seed`` followed by commands."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .graph_core import MAX_VERTICES


class TraceError(ValueError):
    def __init__(self, line_no: int, msg: str):
        super().__init__(f"line {line_no}: {msg}")
        self.line_no = line_no


@dataclass(frozen=True)
class Toggle:
    u: int
    v: int


@dataclass(frozen=True)
class Query:
    pass


@dataclass(frozen=True)
class Splittance:
    pass


Command = Union[Toggle, Query, Splittance]


@dataclass
class Trace:
    n: int
    k: int
    d: int
    seed: int
    commands: list[Command] = field(default_factory=list)

    def dumps(self) -> str:
        lines = [f"INIT {self.n} {self.k} {self.d} {self.seed}"]
        for c in self.commands:
            if isinstance(c, Toggle):
                lines.append(f"TOGGLE {c.u} {c.v}")
            elif isinstance(c, Query):
                lines.append("QUERY")
            else:
                lines.append("SPLITTANCE")
        return "\n".join(lines) + "\n"


def _ints(parts: list[str], line_no: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise TraceError(line_no, f"expected integers, got {' '.join(parts)!r}") from None


def parse_trace(text: str) -> Trace:
    trace = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        op, args = parts[0], parts[1:]
        if trace is None:
            if op != "INIT":
                raise TraceError(line_no, "trace must start with INIT n k d seed")
            if len(args) != 4:
                raise TraceError(line_no, "INIT takes exactly 4 arguments: n k d seed")
            n, k, d, seed = _ints(args, line_no)
            if not 1 <= n <= MAX_VERTICES:
                raise TraceError(line_no, f"n must lie in 1..{MAX_VERTICES}, got {n}")
            if k < 0 or d < 1:
                raise TraceError(line_no, f"need k >= 0 and d >= 1, got k={k} d={d}")
            trace = Trace(n, k, d, seed)
            continue
        if op == "TOGGLE":
            if len(args) != 2:
                raise TraceError(line_no, "TOGGLE takes exactly 2 vertex ids")
            u, v = _ints(args, line_no)
            for x in (u, v):
                if not 1 <= x <= trace.n:
                    raise TraceError(line_no, f"vertex {x} outside 1..{trace.n}")
            if u == v:
                raise TraceError(line_no, f"loop {u}-{v} is not allowed")
            trace.commands.append(Toggle(u, v))
        elif op in ("QUERY", "SPLITTANCE"):
            if args:
                raise TraceError(line_no, f"{op} takes no arguments")
            trace.commands.append(Query() if op == "QUERY" else Splittance())
        elif op == "INIT":
            raise TraceError(line_no, "INIT may appear only once, on the first line")
        else:
            raise TraceError(line_no, f"unknown command {op!r}")
    if trace is None:
        raise TraceError(1, "empty trace")
    return trace
