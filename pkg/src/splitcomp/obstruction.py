"""Locate an induced 2K2, C4 or C5 using only the wrapper's queries.

Every obstruction must use a non-edge inside A or an edge inside B, and
there are at most k of each, so each case below anchors two vertices on
those lists and finds the rest through neighborhood samples and the two
helper routines ``sub1`` / ``sub2``.  The cases are written once for the
"direct" orientation; the complement with the sides swapped is handled by
running the same code on a :class:`SideView` with ``complemented=True``
(this turns 2K2 into C4 and maps the C5 cases onto each other).

Candidates are generated lazily and each one is checked against the real
graph before it is returned, so a wrong guess costs time, never soundness.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Optional, Union

from .graph_core import ObstructionKind
from .promise_ns import SamplingFailed
from .wrapper import Wrapper


@dataclass(frozen=True)
class Obstruction:
    kind: ObstructionKind
    vertices: frozenset[int]


class _Split:
    def __repr__(self) -> str:
        return "SPLIT"


SPLIT = _Split()


@dataclass(frozen=True)
class Small:
    """Certified full (non-)neighborhood of ``vertex`` across the partition."""

    vertex: int
    members: frozenset[int]


@dataclass
class SearchStats:
    candidates: int = 0
    sampling_failures: int = 0
    misses: int = 0  # searches that returned SPLIT although splittance > 0


def small_limit(k: int) -> int:
    """Largest size that still counts as small, i.e. at most 3√k."""
    return math.isqrt(9 * k)


class SideView:
    """The wrapper seen directly, or complemented with A and B swapped."""

    def __init__(self, w: Wrapper, complemented: bool = False):
        self.w = w
        self.comp = complemented
        self.cap = w.sample_cap
        self.small = small_limit(w.k)
        self._samples: dict[tuple[str, int], frozenset[int]] = {}

    def flipped(self) -> SideView:
        return SideView(self.w, not self.comp)

    def adj(self, u: int, v: int) -> bool:
        return self.w.graph.has_edge(u, v) != self.comp

    def in_a(self, v: int) -> bool:
        return self.w.side_a(v) != self.comp

    def non_edges_a(self):
        return self.w.list_edges_b() if self.comp else self.w.list_non_edges_a()

    def edges_b(self):
        return self.w.list_non_edges_a() if self.comp else self.w.list_edges_b()

    def sample_edges(self, a: int) -> frozenset[int]:
        """Up to ``cap`` neighbors of ``a`` (in A) on the B side."""
        key = ("e", a)
        if key not in self._samples:
            w = self.w
            self._samples[key] = w.sample_non_edges(a) if self.comp else w.sample_edges(a)
        return self._samples[key]

    def sample_non_edges(self, b: int) -> frozenset[int]:
        """Up to ``cap`` non-neighbors of ``b`` (in B) on the A side."""
        key = ("n", b)
        if key not in self._samples:
            w = self.w
            self._samples[key] = w.sample_edges(b) if self.comp else w.sample_non_edges(b)
        return self._samples[key]

    def full(self, sample: frozenset[int]) -> bool:
        return len(sample) < self.cap


def sub1(view: SideView, a1: int, a2: int) -> Union[frozenset[int], Small, None]:
    """For non-adjacent a1, a2 in A: an obstruction through both, or a small N_B.

    Returns a candidate vertex set (2K2 or C4), a :class:`Small`
    certificate, or None when neither could be produced.
    """
    s1 = view.sample_edges(a1)
    s2 = view.sample_edges(a2)
    for a, s in ((a1, s1), (a2, s2)):
        if view.full(s) and len(s) <= view.small:
            return Small(a, s)
    adj = view.adj
    common = sorted(b for b in s1 | s2 if adj(a1, b) and adj(a2, b))
    for b, b2 in itertools.combinations(common, 2):
        if not adj(b, b2):
            return frozenset((a1, a2, b, b2))
    only1 = sorted(b for b in s1 if not adj(a2, b))
    only2 = sorted(b for b in s2 if not adj(a1, b))
    for b1 in only1:
        for b2 in only2:
            if not adj(b1, b2):
                return frozenset((a1, b1, a2, b2))
    return None


def sub2(view: SideView, b1: int, b2: int) -> Union[frozenset[int], Small, None]:
    """For adjacent b1, b2 in B: mirror of :func:`sub1` on the complemented view."""
    return sub1(view.flipped(), b1, b2)


def _both_ways(pairs):
    for u, v in pairs:
        yield u, v
        yield v, u


# -- 2K2 (the C4 cases are these on the complemented view) -------------------


def _two_k2_a(view: SideView) -> Iterator[frozenset[int]]:
    na = view.non_edges_a()
    for e1, e2 in itertools.combinations(na, 2):
        U = frozenset(e1 + e2)
        if len(U) == 4:
            yield U


def _two_k2_b(view: SideView) -> Iterator[frozenset[int]]:
    adj = view.adj
    na = view.non_edges_a()
    seen = set()
    for e1, e2 in itertools.permutations(na, 2):
        shared = set(e1) & set(e2)
        if len(shared) != 1:
            continue
        (z,) = shared
        x = e1[0] if e1[1] == z else e1[1]
        y = e2[0] if e2[1] == z else e2[1]
        if (z, min(x, y), max(x, y)) in seen or not adj(x, y):
            continue
        seen.add((z, min(x, y), max(x, y)))
        nz = view.sample_edges(z)
        if not view.full(nz):
            for other in (x, y):
                r = sub1(view, other, z)
                if isinstance(r, frozenset):
                    yield r
        for t in sorted(nz):
            if not adj(x, t) and not adj(y, t):
                yield frozenset((x, y, z, t))


def _two_k2_c(view: SideView) -> Iterator[frozenset[int]]:
    adj = view.adj
    for z, t in view.edges_b():
        r = sub2(view, z, t)
        if isinstance(r, frozenset):
            yield r
        elif isinstance(r, Small):
            for x, y in itertools.combinations(sorted(r.members), 2):
                if adj(x, y):
                    yield frozenset((x, y, z, t))


def _two_k2_d(view: SideView) -> Iterator[frozenset[int]]:
    adj = view.adj
    for x0, z0 in view.non_edges_a():
        r = sub1(view, x0, z0)
        if isinstance(r, frozenset):
            yield r
            continue
        if not isinstance(r, Small):
            continue
        x = r.vertex
        z = z0 if x == x0 else x0
        ys = [y for y in sorted(r.members) if not adj(z, y)]
        if not ys:
            continue
        nz = view.sample_edges(z)
        for y in ys:
            for t in sorted(nz):
                if not adj(x, t) and not adj(y, t):
                    yield frozenset((x, y, z, t))


def _two_k2_e(view: SideView) -> Iterator[frozenset[int]]:
    adj = view.adj
    for x, y in view.edges_b():
        r = sub2(view, x, y)
        if isinstance(r, frozenset):
            yield r
            continue
        if not isinstance(r, Small):
            continue
        for t in sorted(r.members):
            if adj(x, t) or adj(y, t):
                continue
            for z in sorted(view.sample_edges(t)):
                if not adj(x, z) and not adj(y, z):
                    yield frozenset((x, y, z, t))


def _two_k2_f(view: SideView) -> Iterator[frozenset[int]]:
    for e1, e2 in itertools.combinations(view.edges_b(), 2):
        U = frozenset(e1 + e2)
        if len(U) == 4:
            yield U


TWO_K2_CASES = (_two_k2_a, _two_k2_b, _two_k2_c, _two_k2_d, _two_k2_e, _two_k2_f)


# -- C5 ----------------------------------------------------------------------


def _c5_a(view: SideView) -> Iterator[frozenset[int]]:
    ends = sorted({v for e in view.non_edges_a() for v in e})
    for U in itertools.combinations(ends, 5):
        yield frozenset(U)


def _c5_b(view: SideView) -> Iterator[frozenset[int]]:
    # path x-y-z-t inside A, closed by some w in B adjacent to x and t
    adj = view.adj
    na = view.non_edges_a()
    for (x, z), (y, t) in itertools.product(_both_ways(na), repeat=2):
        if len({x, y, z, t}) < 4:
            continue
        if not (adj(x, y) and adj(y, z) and adj(z, t)) or adj(x, t):
            continue
        r = sub1(view, x, t)
        if isinstance(r, frozenset):
            yield r
        elif isinstance(r, Small):
            for w in sorted(r.members):
                yield frozenset((x, y, z, t, w))


def _c5_c(view: SideView) -> Iterator[frozenset[int]]:
    # x, y, z in A with xz a non-edge; t, w in B with tw an edge; y found via sub2
    adj = view.adj
    for x, z in _both_ways(view.non_edges_a()):
        for t, w in _both_ways(view.edges_b()):
            if len({x, z, t, w}) < 4:
                continue
            if not (adj(z, t) and adj(w, x)) or adj(x, t) or adj(z, w):
                continue
            r = sub2(view, t, w)
            if isinstance(r, frozenset):
                yield r
            elif isinstance(r, Small):
                for y in sorted(r.members):
                    yield frozenset((x, y, z, t, w))


def _c5_d(view: SideView) -> Iterator[frozenset[int]]:
    # y, t, w in A with yt, yw non-edges; x, z in B found via sub1(y, w), sub1(y, t)
    adj = view.adj
    na = view.non_edges_a()
    seen = set()
    for e1, e2 in itertools.permutations(na, 2):
        shared = set(e1) & set(e2)
        if len(shared) != 1:
            continue
        (y,) = shared
        t = e1[0] if e1[1] == y else e1[1]
        w = e2[0] if e2[1] == y else e2[1]
        if (y, t, w) in seen or not adj(t, w):
            continue
        seen.add((y, t, w))
        pools = []
        for other in (w, t):
            r = sub1(view, y, other)
            if isinstance(r, frozenset):
                yield r
                pools.append(())
            elif isinstance(r, Small):
                pools.append(sorted(r.members))
            else:
                pools.append(())
        for x in pools[0]:
            for z in pools[1]:
                if x != z:
                    yield frozenset((x, y, z, t, w))


def _on_complement(case):
    def run(view: SideView) -> Iterator[frozenset[int]]:
        return case(view.flipped())

    run.__name__ = f"{case.__name__}_complement"
    return run


C5_CASES = (
    _c5_a, _c5_b, _c5_c, _c5_d,
    _on_complement(_c5_d), _on_complement(_c5_c), _on_complement(_c5_b), _on_complement(_c5_a),
)


# -- driver ------------------------------------------------------------------


def classify(graph, U: frozenset[int]) -> Optional[ObstructionKind]:
    for kind in ObstructionKind:
        if len(U) == kind.order and graph.induces(U, kind):
            return kind
    return None


def candidate_stream(w: Wrapper, stats: SearchStats) -> Iterator[frozenset[int]]:
    direct = SideView(w)
    comp = SideView(w, complemented=True)
    plan = (
        [(case, direct) for case in TWO_K2_CASES]
        + [(case, comp) for case in TWO_K2_CASES]
        + [(case, direct) for case in C5_CASES]
    )
    for case, view in plan:
        it = case(view)
        while True:
            try:
                U = next(it)
            except StopIteration:
                break
            except SamplingFailed:
                # the generator is dead after raising; move on to the next case
                stats.sampling_failures += 1
                break
            yield U


@dataclass
class ObstructionFinder:
    """Callable wrapper around the case analysis that keeps running totals."""

    w: Wrapper
    stats: SearchStats = field(default_factory=SearchStats)

    def __call__(self) -> Union[Obstruction, _Split]:
        return find_obstruction(self.w, self.stats)


def find_obstruction(w: Wrapper, stats: Optional[SearchStats] = None) -> Union[Obstruction, _Split]:
    """SPLIT if the graph is split, otherwise an induced 2K2, C4 or C5.

    Guarantees hold only while ``w.splittance() <= w.k``.
    """
    stats = stats if stats is not None else SearchStats()
    if w.splittance() == 0:
        return SPLIT
    g = w.graph
    for U in candidate_stream(w, stats):
        stats.candidates += 1
        kind = classify(g, U)
        if kind is not None:
            return Obstruction(kind, U)
    stats.misses += 1
    return SPLIT
