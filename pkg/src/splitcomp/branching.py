"""Bounded search tree for Split Completion and Split Edge Deletion.

Find an obstruction, try each of its at most five non-edges (or edges)
as the next edit, recurse with one less unit of budget, undo.  The edits
go through the live wrapper, so the structures follow the search and the
graph is back to its original state after every query.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .graph_core import Edge
from .obstruction import SPLIT, SearchStats, find_obstruction
from .wrapper import Wrapper


@dataclass(frozen=True)
class CompletionAnswer:
    decision: bool
    witness: tuple[Edge, ...] = ()

    def format(self) -> str:
        if not self.decision:
            return "NO"
        return " ".join(["YES"] + [f"{u}-{v}" for u, v in self.witness])


NO = CompletionAnswer(False)


class TreeBoundExceeded(AssertionError):
    pass


def node_bound(k: int) -> int:
    """Σ_{i≤k} 5^i: the most nodes a depth-k tree with fan-out five can have."""
    return sum(5**i for i in range(k + 1))


@dataclass
class BranchStats:
    queries: int = 0
    max_nodes: int = 0
    last_nodes: int = 0
    false_splits: int = 0  # SPLIT reported while splittance() > 0
    search: SearchStats = field(default_factory=SearchStats)


def _search(w: Wrapper, budget: int, insert: bool, chosen: list[Edge], stats: BranchStats,
            nodes: list[int]) -> Optional[list[Edge]]:
    nodes[0] += 1
    # every edit changes splittance by at most one, so it bounds the edits left
    if w.splittance() > budget:
        return None
    found = find_obstruction(w, stats.search)
    if found is SPLIT:
        if w.splittance() == 0:
            return list(chosen)
        stats.false_splits += 1
        return None
    if budget == 0:
        return None
    g = w.graph
    for u, v in itertools.combinations(sorted(found.vertices), 2):
        if g.has_edge(u, v) == insert:
            continue
        w.update(u, v)
        chosen.append((u, v))
        try:
            res = _search(w, budget - 1, insert, chosen, stats, nodes)
        finally:
            chosen.pop()
            w.update(u, v)
        if res is not None:
            return res
    return None


def _query(w: Wrapper, k: int, insert: bool, stats: Optional[BranchStats]) -> CompletionAnswer:
    stats = stats if stats is not None else BranchStats()
    if k > w.k:
        raise ValueError(f"query budget {k} exceeds the wrapper budget {w.k}")
    stats.queries += 1
    if w.splittance() > k:
        stats.last_nodes = 0
        return NO
    nodes = [0]
    res = _search(w, k, insert, [], stats, nodes)
    stats.last_nodes = nodes[0]
    stats.max_nodes = max(stats.max_nodes, nodes[0])
    if nodes[0] > node_bound(k):
        raise TreeBoundExceeded(f"search visited {nodes[0]} nodes, bound {node_bound(k)}")
    if res is None:
        return NO
    return CompletionAnswer(True, tuple(sorted(res)))


def query_completion(w: Wrapper, k: int, stats: Optional[BranchStats] = None) -> CompletionAnswer:
    """Can at most ``k`` edge insertions make the current graph split?"""
    return _query(w, k, True, stats)


def query_deletion(w: Wrapper, k: int, stats: Optional[BranchStats] = None) -> CompletionAnswer:
    """Can at most ``k`` edge deletions make the current graph split?"""
    return _query(w, k, False, stats)


class Engine:
    """Wrapper plus the maintained Split Completion answer."""

    def __init__(self, n: int, k: int, d: int, seed=None, *, eager: bool = True, **wrapper_kw):
        self.k = k
        self.wrapper = Wrapper(n, k, d, seed, **wrapper_kw)
        self.stats = BranchStats()
        self.eager = eager
        self._answer: Optional[CompletionAnswer] = None
        if eager:
            self.recompute()

    @property
    def n(self) -> int:
        return self.wrapper.n

    def update(self, u: int, v: int) -> None:
        self.wrapper.update(u, v)
        self._answer = None
        if self.eager:
            self.recompute()

    def recompute(self) -> CompletionAnswer:
        self._answer = query_completion(self.wrapper, self.k, self.stats)
        return self._answer

    def answer(self) -> CompletionAnswer:
        return self._answer if self._answer is not None else self.recompute()

    def deletion_answer(self) -> CompletionAnswer:
        return query_deletion(self.wrapper, self.k, self.stats)

    def splittance(self) -> int:
        return self.wrapper.splittance()
