"""Promise-free front end over the dynamic splittance and the promise structures.

Updates go to the splittance tracker immediately.  The promise structures
keep the graph G_s and partition (A_s, B_s) of the last step s at which
splittance was at most k; while the splittance stays above k the changes
pile up in ``vertices_upd`` (A_s △ A_t) and ``edges_upd`` (E_s △ E_t).  On
the first step t back under the budget the queue is flushed: the new lists
of non-edges inside A_t and edges inside B_t are rebuilt from the old lists,
the queued changes, and a few neighborhood queries against a temporarily
modified copy of G_s, and then everything is handed over in one batch.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from .dsplit import SplittanceState
from .graph_core import Edge, norm_edge
from .promise_nl import GAMMA, TOO_MANY, PromiseNL
from .promise_ns import LayerFamily


@dataclass
class FlushStats:
    flushes: int = 0
    checkpoints: int = 0
    max_moved_side: int = 0  # largest |A_s ∩ B_t| or |B_s ∩ A_t| seen at a flush
    decode_misses: int = 0  # listing calls that decoded fewer elements than counted


class ClaimViolation(AssertionError):
    pass


def moved_bound(r: int, k: int) -> float:
    """Upper bound on |A_s ∩ B_t| after r updates between compliant steps."""
    return math.sqrt(2 * (r + 2 * k)) + 1


class Wrapper:
    def __init__(self, n: int, k: int, d: int, seed=None, *, gamma: int = GAMMA,
                 lazy_layers: bool = True, checkpoint_period: int | None = None):
        if k < 0:
            raise ValueError(f"k must be non-negative, got {k}")
        if d < 1:
            raise ValueError(f"d must be at least 1, got {d}")
        self.n = n
        self.k = k
        self.d = d
        self.sample_cap = 10 * k
        nl_seed, ns_seed = np.random.SeedSequence(seed).spawn(2)
        self.dsplit = SplittanceState(n)
        self.nl = PromiseNL(n, k, max(1, k), d + 3, seed=nl_seed, gamma=gamma)
        self.ns = LayerFamily(n, k, max(1, self.sample_cap), d, seed=ns_seed, gamma=gamma,
                              lazy_layers=lazy_layers)
        self.vertices_upd: set[int] = set()
        self.edges_upd: set[Edge] = set()
        self.edges_b: tuple[Edge, ...] = ()
        self.non_edges_a: tuple[Edge, ...] = ()
        self.checkpoint_period = n * n if checkpoint_period is None else checkpoint_period
        self.since_checkpoint = 0
        self.since_flush = 0
        self.stats = FlushStats()

    # -- reads -------------------------------------------------------------

    @property
    def graph(self):
        """The current graph G_t."""
        return self.dsplit.graph

    def splittance(self) -> int:
        return self.dsplit.splittance()

    def side_a(self, v: int) -> bool:
        """Side of ``v`` in the partition the promise structures hold."""
        return self.nl.side_a(v)

    def partition(self) -> tuple[frozenset[int], frozenset[int]]:
        A = frozenset(self.nl.in_a)
        return A, frozenset(v for v in range(1, self.n + 1) if v not in A)

    def list_non_edges_a(self) -> tuple[Edge, ...]:
        return self.non_edges_a

    def list_edges_b(self) -> tuple[Edge, ...]:
        return self.edges_b

    def sample_edges(self, a: int) -> frozenset[int]:
        if self.sample_cap == 0:
            self.nl._require(a, True)
            return frozenset()
        return self.ns.sample_edges(a)

    def sample_non_edges(self, b: int) -> frozenset[int]:
        if self.sample_cap == 0:
            self.nl._require(b, False)
            return frozenset()
        return self.ns.sample_non_edges(b)

    # -- update ------------------------------------------------------------

    def update(self, u: int, v: int) -> None:
        self._queue(u, v)
        if self.dsplit.splittance() <= self.k:
            self._flush()

    def update_many(self, pairs) -> None:
        """Toggle every pair, then flush once if the result is within budget.

        Equivalent to a sequence of ``update`` calls whose intermediate
        states all exceed the budget; useful for loading a graph.
        """
        for u, v in pairs:
            self._queue(u, v)
        if self.dsplit.splittance() <= self.k:
            self._flush()

    def _queue(self, u: int, v: int) -> None:
        moved = self.dsplit.update(u, v)
        self.vertices_upd ^= moved
        self.edges_upd ^= {norm_edge(u, v)}
        self.since_flush += 1
        self.since_checkpoint += 1

    def _flush(self) -> None:
        g = self.dsplit.graph
        a_s = self.nl.in_a
        a_t = self.dsplit.in_a
        as_bt = sorted(v for v in self.vertices_upd if v in a_s)
        bs_at = sorted(v for v in self.vertices_upd if v not in a_s)
        bound = moved_bound(self.since_flush, self.k)
        side = max(len(as_bt), len(bs_at))
        self.stats.max_moved_side = max(self.stats.max_moved_side, side)
        if side > bound:
            raise ClaimViolation(
                f"{side} vertices changed sides after {self.since_flush} updates (bound {bound:.2f})"
            )

        if self.since_checkpoint >= self.checkpoint_period:
            non_edges_a, edges_b = self.direct_lists()
            self.since_checkpoint = 0
            self.stats.checkpoints += 1
        else:
            edges_b = self._rebuild_edges_b(g, a_s, a_t, as_bt, bs_at)
            non_edges_a = self._rebuild_non_edges_a(g, a_s, a_t, as_bt, bs_at)

        moved = sorted(self.vertices_upd)
        e_mod = sorted(self.edges_upd)
        self.nl.batch_update(moved, e_mod, non_edges_a, edges_b)
        self.ns.batch_update(moved, e_mod, non_edges_a, edges_b)
        self.non_edges_a = self.nl.non_edges_a
        self.edges_b = self.nl.edges_b
        self.vertices_upd.clear()
        self.edges_upd.clear()
        self.since_flush = 0
        self.stats.flushes += 1

    def _rebuild_edges_b(self, g, a_s, a_t, as_bt, bs_at) -> set[Edge]:
        out: set[Edge] = set()
        # (1) both endpoints stayed in B: old list plus queued edge changes
        for x, y in set(self.edges_b) | self.edges_upd:
            if x not in a_s and y not in a_s and x not in a_t and y not in a_t and g.has_edge(x, y):
                out.add((x, y))
        # (2) both endpoints moved from A to B
        for i, x in enumerate(as_bt):
            for y in as_bt[i + 1:]:
                if g.has_edge(x, y):
                    out.add(norm_edge(x, y))
        # (3) one endpoint moved from A to B, the other stayed in B: ask nl
        # about a copy of G_s patched so that every x in as_bt sees exactly
        # its G_t neighbors among the vertices that stay in B.
        if as_bt:
            moved_set = set(as_bt)
            stayed_b_changes = [
                (x, y) for x, y in self.edges_upd
                if (x in moved_set and y not in a_s and y not in a_t)
                or (y in moved_set and x not in a_s and x not in a_t)
            ]
            gs_cross = [norm_edge(x, y) for x in as_bt for y in bs_at if self._in_gs(g, x, y)]
            with self._temporary(stayed_b_changes + gs_cross):
                for x in as_bt:
                    got = self._listed(self.nl.list_neighbors_bs, self.nl.count_neighbors_bs, x)
                    out.update(norm_edge(x, y) for y in got)
        return out

    def _rebuild_non_edges_a(self, g, a_s, a_t, as_bt, bs_at) -> set[Edge]:
        out: set[Edge] = set()
        # (1) both endpoints stayed in A
        for x, y in set(self.non_edges_a) | self.edges_upd:
            if x in a_s and y in a_s and x in a_t and y in a_t and not g.has_edge(x, y):
                out.add((x, y))
        # (2) both endpoints moved from B to A
        for i, x in enumerate(bs_at):
            for y in bs_at[i + 1:]:
                if not g.has_edge(x, y):
                    out.add(norm_edge(x, y))
        # (3) one endpoint moved from B to A, the other stayed in A
        if bs_at:
            moved_set = set(bs_at)
            stayed_a_changes = [
                (x, y) for x, y in self.edges_upd
                if (x in moved_set and y in a_s and y in a_t)
                or (y in moved_set and x in a_s and x in a_t)
            ]
            gs_cross_non = [norm_edge(x, y) for x in bs_at for y in as_bt if not self._in_gs(g, x, y)]
            with self._temporary(stayed_a_changes + gs_cross_non):
                for x in bs_at:
                    got = self._listed(self.nl.list_non_neighbors_as, self.nl.count_non_neighbors_as, x)
                    out.update(norm_edge(x, y) for y in got)
        return out

    def _in_gs(self, g, x: int, y: int) -> bool:
        """Adjacency in G_s, recovered from G_t and the queued edge changes."""
        return g.has_edge(x, y) != (norm_edge(x, y) in self.edges_upd)

    @contextmanager
    def _temporary(self, e_mod: list[Edge]):
        # The patch only touches A_s-B_s pairs, so nl's cached lists stay valid.
        nl = self.nl
        lists = (nl.non_edges_a, nl.edges_b)
        nl.batch_update((), e_mod, *lists)
        try:
            yield
        finally:
            nl.batch_update((), e_mod, *lists)

    def _listed(self, listing, count, v: int) -> frozenset[int]:
        got = listing(v)
        # At most k edges of G_t[B_t] (or non-edges of G_t[A_t]) exist at a
        # compliant step, so the exact size test cannot overflow here.
        assert got is not TOO_MANY, f"listing for {v} overflowed at a compliant step"
        if len(got) < count(v):
            self.stats.decode_misses += 1
        return got

    # -- checks ------------------------------------------------------------

    def direct_lists(self) -> tuple[set[Edge], set[Edge]]:
        """Non-edges inside A_t and edges inside B_t by a full scan of G_t."""
        g = self.dsplit.graph
        a_t = sorted(self.dsplit.in_a)
        non_a = {(x, y) for i, x in enumerate(a_t) for y in a_t[i + 1:] if not g.has_edge(x, y)}
        in_a = self.dsplit.in_a
        edges_b = {(x, y) for x, y in g.edges() if x not in in_a and y not in in_a}
        return non_a, edges_b
