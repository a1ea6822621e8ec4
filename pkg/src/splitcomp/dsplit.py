"""Dynamic splittance with an optimal partition that moves O(1) vertices per update.

The ladder is the degree sequence d_1 >= ... >= d_n, stored as values only
(``dseq``) with the first/last position of every degree value.  Vertex
identities live in one id-sorted block per degree, so the canonical order
is (degree descending, id ascending) and the whole state is a function of
the current graph alone.  That makes toggle-then-untoggle an exact no-op.

A is the prefix of length m, where m is the largest i with d_i >= i (or 0).
Ties d_i = i - 1 give the same splittance either way; the strict rule keeps
A empty on the edgeless graph.
"""

from __future__ import annotations

from sortedcontainers import SortedList

from .graph_core import Graph, check_size

WINDOW = 3
MAX_MOVED = 8


class SplittanceState:
    """Maintains ``splittance(G)`` and a certifying partition (A, B)."""

    def __init__(self, n: int):
        check_size(n)
        self.n = n
        self.graph = Graph(n)
        self.deg = [0] * (n + 1)
        self.dseq = [0] * (n + 1)  # 1-based; dseq[0] unused
        self.first = {0: 1}
        self.last = {0: n}
        self.blocks: dict[int, SortedList] = {0: SortedList(range(1, n + 1))}
        self.m = 0
        self.sum_a = 0  # d_1 + ... + d_m
        self.total = 0  # sum of all degrees
        self.in_a: set[int] = set()
        self._splittance = 0

    # -- reads -------------------------------------------------------------

    def splittance(self) -> int:
        return self._splittance

    def partition(self) -> tuple[frozenset[int], frozenset[int]]:
        A = frozenset(self.in_a)
        return A, frozenset(v for v in range(1, self.n + 1) if v not in A)

    def side_a(self, v: int) -> bool:
        return v in self.in_a

    def position(self, v: int) -> int:
        x = self.deg[v]
        return self.first[x] + self.blocks[x].index(v)

    def vertex_at(self, p: int) -> int:
        x = self.dseq[p]
        return self.blocks[x][p - self.first[x]]

    # -- update ------------------------------------------------------------

    def update(self, u: int, v: int) -> set[int]:
        """Toggle ``uv``; return the vertices that switched sides."""
        self.graph.check_pair(u, v)
        lo, hi = max(1, self.m - WINDOW), min(self.n, self.m + WINDOW)
        watch = {self.vertex_at(p) for p in range(lo, hi + 1)}
        watch.update((u, v))
        before = {w: w in self.in_a for w in watch}

        present = self.graph.toggle_edge(u, v)
        delta = 1 if present else -1
        old_m = self.m
        for w in (u, v):
            p = self._shift(w, delta)
            if p <= old_m:
                self.sum_a += delta
        self.total += 2 * delta
        self._recompute_m()

        moved = set()
        for w, was in before.items():
            now = self.position(w) <= self.m
            if now != was:
                moved.add(w)
                if now:
                    self.in_a.add(w)
                else:
                    self.in_a.discard(w)
        assert len(moved) <= MAX_MOVED, f"moved {len(moved)} vertices in one update"
        return moved

    def _shift(self, w: int, delta: int) -> int:
        """Move ``w`` one degree up or down; return the ladder slot whose value changed."""
        x = self.deg[w]
        y = x + delta
        if delta > 0:
            p = self.first[x]
            self.last[y] = p
            self.first.setdefault(y, p)
            if self.last[x] == p:
                del self.first[x], self.last[x]
            else:
                self.first[x] = p + 1
        else:
            p = self.last[x]
            self.first[y] = p
            self.last.setdefault(y, p)
            if self.first[x] == p:
                del self.first[x], self.last[x]
            else:
                self.last[x] = p - 1
        self.dseq[p] = y
        blk = self.blocks[x]
        blk.remove(w)
        if not blk:
            del self.blocks[x]
        self.blocks.setdefault(y, SortedList()).add(w)
        self.deg[w] = y
        return p

    def _recompute_m(self) -> None:
        old = self.m
        lo, hi = max(1, old - WINDOW), min(self.n, old + WINDOW)
        new = None
        for i in range(hi, lo - 1, -1):
            if self.dseq[i] >= i:
                new = i
                break
        if new is None:
            assert lo == 1, "threshold index left the scan window"
            new = 0
        assert new < hi or hi == self.n or self.dseq[hi + 1] < hi + 1, (
            "threshold index left the scan window"
        )
        if new > old:
            self.sum_a += sum(self.dseq[old + 1:new + 1])
        elif new < old:
            self.sum_a -= sum(self.dseq[new + 1:old + 1])
        self.m = new
        twice = new * (new - 1) - self.sum_a + (self.total - self.sum_a)
        assert twice >= 0 and twice % 2 == 0
        self._splittance = twice // 2

    # -- checks ------------------------------------------------------------

    def check_invariants(self) -> None:
        """Full recomputation of every cached value (test helper)."""
        g = self.graph
        g.check_invariants()
        order = sorted(range(1, self.n + 1), key=lambda w: (-g.degree(w), w))
        assert [self.vertex_at(p) for p in range(1, self.n + 1)] == order
        d = [0] + [g.degree(w) for w in order]
        assert d == self.dseq
        m = max([0] + [i for i in range(1, self.n + 1) if d[i] >= i])
        assert m == self.m
        assert self.in_a == set(order[:m])
        assert self.sum_a == sum(d[1:m + 1])
        assert self.total == 2 * g.edge_count
        a = len(self.in_a)
        inside = sum(1 for x, y in g.edges() if x in self.in_a and y in self.in_a)
        outside = sum(1 for x, y in g.edges() if x not in self.in_a and y not in self.in_a)
        assert a * (a - 1) // 2 - inside + outside == self._splittance
