"""Dynamic simple graph on the fixed vertex set 1..n, plus obstruction checks."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator

MAX_VERTICES = 2**31

Edge = tuple[int, int]


class InvalidVertex(ValueError):
    pass


class InvalidSize(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


class ObstructionKind(enum.Enum):
    TWO_K2 = "2K2"
    C4 = "C4"
    C5 = "C5"

    @property
    def order(self) -> int:
        return 5 if self is ObstructionKind.C5 else 4


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def check_size(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise InvalidSize(f"vertex count must be a positive integer, got {n!r}")
    if n > MAX_VERTICES:
        raise InvalidSize(f"vertex count {n} exceeds {MAX_VERTICES}")


class Graph:
    """Undirected simple graph with vertices ``1..n``.

    Neighbor sets are created lazily so that a graph on millions of
    vertices with few edges stays cheap.
    """

    __slots__ = ("n", "_adj", "edge_count")

    def __init__(self, n: int):
        check_size(n)
        self.n = n
        self._adj: dict[int, set[int]] = {}
        self.edge_count = 0

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        g = cls(n)
        for u, v in edges:
            if not g.has_edge(u, v):
                g.toggle_edge(u, v)
        return g

    def check_vertex(self, v: int) -> None:
        if not (1 <= v <= self.n):
            raise InvalidVertex(f"vertex {v} outside 1..{self.n}")

    def check_pair(self, u: int, v: int) -> None:
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v:
            raise InvalidVertex(f"loop {u}-{v} is not allowed")

    def toggle_edge(self, u: int, v: int) -> bool:
        """Flip membership of ``uv``; return True if the edge is now present."""
        self.check_pair(u, v)
        nu = self._adj.get(u)
        if nu is not None and v in nu:
            nu.discard(v)
            self._adj[v].discard(u)
            if not nu:
                del self._adj[u]
            if not self._adj[v]:
                del self._adj[v]
            self.edge_count -= 1
            return False
        self._adj.setdefault(u, set()).add(v)
        self._adj.setdefault(v, set()).add(u)
        self.edge_count += 1
        return True

    def has_edge(self, u: int, v: int) -> bool:
        nu = self._adj.get(u)
        return nu is not None and v in nu

    def neighbors(self, v: int) -> set[int]:
        # read-only view; callers must not mutate
        return self._adj.get(v, _EMPTY)

    def degree(self, v: int) -> int:
        return len(self._adj.get(v, _EMPTY))

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edges(self) -> Iterator[Edge]:
        for u, nu in self._adj.items():
            for v in nu:
                if u < v:
                    yield (u, v)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def copy(self) -> Graph:
        g = Graph(self.n)
        g._adj = {v: set(nv) for v, nv in self._adj.items()}
        g.edge_count = self.edge_count
        return g

    def complement(self) -> Graph:
        g = Graph(self.n)
        for u in range(1, self.n + 1):
            nu = self.neighbors(u)
            for v in range(u + 1, self.n + 1):
                if v not in nu:
                    g.toggle_edge(u, v)
        return g

    def check_invariants(self) -> None:
        """Full scan for symmetry, loop-freeness and the edge counter."""
        total = 0
        for u, nu in self._adj.items():
            assert 1 <= u <= self.n
            assert u not in nu, f"loop at {u}"
            assert nu, f"empty neighbor set stored for {u}"
            for v in nu:
                assert u in self._adj.get(v, _EMPTY), f"asymmetric edge {u}-{v}"
            total += len(nu)
        assert total == 2 * self.edge_count

    def induces(self, vertices: Iterable[int], kind: ObstructionKind) -> bool:
        """True iff the subgraph induced by ``vertices`` is isomorphic to ``kind``."""
        return induces(self.has_edge, vertices, kind)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


_EMPTY: frozenset[int] = frozenset()


def induces(adjacent, vertices: Iterable[int], kind: ObstructionKind) -> bool:
    """Check ``G[U] ≅ kind`` given only an adjacency predicate.

    2K2 is the only 4-vertex graph with two disjoint edges; a 2-regular
    graph on 4 (resp. 5) vertices can only be C4 (resp. C5).
    """
    U = list(vertices)
    if len(set(U)) != len(U) or len(U) != kind.order:
        raise SizeMismatch(f"{kind.value} needs {kind.order} distinct vertices, got {U}")
    deg = dict.fromkeys(U, 0)
    m = 0
    for i, u in enumerate(U):
        for v in U[i + 1:]:
            if adjacent(u, v):
                deg[u] += 1
                deg[v] += 1
                m += 1
    if kind is ObstructionKind.TWO_K2:
        return m == 2 and all(x == 1 for x in deg.values())
    return m == len(U) and all(x == 2 for x in deg.values())
