"""Brute-force reference implementations.

Nothing here imports the dynamic stack; only :class:`Graph` is shared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph_core import Edge, Graph, ObstructionKind, norm_edge


class TooLarge(ValueError):
    pass


MAX_SPLITTANCE_N = 20
MAX_OBSTRUCTION_N = 40

_TEMPLATES = {
    ObstructionKind.TWO_K2: [(0, 1), (2, 3)],
    ObstructionKind.C4: [(0, 1), (1, 2), (2, 3), (3, 0)],
    ObstructionKind.C5: [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
}


@dataclass(frozen=True)
class Found:
    kind: ObstructionKind
    vertices: frozenset[int]


@dataclass(frozen=True)
class BruteAnswer:
    decision: bool
    witness: Optional[tuple[Edge, ...]] = None


def adjacency_matrix(g: Graph) -> np.ndarray:
    m = np.zeros((g.n, g.n), dtype=np.int8)
    for u, v in g.edges():
        m[u - 1, v - 1] = m[v - 1, u - 1] = 1
    return m


def partition_splittance(g: Graph, A) -> int:
    """Non-edges inside ``A`` plus edges inside the complement of ``A``."""
    A = set(A)
    a = len(A)
    inside_a = inside_b = 0
    for u, v in g.edges():
        if u in A and v in A:
            inside_a += 1
        elif u not in A and v not in A:
            inside_b += 1
    return a * (a - 1) // 2 - inside_a + inside_b


def brute_splittance(g: Graph) -> int:
    """Minimum of ``partition_splittance`` over all 2^n partitions."""
    n = g.n
    if n > MAX_SPLITTANCE_N:
        raise TooLarge(f"brute_splittance is capped at n={MAX_SPLITTANCE_N}")
    if g.edge_count == 0:
        return 0
    M = adjacency_matrix(g).astype(np.float32)
    masks = np.arange(1 << n, dtype=np.int64)
    X = ((masks[:, None] >> np.arange(n)) & 1).astype(np.float32)
    Y = 1.0 - X
    e_a = np.einsum("ij,ij->i", X @ M, X) / 2
    e_b = np.einsum("ij,ij->i", Y @ M, Y) / 2
    a = X.sum(axis=1)
    vals = a * (a - 1) / 2 - e_a + e_b
    return int(round(float(vals.min())))


def degree_splittance(g: Graph) -> int:
    """Static degree-sequence formula (Hammer-Simeone), halved.

    Used by the oracle only as a pruning bound and as the object under
    test in the formula validation; it never touches the dynamic ladder.
    """
    d = sorted((g.degree(v) for v in g.vertices()), reverse=True)
    m = 0
    for i, di in enumerate(d, start=1):
        if di >= i - 1:
            m = i
    twice = m * (m - 1) - sum(d[:m]) + sum(d[m:])
    assert twice % 2 == 0
    return twice // 2


def isomorphic_by_permutation(g: Graph, vertices, kind: ObstructionKind) -> bool:
    """Try every ordering of ``vertices`` against the template edge set."""
    U = list(vertices)
    if len(U) != kind.order:
        return False
    template = {frozenset(e) for e in _TEMPLATES[kind]}
    pairs = list(itertools.combinations(range(len(U)), 2))
    for perm in itertools.permutations(U):
        ok = True
        for i, j in pairs:
            if g.has_edge(perm[i], perm[j]) != (frozenset((i, j)) in template):
                ok = False
                break
        if ok:
            return True
    return False


def _bitsets(g: Graph) -> list[int]:
    adj = [0] * (g.n + 1)
    for u, v in g.edges():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _classify(adj: list[int], U: tuple[int, ...]) -> Optional[ObstructionKind]:
    deg = []
    m = 0
    for u in U:
        du = sum(1 for v in U if v != u and adj[u] >> v & 1)
        deg.append(du)
        m += du
    m //= 2
    if len(U) == 4:
        if m == 2 and all(x == 1 for x in deg):
            return ObstructionKind.TWO_K2
        if m == 4 and all(x == 2 for x in deg):
            return ObstructionKind.C4
    elif m == 5 and all(x == 2 for x in deg):
        return ObstructionKind.C5
    return None


def brute_obstructions(g: Graph) -> list[Found]:
    """All induced 2K2 / C4 / C5 vertex sets, by full subset enumeration."""
    if g.n > MAX_OBSTRUCTION_N:
        raise TooLarge(f"brute_obstructions is capped at n={MAX_OBSTRUCTION_N}")
    adj = _bitsets(g)
    out = []
    for size in (4, 5):
        for U in itertools.combinations(range(1, g.n + 1), size):
            kind = _classify(adj, U)
            if kind is not None:
                out.append(Found(kind, frozenset(U)))
    return out


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def any_obstruction(g: Graph) -> Optional[Found]:
    """First obstruction found by a pruned search, or None if ``g`` is split.

    2K2 from pairs of edges, C4 from pairs of non-edges sharing no vertex
    (2K2 of the complement), and C5 by extending induced paths x-y-z.
    """
    adj = _bitsets(g)
    n = g.n
    full = (1 << (n + 1)) - 2
    for a, b in sorted(g.edges()):
        free = full & ~(adj[a] | adj[b] | 1 << a | 1 << b)
        for c in _bits(free):
            hit = adj[c] & free
            if hit:
                d = (hit & -hit).bit_length() - 1
                return Found(ObstructionKind.TWO_K2, frozenset((a, b, c, d)))
    # C4: a-b-c-d-a with a,c and b,d non-adjacent
    for a in range(1, n + 1):
        for c in range(a + 1, n + 1):
            if adj[a] >> c & 1:
                continue
            common = adj[a] & adj[c]
            for b in _bits(common):
                rest = common & ~adj[b] & ~(1 << b)
                if rest:
                    d = (rest & -rest).bit_length() - 1
                    return Found(ObstructionKind.C4, frozenset((a, b, c, d)))
    # C5: x-y-z-t-w-x
    for y in range(1, n + 1):
        ny = list(_bits(adj[y]))
        for i, x in enumerate(ny):
            for z in ny[i + 1:]:
                if adj[x] >> z & 1:
                    continue
                bx, by, bz = 1 << x, 1 << y, 1 << z
                ts = adj[z] & ~adj[x] & ~adj[y] & ~(bx | by)
                ws = adj[x] & ~adj[y] & ~adj[z] & ~(by | bz)
                if not ts or not ws:
                    continue
                for t in _bits(ts):
                    hit = adj[t] & ws
                    if hit:
                        w = (hit & -hit).bit_length() - 1
                        return Found(ObstructionKind.C5, frozenset((x, y, z, t, w)))
    return None


def _search(g: Graph, budget: int, chosen: list[Edge], insert: bool) -> Optional[list[Edge]]:
    if degree_splittance(g) > budget:
        return None
    found = any_obstruction(g)
    if found is None:
        return list(chosen)
    if budget == 0:
        return None
    for u, v in itertools.combinations(sorted(found.vertices), 2):
        if g.has_edge(u, v) == insert:
            continue
        g.toggle_edge(u, v)
        chosen.append((u, v))
        res = _search(g, budget - 1, chosen, insert)
        chosen.pop()
        g.toggle_edge(u, v)
        if res is not None:
            return res
    return None


def _brute_modify(g: Graph, k: int, insert: bool) -> BruteAnswer:
    if g.n > MAX_OBSTRUCTION_N:
        raise TooLarge(f"brute search is capped at n={MAX_OBSTRUCTION_N}")
    if k < 0:
        return BruteAnswer(False)
    res = _search(g.copy(), k, [], insert)
    if res is None:
        return BruteAnswer(False)
    return BruteAnswer(True, tuple(sorted(norm_edge(u, v) for u, v in res)))


def brute_completion(g: Graph, k: int) -> BruteAnswer:
    """Can at most ``k`` edge insertions make ``g`` split?"""
    return _brute_modify(g, k, insert=True)


def brute_deletion(g: Graph, k: int) -> BruteAnswer:
    """Can at most ``k`` edge deletions make ``g`` split?"""
    return _brute_modify(g, k, insert=False)
