"""Random graphs and traces shared by the tests, the self-test and the CLI."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .dsplit import SplittanceState
from .graph_core import Edge, norm_edge


@dataclass
class PromiseInstance:
    """A graph with a partition (A, B) of splittance at most k, plus its lists."""

    n: int
    k: int
    A: frozenset[int]
    edges: list[Edge]
    non_edges_a: list[Edge]
    edges_b: list[Edge]


def near_split_edges(rng: random.Random, n: int, A, p_cross: float, edits: int) -> set[Edge]:
    """Clique on A, independent B, random A-B edges, then ``edits`` random in-side flips."""
    A = set(A)
    edges = set()
    for u, v in itertools.combinations(range(1, n + 1), 2):
        if u in A and v in A:
            edges.add((u, v))
        elif (u in A) != (v in A) and rng.random() < p_cross:
            edges.add((u, v))
    same_side = [(u, v) for u, v in itertools.combinations(range(1, n + 1), 2)
                 if (u in A) == (v in A)]
    for e in rng.sample(same_side, min(edits, len(same_side))):
        edges ^= {e}
    return edges


def promise_instance(rng: random.Random, n: int, k: int, p_cross: float | None = None) -> PromiseInstance:
    A = frozenset(rng.sample(range(1, n + 1), rng.randint(0, n)))
    p = rng.random() if p_cross is None else p_cross
    edges = near_split_edges(rng, n, A, p, rng.randint(0, k))
    sa = sorted(A)
    non_a = [(u, v) for i, u in enumerate(sa) for v in sa[i + 1:] if (u, v) not in edges]
    edges_b = [(u, v) for u, v in edges if u not in A and v not in A]
    return PromiseInstance(n, k, A, sorted(edges), non_a, sorted(edges_b))


def random_pairs(rng: random.Random, n: int, steps: int) -> list[Edge]:
    out = []
    for _ in range(steps):
        u, v = rng.sample(range(1, n + 1), 2)
        out.append(norm_edge(u, v))
    return out


def adversarial_pairs(rng: random.Random, n: int, k: int, steps: int) -> list[Edge]:
    """Toggles that repeatedly push splittance above k and bring it back.

    Each cycle adds a few toggles that keep the graph within budget, climbs
    with splittance-increasing toggles until it exceeds k, then undoes the
    climb in reverse order.
    """
    shadow = SplittanceState(n)
    out: list[Edge] = []
    climb: list[Edge] = []
    phase = "base"
    base_left = rng.randint(1, 3)

    def emit(e):
        shadow.update(*e)
        out.append(e)

    def random_edge():
        u, v = rng.sample(range(1, n + 1), 2)
        return norm_edge(u, v)

    while len(out) < steps:
        if phase == "base":
            for _ in range(20):
                e = random_edge()
                shadow.update(*e)
                ok = shadow.splittance() <= k
                shadow.update(*e)
                if ok:
                    emit(e)
                    break
            base_left -= 1
            if base_left <= 0:
                phase = "climb"
        elif phase == "climb":
            before = shadow.splittance()
            pick = None
            for _ in range(50):
                e = random_edge()
                shadow.update(*e)
                up = shadow.splittance() > before
                shadow.update(*e)
                if up:
                    pick = e
                    break
            if pick is None:
                pick = random_edge()
            emit(pick)
            climb.append(pick)
            if shadow.splittance() > k:
                phase = "descend"
        else:
            if climb:
                emit(climb.pop())
            if not climb or shadow.splittance() <= k and rng.random() < 0.2:
                climb.clear()
                phase = "base"
                base_left = rng.randint(1, 3)
    return out[:steps]
