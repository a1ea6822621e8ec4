"""Desk-scale property suites behind ``splitcomp selftest``.

Each suite returns :class:`Check` rows.  A *hard* check is deterministic
(a failure is a bug); a soft check is allowed rare failures within the
probabilistic budget and only produces a warning.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import oracle
from .branching import Engine, node_bound, query_deletion
from .dsplit import SplittanceState
from .graph_core import Graph, ObstructionKind
from .instances import adversarial_pairs, near_split_edges, promise_instance, random_pairs
from .obstruction import SPLIT, find_obstruction
from .promise_nl import TOO_MANY, PromiseNL
from .promise_ns import LayerFamily, SamplingFailed
from .wrapper import Wrapper


@dataclass
class Check:
    module: str
    name: str
    hard: bool
    passed: int = 0
    failed: int = 0

    def record(self, ok: bool) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1

    @property
    def total(self) -> int:
        return self.passed + self.failed


def suite_graph_core(rng: random.Random, trials: int) -> list[Check]:
    inv = Check("graph_core", "toggle keeps adjacency symmetric and counted", True)
    iso = Check("graph_core", "induces agrees with permutation matching", True)
    for _ in range(trials):
        n = rng.randint(5, 9)
        g = Graph(n)
        for u, v in random_pairs(rng, n, 3 * n):
            g.toggle_edge(u, v)
        try:
            g.check_invariants()
            inv.record(True)
        except AssertionError:
            inv.record(False)
        for kind in ObstructionKind:
            U = rng.sample(range(1, n + 1), kind.order)
            iso.record(g.induces(U, kind) == oracle.isomorphic_by_permutation(g, U, kind))
    return [inv, iso]


def suite_oracle(rng: random.Random, trials: int) -> list[Check]:
    formula = Check("oracle", "degree formula equals brute splittance", True)
    fact = Check("oracle", "no obstruction iff splittance 0", True)
    for _ in range(trials):
        n = rng.randint(1, 9)
        g = Graph.from_edges(n, random_pairs(rng, n, rng.randint(0, 2 * n)) if n > 1 else [])
        s = oracle.brute_splittance(g)
        formula.record(oracle.degree_splittance(g) == s)
        fact.record((not oracle.brute_obstructions(g)) == (s == 0))
    return [formula, fact]


def suite_dsplit(rng: random.Random, trials: int) -> list[Check]:
    exact = Check("dsplit", "splittance equals brute force after each toggle", True)
    inv = Check("dsplit", "ladder and partition match a full recompute", True)
    for _ in range(max(1, trials // 10)):
        n = rng.randint(2, 12)
        st = SplittanceState(n)
        for u, v in random_pairs(rng, n, 20):
            st.update(u, v)
            exact.record(st.splittance() == oracle.brute_splittance(st.graph))
            try:
                st.check_invariants()
                inv.record(True)
            except AssertionError:
                inv.record(False)
    return [exact, inv]


def suite_promise_nl(rng: random.Random, trials: int) -> list[Check]:
    sound = Check("promise_nl", "listed vertices lie in the target set", True)
    size = Check("promise_nl", "TOO_MANY exactly when the target exceeds ell", True)
    exact = Check("promise_nl", "listing returns the whole target set", False)
    coherent = Check("promise_nl", "accumulators equal a full recompute", True)
    for t in range(max(1, trials // 10)):
        inst = promise_instance(rng, rng.randint(2, 30), rng.randint(0, 5))
        nl = PromiseNL(inst.n, inst.k, rng.randint(1, 8), 3, seed=rng.getrandbits(32))
        nl.batch_update(inst.A, inst.edges, inst.non_edges_a, inst.edges_b)
        try:
            nl.recompute_check()
            coherent.record(True)
        except AssertionError:
            coherent.record(False)
        g = nl.graph
        for v in range(1, inst.n + 1):
            if v in inst.A:
                true = {b for b in g.neighbors(v) if b not in inst.A}
                got = nl.list_neighbors_bs(v)
            else:
                true = {a for a in inst.A if not g.has_edge(a, v)}
                got = nl.list_non_neighbors_as(v)
            size.record((got is TOO_MANY) == (len(true) > nl.ell))
            if got is not TOO_MANY:
                sound.record(got <= true)
                exact.record(got == true)
    return [sound, size, exact, coherent]


def suite_promise_ns(rng: random.Random, trials: int) -> list[Check]:
    sound = Check("promise_ns", "samples lie in the target set", True)
    size = Check("promise_ns", "sample size is min(ell, |target|)", False)
    for _ in range(max(1, trials // 20)):
        n = rng.randint(20, 120)
        inst = promise_instance(rng, n, rng.randint(0, 4))
        ell = rng.randint(1, 3)
        fam = LayerFamily(n, inst.k, ell, 2, seed=rng.getrandbits(32), gamma=10, lazy_layers=False)
        fam.batch_update(inst.A, inst.edges, inst.non_edges_a, inst.edges_b)
        g = fam.graph
        for v in rng.sample(range(1, n + 1), min(n, 10)):
            if v in inst.A:
                true = {b for b in g.neighbors(v) if b not in inst.A}
                call = fam.sample_edges
            else:
                true = {a for a in inst.A if not g.has_edge(a, v)}
                call = fam.sample_non_edges
            try:
                got = call(v)
            except SamplingFailed:
                size.record(False)
                continue
            sound.record(got <= true)
            size.record(len(got) == min(ell, len(true)))
    return [sound, size]


def suite_wrapper(rng: random.Random, trials: int) -> list[Check]:
    lists = Check("wrapper", "lists equal direct scans at compliant steps", False)
    exact = Check("wrapper", "splittance is exact at every step", True)
    for _ in range(max(1, trials // 50)):
        n = rng.randint(5, 14)
        k = rng.randint(1, 4)
        w = Wrapper(n, k, 3, seed=rng.getrandbits(32))
        for u, v in adversarial_pairs(rng, n, k, 60):
            w.update(u, v)
            exact.record(w.splittance() == oracle.brute_splittance(w.graph))
            if w.splittance() <= k:
                na, eb = w.direct_lists()
                lists.record(set(w.list_non_edges_a()) == na and set(w.list_edges_b()) == eb)
    return [lists, exact]


def suite_obstruction(rng: random.Random, trials: int) -> list[Check]:
    sound = Check("obstruction", "returned sets induce the reported kind", True)
    agree = Check("obstruction", "SPLIT exactly when no obstruction exists", False)
    for _ in range(max(1, trials // 10)):
        n = rng.randint(4, 16)
        A = rng.sample(range(1, n + 1), rng.randint(0, n))
        edges = sorted(near_split_edges(rng, n, A, rng.random(), rng.randint(0, 3)))
        g = Graph.from_edges(n, edges)
        k = max(1, oracle.brute_splittance(g))
        w = Wrapper(n, k, 4, seed=rng.getrandbits(32))
        rng.shuffle(edges)
        w.update_many(edges)
        got = find_obstruction(w)
        truth = oracle.any_obstruction(g)
        if got is not SPLIT:
            sound.record(g.induces(got.vertices, got.kind))
        agree.record((got is SPLIT) == (truth is None))
    return [sound, agree]


def suite_branching(rng: random.Random, trials: int) -> list[Check]:
    decide = Check("branching", "decisions equal brute force", False)
    bound = Check("branching", "search tree within the 5^k node bound", True)
    restore = Check("branching", "queries leave the graph unchanged", True)
    for _ in range(max(1, trials // 50)):
        n = rng.randint(4, 10)
        k = rng.randint(1, 3)
        eng = Engine(n, k, 4, seed=rng.getrandbits(32))
        for u, v in adversarial_pairs(rng, n, k, 30):
            eng.update(u, v)
            before = eng.wrapper.graph.edge_set()
            ans = eng.answer()
            bound.record(eng.stats.last_nodes <= node_bound(k))
            dele = query_deletion(eng.wrapper, k)
            restore.record(eng.wrapper.graph.edge_set() == before)
            g = eng.wrapper.graph
            decide.record(ans.decision == oracle.brute_completion(g, k).decision
                          and dele.decision == oracle.brute_deletion(g, k).decision)
    return [decide, bound, restore]


SUITES = {
    "graph_core": suite_graph_core,
    "oracle": suite_oracle,
    "dsplit": suite_dsplit,
    "promise_nl": suite_promise_nl,
    "promise_ns": suite_promise_ns,
    "wrapper": suite_wrapper,
    "obstruction": suite_obstruction,
    "branching": suite_branching,
}


def run_selftest(trials: int = 100, seed: int = 0, modules=None) -> list[Check]:
    names = list(SUITES) if not modules else list(modules)
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown module {name!r}; choose from {', '.join(SUITES)}")
    out = []
    for name in names:
        out.extend(SUITES[name](random.Random(f"{seed}:{name}"), trials))
    return out
