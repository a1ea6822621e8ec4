"""Acceptance suite: one test per headline criterion.

Every test prints a single ``PASS``/``FAIL`` line with the measured numbers
and then asserts the criterion at its stated tolerance.  The workloads are
sized in :class:`AcceptanceConfig`.  Run just this file with

    pytest tests/test_acceptance.py -v

or ``python scripts/run_acceptance.py`` for the summary alone.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

import networkx as nx
import numpy as np
import pytest

from splitcomp import oracle
from splitcomp.branching import BranchStats, Engine, TreeBoundExceeded, node_bound, query_deletion
from splitcomp.cli import bench_one
from splitcomp.dsplit import SplittanceState
from splitcomp.graph_core import Graph, norm_edge
from splitcomp.instances import adversarial_pairs, near_split_edges, promise_instance, random_pairs
from splitcomp.obstruction import SPLIT, SearchStats, find_obstruction
from splitcomp.promise_nl import TOO_MANY, ColorTables, PromiseNL
from splitcomp.promise_ns import LayerFamily, SamplingFailed
from splitcomp.wrapper import ClaimViolation, Wrapper

pytestmark = pytest.mark.acceptance

RESULTS: list[tuple[str, bool, str]] = []


@dataclass(frozen=True)
class AcceptanceConfig:
    seed: int = 2024
    # splittance exactness
    walks: int = 100
    walk_steps: int = 100
    walk_max_n: int = 14
    # formula validation
    random_formula_graphs: int = 1000
    # PromiseNL listing
    nl_structures: int = 200
    nl_states: int = 50
    nl_queries_per_state: int = 8
    nl_max_n: int = 200
    nl_max_k: int = 5
    # PromiseNS sampling
    ns_n: int = 1024
    ns_ell: int = 4
    ns_k: int = 4
    ns_structures: int = 10
    ns_rounds: int = 20
    ns_queries_per_round: int = 50
    ns_hub_degree: tuple[int, int] = (300, 450)
    # exposure
    exposure_trials: int = 10_000
    # obstruction
    obstruction_graphs: int = 10_000
    obstruction_max_n: int = 40
    obstruction_max_k: int = 5
    obstruction_brute_n: int = 12
    # end to end
    e2e_steps: int = 1000
    e2e_traces: tuple[tuple[str, int, int], ...] = (
        ("random", 12, 2), ("random", 20, 4), ("adversarial", 10, 3), ("adversarial", 20, 4),
    )
    # wrapper flush
    flush_configs: tuple[tuple[int, int], ...] = ((16, 3), (30, 2), (40, 5), (24, 1))
    flush_steps: int = 1000
    flush_crossings: int = 100
    # scaling
    scale_small: int = 2**10
    scale_large: int = 2**17
    scale_steps: int = 2000
    scale_ratio: float = 6.0


CFG = AcceptanceConfig()


@pytest.fixture
def report(capsys):
    def emit(name: str, ok: bool, detail: str) -> None:
        RESULTS.append((name, ok, detail))
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return emit


def _rng(tag: str) -> random.Random:
    return random.Random(f"{CFG.seed}:{tag}")


# -- splittance exactness -----------------------------------------------------


def test_splittance_exactness(report):
    rng = _rng("exact")
    t0 = time.perf_counter()
    steps = mismatches = 0
    for _ in range(CFG.walks):
        n = rng.randint(2, CFG.walk_max_n)
        st = SplittanceState(n)
        for u, v in random_pairs(rng, n, CFG.walk_steps):
            st.update(u, v)
            steps += 1
            mismatches += st.splittance() != oracle.brute_splittance(st.graph)
    elapsed = time.perf_counter() - t0
    ok = steps >= 10_000 and mismatches == 0 and elapsed < 60
    report("splittance exactness", ok, f"{steps} steps, {mismatches} mismatches, {elapsed:.1f}s")
    assert ok


# -- formula validation -------------------------------------------------------


def _labeled_graphs(n):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def _atlas(n):
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == n:
            yield [(u + 1, v + 1) for u, v in h.edges()]


def _formula_graphs(rng):
    for n in range(1, 6):
        yield from _labeled_graphs(n)
    for n in (6, 7):
        for edges in _atlas(n):
            yield Graph.from_edges(n, edges)
    # every 8-vertex graph is, up to isomorphism, a 7-vertex atlas graph plus
    # a vertex joined to some subset, and both sides of the check are invariant
    for edges in _atlas(7):
        for mask in range(1 << 7):
            yield Graph.from_edges(8, edges + [(i + 1, 8) for i in range(7) if mask >> i & 1])
    for _ in range(CFG.random_formula_graphs):
        n = rng.randint(1, 14)
        p = rng.random()
        yield Graph.from_edges(n, [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < p])


def test_formula_validation(report):
    rng = _rng("formula")
    t0 = time.perf_counter()
    checked = mismatches = 0
    for g in _formula_graphs(rng):
        checked += 1
        mismatches += oracle.degree_splittance(g) != oracle.brute_splittance(g)
    ok = mismatches == 0
    report("degree formula validation", ok,
           f"{checked} graphs, {mismatches} mismatches, {time.perf_counter() - t0:.1f}s")
    assert ok


# -- PromiseNL listing ----------------------------------------------------------


class PromiseWalk:
    """A graph and partition that keep |non-edges in A| + |edges in B| <= k."""

    def __init__(self, rng: random.Random, n: int, k: int):
        inst = promise_instance(rng, n, k)
        self.rng, self.n, self.k = rng, n, k
        self.A = set(inst.A)
        self.g = Graph.from_edges(n, inst.edges)
        self.non_a = set(inst.non_edges_a)
        self.edges_b = set(inst.edges_b)
        self.initial = inst

    def _bad(self, u, v, present):
        if u in self.A and v in self.A:
            return not present
        if u not in self.A and v not in self.A:
            return present
        return False

    def step(self):
        """Apply one to three random promise-respecting changes; return (moved, e_mod)."""
        rng, g = self.rng, self.g
        moved, e_mod = set(), set()
        for _ in range(rng.randint(1, 3)):
            if rng.random() < 0.8:
                u, v = norm_edge(*rng.sample(range(1, self.n + 1), 2))
                before = self._bad(u, v, g.has_edge(u, v))
                after = self._bad(u, v, not g.has_edge(u, v))
                if after and not before and len(self.non_a) + len(self.edges_b) >= self.k:
                    continue
                g.toggle_edge(u, v)
                e_mod ^= {(u, v)}
                bucket = self.non_a if u in self.A else self.edges_b
                if after:
                    bucket.add((u, v))
                elif before:
                    bucket.discard((u, v))
            else:
                x = rng.randint(1, self.n)
                if self._try_move(x):
                    moved ^= {x}
        return moved, e_mod

    def _try_move(self, x):
        g = self.g
        if x in self.A:
            others = self.A - {x}
            drop_na = {norm_edge(x, a) for a in others if not g.has_edge(x, a)}
            add_eb = {norm_edge(x, b) for b in g.neighbors(x) if b not in self.A}
            new_na, new_eb = self.non_a - drop_na, self.edges_b | add_eb
        else:
            add_na = {norm_edge(x, a) for a in self.A if not g.has_edge(x, a)}
            drop_eb = {e for e in self.edges_b if x in e}
            new_na, new_eb = self.non_a | add_na, self.edges_b - drop_eb
        if len(new_na) + len(new_eb) > self.k:
            return False
        self.A ^= {x}
        self.non_a, self.edges_b = new_na, new_eb
        return True


def test_promise_nl_listing(report):
    rng = _rng("nl")
    t0 = time.perf_counter()
    instances = queries = unsound = size_errors = omissions = 0
    allowed = 0.0
    for _ in range(CFG.nl_structures):
        n = rng.randint(2, CFG.nl_max_n)
        k = rng.randint(0, CFG.nl_max_k)
        walk = PromiseWalk(rng, n, k)
        inst = walk.initial
        nl = PromiseNL(n, k, rng.randint(1, 8), 3, seed=rng.getrandbits(64))
        nl.batch_update(inst.A, inst.edges, inst.non_edges_a, inst.edges_b)
        for state in range(CFG.nl_states):
            if state:
                moved, e_mod = walk.step()
                nl.batch_update(sorted(moved), sorted(e_mod), walk.non_a, walk.edges_b)
            instances += 1
            g = walk.g
            for v in rng.sample(range(1, n + 1), min(n, CFG.nl_queries_per_state)):
                if v in walk.A:
                    truth = {b for b in g.neighbors(v) if b not in walk.A}
                    got = nl.list_neighbors_bs(v)
                else:
                    truth = {a for a in walk.A if not g.has_edge(a, v)}
                    got = nl.list_non_neighbors_as(v)
                queries += 1
                allowed += 10 * n ** -3
                if (got is TOO_MANY) != (len(truth) > nl.ell):
                    size_errors += 1
                elif got is not TOO_MANY:
                    if not got <= truth:
                        unsound += 1
                    elif got != truth:
                        omissions += 1
    ok = instances >= 10_000 and unsound == 0 and size_errors == 0 and omissions <= allowed
    report("PromiseNL listing", ok,
           f"{instances} instances, {queries} queries, soundness violations {unsound}, "
           f"size-test errors {size_errors}, omissions {omissions} (budget {allowed:.2f}), "
           f"{time.perf_counter() - t0:.1f}s")
    assert ok


# -- PromiseNS sampling ---------------------------------------------------------


def _ns_structure(rng):
    n, k = CFG.ns_n, CFG.ns_k
    A = rng.sample(range(1, n + 1), 12)
    inA = set(A)
    B = [v for v in range(1, n + 1) if v not in inA]
    edges = {norm_edge(u, v) for u, v in itertools.combinations(A, 2)}
    for e in rng.sample(sorted(edges), 2):
        edges.discard(e)
    hubs = A[:2]
    for h in hubs:
        for b in rng.sample(B, rng.randint(*CFG.ns_hub_degree)):
            edges.add(norm_edge(h, b))
    for a in A[2:]:
        for b in rng.sample(B, rng.randint(0, 8)):
            edges.add(norm_edge(a, b))
    for e in [norm_edge(*rng.sample(B, 2)) for _ in range(2)]:
        edges.add(e)
    fam = LayerFamily(n, k, CFG.ns_ell, 3, seed=rng.getrandbits(64))
    return fam, inA, B, hubs, edges


def _lists(g, inA):
    A = sorted(inA)
    non_a = [(u, v) for i, u in enumerate(A) for v in A[i + 1:] if not g.has_edge(u, v)]
    edges_b = [(u, v) for u, v in g.edges() if u not in inA and v not in inA]
    return non_a, edges_b


def test_promise_ns_sampling(report):
    rng = _rng("ns")
    t0 = time.perf_counter()
    queries = failed = unsound = wrong_size = layered = 0
    for _ in range(CFG.ns_structures):
        fam, inA, B, hubs, edges = _ns_structure(rng)
        g = Graph.from_edges(CFG.ns_n, edges)
        fam.batch_update(sorted(inA), sorted(edges), *_lists(g, inA))
        for _ in range(CFG.ns_rounds):
            flips = [norm_edge(rng.choice(hubs), rng.choice(B)) for _ in range(4)]
            flips = sorted(set(flips))
            for e in flips:
                g.toggle_edge(*e)
            fam.batch_update([], flips, *_lists(g, inA))
            others = rng.sample([v for v in range(1, CFG.ns_n + 1) if v not in hubs],
                                CFG.ns_queries_per_round - len(hubs))
            for v in hubs + others:
                if v in inA:
                    truth = {b for b in g.neighbors(v) if b not in inA}
                    call = fam.sample_edges
                else:
                    truth = {a for a in inA if not g.has_edge(a, v)}
                    call = fam.sample_non_edges
                queries += 1
                layered += len(truth) > fam.width
                try:
                    got = call(v)
                except SamplingFailed:
                    failed += 1
                    continue
                unsound += not got <= truth
                wrong_size += len(got) != min(CFG.ns_ell, len(truth))
        del fam
    rate = failed / queries
    ok = queries >= 10_000 and unsound == 0 and wrong_size == 0 and rate <= 0.001
    report("PromiseNS sampling", ok,
           f"{queries} queries ({layered} through layers), SamplingFailed {failed} "
           f"({100 * rate:.3f}%), soundness violations {unsound}, size errors {wrong_size}, "
           f"{time.perf_counter() - t0:.1f}s")
    assert ok


# -- exposure -----------------------------------------------------------------


def test_exposure_rate(report):
    rng = _rng("exposure")
    t0 = time.perf_counter()
    n, ell, d, size = 64, 8, 2, 8
    good = 0
    for trial in range(CFG.exposure_trials):
        tables = ColorTables(n, 1, ell, d, seed=rng.getrandbits(64), gamma=40)
        N = rng.sample(range(1, n + 1), size)
        colors = np.stack([tables.colors(v, 0) for v in N])  # |N| x rows
        # x is exposed in a row when no other member of N shares its color there
        same = colors[:, None, :] == colors[None, :, :]
        alone = same.sum(axis=1) == 1
        good += bool(alone.any(axis=1).all())
    rate = good / CFG.exposure_trials
    ok = rate >= 0.999
    report("color exposure", ok,
           f"{good}/{CFG.exposure_trials} initializations expose all of N ({100 * rate:.2f}%), "
           f"{tables.rows} colorings, {time.perf_counter() - t0:.1f}s")
    assert ok


# -- obstruction correctness ----------------------------------------------------


def _random_promise_graph(rng):
    while True:
        n = rng.randint(4, CFG.obstruction_max_n)
        A = rng.sample(range(1, n + 1), rng.randint(0, n))
        edges = near_split_edges(rng, n, A, rng.random(), rng.randint(0, CFG.obstruction_max_k))
        g = Graph.from_edges(n, edges)
        s = oracle.degree_splittance(g)
        if s <= CFG.obstruction_max_k:
            return g, max(1, s)


def _check_obstruction(g, k, seed, stats):
    w = Wrapper(g.n, k, 4, seed=seed)
    w.update_many(sorted(g.edges()))
    got = find_obstruction(w, stats)
    if g.n <= CFG.obstruction_brute_n:
        has = bool(oracle.brute_obstructions(g))
    else:
        has = oracle.any_obstruction(g) is not None
    sound = got is SPLIT or g.induces(got.vertices, got.kind)
    complete = (got is SPLIT) == (not has)
    return sound, complete


def test_obstruction_correctness(report):
    rng = _rng("obstruction")
    t0 = time.perf_counter()
    stats = SearchStats()
    graphs = unsound = incomplete = 0
    budget = 0.0
    for n in range(1, 8):
        for edges in _atlas(n):
            g = Graph.from_edges(n, edges)
            k = max(1, oracle.degree_splittance(g))
            sound, complete = _check_obstruction(g, k, rng.getrandbits(64), stats)
            graphs += 1
            unsound += not sound
            incomplete += not complete
            budget += 10 * max(n, 2) ** -4
    atlas = graphs
    for _ in range(CFG.obstruction_graphs):
        g, k = _random_promise_graph(rng)
        sound, complete = _check_obstruction(g, k, rng.getrandbits(64), stats)
        graphs += 1
        unsound += not sound
        incomplete += not complete
        budget += 10 * g.n ** -4
    ok = unsound == 0 and incomplete <= budget
    report("obstruction correctness", ok,
           f"{atlas} atlas + {graphs - atlas} random graphs, soundness violations {unsound}, "
           f"completeness failures {incomplete} (budget {budget:.2f}), "
           f"sampling failures {stats.sampling_failures}, {time.perf_counter() - t0:.1f}s")
    assert ok


# -- end to end and search tree -----------------------------------------------


@pytest.fixture(scope="module")
def end_to_end():
    rng = _rng("e2e")
    t0 = time.perf_counter()
    out = dict(steps=0, mismatches=0, tree_violations=0, max_nodes=0, worst_ratio=0.0, false_splits=0)
    for mode, n, k in CFG.e2e_traces:
        pairs = (random_pairs if mode == "random" else
                 lambda r, n_, s: adversarial_pairs(r, n_, k, s))(rng, n, CFG.e2e_steps)
        eng = Engine(n, k, 4, seed=rng.getrandbits(64), eager=False)
        stats = BranchStats()
        for u, v in pairs:
            eng.update(u, v)
            g = eng.wrapper.graph
            try:
                comp = eng.recompute()
                nodes_c = eng.stats.last_nodes
                dele = query_deletion(eng.wrapper, k, stats)
                nodes_d = stats.last_nodes
            except TreeBoundExceeded:
                out["tree_violations"] += 1
                continue
            out["steps"] += 1
            bound = node_bound(k)
            out["max_nodes"] = max(out["max_nodes"], nodes_c, nodes_d)
            out["worst_ratio"] = max(out["worst_ratio"], max(nodes_c, nodes_d) / bound)
            out["tree_violations"] += (nodes_c > bound) + (nodes_d > bound)
            out["mismatches"] += comp.decision != oracle.brute_completion(g, k).decision
            out["mismatches"] += dele.decision != oracle.brute_deletion(g, k).decision
        out["false_splits"] += eng.stats.false_splits + stats.false_splits
    out["elapsed"] = time.perf_counter() - t0
    return out


def test_end_to_end_decisions(report, end_to_end):
    r = end_to_end
    ok = r["mismatches"] == 0 and r["elapsed"] < 300
    report("end-to-end decisions", ok,
           f"{len(CFG.e2e_traces)} traces, {r['steps']} steps, {r['mismatches']} mismatches "
           f"(completion and deletion), false SPLITs {r['false_splits']}, {r['elapsed']:.1f}s")
    assert ok


def test_search_tree_bound(report, end_to_end):
    r = end_to_end
    ok = r["tree_violations"] == 0
    report("search-tree bound", ok,
           f"{r['tree_violations']} violations, largest tree {r['max_nodes']} nodes, "
           f"worst use {100 * r['worst_ratio']:.1f}% of the bound")
    assert ok


# -- wrapper flush ------------------------------------------------------------


def test_wrapper_flush(report):
    rng = _rng("flush")
    t0 = time.perf_counter()
    crossings = compliant = list_errors = violations = 0
    traces = max_side = 0
    for n, k in itertools.islice(itertools.cycle(CFG.flush_configs), 2 * len(CFG.flush_configs)):
        if crossings >= CFG.flush_crossings and traces >= len(CFG.flush_configs):
            break
        traces += 1
        w = Wrapper(n, k, 3, seed=rng.getrandbits(64))
        over = False
        for u, v in adversarial_pairs(rng, n, k, CFG.flush_steps):
            try:
                w.update(u, v)
            except ClaimViolation:
                violations += 1
                continue
            now_over = w.splittance() > k
            crossings += now_over and not over
            over = now_over
            if not over:
                compliant += 1
                na, eb = w.direct_lists()
                list_errors += set(w.list_non_edges_a()) != na or set(w.list_edges_b()) != eb
        max_side = max(max_side, w.stats.max_moved_side)
    ok = crossings >= CFG.flush_crossings and list_errors == 0 and violations == 0
    report("wrapper flush", ok,
           f"{traces} traces, {crossings} threshold crossings, {compliant} compliant steps, "
           f"list mismatches {list_errors}, bound violations {violations}, "
           f"largest moved side {max_side}, {time.perf_counter() - t0:.1f}s")
    assert ok


# -- scaling ------------------------------------------------------------------


def test_scaling(report):
    t0 = time.perf_counter()
    small = bench_one(CFG.scale_small, 3, 2, CFG.scale_steps, CFG.seed)
    large = bench_one(CFG.scale_large, 3, 2, CFG.scale_steps, CFG.seed)
    ratio = large.mean_update_us / small.mean_update_us
    elapsed = time.perf_counter() - t0
    ok = ratio < CFG.scale_ratio and elapsed < 600
    report("update-time scaling", ok,
           f"mean update {small.mean_update_us:.1f}us at n={small.n}, "
           f"{large.mean_update_us:.1f}us at n={large.n}, ratio {ratio:.2f} "
           f"(limit {CFG.scale_ratio}), failures {small.failures + large.failures}, {elapsed:.1f}s")
    assert ok
