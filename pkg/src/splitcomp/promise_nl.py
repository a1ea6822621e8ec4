"""Color-coding tables that list small cross-partition neighborhoods.

For a vertex set S and a partition (A, B) whose splittance is at most k,
``list_neighbors_bs(a)`` returns N(a) ∩ B ∩ S when it has at most ℓ
elements and reports TOO_MANY otherwise; ``list_non_neighbors_as(b)`` is the
mirror for non-neighbors of b inside A ∩ S.

The size of the target set is computed exactly by inclusion-exclusion:

    |N(a) ∩ B ∩ S| = countS(a) - (countAS - [a in S] - |non-nbrs of a in A ∩ S|)
    |A ∩ S \\ N(b)| = countAS - (countS(b) - |nbrs of b in B ∩ S|)

where the last terms come from the cached lists ``non_edges_a`` and
``edges_b`` (at most k pairs each).  The elements themselves are recovered
from per-color id sums: in a color class that holds exactly one target
vertex, the corrected sum *is* that vertex id.  Every candidate is checked
against the real graph before it is returned, so answers never contain a
wrong vertex; a miss can only drop vertices.

One object may hold several *instances* that share the graph and the
partition but have their own S and their own colorings (the layered
sampler uses this).  Instance ``j`` owns the rows ``j*R .. (j+1)*R - 1``
and an accumulator entry for (row, color) is stored under the key
``row * ℓ + color``.

Colorings and instance membership are not stored as tables.  They are
evaluated on demand from a keyed 64-bit mixer over per-row seeds drawn
once from the seeded generator, so initialization costs O(rows) instead
of O(rows * n) and the randomness is fixed for the whole run.
"""

from __future__ import annotations

import math
from collections import OrderedDict
from collections.abc import Iterable, Sequence
from typing import Optional, Union

import numpy as np

from .graph_core import Edge, Graph, check_size, norm_edge
from .sparse import SparseSum

GAMMA = 40
FIRST_CHUNK_ROWS = 16
KEY_CACHE_LIMIT = 4_000_000  # cached color entries across all vertices
BATCH_KEYS = 1 << 23  # keys accumulated per vertex before they are merged in

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31 = np.uint64(30), np.uint64(27), np.uint64(31)


class WrongSide(ValueError):
    """Query vertex is on the wrong side of the partition."""


class _TooMany:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "TOO_MANY"

    def __reduce__(self):
        return (_TooMany, ())


TOO_MANY = _TooMany()
ListResult = Union[frozenset, _TooMany]


def mix64(x: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer, applied elementwise to a uint64 array."""
    z = x + _GOLDEN
    z = (z ^ (z >> _S30)) * _MUL1
    z = (z ^ (z >> _S27)) * _MUL2
    return z ^ (z >> _S31)


def log_rows(n: int) -> int:
    """⌈log₂ n⌉, but at least 1 so that tiny graphs still get colorings."""
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


class ColorTables:
    """Shared graph and partition with one or more color-coded instances.

    ``exponents[j]`` gives the membership rule of instance j: 0 means
    S = V, e > 0 means each vertex is in S independently with probability
    2^-e.  ``S`` (only with a single instance) fixes S explicitly.
    """

    def __init__(
        self,
        n: int,
        k: int,
        ell: int,
        d: int,
        *,
        exponents: Sequence[int] = (0,),
        S: Optional[Iterable[int]] = None,
        seed=None,
        gamma: int = GAMMA,
    ):
        check_size(n)
        if k < 0:
            raise ValueError(f"k must be non-negative, got {k}")
        if ell < 1:
            raise ValueError(f"ell must be at least 1, got {ell}")
        if d < 1:
            raise ValueError(f"d must be at least 1, got {d}")
        if gamma < 1:
            raise ValueError(f"gamma must be at least 1, got {gamma}")
        if not exponents:
            raise ValueError("need at least one instance")
        if any(e < 0 or e > 63 for e in exponents):
            raise ValueError(f"membership exponents must lie in 0..63, got {list(exponents)}")
        if S is not None and len(exponents) != 1:
            raise ValueError("an explicit S is only supported with a single instance")

        self.n = n
        self.k = k
        self.ell = min(ell, n)
        self.d = d
        self.gamma = gamma
        self.rows = gamma * d * log_rows(n)
        self.exponents = np.asarray(exponents, dtype=np.int64)
        self.n_inst = len(exponents)
        self.explicit_s: Optional[frozenset[int]] = None
        if S is not None:
            s = frozenset(S)
            for v in s:
                if not (1 <= v <= n):
                    raise ValueError(f"S contains vertex {v} outside 1..{n}")
            self.explicit_s = s

        rng = np.random.default_rng(seed)
        raw = rng.bit_generator.random_raw
        self._salt = np.uint64(raw())
        self._row_seed = np.asarray(raw(self.n_inst * self.rows), dtype=np.uint64)
        self._inst_seed = np.asarray(raw(self.n_inst), dtype=np.uint64)
        self._shift = np.uint64(64) - self.exponents.astype(np.uint64)
        self._ell64 = np.uint64(self.ell)
        self.key_space = self.n_inst * self.rows * self.ell

        self.graph = Graph(n)
        self.in_a: set[int] = set()
        self.non_edges_a: tuple[Edge, ...] = ()
        self.edges_b: tuple[Edge, ...] = ()
        self._non_a_partner: dict[int, list[int]] = {}
        self._b_partner: dict[int, list[int]] = {}

        self._count_s: dict[int, np.ndarray] = {}
        self.count_as = np.zeros(self.n_inst, dtype=np.int64)
        self._id_sum_s: dict[int, SparseSum] = {}
        self.id_sum_as = SparseSum()

        self._cache: OrderedDict[int, tuple[np.ndarray, np.ndarray]] = OrderedDict()
        self._cache_size = 0

    # -- randomness --------------------------------------------------------

    def _vhash(self, v: int) -> np.ndarray:
        return mix64(np.array([v], dtype=np.uint64) ^ self._salt)

    def membership(self, v: int) -> np.ndarray:
        """Boolean vector: is ``v`` in S_j, for every instance j."""
        if self.explicit_s is not None:
            return np.array([v in self.explicit_s])
        h = mix64(self._inst_seed ^ self._vhash(v))
        out = (h >> self._shift) == 0
        out[self.exponents == 0] = True
        return out

    def in_s(self, v: int, j: int = 0) -> bool:
        hit = self._cache.get(v)
        if hit is not None:
            return bool(hit[0][j] >= 0)
        if self.explicit_s is not None:
            return v in self.explicit_s
        if self.exponents[j] == 0:
            return True
        return bool(self.membership(v)[j])

    def _profile(self, v: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(slot, colors, keys) for ``v``: ``slot[j]`` indexes ``colors`` or is -1."""
        hit = self._cache.get(v)
        if hit is not None:
            self._cache.move_to_end(v)
            return hit
        member = self.membership(v)
        insts = np.flatnonzero(member)
        slot = np.full(self.n_inst, -1, dtype=np.int64)
        slot[insts] = np.arange(insts.size)
        if insts.size:
            rows = (insts[:, None] * self.rows + np.arange(self.rows)).ravel()
            colors = (mix64(self._row_seed[rows] ^ self._vhash(v)) % self._ell64).astype(np.int64)
            colors = colors.reshape(insts.size, self.rows)
        else:
            colors = np.zeros((0, self.rows), dtype=np.int64)
        rows = insts[:, None] * self.rows + np.arange(self.rows)
        keys = (rows * self.ell + colors).ravel()
        entry = (slot, colors, keys)
        self._cache[v] = entry
        self._cache_size += colors.size
        while self._cache_size > KEY_CACHE_LIMIT and len(self._cache) > 1:
            _, (_, old, _) = self._cache.popitem(last=False)
            self._cache_size -= old.size
        return entry

    def colors(self, v: int, j: int) -> Optional[np.ndarray]:
        """Colors of ``v`` in the R rows of instance j, or None if v ∉ S_j."""
        slot, colors, _ = self._profile(v)
        s = slot[j]
        return None if s < 0 else colors[s]

    def _keys(self, v: int) -> np.ndarray:
        """Accumulator keys touched by ``v`` across all instances it belongs to."""
        return self._profile(v)[2]

    # -- reads -------------------------------------------------------------

    def side_a(self, v: int) -> bool:
        return v in self.in_a

    def count_s(self, v: int) -> np.ndarray:
        c = self._count_s.get(v)
        return c.copy() if c is not None else np.zeros(self.n_inst, dtype=np.int64)

    def count_bs(self, j: int = 0) -> int:
        """|B ∩ S_j| by a full scan; only needed by diagnostics."""
        return sum(1 for v in range(1, self.n + 1) if v not in self.in_a and self.in_s(v, j))

    def id_sum_s(self, v: int) -> SparseSum:
        return self._id_sum_s.get(v) or SparseSum()

    # -- update ------------------------------------------------------------

    def batch_update(
        self,
        moved: Iterable[int],
        e_mod: Iterable[tuple[int, int]],
        non_edges_a: Iterable[tuple[int, int]],
        edges_b: Iterable[tuple[int, int]],
    ) -> None:
        """Apply E △ E_mod, flip the sides of ``moved``, install the new lists."""
        touched: dict[int, list[tuple[int, int]]] = {}
        for u, v in e_mod:
            sign = 1 if self.graph.toggle_edge(u, v) else -1
            touched.setdefault(u, []).append((v, sign))
            touched.setdefault(v, []).append((u, sign))
        for x, contrib in touched.items():
            if self.graph.degree(x) == 0:
                self._count_s.pop(x, None)
                self._id_sum_s.pop(x, None)
                continue
            cnt = np.zeros(self.n_inst, dtype=np.int64)
            acc = self._id_sum_s.get(x)
            if acc is None:
                acc = self._id_sum_s[x] = SparseSum()
            keys, vals, pending = [], [], 0
            for w, sign in contrib:
                slot, _, kw = self._profile(w)
                cnt += sign * (slot >= 0)
                keys.append(kw)
                vals.append(np.full(kw.size, sign * w, dtype=np.int64))
                pending += kw.size
                if pending >= BATCH_KEYS:
                    acc.add(np.concatenate(keys), np.concatenate(vals), self.key_space)
                    keys, vals, pending = [], [], 0
            if keys:
                acc.add(np.concatenate(keys), np.concatenate(vals), self.key_space)
            if x in self._count_s:
                self._count_s[x] += cnt
            else:
                self._count_s[x] = cnt
        for v in moved:
            self.graph.check_vertex(v)
            if v in self.in_a:
                self.in_a.discard(v)
                sign = -1
            else:
                self.in_a.add(v)
                sign = 1
            slot, _, kv = self._profile(v)
            self.count_as += sign * (slot >= 0)
            self.id_sum_as.add(kv, np.full(kv.size, sign * v, dtype=np.int64))
        self.set_lists(non_edges_a, edges_b)

    def set_lists(self, non_edges_a, edges_b) -> None:
        self.non_edges_a = tuple(sorted(norm_edge(u, v) for u, v in non_edges_a))
        self.edges_b = tuple(sorted(norm_edge(u, v) for u, v in edges_b))
        self._non_a_partner = _partners(self.non_edges_a)
        self._b_partner = _partners(self.edges_b)

    # -- queries -----------------------------------------------------------

    def count_neighbors_bs(self, a: int, j: int = 0) -> int:
        """Exact |N(a) ∩ B ∩ S_j| for ``a`` in A."""
        self._require(a, True)
        own = 1 if self.in_s(a, j) else 0
        missing = sum(1 for x in self._non_a_partner.get(a, ()) if self.in_s(x, j))
        cs = self._count_s.get(a)
        cs = int(cs[j]) if cs is not None else 0
        return cs - (int(self.count_as[j]) - own - missing)

    def count_non_neighbors_as(self, b: int, j: int = 0) -> int:
        """Exact |(A ∩ S_j) minus N(b)| for ``b`` in B."""
        self._require(b, False)
        inside_b = sum(1 for y in self._b_partner.get(b, ()) if self.in_s(y, j))
        cs = self._count_s.get(b)
        cs = int(cs[j]) if cs is not None else 0
        return int(self.count_as[j]) - (cs - inside_b)

    def list_neighbors_bs(self, a: int, j: int = 0) -> ListResult:
        size = self.count_neighbors_bs(a, j)
        if size > self.ell:
            return TOO_MANY
        return self.decode_neighbors(a, j, size)

    def list_non_neighbors_as(self, b: int, j: int = 0) -> ListResult:
        size = self.count_non_neighbors_as(b, j)
        if size > self.ell:
            return TOO_MANY
        return self.decode_non_neighbors(b, j, size)

    def decode_neighbors(self, a: int, j: int, want: int) -> frozenset[int]:
        """Up to ``want`` verified members of N(a) ∩ B ∩ S_j."""
        if want <= 0:
            return frozenset()
        fixes = [a] + list(self._non_a_partner.get(a, ()))
        g = self.graph

        def accept(c: int) -> bool:
            return c not in self.in_a and g.has_edge(a, c) and self.in_s(c, j)

        return self._decode(self.id_sum_s(a), self.id_sum_as, fixes, j, want, accept)

    def decode_non_neighbors(self, b: int, j: int, want: int) -> frozenset[int]:
        """Up to ``want`` verified members of (A ∩ S_j) minus N(b)."""
        if want <= 0:
            return frozenset()
        fixes = list(self._b_partner.get(b, ()))
        g = self.graph

        def accept(c: int) -> bool:
            return c in self.in_a and not g.has_edge(b, c) and self.in_s(c, j)

        return self._decode(self.id_sum_as, self.id_sum_s(b), fixes, j, want, accept)

    def _decode(self, plus: SparseSum, minus: SparseSum, fixes, j, want, accept) -> frozenset[int]:
        # value(row, c) = plus - minus + sum of fix vertices of color c in that row
        R, ell = self.rows, self.ell
        fix_colors = []
        for x in fixes:
            col = self.colors(x, j)
            if col is not None:
                fix_colors.append((x, col))
        found: set[int] = set()
        rejected: set[int] = set()
        lo, step = 0, FIRST_CHUNK_ROWS
        while lo < R and len(found) < want:
            hi = min(R, lo + step)
            keys, vals = plus.slice((j * R + lo) * ell, (j * R + hi) * ell)
            if keys.size:
                vals = vals - minus.get(keys)
                if fix_colors:
                    r = keys // ell - j * R
                    c = keys % ell
                    for x, col in fix_colors:
                        vals += x * (col[r] == c)
                cand = np.unique(vals[(vals >= 1) & (vals <= self.n)])
                for v in cand.tolist():
                    if v in found or v in rejected:
                        continue
                    if accept(v):
                        found.add(v)
                    else:
                        rejected.add(v)
            lo, step = hi, step * 2
        return frozenset(found)

    def _require(self, v: int, want_a: bool) -> None:
        self.graph.check_vertex(v)
        if (v in self.in_a) != want_a:
            side = "A" if want_a else "B"
            raise WrongSide(f"vertex {v} is not in {side}")

    # -- checks ------------------------------------------------------------

    def recompute_check(self) -> None:
        """Rebuild every accumulator from scratch and compare (small n only)."""
        g = self.graph
        g.check_invariants()
        exp_as = np.zeros(self.n_inst, dtype=np.int64)
        exp_id_as: dict[int, int] = {}
        for v in self.in_a:
            exp_as += self.membership(v)
            for key in self._keys(v).tolist():
                exp_id_as[key] = exp_id_as.get(key, 0) + v
        assert np.array_equal(exp_as, self.count_as), "countAS drifted"
        assert _nonzero(exp_id_as) == self.id_sum_as.to_dict(), "idSumAS drifted"
        for v in range(1, self.n + 1):
            cnt = np.zeros(self.n_inst, dtype=np.int64)
            ids: dict[int, int] = {}
            for w in g.neighbors(v):
                cnt += self.membership(w)
                for key in self._keys(w).tolist():
                    ids[key] = ids.get(key, 0) + w
            assert np.array_equal(cnt, self.count_s(v)), f"countS({v}) drifted"
            assert _nonzero(ids) == self.id_sum_s(v).to_dict(), f"idSumS({v}) drifted"
        A = sorted(self.in_a)
        B = [v for v in range(1, self.n + 1) if v not in self.in_a]
        non_a = {(u, v) for i, u in enumerate(A) for v in A[i + 1:] if not g.has_edge(u, v)}
        edges_b = {(u, v) for u, v in g.edges() if u not in self.in_a and v not in self.in_a}
        assert set(self.non_edges_a) == non_a, "nonEdgesA does not match the graph"
        assert set(self.edges_b) == edges_b, "edgesB does not match the graph"


def _partners(pairs) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for u, v in pairs:
        out.setdefault(u, []).append(v)
        out.setdefault(v, []).append(u)
    return out


def _nonzero(d: dict[int, int]) -> dict[int, int]:
    return {k: v for k, v in d.items() if v}


class PromiseNL(ColorTables):
    """Single-instance tables with S = V, or an explicit S."""

    def __init__(self, n: int, k: int, ell: int, d: int, S=None, *, seed=None, gamma: int = GAMMA):
        super().__init__(n, k, ell, d, S=S, seed=seed, gamma=gamma)
