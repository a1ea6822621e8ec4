"""Sample up to ℓ cross-partition neighbors (or non-neighbors) of a vertex.

A global color-coded instance with width ℓ' = 72ℓ answers directly when
the target set is small.  Otherwise the query falls through to random
layers V_{i,j} (each vertex kept with probability 2^-i); a layer whose
share of the target has between ℓ and ℓ' elements is decoded and ℓ of its
members are returned.  Layers are scanned in lexicographic (i, j) order.

Layer sizes are computed exactly from the counters before any decoding,
so a layer outside the [ℓ, ℓ'] band is skipped without paying for it.
"""

from __future__ import annotations

from typing import Callable

from .promise_nl import GAMMA, TOO_MANY, ColorTables, log_rows

WIDTH_FACTOR = 72


class SamplingFailed(RuntimeError):
    """No layer produced enough elements after the global instance overflowed."""


class LayerFamily:
    def __init__(self, n: int, k: int, ell: int, d: int, *, seed=None, gamma: int = GAMMA,
                 lazy_layers: bool = True):
        if ell < 1:
            raise ValueError(f"ell must be at least 1, got {ell}")
        self.n = n
        self.ell = ell
        self.width = WIDTH_FACTOR * ell
        L = log_rows(n)
        self.layer_index: list[tuple[int, int]] = []
        # With width >= n - 1 the global instance never overflows, so the
        # layers are dead weight; lazy_layers drops them.
        if not (lazy_layers and self.width >= n - 1):
            self.layer_index = [(i, j) for i in range(1, L + 1) for j in range(1, d * L + 1)]
        exponents = [0] + [i for i, _ in self.layer_index]
        self.tables = ColorTables(n, k, self.width, d, exponents=exponents, seed=seed, gamma=gamma)
        self.width = self.tables.ell  # clamped to n

    @property
    def graph(self):
        return self.tables.graph

    @property
    def n_layers(self) -> int:
        return len(self.layer_index)

    def layer_members(self, i: int, j: int) -> list[int]:
        idx = 1 + self.layer_index.index((i, j))
        return [v for v in range(1, self.n + 1) if self.tables.in_s(v, idx)]

    def batch_update(self, moved, e_mod, non_edges_a, edges_b) -> None:
        self.tables.batch_update(moved, e_mod, non_edges_a, edges_b)

    def sample_edges(self, a: int) -> frozenset[int]:
        t = self.tables
        return self._sample(t.list_neighbors_bs, t.count_neighbors_bs, t.decode_neighbors, a)

    def sample_non_edges(self, b: int) -> frozenset[int]:
        t = self.tables
        return self._sample(t.list_non_neighbors_as, t.count_non_neighbors_as,
                            t.decode_non_neighbors, b)

    def _sample(self, listing: Callable, count: Callable, decode: Callable, v: int) -> frozenset[int]:
        ell = self.ell
        got = listing(v, 0)
        if got is not TOO_MANY:
            want = min(ell, count(v, 0))
            if len(got) < want:
                raise SamplingFailed(f"decoded {len(got)} of {want} elements for vertex {v}")
            return frozenset(sorted(got)[:ell])
        for idx in range(1, self.n_layers + 1):
            size = count(v, idx)
            if ell <= size <= self.width:
                got = decode(v, idx, ell)
                if len(got) >= ell:
                    return frozenset(sorted(got)[:ell])
        raise SamplingFailed(f"no layer produced {ell} elements for vertex {v}")
