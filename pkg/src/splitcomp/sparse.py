"""Sparse integer accumulator keyed by int64, stored as sorted runs.

New contributions land in a fresh run; adjacent runs are merged while the
older one is at most twice the newer, so there are O(log size) runs and
each entry is re-merged O(log size) times.  Entries that cancel to zero
are dropped on merge, keeping the support equal to the true support.
"""

from __future__ import annotations

import numpy as np

DENSE_RATIO = 4  # scatter-add once the keys cover a quarter of the key space

_EMPTY_K = np.zeros(0, dtype=np.int64)
_EMPTY_V = np.zeros(0, dtype=np.int64)


def consolidate(keys: np.ndarray, vals: np.ndarray, kind: str = "quicksort") -> tuple[np.ndarray, np.ndarray]:
    """Sort by key, sum duplicates, drop zeros.

    ``kind="stable"`` suits input made of a few sorted runs (timsort merges
    them in linear time).
    """
    if keys.size == 0:
        return _EMPTY_K, _EMPTY_V
    if keys.size > 1 and not np.all(keys[1:] >= keys[:-1]):
        order = np.argsort(keys, kind=kind)
        keys = keys[order]
        vals = vals[order]
    new = keys[1:] != keys[:-1]
    if new.all():
        nz = vals != 0
        return (keys, vals) if nz.all() else (keys[nz], vals[nz])
    starts = np.flatnonzero(np.r_[True, new])
    uk = keys[starts]
    uv = np.add.reduceat(vals, starts)
    nz = uv != 0
    return uk[nz], uv[nz]


def dense_sum(keys: np.ndarray, vals: np.ndarray, space: int) -> tuple[np.ndarray, np.ndarray]:
    """Consolidate by scattering into a dense buffer of ``space`` slots."""
    buf = np.zeros(space, dtype=np.int64)
    np.add.at(buf, keys, vals)
    out = np.flatnonzero(buf)
    return out.astype(np.int64), buf[out]


class SparseSum:
    __slots__ = ("_runs",)

    def __init__(self):
        self._runs: list[tuple[np.ndarray, np.ndarray]] = []

    def add(self, keys: np.ndarray, vals: np.ndarray, space: int = 0) -> None:
        """Add ``vals`` at ``keys``; ``space`` (if given) bounds the keys.

        When the keys are dense in ``range(space)`` a scatter-add is used
        instead of sorting.
        """
        keys = np.asarray(keys, dtype=np.int64)
        vals = np.asarray(vals, dtype=np.int64)
        if space and keys.size * DENSE_RATIO >= space:
            keys, vals = dense_sum(keys, vals, space)
        else:
            keys, vals = consolidate(keys, vals)
        if keys.size == 0:
            return
        runs = self._runs
        runs.append((keys, vals))
        while len(runs) > 1 and runs[-2][0].size <= 2 * runs[-1][0].size:
            k2, v2 = runs.pop()
            k1, v1 = runs.pop()
            merged = consolidate(np.concatenate((k1, k2)), np.concatenate((v1, v2)), "stable")
            if merged[0].size:
                runs.append(merged)

    def get(self, keys: np.ndarray) -> np.ndarray:
        out = np.zeros(keys.shape, dtype=np.int64)
        for rk, rv in self._runs:
            idx = np.searchsorted(rk, keys)
            np.minimum(idx, rk.size - 1, out=idx)
            hit = rk[idx] == keys
            out[hit] += rv[idx[hit]]
        return out

    def items(self) -> tuple[np.ndarray, np.ndarray]:
        """Single consolidated (keys, values) view of the whole accumulator."""
        runs = self._runs
        if not runs:
            return _EMPTY_K, _EMPTY_V
        if len(runs) > 1:
            merged = consolidate(
                np.concatenate([r[0] for r in runs]), np.concatenate([r[1] for r in runs]), "stable"
            )
            self._runs = [merged] if merged[0].size else []
            if not self._runs:
                return _EMPTY_K, _EMPTY_V
        return self._runs[0]

    def slice(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        """Consolidated entries with ``lo <= key < hi`` (runs are left unmerged)."""
        parts = []
        for rk, rv in self._runs:
            i, j = np.searchsorted(rk, (lo, hi))
            if j > i:
                parts.append((rk[i:j], rv[i:j]))
        if not parts:
            return _EMPTY_K, _EMPTY_V
        if len(parts) == 1:
            return parts[0]
        return consolidate(np.concatenate([p[0] for p in parts]),
                           np.concatenate([p[1] for p in parts]), "stable")

    def __len__(self) -> int:
        return sum(r[0].size for r in self._runs)

    def to_dict(self) -> dict[int, int]:
        keys, vals = self.items()
        return dict(zip(keys.tolist(), vals.tolist()))
