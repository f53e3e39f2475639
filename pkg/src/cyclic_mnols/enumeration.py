"""The three searches over lists of cyclic MNOLS.

All searches start from the pool of columns ``C`` with ``(I, C)`` nearly
orthogonal, produced once by backtracking.  Any later column of a
list-reduced list lies in that pool, so deeper candidates are found by
filtering the parent's candidates against the newly appended column.

* Algorithm A walks every list-reduced list and classifies each one with the
  four canonicity predicates independently.
* Algorithm B extends set-canonical prefixes only and records each class.
* Algorithm C splits the pool into ``list1``/``list2`` and finds the remaining
  squares as cliques of a compatibility graph.

Each search is split into branches keyed by a column (the second square for A
and B, the square ``A`` of ``list1`` for C) so it can be run in parallel and
checkpointed; see :mod:`cyclic_mnols.parallel`.
"""

from __future__ import annotations

import functools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from cyclic_mnols.canonical import BatchAnalysis, MnolsType, StabilizerCounts
from cyclic_mnols.core import Column, ColumnList, UsageError, check_order, identity

CHUNK = 512


def candidate_columns(prefix: Sequence[Sequence[int]]) -> Iterator[Column]:
    """Columns nearly orthogonal to every prefix column, ascending.

    Entry-by-entry backtracking that keeps, for each prefix column, a tally of
    row differences seen so far; a value is refused as soon as a difference
    would exceed its allowance (0 for ``0``, 2 for ``n/2``, 1 otherwise).
    """
    n = len(prefix[0])
    check_order(n)
    caps = [1] * n
    caps[0] = 0
    caps[n // 2] = 2
    m = len(prefix)
    rows = [tuple(p[r] for p in prefix) for r in range(n)]
    tally = [[0] * n for _ in range(m)]
    used = [False] * n
    col = [0] * n
    nxt = [0] * (n + 1)
    r = 0
    while r >= 0:
        if r == n:
            yield tuple(col)
            r -= 1
            _undo(col[r], rows[r], tally, used, n)
            continue
        row = rows[r]
        v = nxt[r]
        while v < n:
            if not used[v]:
                for k in range(m):
                    d = (v - row[k]) % n
                    if tally[k][d] >= caps[d]:
                        break
                else:
                    break
            v += 1
        if v == n:
            nxt[r] = 0
            r -= 1
            if r >= 0:
                _undo(col[r], rows[r], tally, used, n)
            continue
        nxt[r] = v + 1
        for k in range(m):
            tally[k][(v - row[k]) % n] += 1
        used[v] = True
        col[r] = v
        r += 1


def _undo(v, row, tally, used, n):
    for k, t in enumerate(tally):
        t[(v - row[k]) % n] -= 1
    used[v] = False


def column_pool(n: int) -> np.ndarray:
    """All columns ``C`` with ``(I, C)`` a pair of cyclic MNOLS, ascending."""
    cols = list(candidate_columns([identity(n)]))
    return np.array(cols, dtype=np.int8).reshape(len(cols), n)


def _target(n: int) -> np.ndarray:
    t = sorted(list(range(1, n)) + [n // 2])
    return np.array(t, dtype=np.int8)


@functools.lru_cache(maxsize=None)
def _profile_code(n: int) -> int:
    b = n + 1
    return sum(b**d for d in range(1, n)) + b ** (n // 2)


def nearly_orthogonal_mask(cols: np.ndarray, col: Sequence[int]) -> np.ndarray:
    """Vectorised near-orthogonality of every row of ``cols`` against ``col``.

    Each row's difference multiset is summed as base-``(n+1)`` digits; counts
    never exceed ``n`` so there are no carries and equal codes mean equal
    multisets.  ``n <= 16`` keeps the code inside int64.
    """
    n = cols.shape[1]
    c = np.asarray(col, dtype=np.int64)
    digits = (np.arange(n)[None, :] - c[:, None]) % n
    weight = np.int64(n + 1) ** digits
    code = np.zeros(len(cols), dtype=np.int64)
    for r in range(n):
        code += weight[r].take(cols[:, r])
    return code == _profile_code(n)


def _as_columns(arr: np.ndarray) -> ColumnList:
    return tuple(tuple(int(v) for v in row) for row in arr)


def _stack(prefix: np.ndarray, cands: np.ndarray) -> np.ndarray:
    k = len(cands)
    return np.concatenate(
        [np.broadcast_to(prefix, (k,) + prefix.shape), cands[:, None, :]], axis=1
    )


@dataclass(frozen=True)
class QuadCount:
    list_reduced: int = 0
    set_reduced: int = 0
    list_canonical: int = 0
    set_canonical: int = 0

    def __add__(self, other: QuadCount) -> QuadCount:
        return QuadCount(*(a + b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.list_reduced, self.set_reduced, self.list_canonical, self.set_canonical


@dataclass(frozen=True, order=True)
class ClassRecord:
    columns: ColumnList
    stabilizers: StabilizerCounts = field(compare=False)
    type: MnolsType = field(compare=False)


def _records(lists: np.ndarray) -> list[ClassRecord]:
    out = []
    for start in range(0, len(lists), CHUNK):
        chunk = lists[start : start + CHUNK]
        an = BatchAnalysis(chunk)
        stabs = an.stabilizers()
        types = an.types()
        for cols, st, ty in zip(chunk, stabs, types):
            out.append(ClassRecord(_as_columns(cols), StabilizerCounts(*map(int, st)), MnolsType(int(ty))))
    return out


def _set_canonical_mask(lists: np.ndarray) -> np.ndarray:
    if not len(lists):
        return np.zeros(0, dtype=bool)
    return np.concatenate(
        [BatchAnalysis(lists[s : s + CHUNK]).set_canonical() for s in range(0, len(lists), CHUNK)]
    )


class Search:
    """Shared state for one ``(n, mu)`` search: the root column pool."""

    algorithm = ""

    def __init__(self, n: int, mu: int, pool: np.ndarray | None = None):
        check_order(n)
        if mu < 2:
            raise UsageError(f"mu must be at least 2, got {mu}")
        self.n, self.mu = n, mu
        self.pool = column_pool(n) if pool is None else pool
        self.first = np.arange(n, dtype=np.int8)

    def branches(self) -> list[Column]:
        raise NotImplementedError

    def run_branch(self, branch: Sequence[int]) -> dict:
        raise NotImplementedError

    @staticmethod
    def empty(depth: int):
        raise NotImplementedError

    @staticmethod
    def merge(acc, part):
        """Fold ``part`` into ``acc``; may mutate ``acc``."""
        raise NotImplementedError

    def run(self) -> dict:
        """Single-process run over every branch; ``{depth: result}``."""
        total = {d: self.empty(d) for d in range(2, self.mu + 1)}
        for b in self.branches():
            part = self.run_branch(b)
            total = {d: self.merge(total[d], part[d]) for d in total}
        return self.finish(total)

    def finish(self, total: dict) -> dict:
        return total


class AlgorithmA(Search):
    algorithm = "A"

    def branches(self):
        return _as_columns(self.pool)

    def run_branch(self, branch):
        counts = {d: QuadCount() for d in range(2, self.mu + 1)}
        second = np.asarray(branch, dtype=np.int8)
        prefix = np.stack([self.first, second])
        self._tally(counts, prefix[None])
        if self.mu > 2:
            cands = self.pool[nearly_orthogonal_mask(self.pool, second)]
            self._extend(counts, prefix, cands)
        return counts

    def _tally(self, counts, lists):
        depth = lists.shape[1]
        for s in range(0, len(lists), CHUNK):
            an = BatchAnalysis(lists[s : s + CHUNK])
            counts[depth] = counts[depth] + QuadCount(
                an.size,
                int(an.set_reduced().sum()),
                int(an.list_canonical().sum()),
                int(an.set_canonical().sum()),
            )

    def _extend(self, counts, prefix, cands):
        if not len(cands):
            return
        self._tally(counts, _stack(prefix, cands))
        if prefix.shape[0] + 1 == self.mu:
            return
        for c in cands:
            sub = cands[nearly_orthogonal_mask(cands, c)]
            self._extend(counts, np.concatenate([prefix, c[None]]), sub)

    @staticmethod
    def empty(depth):
        return QuadCount()

    @staticmethod
    def merge(acc, part):
        return acc + part


class AlgorithmB(Search):
    algorithm = "B"

    def branches(self):
        pairs = _stack(self.first[None], self.pool)
        return _as_columns(self.pool[_set_canonical_mask(pairs)])

    def run_branch(self, branch):
        store = {d: [] for d in range(2, self.mu + 1)}
        second = np.asarray(branch, dtype=np.int8)
        prefix = np.stack([self.first, second])
        store[2].extend(_records(prefix[None]))
        if self.mu > 2:
            cands = self.pool[nearly_orthogonal_mask(self.pool, second)]
            self._extend(store, prefix, cands)
        return store

    def _extend(self, store, prefix, cands):
        if not len(cands):
            return
        lists = _stack(prefix, cands)
        keep = _set_canonical_mask(lists)
        store[prefix.shape[0] + 1].extend(_records(lists[keep]))
        if prefix.shape[0] + 1 == self.mu:
            return
        for c in cands[keep]:
            sub = cands[nearly_orthogonal_mask(cands, c)]
            self._extend(store, np.concatenate([prefix, c[None]]), sub)

    @staticmethod
    def empty(depth):
        return []

    @staticmethod
    def merge(acc, part):
        acc.extend(part)
        return acc

    def finish(self, total):
        return {d: sorted(v) for d, v in total.items()}


class AlgorithmC(AlgorithmB):
    """Clique search on the compatibility graph of each ``A`` in ``list1``."""

    algorithm = "C"

    def __init__(self, n, mu, pool=None):
        super().__init__(n, mu, pool)
        self.list1, self.list2 = build_lists_c(self.n, self.pool)

    def branches(self):
        return _as_columns(self.list1)

    def run_branch(self, branch):
        store = {d: [] for d in range(2, self.mu + 1)}
        a = np.asarray(branch, dtype=np.int8)
        prefix = np.stack([self.first, a])
        store[2].extend(_records(prefix[None]))
        if self.mu > 2:
            list3 = self.list2[nearly_orthogonal_mask(self.list2, a)]
            adj = compatibility_graph(list3)
            self._cliques(store, prefix, list3, adj, np.arange(len(list3)))
        return store

    def _cliques(self, store, prefix, verts, adj, allowed):
        """Grow cliques by ascending vertex index; ``allowed`` are the vertices
        after the last one chosen and adjacent to all chosen so far."""
        if not len(allowed):
            return
        lists = _stack(prefix, verts[allowed])
        keep = _set_canonical_mask(lists)
        depth = prefix.shape[0] + 1
        store[depth].extend(_records(lists[keep]))
        if depth == self.mu:
            return
        for v in allowed[keep]:
            nxt = allowed[(allowed > v) & adj[v, allowed]]
            self._cliques(store, np.concatenate([prefix, verts[v][None]]), verts, adj, nxt)


def build_lists_c(n: int, pool: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``list1``: set-canonical second columns; ``list2``: second columns not starting with 1.

    Only columns starting with 1 are tested for canonicity: a set-canonical
    pair always has ``C(0) = 1``.
    """
    if pool is None:
        pool = column_pool(n)
    first = np.arange(n, dtype=np.int8)
    ones = pool[pool[:, 0] == 1]
    list1 = ones[_set_canonical_mask(_stack(first[None], ones))]
    list2 = pool[pool[:, 0] != 1]
    return list1, list2


def compatibility_graph(verts: np.ndarray) -> np.ndarray:
    """Boolean adjacency matrix: ``adj[p, q]`` iff columns ``p, q`` are nearly orthogonal."""
    k, n = verts.shape
    if not k:
        return np.zeros((0, 0), dtype=bool)
    d = (verts[:, None, :] - verts[None, :, :]) % n
    d.sort(axis=-1)
    return (d == _target(n)).all(axis=-1)


ALGORITHMS = {"A": AlgorithmA, "B": AlgorithmB, "C": AlgorithmC}


def algorithm_a(n: int, mu: int) -> dict[int, QuadCount]:
    return AlgorithmA(n, mu).run()


def algorithm_b(n: int, mu: int) -> dict[int, list[ClassRecord]]:
    return AlgorithmB(n, mu).run()


def algorithm_c(n: int, mu: int) -> dict[int, list[ClassRecord]]:
    return AlgorithmC(n, mu).run()
