"""Canonicity, stabilizers and type for list-reduced lists of cyclic MNOLS.

Every group element of ``<M, T, R, S>`` that yields a list-reduced image is
pinned down by ``(x, j, i)``: the symbol map ``e -> x*e + j`` and the position
``i`` of the square that becomes the identity (the row permutation is then
forced).  Writing ``a(y) = x*y + j`` and ``F = C_k o C_i^-1``, the image of
square ``k`` is ``a o F o a^-1``.  The minimum over square reorderings is
obtained by sorting the non-identity columns, because list order is
lexicographic over columns and columns of an MNOLS list are distinct.

The scalar :func:`candidates` walks these images one at a time.
:class:`BatchAnalysis` computes all of them for a stack of lists with numpy and
is what the predicates and the enumeration code use.
"""

from __future__ import annotations

import enum
import functools
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from cyclic_mnols.actions import reduce_to_first, units
from cyclic_mnols.core import ColumnList, UsageError

_SENTINEL = np.iinfo(np.uint64).max


class Scope(enum.Enum):
    LIST_ISO = "list-isotopy"
    SET_ISO = "set-isotopy"
    SET_RED = "set-reduced"


class MnolsType(enum.IntEnum):
    TYPE0 = 0
    TYPE1 = 1


@dataclass(frozen=True, order=True)
class StabilizerCounts:
    is_s: int
    is_l: int
    red_s: int

    def __post_init__(self):
        if min(self.is_s, self.is_l, self.red_s) < 1:
            raise ValueError(f"stabilizer sizes must be positive: {self}")
        if self.is_l > self.is_s or self.red_s > self.is_s:
            raise ValueError(f"subgroup stabilizer larger than Is_s: {self}")

    def as_tuple(self) -> tuple[int, int, int]:
        return self.is_s, self.is_l, self.red_s


@dataclass(frozen=True)
class RowIntercalate:
    square_a: int
    square_b: int
    row: int
    row2: int
    difference: int
    symbol_delta: int


def is_list_reduced(cols: Sequence[Sequence[int]]) -> bool:
    return tuple(cols[0]) == tuple(range(len(cols[0])))


def _require_reduced(cols):
    if not is_list_reduced(cols):
        raise UsageError("list must be list-reduced (first column the identity)")


def candidates(cols: Sequence[Sequence[int]], scope: Scope) -> Iterator[ColumnList]:
    """List-reduced images of ``cols`` that can beat it under ``scope``.

    SET_ISO ranges over all ``(x, j, i)`` with a sorted tail, LIST_ISO over
    ``(x, j)`` with ``i`` fixed to the first square and the tail order kept,
    SET_RED over ``i`` alone with ``x = 1, j = 0``.
    """
    _require_reduced(cols)
    n, mu = len(cols[0]), len(cols)
    if scope is Scope.SET_RED:
        for i in range(mu):
            yield reduce_to_first(cols, i)
    elif scope is Scope.LIST_ISO:
        for x in units(n):
            for j in range(n):
                yield reduce_to_first(cols, 0, x, j, order=range(1, mu))
    else:
        for x in units(n):
            for j in range(n):
                for i in range(mu):
                    yield reduce_to_first(cols, i, x, j)


@functools.lru_cache(maxsize=None)
def _tables(n: int):
    us = units(n)
    ys = np.arange(n)
    fwd = np.array([[(x * ys + j) % n for j in range(n)] for x in us])
    back = np.array([[(pow(x, -1, n) * (ys - j)) % n for j in range(n)] for x in us])
    offsets = (np.arange(len(us) * n).reshape(len(us), n, 1) * n).astype(np.intp)
    weights = np.array([n ** (n - 1 - r) for r in range(n)], dtype=np.uint64)
    return fwd.ravel().astype(np.intp), back.astype(np.intp), offsets, weights


def column_keys(cols: np.ndarray) -> np.ndarray:
    """Order-preserving integer key of each column (base-``n`` digits); ``n <= 16``."""
    n = cols.shape[-1]
    if n > 16:
        raise UsageError("column keys need n <= 16")
    return (cols.astype(np.uint64) * _tables(n)[3]).sum(axis=-1, dtype=np.uint64)


def _lex(a: np.ndarray, b: np.ndarray):
    """Lexicographic ``a < b`` and ``a == b`` over the last axis."""
    less = np.zeros(np.broadcast_shapes(a.shape, b.shape)[:-1], dtype=bool)
    eq = np.ones_like(less)
    for p in range(a.shape[-1]):
        less |= eq & (a[..., p] < b[..., p])
        eq &= a[..., p] == b[..., p]
    return less, eq


class BatchAnalysis:
    """All list-reduced images of a stack of list-reduced lists.

    ``lists`` has shape ``(B, mu, n)``.  Axes of the image arrays are
    ``(b, unit index, j, i, k)``; the unit with index 0 is ``x = 1``.
    """

    def __init__(self, lists):
        X = np.asarray(lists, dtype=np.intp)
        if X.ndim != 3:
            raise UsageError("expected an array of shape (batch, mu, n)")
        B, mu, n = X.shape
        if B and not (X[:, 0, :] == np.arange(n)).all():
            raise UsageError("every list must be list-reduced")
        self.n, self.mu, self.size = n, mu, B
        fwd, back, offsets, _ = _tables(n)
        inv = np.argsort(X, axis=-1)
        # F[b, i, k] = C_k o C_i^-1
        F = np.take_along_axis(
            np.broadcast_to(X[:, None, :, :], (B, mu, mu, n)),
            np.broadcast_to(inv[:, :, None, :], (B, mu, mu, n)),
            axis=-1,
        )
        # E[b, i, k, u, j, z] = a(F(a^-1(z))) with a(y) = x_u*y + j
        E = fwd[offsets + F[..., back]]
        self._first_entries = E[..., 0], E[..., 1]
        keys = column_keys(E).transpose(0, 3, 4, 1, 2)
        self.own = column_keys(X)
        self.keys = keys
        if mu > 1:
            masked = keys.copy()
            idx = np.arange(mu)
            masked[..., idx, idx] = _SENTINEL
            self.sorted_tails = np.sort(masked, axis=-1)[..., : mu - 1]
        else:
            self.sorted_tails = np.zeros(keys.shape[:-1] + (0,), dtype=np.uint64)
        self.list_tails = keys[:, :, :, 0, 1:]
        self._own_tail = self.own[:, 1:]
        self._own_sorted = np.sort(self._own_tail, axis=-1)

    def _beaten(self, imgs: np.ndarray, axes) -> np.ndarray:
        shape = (self.size,) + (1,) * (imgs.ndim - 2) + (self.mu - 1,)
        less, _ = _lex(imgs, self._own_tail.reshape(shape))
        return less.any(axis=axes)

    def set_canonical(self) -> np.ndarray:
        return ~self._beaten(self.sorted_tails, (1, 2, 3))

    def list_canonical(self) -> np.ndarray:
        return ~self._beaten(self.list_tails, (1, 2))

    def set_reduced(self) -> np.ndarray:
        return ~self._beaten(self.sorted_tails[:, 0, 0], 1)

    def stabilizers(self) -> np.ndarray:
        """``(B, 3)`` array of ``(is_s, is_l, red_s)``."""
        tail = self._own_sorted[:, None, None, None, :]
        _, eq_s = _lex(self.sorted_tails, tail)
        _, eq_l = _lex(self.list_tails, self._own_tail[:, None, None, :])
        return np.stack(
            [eq_s.sum(axis=(1, 2, 3)), eq_l.sum(axis=(1, 2)), eq_s[:, 0, 0].sum(axis=1)], axis=1
        )

    def types(self) -> np.ndarray:
        """0 where some image has a second square with ``C(0) = 1, C(1) = 0``."""
        e0, e1 = self._first_entries
        witness = ((e0 == 1) & (e1 == 0)).reshape(self.size, -1).any(axis=1)
        return np.where(witness, MnolsType.TYPE0, MnolsType.TYPE1)


def _single(cols) -> BatchAnalysis:
    _require_reduced(cols)
    return BatchAnalysis([cols])


def is_set_canonical(cols) -> bool:
    return bool(_single(cols).set_canonical()[0])


def is_list_canonical(cols) -> bool:
    return bool(_single(cols).list_canonical()[0])


def is_set_reduced(cols) -> bool:
    return bool(_single(cols).set_reduced()[0])


def stabilizer_counts(cols) -> StabilizerCounts:
    return StabilizerCounts(*(int(v) for v in _single(cols).stabilizers()[0]))


def classify_type(cols) -> MnolsType:
    return MnolsType(int(_single(cols).types()[0]))


def canonical_form(cols: Sequence[Sequence[int]]) -> ColumnList:
    """The least list in the set-isotopy class of ``cols``."""
    reduced = reduce_to_first(cols, 0, order=range(1, len(cols)))
    return min(candidates(reduced, Scope.SET_ISO))


def find_row_intercalates(cols: Sequence[Sequence[int]]) -> list[RowIntercalate]:
    n = len(cols[0])
    out = []
    for a in range(len(cols)):
        for b in range(a + 1, len(cols)):
            A, B = cols[a], cols[b]
            for r in range(n):
                for r2 in range(r + 1, n):
                    if A[r] == B[r2] and A[r2] == B[r]:
                        out.append(RowIntercalate(a, b, r, r2, r2 - r, (A[r2] - A[r]) % n))
    return out


def intercalate_unit_row_difference(cols) -> bool:
    n = len(cols[0])
    return any(math.gcd(ic.difference, n) == 1 for ic in find_row_intercalates(cols))


def intercalate_unit_symbol_delta(cols) -> bool:
    n = len(cols[0])
    return any(math.gcd(ic.symbol_delta, n) == 1 for ic in find_row_intercalates(cols))
