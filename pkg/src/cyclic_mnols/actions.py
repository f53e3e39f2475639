"""Isotopisms that keep lists of cyclic MNOLS cyclic.

An isotopism of a cyclic list is ``(x, j, row_perm, order_perm)``: rows are
permuted by ``row_perm``, columns by ``c -> x*c``, symbols by ``e -> x*e + j``
and the squares are reordered so that position ``k`` receives square
``order_perm[k]``.  In column form this reads::

    C'_k(r) = x * C_{order_perm[k]}(row_perm^-1(r)) + j   (mod n)

Indices (rows, symbols, square positions) are 0-based throughout.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from cyclic_mnols.core import Column, ColumnList, UsageError, check_order, expand, identity


def units(n: int) -> list[int]:
    return [x for x in range(1, n) if math.gcd(x, n) == 1]


def totient(n: int) -> int:
    return len(units(n)) if n > 1 else 1


def invert(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p o q``: apply ``q`` first."""
    return tuple(p[v] for v in q)


@dataclass(frozen=True)
class GroupOrderInfo:
    n: int
    mu: int

    @property
    def phi(self) -> int:
        return totient(self.n)

    @property
    def order(self) -> int:
        return self.phi * self.n * math.factorial(self.n) * math.factorial(self.mu)


@dataclass(frozen=True)
class CyclicIsotopism:
    x: int
    j: int
    row_perm: tuple[int, ...]
    order_perm: tuple[int, ...]

    def __post_init__(self):
        n = len(self.row_perm)
        check_order(n)
        if math.gcd(self.x, n) != 1:
            raise UsageError(f"x={self.x} is not a unit mod {n}")
        if sorted(self.row_perm) != list(range(n)):
            raise UsageError("row_perm is not a permutation")
        if sorted(self.order_perm) != list(range(len(self.order_perm))):
            raise UsageError("order_perm is not a permutation")
        object.__setattr__(self, "x", self.x % n)
        object.__setattr__(self, "j", self.j % n)

    @property
    def n(self) -> int:
        return len(self.row_perm)

    @property
    def mu(self) -> int:
        return len(self.order_perm)

    @classmethod
    def identity(cls, n: int, mu: int) -> CyclicIsotopism:
        return cls(1, 0, identity(n), tuple(range(mu)))

    def __mul__(self, other: CyclicIsotopism) -> CyclicIsotopism:
        """``(g * h)(L) == g(h(L))``."""
        if (self.n, self.mu) != (other.n, other.mu):
            raise UsageError("isotopisms of different shapes")
        return CyclicIsotopism(
            self.x * other.x % self.n,
            (self.x * other.j + self.j) % self.n,
            compose(self.row_perm, other.row_perm),
            compose(other.order_perm, self.order_perm),
        )


def apply(iso: CyclicIsotopism, cols: Sequence[Sequence[int]]) -> ColumnList:
    n, mu = iso.n, iso.mu
    if len(cols) != mu or any(len(c) != n for c in cols):
        raise UsageError(f"isotopism for n={n}, mu={mu} applied to a list of a different shape")
    rinv = invert(iso.row_perm)
    x, j = iso.x, iso.j
    return tuple(
        tuple((x * cols[iso.order_perm[k]][rinv[r]] + j) % n for r in range(n))
        for k in range(mu)
    )


def apply_to_square(square: Sequence[Sequence[int]], row_perm, col_perm, sym_perm) -> list[list[int]]:
    """Literal isotopism on a full square: cell ``(r, c, e)`` moves to
    ``(row_perm[r], col_perm[c], sym_perm[e])``."""
    n = len(square)
    out = [[0] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            out[row_perm[r]][col_perm[c]] = sym_perm[square[r][c]]
    return out


def square_is_cyclic(square: Sequence[Sequence[int]]) -> bool:
    n = len(square)
    return all(square[r][(c + 1) % n] == (square[r][c] + 1) % n for r in range(n) for c in range(n))


def affine(n: int, x: int, j: int) -> tuple[int, ...]:
    """The permutation ``y -> x*y + j`` of ``Z_n`` (``m_x`` then ``tau^j``)."""
    return tuple((x * y + j) % n for y in range(n))


def shift_columns_symbols(cols: Sequence[Sequence[int]], i: int) -> ColumnList:
    """Shift columns and symbols of every square by ``i`` and read column 0 back.

    On cyclic squares this is the identity map.
    """
    out = []
    for col in cols:
        n = len(col)
        shift = affine(n, 1, i)
        sq = apply_to_square(expand(col), identity(n), shift, shift)
        out.append(tuple(row[0] for row in sq))
    return tuple(out)


def reduce_to_first(
    cols: Sequence[Sequence[int]],
    i: int,
    x: int = 1,
    j: int = 0,
    order: Sequence[int] | None = None,
) -> ColumnList:
    """Map ``cols`` by ``e -> x*e + j`` and relabel rows so square ``i`` becomes the identity.

    ``i`` is a 0-based position.  The transformed square ``i`` goes first; the
    others follow in ``order`` (positions into ``cols``) or ascending if omitted.
    """
    mu = len(cols)
    if not 0 <= i < mu:
        raise UsageError(f"square index {i} out of range for a list of {mu}")
    n = len(cols[0])
    if math.gcd(x, n) != 1:
        raise UsageError(f"x={x} is not a unit mod {n}")
    mapped = [tuple((x * v + j) % n for v in c) for c in cols]
    pivot_inv = invert(mapped[i])
    reduced = [compose(d, pivot_inv) for d in mapped]
    if order is None:
        tail = sorted(reduced[k] for k in range(mu) if k != i)
    else:
        if sorted(order) != sorted(k for k in range(mu) if k != i):
            raise UsageError("order must list every other square exactly once")
        tail = [reduced[k] for k in order]
    return (reduced[i], *tail)


def reducing_isotopism(cols: Sequence[Sequence[int]], i: int, x: int, j: int, order: Sequence[int]) -> CyclicIsotopism:
    """The group element realising :func:`reduce_to_first` with an explicit order."""
    n = len(cols[0])
    pivot = affine(n, x, j)
    row_perm = tuple(pivot[v] for v in cols[i])
    return CyclicIsotopism(x, j, row_perm, (i, *order))


def _half_period_symbol_perms(n: int):
    """Symbol permutations with ``s(y + n/2) = s(y) + n/2``."""
    half = n // 2
    for images in itertools.permutations(range(n), half):
        if len({v % half for v in images}) != half:
            continue
        s = [0] * n
        for y, v in enumerate(images):
            s[y] = v
            s[y + half] = (v + half) % n
        yield tuple(s)


def closure_isotopisms(pair: Sequence[Sequence[int]]) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ``(col_perm, sym_perm)`` with half-period ``sym_perm`` that map every
    square of ``pair`` to a cyclic square (rows untouched)."""
    n = len(pair[0])
    squares = np.array([expand(c) for c in pair])
    sym_perms = np.array(list(_half_period_symbol_perms(n)))
    found = set()
    for col_perm in itertools.permutations(range(n)):
        # image[s, q, r, col_perm[c]] = sym_perm_s[square_q[r, c]]
        image = sym_perms[:, squares][..., invert(col_perm)]
        ok = (np.roll(image, -1, axis=-1) == (image + 1) % n).all(axis=(1, 2, 3))
        for s in np.flatnonzero(ok):
            found.add((col_perm, tuple(int(v) for v in sym_perms[s])))
    return found


def cyclicity_closure_check(n: int, max_order: int = 6) -> bool:
    """Exhaustively confirm that column/symbol permutations keeping a cyclic
    MNOLS pair cyclic are affine maps ``y -> x*y + k`` with a shared unit ``x``.

    Cyclicity is a per-row condition, so row permutations never affect it and
    are not enumerated.  Refuses orders above ``max_order``.
    """
    check_order(n)
    if n > max_order:
        raise UsageError(f"exhaustive closure check refused for n={n} (limit {max_order})")
    from cyclic_mnols.oracle import oracle_enumerate

    for pair in oracle_enumerate(n, 2):
        for col_perm, sym_perm in closure_isotopisms(pair):
            x = (col_perm[1] - col_perm[0]) % n
            if math.gcd(x, n) != 1:
                return False
            if col_perm != affine(n, x, col_perm[0]) or sym_perm != affine(n, x, sym_perm[0]):
                return False
    return True
