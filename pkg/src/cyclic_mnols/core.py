"""Cyclic Latin squares stored as their first column.

A cyclic square of even order ``n`` satisfies ``L(r, c) = col[r] + c (mod n)``,
so a column (a permutation of ``0..n-1``) determines the square.  Lists of
squares are tuples of such columns.  Everything here works on plain tuples of
ints so values are hashable and cheap to ship between processes.
"""

from __future__ import annotations

import enum
from collections import Counter
from collections.abc import Sequence

Column = tuple[int, ...]
ColumnList = tuple[Column, ...]


class UsageError(ValueError):
    """Bad input from a caller: odd order, non-permutation, size mismatch."""


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def check_order(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise UsageError(f"order must be an integer, got {n!r}")
    if n < 2 or n % 2:
        raise UsageError(f"order must be an even integer >= 2, got {n}")
    return n


def identity(n: int) -> Column:
    return tuple(range(check_order(n)))


def check_column(col: Sequence[int], n: int | None = None) -> Column:
    """Validate that ``col`` is a permutation of ``0..n-1`` for even ``n``."""
    col = tuple(int(v) for v in col)
    m = len(col)
    if n is None:
        n = m
    check_order(n)
    if m != n:
        raise UsageError(f"column has {m} entries, expected {n}")
    if sorted(col) != list(range(n)):
        raise UsageError(f"column {format_column(col)} is not a permutation of 0..{n - 1}")
    return col


def _same_order(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise UsageError(f"columns of different orders: {len(a)} vs {len(b)}")
    return len(a)


def expand(col: Sequence[int]) -> list[list[int]]:
    """The full square ``L[r][c] = col[r] + c (mod n)``."""
    n = len(col)
    return [[(col[r] + c) % n for c in range(n)] for r in range(n)]


def difference_multiset(a: Sequence[int], b: Sequence[int]) -> Counter:
    """Row-wise symbol differences ``b[r] - a[r] (mod n)`` with multiplicities."""
    n = _same_order(a, b)
    return Counter((y - x) % n for x, y in zip(a, b))


def required_profile(n: int) -> Counter:
    """Difference multiset shared by every nearly orthogonal cyclic pair."""
    profile = Counter({d: 1 for d in range(1, n)})
    profile[n // 2] = 2
    return profile


def nearly_orthogonal(a: Sequence[int], b: Sequence[int]) -> bool:
    """Decide near-orthogonality of two cyclic squares from their columns.

    Superimposing cyclic squares puts the pair ``(a[r] + c, b[r] + c)`` in cell
    ``(r, c)``; as ``c`` runs over ``Z_n`` every pair with difference
    ``b[r] - a[r]`` is hit once.  So each nonzero difference other than ``n/2``
    must occur in exactly one row, ``n/2`` in two rows and ``0`` in none.
    """
    n = _same_order(a, b)
    if n % 2:
        return False
    seen = [0] * n
    half = n // 2
    for x, y in zip(a, b):
        d = (y - x) % n
        seen[d] += 1
        if d == 0 or seen[d] > (2 if d == half else 1):
            return False
    return True


def is_mnols_list(cols: Sequence[Sequence[int]]) -> bool:
    cols = list(cols)
    for i in range(len(cols)):
        for k in range(i + 1, len(cols)):
            if not nearly_orthogonal(cols[i], cols[k]):
                return False
    return True


def _cmp(a, b) -> Cmp:
    if a < b:
        return Cmp.LT
    if a > b:
        return Cmp.GT
    return Cmp.EQ


def compare_columns(a: Sequence[int], b: Sequence[int]) -> Cmp:
    """Lexicographic order on columns.

    Row 0 of a cyclic square is ``col[0], col[0]+1, ...``, so row-major order on
    the expanded squares is decided by the first differing column entry.
    """
    _same_order(a, b)
    return _cmp(tuple(a), tuple(b))


def compare_lists(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Cmp:
    if len(A) != len(B):
        raise UsageError(f"lists of different lengths: {len(A)} vs {len(B)}")
    for a, b in zip(A, B):
        c = compare_columns(a, b)
        if c:
            return c
    return Cmp.EQ


def format_column(col: Sequence[int]) -> str:
    return ",".join(str(v) for v in col)


def format_list(cols: Sequence[Sequence[int]]) -> str:
    return ";".join(format_column(c) for c in cols)


def parse_column(text: str, n: int | None = None) -> Column:
    try:
        values = [int(tok) for tok in text.strip().split(",")]
    except ValueError:
        raise UsageError(f"cannot parse column {text!r}") from None
    return check_column(values, n)


def parse_list(text: str) -> ColumnList:
    """Parse ``"0,1,2,3;1,3,0,2"``; every column must share one even order."""
    parts = [p for p in text.strip().split(";") if p.strip()]
    if not parts:
        raise UsageError("empty column list")
    first = parse_column(parts[0])
    return (first,) + tuple(parse_column(p, len(first)) for p in parts[1:])
