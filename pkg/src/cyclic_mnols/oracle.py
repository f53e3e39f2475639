"""Slow reference implementations, written straight from the definitions.

Nothing here shares code with the fast paths beyond column expansion: squares
are superimposed cell by cell, every permutation is tried, and orbits are
materialised by running the group.  Only usable at tiny orders.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Sequence

from cyclic_mnols.core import ColumnList, UsageError, check_order, expand, identity


def oracle_nearly_orthogonal(a: Sequence[int], b: Sequence[int]) -> bool:
    n = len(a)
    if len(b) != n or n % 2:
        return False
    A, B = expand(a), expand(b)
    pairs = Counter((A[r][c], B[r][c]) for r in range(n) for c in range(n))
    for l in range(n):
        for l2 in range(n):
            want = 0 if l == l2 else 2 if (l2 - l) % n == n // 2 else 1
            if pairs[l, l2] != want:
                return False
    return True


def _oracle_is_mnols(cols) -> bool:
    return all(oracle_nearly_orthogonal(a, b) for a, b in itertools.combinations(cols, 2))


def _check_scale(n: int, mu: int) -> None:
    check_order(n)
    if n <= 6 or (n == 8 and mu <= 2):
        return
    raise UsageError(f"oracle enumeration refused for n={n}, mu={mu}")


def oracle_enumerate(n: int, mu: int) -> list[ColumnList]:
    """Every list-reduced list of ``mu`` cyclic MNOLS of order ``n``, in ascending order."""
    _check_scale(n, mu)
    first = identity(n)
    if mu == 1:
        return [(first,)]
    perms = [p for p in itertools.permutations(range(n)) if oracle_nearly_orthogonal(first, p)]
    out = []
    for tail in itertools.product(perms, repeat=mu - 1):
        if _oracle_is_mnols(tail):
            out.append((first, *tail))
    return out


def _transform(cols, x: int, j: int, row_perm, order) -> ColumnList:
    """Act on full squares: rows by ``row_perm``, columns by ``m_x``, symbols by
    ``e -> x*e + j``, then reorder; read back each square's column 0."""
    n = len(cols[0])
    out = []
    for k in order:
        sq = expand(cols[k])
        img = [[None] * n for _ in range(n)]
        for r in range(n):
            for c in range(n):
                img[row_perm[r]][(x * c) % n] = (x * sq[r][c] + j) % n
        out.append(tuple(img[r][0] for r in range(n)))
    return tuple(out)


def oracle_orbit(cols: Sequence[Sequence[int]]) -> set[ColumnList]:
    """List-reduced members of the set-isotopy class of ``cols``.

    Runs over every ``(x, j)``, every square order and every row permutation,
    keeping the images whose first column is the identity.
    """
    n, mu = len(cols[0]), len(cols)
    if n > 6:
        raise UsageError(f"oracle orbit refused for n={n}")
    first = identity(n)
    units = [x for x in range(1, n) if math.gcd(x, n) == 1]
    out = set()
    for x in units:
        for j in range(n):
            for order in itertools.permutations(range(mu)):
                for row_perm in itertools.permutations(range(n)):
                    img = _transform(cols, x, j, row_perm, order)
                    if img[0] == first:
                        out.add(img)
    return out


def oracle_stabilizers(cols: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """``(|Is_s|, |Is_l|, |Red_s|)`` by applying every group element to the squares."""
    n, mu = len(cols[0]), len(cols)
    if n > 6:
        raise UsageError(f"oracle stabilizers refused for n={n}")
    target = tuple(tuple(c) for c in cols)
    ident = tuple(range(mu))
    units = [x for x in range(1, n) if math.gcd(x, n) == 1]
    is_s = is_l = red_s = 0
    for x in units:
        for j in range(n):
            for order in itertools.permutations(range(mu)):
                for row_perm in itertools.permutations(range(n)):
                    if _transform(cols, x, j, row_perm, order) == target:
                        is_s += 1
                        is_l += order == ident
                        red_s += (x, j) == (1, 0)
    return is_s, is_l, red_s
