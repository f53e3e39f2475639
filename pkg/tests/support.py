"""Shared, cached fixtures data and independent helpers for the test suite."""

from __future__ import annotations

import functools
import itertools
import math
import random
from collections import Counter

import numpy as np

from cyclic_mnols.actions import CyclicIsotopism, compose, invert, units
from cyclic_mnols.enumeration import ALGORITHMS, column_pool, nearly_orthogonal_mask
from cyclic_mnols.parallel import run_partitioned

MAX_MU = 5


@functools.cache
def pool(n: int) -> np.ndarray:
    return column_pool(n)


@functools.cache
def run(algorithm: str, n: int) -> dict:
    """``{depth: result}`` for depths 2..MAX_MU, computed once per session."""
    return run_partitioned(ALGORITHMS[algorithm](n, MAX_MU, pool(n)))


@functools.cache
def reduced_lists(n: int, mu: int) -> np.ndarray:
    """Every list-reduced list of ``mu`` cyclic MNOLS, shape ``(count, mu, n)``."""
    first = np.arange(n, dtype=np.int8)
    out = []

    def grow(prefix, cands):
        if len(prefix) == mu:
            out.append(np.stack(prefix))
            return
        for c in cands:
            grow(prefix + [c], cands[nearly_orthogonal_mask(cands, c)])

    grow([first], pool(n))
    return np.array(out, dtype=np.int8).reshape(-1, mu, n)


def as_tuple_list(arr) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in c) for c in arr)


def random_partner(n: int, rng: random.Random) -> tuple[int, ...]:
    """A random column nearly orthogonal to the identity (randomised backtracking)."""
    need = Counter({d: 1 for d in range(1, n)})
    need[n // 2] = 2
    col: list[int] = []
    used: set[int] = set()

    def go(r):
        if r == n:
            return True
        opts = [v for v in range(n) if v not in used and need[(v - r) % n]]
        rng.shuffle(opts)
        for v in opts:
            need[(v - r) % n] -= 1
            used.add(v)
            col.append(v)
            if go(r + 1):
                return True
            col.pop()
            used.discard(v)
            need[(v - r) % n] += 1
        return False

    go(0)
    return tuple(col)


def random_iso(n: int, mu: int, rng: random.Random) -> CyclicIsotopism:
    row = list(range(n))
    order = list(range(mu))
    rng.shuffle(row)
    rng.shuffle(order)
    return CyclicIsotopism(rng.choice(units(n)), rng.randrange(n), tuple(row), tuple(order))


def squares_nearly_orthogonal(A: np.ndarray, B: np.ndarray) -> bool:
    """Superimpose two full squares and check the ordered-pair tally."""
    n = A.shape[0]
    counts = np.bincount((A * n + B).ravel(), minlength=n * n).reshape(n, n)
    want = np.ones((n, n), dtype=int)
    idx = np.arange(n)
    want[idx, idx] = 0
    want[idx, (idx + n // 2) % n] = 2
    return bool((counts == want).all())


def type_zero_by_definition(cols) -> bool:
    """Search every (x, j, i, k) for E_k(0)=1, E_k(1)=0."""
    n, mu = len(cols[0]), len(cols)
    for x in units(n):
        for j in range(n):
            mapped = [tuple((x * v + j) % n for v in c) for c in cols]
            for i, k in itertools.permutations(range(mu), 2):
                e = compose(mapped[k], invert(mapped[i]))
                if e[0] == 1 and e[1] == 0:
                    return True
    return False


def phi_n(n: int) -> int:
    return sum(1 for x in range(1, n) if math.gcd(x, n) == 1) * n
