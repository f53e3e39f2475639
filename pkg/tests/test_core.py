import itertools
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclic_mnols.core import (
    Cmp,
    UsageError,
    check_column,
    check_order,
    compare_columns,
    compare_lists,
    difference_multiset,
    expand,
    format_list,
    identity,
    is_mnols_list,
    nearly_orthogonal,
    parse_column,
    parse_list,
)

I4 = (0, 1, 2, 3)


def perms(n):
    return st.permutations(list(range(n))).map(tuple)


class TestOrder:
    @pytest.mark.parametrize("n", [2, 4, 6, 16])
    def test_even_orders_accepted(self, n):
        assert check_order(n) == n

    @pytest.mark.parametrize("n", [-2, 0, 1, 3, 7])
    def test_odd_or_tiny_rejected(self, n):
        with pytest.raises(UsageError):
            check_order(n)

    def test_non_permutation_column_rejected(self):
        with pytest.raises(UsageError):
            check_column((0, 0, 1, 2))


class TestExpand:
    def test_identity(self):
        assert expand(I4) == [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]]

    def test_order_two(self):
        assert expand((1, 0)) == [[1, 0], [0, 1]]

    def test_row_one(self):
        assert expand((1, 3, 0, 2))[1] == [3, 0, 1, 2]

    @given(perms(8))
    def test_is_cyclic_latin_square(self, col):
        sq = expand(col)
        n = len(col)
        assert all(sorted(row) == list(range(n)) for row in sq)
        assert all(sorted(sq[r][c] for r in range(n)) == list(range(n)) for c in range(n))
        assert all(sq[r][(c + 1) % n] == (sq[r][c] + 1) % n for r in range(n) for c in range(n))


class TestDifferenceMultiset:
    def test_zero(self):
        assert difference_multiset(I4, I4) == Counter({0: 4})

    def test_mixed(self):
        assert difference_multiset(I4, (2, 3, 1, 0)) == Counter({1: 1, 2: 2, 3: 1})

    def test_constant_shift(self):
        assert difference_multiset(I4, (1, 2, 3, 0)) == Counter({1: 4})

    def test_mismatched_orders(self):
        with pytest.raises(UsageError):
            difference_multiset(I4, (0, 1))

    @given(perms(10), perms(10))
    def test_total_multiplicity(self, a, b):
        assert sum(difference_multiset(a, b).values()) == 10


class TestNearlyOrthogonal:
    def test_examples(self):
        assert nearly_orthogonal(I4, (2, 3, 1, 0))
        assert not nearly_orthogonal(I4, (1, 2, 3, 0))
        assert not nearly_orthogonal(I4, I4)

    def test_mismatched_orders(self):
        with pytest.raises(UsageError):
            nearly_orthogonal(I4, (1, 0))

    def test_order_two_has_exactly_one_pair(self):
        # (0,1),(1,0) superimposed give (0,1) and (1,0) twice each and no (l,l)
        cols = [(0, 1), (1, 0)]
        assert [(a, b) for a in cols for b in cols if nearly_orthogonal(a, b)] == [((0, 1), (1, 0)), ((1, 0), (0, 1))]

    @pytest.mark.parametrize("n", [4, 6])
    def test_symmetric_on_all_pairs(self, n):
        cols = list(itertools.permutations(range(n)))
        good = {(a, b) for a in cols for b in cols if nearly_orthogonal(a, b)}
        assert good
        assert all((b, a) in good for a, b in good)


class TestMnolsList:
    def test_examples(self):
        assert is_mnols_list((I4, (2, 3, 1, 0)))
        assert not is_mnols_list((I4, (2, 3, 1, 0), (2, 3, 1, 0)))
        assert is_mnols_list(((3, 1, 0, 2),))


class TestOrdering:
    def test_column_examples(self):
        assert compare_columns((1, 3, 0, 2), (2, 0, 3, 1)) is Cmp.LT
        assert compare_columns((1, 3, 0, 2), (1, 3, 0, 2)) is Cmp.EQ
        assert compare_columns((2, 3, 1, 0), (2, 0, 3, 1)) is Cmp.GT

    def test_list_examples(self):
        a, b = (I4, (1, 3, 0, 2)), (I4, (2, 0, 3, 1))
        assert compare_lists(a, b) is Cmp.LT
        assert compare_lists(a, a) is Cmp.EQ
        assert compare_lists(b, a) is Cmp.GT

    @pytest.mark.parametrize("n", [4, 6])
    def test_matches_row_major_square_order(self, n):
        cols = sorted(itertools.permutations(range(n)))
        flat = [sum(expand(c), []) for c in cols]
        # sorted by columns must also be sorted by row-major squares, strictly
        assert all(flat[k] < flat[k + 1] for k in range(len(flat) - 1))
        for a, b in itertools.islice(itertools.combinations(range(len(cols)), 2), 5000):
            assert compare_columns(cols[a], cols[b]) is Cmp.LT

    @given(st.lists(st.tuples(perms(6), perms(6)), min_size=3, max_size=3))
    def test_total_order(self, triple):
        a, b, c = triple
        assert compare_lists(a, b) == -compare_lists(b, a)
        assert (compare_lists(a, b) is Cmp.EQ) == (a == b)
        if compare_lists(a, b) <= 0 and compare_lists(b, c) <= 0:
            assert compare_lists(a, c) <= 0


class TestText:
    def test_round_trip(self):
        cols = (I4, (1, 3, 0, 2))
        assert format_list(cols) == "0,1,2,3;1,3,0,2"
        assert parse_list("0,1,2,3;1,3,0,2") == cols

    @pytest.mark.parametrize("text", ["0,1,2", "0,1,x,3", "0,1,1,3", "0,1,2,3;1,0", ""])
    def test_bad_text(self, text):
        with pytest.raises(UsageError):
            parse_list(text)

    def test_column_order_forced(self):
        with pytest.raises(UsageError):
            parse_column("0,1,2,3", n=6)

    def test_identity(self):
        assert identity(6) == (0, 1, 2, 3, 4, 5)
