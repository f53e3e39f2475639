import math

import pytest

from cyclic_mnols.canonical import MnolsType, StabilizerCounts
from cyclic_mnols.counting import CountingError, CountTable, aggregate, consistency_check, within_class_counts
from cyclic_mnols.enumeration import ClassRecord, QuadCount
from cyclic_mnols.expected import expected_table, load_expected
from support import run

DOC = load_expected()


class TestWithinClass:
    def test_n4(self):
        # sets: phi(4)*4*4!/|Is_s| = 2*4*24/4 = 48
        assert within_class_counts(StabilizerCounts(4, 2, 1), 4, 2) == (1, 2, 4, 48, 96)

    def test_n6(self):
        assert within_class_counts(StabilizerCounts(2, 1, 1), 6, 2) == (1, 6, 12, 4320, 8640)

    @pytest.mark.parametrize("n,mu", [(8, 3), (12, 4), (16, 2)])
    def test_trivial_stabilizer(self, n, mu):
        phi = sum(math.gcd(x, n) == 1 for x in range(1, n))
        mf, nf = math.factorial(mu), math.factorial(n)
        assert within_class_counts(StabilizerCounts(1, 1, 1), n, mu) == (
            mf,
            phi * n,
            phi * n * mf,
            phi * n * nf,
            phi * n * mf * nf,
        )

    def test_inexact_division_is_fatal(self):
        with pytest.raises(CountingError):
            within_class_counts(StabilizerCounts(7, 1, 1), 4, 2)


class TestAggregate:
    def test_empty(self):
        t = aggregate([], 8, 5)
        assert t.rows() == dict.fromkeys(t.rows(), 0)
        assert t.distribution == {}

    def test_n4(self):
        rec = ClassRecord(((0, 1, 2, 3), (1, 3, 0, 2)), StabilizerCounts(4, 2, 1), MnolsType.TYPE1)
        t = aggregate([rec], 4, 2)
        assert (t.set_isotopy, t.set_reduced, t.list_isotopy, t.list_reduced) == (1, 2, 1, 4)
        assert (t.set_classes, t.list_classes) == (48, 96)
        assert t.distribution == {(4, 2, 1, 1): 1}
        assert all(ok for _, ok, _ in consistency_check(t, QuadCount(4, 2, 1, 1)))

    @pytest.mark.parametrize("n", [4, 6, 8, 10])
    def test_b_and_c_aggregate_alike(self, n):
        for mu in range(2, 6):
            assert aggregate(run("B", n)[mu], n, mu) == aggregate(run("C", n)[mu], n, mu)

    def test_consistency_detects_disagreement(self):
        t = aggregate(run("B", 8)[2], 8, 2)
        report = dict((name, ok) for name, ok, _ in consistency_check(t, QuadCount(256, 136, 12, 8)))
        assert report["direct setIsotopy = aggregated"] is False
        assert report["direct listReduced = aggregated"] is True
        t.list_classes += 1
        assert dict((n, ok) for n, ok, _ in consistency_check(t))["listClasses = LR*n!"] is False


class TestPublishedDistributions:
    """The published autotopy/type tables, pushed through the per-class formulas,
    must give back the published count tables."""

    @pytest.mark.parametrize("dist", DOC["distributions"], ids=lambda d: f"n{d['n']}-mu{d['mu']}")
    def test_rebuild_counts(self, dist):
        n, mu = dist["n"], dist["mu"]
        table = CountTable(n, mu)
        for row in dist["rows"]:
            count = row["type0"] + row["type1"]
            # n=14 tables omit |Red_s|; it is 1 for every class there
            sc = StabilizerCounts(row["is_s"], row["is_l"], row["red_s"] or 1)
            li, sr, lr, sets, lists = within_class_counts(sc, n, mu)
            table.set_isotopy += count
            table.list_isotopy += count * li
            table.set_reduced += count * sr
            table.list_reduced += count * lr
            table.set_classes += count * sets
            table.list_classes += count * lists
        want = expected_table(DOC, n, mu)
        assert table.rows()["setIsotopy"] == want["setIsotopy"] == dist["type0"] + dist["type1"]
        for key in ("setReduced", "listIsotopy", "listReduced"):
            assert table.rows()[key] == want[key]
        assert all(ok for _, ok, _ in consistency_check(table))

    def test_n14_pair_totals(self):
        dist = next(d for d in DOC["distributions"] if (d["n"], d["mu"]) == (14, 2))
        sizes = sorted((r["type0"] + r["type1"] for r in dist["rows"]), reverse=True)
        assert sizes == [18804, 134, 80, 16, 6]
        assert (dist["type0"], dist["type1"]) == (3667, 15373)

    def test_n16_list_classes_exact(self):
        lr = expected_table(DOC, 16, 2)["listReduced"]
        assert lr == 125026304
        t = CountTable(16, 2, list_reduced=lr, set_classes=lr * math.factorial(16) // 2, list_classes=lr * math.factorial(16))
        # 16! = 20922789888000; the product is far past 64 bits
        assert t.list_classes == 125026304 * 20922789888000 == 2615899089065213952000
        assert t.list_classes > 2**64
        assert all(ok for _, ok, _ in consistency_check(t))
