"""Turn one representative per set-isotopy class into the six class counts.

Within the class of ``L`` the orbit-stabilizer theorem gives the number of
list-isotopy classes, reduced sets, reduced lists, sets and lists from
``|Is_s|``, ``|Is_l|`` and ``|Red_s|`` alone.  All arithmetic is exact.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field

from cyclic_mnols.actions import totient
from cyclic_mnols.canonical import StabilizerCounts
from cyclic_mnols.enumeration import ClassRecord, QuadCount


class CountingError(ArithmeticError):
    """A class size did not divide evenly; the stabilizer data is wrong."""


def _exact(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise CountingError(f"{num} is not divisible by {den}")
    return q


def within_class_counts(sc: StabilizerCounts, n: int, mu: int) -> tuple[int, int, int, int, int]:
    """``(list-isotopy classes, reduced sets, reduced lists, sets, lists)`` inside one class."""
    base = totient(n) * n
    mf, nf = math.factorial(mu), math.factorial(n)
    return (
        _exact(mf * sc.is_l, sc.is_s),
        _exact(base * sc.red_s, sc.is_s),
        _exact(base * mf, sc.is_s),
        _exact(base * nf, sc.is_s),
        _exact(base * mf * nf, sc.is_s),
    )


@dataclass
class CountTable:
    n: int
    mu: int
    set_isotopy: int = 0
    set_reduced: int = 0
    list_isotopy: int = 0
    list_reduced: int = 0
    set_classes: int = 0
    list_classes: int = 0
    # (is_s, is_l, red_s, type) -> number of classes
    distribution: dict[tuple[int, int, int, int], int] = field(default_factory=dict)

    def rows(self) -> dict[str, int]:
        return {
            "setIsotopy": self.set_isotopy,
            "setReduced": self.set_reduced,
            "listIsotopy": self.list_isotopy,
            "listReduced": self.list_reduced,
            "setClasses": self.set_classes,
            "listClasses": self.list_classes,
        }

    def type_totals(self) -> tuple[int, int]:
        t0 = sum(c for k, c in self.distribution.items() if k[3] == 0)
        return t0, sum(self.distribution.values()) - t0


def aggregate(store: Iterable[ClassRecord], n: int, mu: int) -> CountTable:
    table = CountTable(n, mu)
    dist: Counter = Counter()
    for rec in store:
        lists_iso, set_red, list_red, sets, lists = within_class_counts(rec.stabilizers, n, mu)
        table.set_isotopy += 1
        table.list_isotopy += lists_iso
        table.set_reduced += set_red
        table.list_reduced += list_red
        table.set_classes += sets
        table.list_classes += lists
        dist[(*rec.stabilizers.as_tuple(), int(rec.type))] += 1
    table.distribution = dict(sorted(dist.items()))
    return table


def consistency_check(table: CountTable, quad: QuadCount | None = None) -> list[tuple[str, bool, str]]:
    """Named pass/fail checks tying the table to its own identities and to a direct count."""
    nf, mf = math.factorial(table.n), math.factorial(table.mu)
    lr = table.list_reduced
    report = [
        ("setClasses = LR*n!/mu!", table.set_classes * mf == lr * nf, f"{table.set_classes} vs {lr}*{nf}/{mf}"),
        ("listClasses = LR*n!", table.list_classes == lr * nf, f"{table.list_classes} vs {lr}*{nf}"),
    ]
    if table.distribution:
        total = sum(table.distribution.values())
        report.append(("distribution total = setIsotopy", total == table.set_isotopy, f"{total} vs {table.set_isotopy}"))
    if quad is not None:
        pairs = [
            ("listReduced", quad.list_reduced, table.list_reduced),
            ("setReduced", quad.set_reduced, table.set_reduced),
            ("listIsotopy", quad.list_canonical, table.list_isotopy),
            ("setIsotopy", quad.set_canonical, table.set_isotopy),
        ]
        for name, direct, derived in pairs:
            report.append((f"direct {name} = aggregated", direct == derived, f"{direct} vs {derived}"))
    return report
