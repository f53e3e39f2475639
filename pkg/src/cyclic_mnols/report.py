"""JSON and CSV forms of run results.

Run JSON::

    {"n": 10, "mu": 3, "algorithm": "C",
     "tables": {"setIsotopy": 73, ..., "setClasses": "<decimal>", "listClasses": "<decimal>"},
     "distribution": [{"is_s": 1, "is_l": 1, "red_s": 1, "type": 0, "count": 40}, ...],
     "classes": [{"columns": [[0, 1, ...], ...], "is_s": 1, "is_l": 1, "red_s": 1, "type": 0}, ...]}

``setClasses``/``listClasses`` outgrow 64 bits and are written as strings.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence
from dataclasses import dataclass, field

from cyclic_mnols.canonical import MnolsType, StabilizerCounts
from cyclic_mnols.counting import CountTable
from cyclic_mnols.enumeration import ClassRecord, QuadCount

TABLE_FIELDS = ("setIsotopy", "setReduced", "listIsotopy", "listReduced", "setClasses", "listClasses")
BIG_FIELDS = ("setClasses", "listClasses")
ROW_LABELS = {
    "setIsotopy": "set-isotopy",
    "setReduced": "set-reduced",
    "listIsotopy": "list-isotopy",
    "listReduced": "list-reduced",
    "setClasses": "sets",
    "listClasses": "lists",
}


class FormatError(ValueError):
    pass


@dataclass
class RunResult:
    n: int
    mu: int
    algorithm: str
    table: CountTable
    classes: list[ClassRecord] = field(default_factory=list)


def record_to_json(rec: ClassRecord) -> dict:
    st = rec.stabilizers
    return {
        "columns": [list(c) for c in rec.columns],
        "is_s": st.is_s,
        "is_l": st.is_l,
        "red_s": st.red_s,
        "type": int(rec.type),
    }


def record_from_json(obj: dict) -> ClassRecord:
    try:
        cols = tuple(tuple(int(v) for v in c) for c in obj["columns"])
        st = StabilizerCounts(int(obj["is_s"]), int(obj["is_l"]), int(obj["red_s"]))
        return ClassRecord(cols, st, MnolsType(int(obj["type"])))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad class record: {exc}") from None


def quad_to_json(q: QuadCount) -> list[int]:
    return list(q.as_tuple())


def quad_from_json(obj) -> QuadCount:
    try:
        return QuadCount(*(int(v) for v in obj))
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad count quadruple: {exc}") from None


def result_to_json(res: RunResult) -> dict:
    t = res.table
    tables = {k: (str(v) if k in BIG_FIELDS else v) for k, v in t.rows().items()}
    dist = [
        {"is_s": k[0], "is_l": k[1], "red_s": k[2], "type": k[3], "count": c}
        for k, c in sorted(t.distribution.items())
    ]
    return {
        "n": res.n,
        "mu": res.mu,
        "algorithm": res.algorithm,
        "tables": tables,
        "distribution": dist,
        "classes": [record_to_json(r) for r in sorted(res.classes)],
    }


def result_from_json(obj: dict) -> RunResult:
    try:
        n, mu = int(obj["n"]), int(obj["mu"])
        tables = obj["tables"]
        table = CountTable(
            n,
            mu,
            set_isotopy=int(tables["setIsotopy"]),
            set_reduced=int(tables["setReduced"]),
            list_isotopy=int(tables["listIsotopy"]),
            list_reduced=int(tables["listReduced"]),
            set_classes=int(tables["setClasses"]),
            list_classes=int(tables["listClasses"]),
            distribution={
                (int(d["is_s"]), int(d["is_l"]), int(d["red_s"]), int(d["type"])): int(d["count"])
                for d in obj.get("distribution", [])
            },
        )
        classes = [record_from_json(c) for c in obj.get("classes", [])]
        return RunResult(n, mu, str(obj["algorithm"]), table, classes)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise FormatError(f"bad result document: {exc!r}") from None


def dumps(results: RunResult | Sequence[RunResult]) -> str:
    if isinstance(results, RunResult):
        doc = result_to_json(results)
    else:
        doc = [result_to_json(r) for r in results]
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def loads(text: str) -> list[RunResult]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list):
        raise FormatError("expected a result object or a list of them")
    return [result_from_json(d) for d in doc]


def to_csv(results: Sequence[RunResult]) -> str:
    """One row per equivalence and one column per ``(n, mu)`` run."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["equivalence"] + [f"n={r.n} mu={r.mu}" for r in results])
    for key in TABLE_FIELDS:
        w.writerow([ROW_LABELS[key]] + [r.table.rows()[key] for r in results])
    return buf.getvalue()
