"""Published counts shipped with the package, and comparison against runs."""

from __future__ import annotations

import json
from collections import Counter
from importlib import resources
from pathlib import Path

from cyclic_mnols.report import FormatError, RunResult

COUNT_FIELDS = ("setIsotopy", "setReduced", "listIsotopy", "listReduced")


def load_expected(path: str | Path | None = None) -> dict:
    try:
        if path is None:
            text = resources.files("cyclic_mnols").joinpath("data/expected.json").read_text()
        else:
            text = Path(path).read_text()
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid expected-value file: {exc}") from None
    if not isinstance(doc, dict) or "tables" not in doc:
        raise FormatError("expected-value file needs a 'tables' list")
    return doc


def expected_table(doc: dict, n: int, mu: int) -> dict | None:
    for entry in doc.get("tables", []):
        if entry.get("n") == n and entry.get("mu") == mu:
            return entry
    return None


def expected_distribution(doc: dict, n: int, mu: int) -> dict | None:
    for entry in doc.get("distributions", []):
        if entry.get("n") == n and entry.get("mu") == mu:
            return entry
    return None


def compare(result: RunResult, doc: dict) -> tuple[list[str], list[str]]:
    """``(checked, mismatches)`` as human-readable lines naming each field."""
    checked, bad = [], []
    n, mu = result.n, result.mu
    rows = result.table.rows()
    entry = expected_table(doc, n, mu)
    if entry is None:
        bad.append(f"n={n} mu={mu}: no expected counts available")
        return checked, bad
    for key in COUNT_FIELDS:
        if key not in entry:
            continue
        label = f"n={n} mu={mu} table {entry.get('table', '?')} {key}"
        if rows[key] == entry[key]:
            checked.append(f"{label} = {rows[key]}")
        else:
            bad.append(f"{label}: got {rows[key]}, expected {entry[key]}")

    dist = expected_distribution(doc, n, mu)
    if dist is None or not result.table.distribution:
        return checked, bad
    ours: Counter = Counter()
    keep_red = any(r.get("red_s") is not None for r in dist["rows"])
    for (is_s, is_l, red_s, typ), count in result.table.distribution.items():
        ours[(is_s, is_l, red_s if keep_red else None, typ)] += count
    theirs: Counter = Counter()
    for r in dist["rows"]:
        key = (r["is_s"], r["is_l"], r.get("red_s"))
        theirs[(*key, 0)] += r["type0"]
        theirs[(*key, 1)] += r["type1"]
    label = f"n={n} mu={mu} table {dist.get('table', '?')}"
    for key in sorted(set(ours) | set(theirs), key=lambda k: tuple(-1 if v is None else v for v in k)):
        if ours[key] != theirs[key]:
            is_s, is_l, red_s, typ = key
            bad.append(
                f"{label} (is_s={is_s}, is_l={is_l}, red_s={red_s}) type {typ}: got {ours[key]}, expected {theirs[key]}"
            )
    if not any(m.startswith(label) for m in bad):
        checked.append(f"{label} type/autotopy distribution ({len(dist['rows'])} rows)")
    return checked, bad
