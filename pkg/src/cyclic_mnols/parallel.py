"""Branch-parallel execution with a resumable checkpoint.

A search is cut into independent branches (see ``Search.branches``).  Branches
run in worker processes; each finished branch is appended to a JSON-lines
checkpoint as soon as its result is back.  Results are merged in branch order
and class stores are sorted, so the output never depends on the worker count
or on how a run was interrupted and resumed.

Checkpoint layout: a header line ``{"algorithm", "n", "mu", "format"}``
followed by one ``{"branch": "<column text>", "result": {...}}`` per branch.
A trailing line without a newline (a write cut off by a kill) is ignored.
"""

from __future__ import annotations

import json
import logging
import os
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from cyclic_mnols.core import format_column
from cyclic_mnols.enumeration import ALGORITHMS, QuadCount, Search
from cyclic_mnols.report import FormatError, quad_from_json, quad_to_json, record_from_json, record_to_json

log = logging.getLogger(__name__)

CHECKPOINT_FORMAT = 1


class CheckpointError(RuntimeError):
    """The checkpoint file does not belong to this run or cannot be read."""


def default_workers() -> int:
    raw = os.environ.get("MNOLS_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def encode_part(part: dict) -> dict:
    out = {}
    for depth, value in part.items():
        if isinstance(value, QuadCount):
            out[str(depth)] = quad_to_json(value)
        else:
            out[str(depth)] = [record_to_json(r) for r in value]
    return out


def decode_part(obj: dict, algorithm: str) -> dict:
    part = {}
    for depth, value in obj.items():
        if algorithm == "A":
            part[int(depth)] = quad_from_json(value)
        else:
            part[int(depth)] = [record_from_json(r) for r in value]
    return part


def checkpoint_path(directory: Path, algorithm: str, n: int, mu: int) -> Path:
    return Path(directory) / f"{algorithm}-n{n}-mu{mu}.jsonl"


def _header(algorithm, n, mu) -> dict:
    return {"algorithm": algorithm, "n": n, "mu": mu, "format": CHECKPOINT_FORMAT}


def load_checkpoint(path: Path, algorithm: str, n: int, mu: int, branch_keys: set[str]) -> dict[str, dict]:
    text = path.read_text()
    lines = text.split("\n")
    if not text.endswith("\n"):
        lines = lines[:-1]
    lines = [ln for ln in lines if ln.strip()]
    if not lines:
        return {}
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError:
        raise CheckpointError(f"{path}: unreadable header") from None
    if header != _header(algorithm, n, mu):
        raise CheckpointError(f"{path}: written for {header}, not for algorithm {algorithm} n={n} mu={mu}")
    done = {}
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            entry = json.loads(line)
            key = entry["branch"]
            part = decode_part(entry["result"], algorithm)
        except (json.JSONDecodeError, KeyError, TypeError, FormatError) as exc:
            raise CheckpointError(f"{path}:{lineno}: corrupt entry ({exc})") from None
        if key not in branch_keys:
            raise CheckpointError(f"{path}:{lineno}: unknown branch {key!r}")
        done[key] = part
    return done


_WORKER_SEARCH: Search | None = None


def _init_worker(algorithm, n, mu, pool):
    global _WORKER_SEARCH
    _WORKER_SEARCH = ALGORITHMS[algorithm](n, mu, pool)


def _work(branch):
    return _WORKER_SEARCH.run_branch(branch)


def run_partitioned(
    search: Search,
    workers: int = 1,
    checkpoint_dir: Path | str | None = None,
    resume: bool = False,
    on_branch: Callable[[str], None] | None = None,
) -> dict:
    """Run every branch of ``search`` and merge; returns ``{depth: result}``.

    With ``checkpoint_dir`` each completed branch is persisted; ``resume``
    reuses branches already in the checkpoint instead of starting it afresh.
    ``on_branch`` is called with each branch key after it is persisted.
    """
    branches = search.branches()
    keys = [format_column(b) for b in branches]
    done: dict[str, dict] = {}
    fh = None
    if checkpoint_dir is not None:
        path = checkpoint_path(checkpoint_dir, search.algorithm, search.n, search.mu)
        path.parent.mkdir(parents=True, exist_ok=True)
        if resume and path.exists():
            done = load_checkpoint(path, search.algorithm, search.n, search.mu, set(keys))
            log.info("resuming %s: %d of %d branches done", path, len(done), len(keys))
            # drop any cut-off trailing line before appending
            text = path.read_text()
            if not text.endswith("\n"):
                path.write_text(text[: text.rfind("\n") + 1])
            fh = path.open("a")
            if not text.strip():
                fh.write(json.dumps(_header(search.algorithm, search.n, search.mu)) + "\n")
        else:
            fh = path.open("w")
            fh.write(json.dumps(_header(search.algorithm, search.n, search.mu)) + "\n")
        fh.flush()

    todo = [(b, k) for b, k in zip(branches, keys) if k not in done]
    try:
        for key, part in _execute(search, todo, workers):
            done[key] = part
            if fh is not None:
                fh.write(json.dumps({"branch": key, "result": encode_part(part)}) + "\n")
                fh.flush()
            if on_branch is not None:
                on_branch(key)
    finally:
        if fh is not None:
            fh.close()

    total = {d: search.empty(d) for d in range(2, search.mu + 1)}
    for key in keys:
        for d, value in done[key].items():
            total[d] = search.merge(total[d], value)
    return search.finish(total)


def _execute(search: Search, todo, workers: int):
    if workers <= 1 or len(todo) <= 1:
        for b, k in todo:
            yield k, search.run_branch(b)
        return
    chunksize = max(1, min(64, len(todo) // (workers * 8)))
    with ProcessPoolExecutor(
        max_workers=workers,
        initializer=_init_worker,
        initargs=(search.algorithm, search.n, search.mu, search.pool),
    ) as ex:
        for (b, k), part in zip(todo, ex.map(_work, [b for b, _ in todo], chunksize=chunksize)):
            yield k, part
