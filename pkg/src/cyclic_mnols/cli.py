"""Command-line front end.

    mnols enumerate --n 10 --mu 3 --algorithm all
    mnols verify results.json [expected.json]
    mnols classify "0,1,2,3;1,3,0,2"

Exit codes: 0 success, 1 mismatch or failed run, 2 usage/parse error,
3 corrupt checkpoint, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

from cyclic_mnols import canonical as canon
from cyclic_mnols.core import UsageError, check_order, format_list, is_mnols_list, nearly_orthogonal, parse_list
from cyclic_mnols.counting import CountingError, CountTable, aggregate, consistency_check
from cyclic_mnols.enumeration import ALGORITHMS, QuadCount, column_pool
from cyclic_mnols.expected import compare, load_expected
from cyclic_mnols.parallel import CheckpointError, default_workers, run_partitioned
from cyclic_mnols.report import FormatError, RunResult, dumps, loads, record_to_json, to_csv

log = logging.getLogger("cyclic_mnols")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CHECKPOINT, EXIT_INCONSISTENT = 0, 1, 2, 3, 4

# Algorithm A visits every list-reduced list; above this order "all" skips it.
A_MAX_ORDER_FOR_ALL = 10


def table_from_quad(q: QuadCount, n: int, mu: int) -> CountTable:
    nf = math.factorial(n)
    return CountTable(
        n,
        mu,
        set_isotopy=q.set_canonical,
        set_reduced=q.set_reduced,
        list_isotopy=q.list_canonical,
        list_reduced=q.list_reduced,
        set_classes=q.list_reduced * nf // math.factorial(mu),
        list_classes=q.list_reduced * nf,
    )


def mu_bound(n: int) -> int:
    return n // 2 + 1 if n % 4 == 2 else n // 2


def run_enumeration(
    n: int,
    mu: int,
    algorithm: str = "C",
    workers: int = 1,
    checkpoint: Path | None = None,
    resume: bool = False,
) -> tuple[RunResult, list[tuple[str, bool, str]]]:
    """Run one or all algorithms for ``(n, mu)``; returns the result and the check report."""
    check_order(n)
    if mu < 2:
        raise UsageError(f"mu must be at least 2, got {mu}")
    if algorithm == "all":
        names = [a for a in "ABC" if a != "A" or n <= A_MAX_ORDER_FOR_ALL]
    elif algorithm in ALGORITHMS:
        names = [algorithm]
    else:
        raise UsageError(f"unknown algorithm {algorithm!r}")

    pool = column_pool(n)
    outputs = {}
    for name in names:
        search = ALGORITHMS[name](n, mu, pool)
        log.info("algorithm %s: n=%d mu=%d, %d branches", name, n, mu, len(search.branches()))
        outputs[name] = run_partitioned(search, workers, checkpoint, resume)[mu]

    report: list[tuple[str, bool, str]] = []
    quad = outputs.get("A")
    store_name = next((a for a in ("B", "C") if a in outputs), None)
    if store_name is None:
        table, classes = table_from_quad(quad, n, mu), []
    else:
        classes = outputs[store_name]
        table = aggregate(classes, n, mu)
    report += consistency_check(table, quad if store_name else None)
    if "B" in outputs and "C" in outputs:
        same = [record_to_json(r) for r in outputs["B"]] == [record_to_json(r) for r in outputs["C"]]
        report.append(("B and C class stores identical", same, f"{len(outputs['B'])} vs {len(outputs['C'])} classes"))
    bound = mu_bound(n)
    report.append((f"no classes above mu <= {bound}", mu <= bound or table.set_isotopy == 0, f"setIsotopy={table.set_isotopy}"))
    return RunResult(n, mu, algorithm, table, classes), report


def cmd_enumerate(args) -> int:
    results = []
    for n in args.n:
        try:
            res, report = run_enumeration(n, args.mu, args.algorithm, args.workers, args.checkpoint, args.resume)
        except CountingError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INCONSISTENT
        for name, ok, detail in report:
            log.info("%s %s (%s)", "PASS" if ok else "FAIL", name, detail)
        failed = [name for name, ok, _ in report if not ok]
        if failed:
            for name in failed:
                print(f"consistency failure: n={n} mu={args.mu}: {name}", file=sys.stderr)
            return EXIT_INCONSISTENT
        results.append(res)
    if args.format == "csv":
        text = to_csv(results)
    else:
        text = dumps(results[0] if len(results) == 1 else results)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        results = loads(Path(args.results).read_text())
        doc = load_expected(args.expected)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    mismatches = 0
    for res in results:
        checked, bad = compare(res, doc)
        for line in checked:
            print(f"ok       {line}")
        for line in bad:
            print(f"MISMATCH {line}")
        mismatches += len(bad)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_classify(args) -> int:
    cols = parse_list(args.columns)
    n = len(cols[0])
    print(f"order n={n}, mu={len(cols)}")
    if not is_mnols_list(cols):
        for a in range(len(cols)):
            for b in range(a + 1, len(cols)):
                if not nearly_orthogonal(cols[a], cols[b]):
                    print(f"squares {a + 1} and {b + 1} are not nearly orthogonal")
        print("not a list of cyclic MNOLS")
        return EXIT_MISMATCH
    print("valid list of cyclic MNOLS")
    reduced = canon.is_list_reduced(cols)
    print(f"list-reduced: {'yes' if reduced else 'no'}")
    if reduced:
        for label, fn in (
            ("set-reduced", canon.is_set_reduced),
            ("list-canonical", canon.is_list_canonical),
            ("set-canonical", canon.is_set_canonical),
        ):
            print(f"{label}: {'yes' if fn(cols) else 'no'}")
    form = canon.canonical_form(cols)
    st = canon.stabilizer_counts(form)
    print(f"canonical form: {format_list(form)}")
    print(f"is_s={st.is_s} is_l={st.is_l} red_s={st.red_s}")
    print(f"type: {canon.classify_type(form).name}")
    ics = canon.find_row_intercalates(cols)
    if not ics:
        print("row-intercalates: none")
    for ic in ics:
        print(
            f"row-intercalate: squares {ic.square_a + 1},{ic.square_b + 1} rows {ic.row},{ic.row2} "
            f"difference {ic.difference} symbol delta {ic.symbol_delta}"
        )
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mnols", description="Enumerate and classify cyclic MNOLS.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress and checks to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", help="count classes of mu cyclic MNOLS of order n")
    e.add_argument("--n", type=int, nargs="+", required=True, help="even order(s)")
    e.add_argument("--mu", type=int, required=True, help="number of squares (>= 2)")
    e.add_argument("--algorithm", choices=["A", "B", "C", "all"], default="C")
    e.add_argument("--workers", type=int, default=default_workers(), help="worker processes (env MNOLS_WORKERS)")
    e.add_argument("--checkpoint", type=Path, help="directory for per-branch checkpoints")
    e.add_argument("--resume", action="store_true", help="reuse completed branches from --checkpoint")
    e.add_argument("--output", type=Path, help="write here instead of stdout")
    e.add_argument("--format", choices=["json", "csv"], default="json")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="compare a results file with published counts")
    v.add_argument("results", help="JSON written by 'enumerate'")
    v.add_argument("expected", nargs="?", help="expected-value JSON (default: shipped tables)")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="describe one list of columns")
    c.add_argument("columns", help='columns as "0,1,2,3;1,3,0,2"')
    c.set_defaults(func=cmd_classify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CheckpointError as exc:
        print(f"checkpoint error: {exc}", file=sys.stderr)
        return EXIT_CHECKPOINT
    except Exception as exc:  # a failed worker; finished branches stay in the checkpoint
        log.debug("run failed", exc_info=True)
        print(f"run failed: {exc!r}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
