"""Batch front-end: read a dataset or similarity matrix, select, write the ranking.

Input formats
-------------
csv
    One example per line, comma-separated 64-bit reals, optionally preceded
    by a single header line skipped with --header. For
    ``--similarity precomputed`` the CSV must be the square similarity
    matrix itself.
triples
    Sparse similarity entries: a required leading ``n=<count>`` line, then
    one ``row,col,value`` line per stored entry. Only valid together with
    ``--function facility-location --similarity precomputed``.

The output file carries a ``rank,index,gain`` header and one line per
selected example, gains printed with 17 significant digits so they parse
back to the exact float. Progress under --verbose goes to stderr; the
output path is written atomically and only on success.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import tempfile

import numpy as np

from .exceptions import DegenerateInputError, InputError, TripleValidationError
from .matrices import sparse_from_triples
from .selector import FacilityLocationSelector, FeatureBasedSelector

__all__ = ["build_parser", "run", "main"]


class CliError(Exception):
    """Diagnostic carrying a ready-to-print message."""


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="subsel",
        description="Select a representative low-redundancy subset of a dataset.",
    )
    p.add_argument(
        "--function",
        required=True,
        choices=["facility-location", "feature-based"],
        help="objective to maximize",
    )
    p.add_argument("--k", required=True, type=int, help="number of examples to select")
    p.add_argument(
        "--concave",
        choices=["sqrt", "log"],
        help="saturating function for feature-based selection (default sqrt)",
    )
    p.add_argument(
        "--similarity",
        choices=["precomputed", "squared-correlation", "cosine"],
        help="similarity source for facility-location selection",
    )
    p.add_argument("--input", required=True, help="input data file")
    p.add_argument(
        "--format",
        choices=["csv", "triples"],
        default="csv",
        help="input file format (default csv)",
    )
    p.add_argument(
        "--header",
        action="store_true",
        help="skip one header line at the top of a csv input",
    )
    p.add_argument(
        "--naive-rounds",
        type=int,
        default=0,
        help="naive greedy rounds before switching to lazy greedy; the result is "
        "identical for any value. Rough guidance: 50-500 works well for "
        "feature-based selection, 1-50 for facility location (default 0, pure lazy)",
    )
    p.add_argument("--initial", help="file of indices to force into the selection, one per line")
    p.add_argument("--output", required=True, help="output csv path (rank,index,gain)")
    p.add_argument("--parallelism", type=int, default=1, help="threads for naive-round sweeps")
    p.add_argument("--verbose", action="store_true", help="progress records on stderr")
    return p


def _validate_flags(args) -> None:
    if args.k < 1:
        raise CliError("--k must be at least 1")
    if args.function == "feature-based":
        if args.similarity is not None:
            raise CliError("--similarity is only valid with --function facility-location")
        if args.format == "triples":
            raise CliError("--format triples is only valid with --function facility-location")
    else:
        if args.concave is not None:
            raise CliError("--concave is only valid with --function feature-based")
        if args.similarity is None:
            raise CliError("--function facility-location requires --similarity")
        if args.format == "triples" and args.similarity != "precomputed":
            raise CliError("--format triples requires --similarity precomputed")
    if args.format == "triples" and args.header:
        raise CliError("--header is only valid with --format csv")
    if args.naive_rounds < 0:
        raise CliError("--naive-rounds must be non-negative")
    if args.parallelism < 1:
        raise CliError("--parallelism must be at least 1")


def _read_lines(path: str) -> list[str]:
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            return fh.read().splitlines()
    except OSError as exc:
        raise CliError(f"{path}: cannot read input ({exc.strerror or exc})") from None


def load_csv_matrix(path: str, header: bool) -> tuple[np.ndarray, list[int]]:
    """Parse a CSV of reals. Returns (matrix, line number of each row)."""
    rows: list[list[float]] = []
    lines: list[int] = []
    width = None
    reader = csv.reader(_read_lines(path))
    for lineno, record in enumerate(reader, start=1):
        if header and lineno == 1:
            continue
        if not record or all(not cell.strip() for cell in record):
            continue
        if width is None:
            width = len(record)
        elif len(record) != width:
            raise CliError(f"{path}:{lineno}: expected {width} fields, got {len(record)}")
        try:
            rows.append([float(cell) for cell in record])
        except ValueError:
            bad = next(c for c in record if not _is_float(c))
            raise CliError(f"{path}:{lineno}: cannot parse {bad.strip()!r} as a number") from None
        lines.append(lineno)
    if not rows:
        raise CliError(f"{path}: empty dataset")
    return np.array(rows, dtype=np.float64), lines


def _is_float(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def load_triples(path: str) -> tuple[int, list[tuple[int, int, float]], list[int]]:
    """Parse a triples file. Returns (n, triples, line number of each triple)."""
    raw = [(i + 1, line.strip()) for i, line in enumerate(_read_lines(path))]
    rows = [(no, line) for no, line in raw if line]
    if not rows:
        raise CliError(f"{path}: empty dataset")
    first_no, first = rows[0]
    if not first.startswith("n="):
        raise CliError(f"{path}:{first_no}: triples input must start with an 'n=<count>' line")
    try:
        n = int(first[2:])
    except ValueError:
        raise CliError(f"{path}:{first_no}: cannot parse {first[2:]!r} as a count") from None
    if n < 1:
        raise CliError(f"{path}:{first_no}: n must be at least 1, got {n}")
    triples: list[tuple[int, int, float]] = []
    lines: list[int] = []
    for no, line in rows[1:]:
        parts = line.split(",")
        if len(parts) != 3:
            raise CliError(f"{path}:{no}: expected 'row,col,value', got {line!r}")
        try:
            triples.append((int(parts[0]), int(parts[1]), float(parts[2])))
        except ValueError:
            raise CliError(f"{path}:{no}: cannot parse {line!r} as 'row,col,value'") from None
        lines.append(no)
    return n, triples, lines


def load_initial(path: str) -> list[int]:
    indices = []
    for no, line in enumerate(_read_lines(path), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            indices.append(int(line))
        except ValueError:
            raise CliError(f"{path}:{no}: cannot parse {line!r} as an index") from None
    return indices


def _build_selector(args):
    common = dict(
        naive_rounds=args.naive_rounds,
        initial=load_initial(args.initial) if args.initial else None,
        parallelism=args.parallelism,
        verbose=args.verbose,
    )
    if args.function == "feature-based":
        return FeatureBasedSelector(args.k, concave=args.concave or "sqrt", **common)
    return FacilityLocationSelector(args.k, similarity=args.similarity, **common)


def _load_data(args):
    """Parse the input file into selector-ready data plus row -> line mapping."""
    if args.format == "triples":
        n, triples, lines = load_triples(args.input)
        try:
            return sparse_from_triples(n, triples), lines
        except TripleValidationError as exc:
            raise CliError(f"{args.input}:{lines[exc.triple_index]}: {exc}") from None
    matrix, lines = load_csv_matrix(args.input, args.header)
    if args.function == "feature-based":
        neg = np.argwhere(~(matrix >= 0.0))
        if neg.size:
            r, c = neg[0]
            raise CliError(
                f"{args.input}:{lines[r]}: negative feature value {matrix[r, c]!r} in field "
                f"{c + 1} (feature-based selection requires non-negative features)"
            )
    elif args.similarity == "precomputed":
        if matrix.shape[0] != matrix.shape[1]:
            raise CliError(
                f"{args.input}: precomputed similarity matrix must be square, "
                f"got {matrix.shape[0]} rows of {matrix.shape[1]} fields"
            )
        neg = np.argwhere(~(matrix >= 0.0))
        if neg.size:
            r, c = neg[0]
            raise CliError(
                f"{args.input}:{lines[r]}: negative similarity {matrix[r, c]!r} in field {c + 1}"
            )
    return matrix, lines


def _write_output(path: str, result) -> None:
    body = "rank,index,gain\n" + "".join(
        "%d,%d,%.17g\n" % (rank, index, gain)
        for rank, (index, gain) in enumerate(zip(result.ranking, result.gains))
    )
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(prefix=".subsel-", dir=directory)
    except OSError as exc:
        raise CliError(f"{path}: cannot write output ({exc.strerror or exc})") from None
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(body)
        os.replace(tmp, path)
    except OSError as exc:
        os.unlink(tmp)
        raise CliError(f"{path}: cannot write output ({exc.strerror or exc})") from None


def run(args) -> int:
    _validate_flags(args)
    selector = _build_selector(args)
    data, lines = _load_data(args)
    try:
        selector.fit(data)
    except DegenerateInputError as exc:
        where = args.input if exc.row is None else f"{args.input}:{lines[exc.row]}"
        raise CliError(f"{where}: {exc}") from None
    except (InputError, IndexError) as exc:
        raise CliError(str(exc)) from None
    _write_output(args.output, selector.result_)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except CliError as exc:
        print(f"subsel: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
