"""
Exhaustive enumeration of S_n with exact counting: statistic distributions,
shape censuses, and direct generators for the two pattern-avoidance classes.

Full-range enumeration goes through :func:`itertools.permutations` (which is
lexicographic); arbitrary lexicographic ranges are served independently by
factorial-base unranking plus the classical successor step, so that the work
can be split across processes and merged.  Both routes must produce the same
multiset, which the tests enforce.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from math import factorial
from multiprocessing import get_context
from typing import Callable, Iterator

from .permutations import (
    descent_positions,
    inversion_count,
    left_borders,
    lr_maxima_count,
)
from .shapes import ShapePartition, shape_parts

__all__ = [
    "MAX_ENUM_N",
    "STATISTICS",
    "FILTERS",
    "Distribution",
    "enumerate_sn",
    "unrank_permutation",
    "next_permutation_inplace",
    "permutation_range",
    "avoiders_132",
    "avoiders_231",
    "all_shapes",
    "distribution",
    "shape_census",
    "split_ranges",
]

MAX_ENUM_N = 11


def _stat_lbsum(word: tuple[int, ...]) -> int:
    return sum(left_borders(word))


def _stat_des(word: tuple[int, ...]) -> int:
    return sum(1 for i in range(1, len(word)) if word[i - 1] > word[i])


def _stat_maj(word: tuple[int, ...]) -> int:
    return sum(descent_positions(word))


def _stat_maxdes(word: tuple[int, ...]) -> int:
    for i in range(len(word) - 1, 0, -1):
        if word[i - 1] > word[i]:
            return i
    return 0


STATISTICS: dict[str, Callable[[tuple[int, ...]], int]] = {
    "lbsum": _stat_lbsum,
    "des": _stat_des,
    "maj": _stat_maj,
    "lrmax": lr_maxima_count,
    "maxdes": _stat_maxdes,
    "inv": inversion_count,
}

FILTERS = (None, "132", "231")


def _check_enum_n(n: int) -> None:
    if not 0 <= n <= MAX_ENUM_N:
        raise ValueError(f"full enumeration supports 0 <= n <= {MAX_ENUM_N}")


def enumerate_sn(n: int) -> Iterator[tuple[int, ...]]:
    """All permutations of {1..n} in lexicographic order."""
    _check_enum_n(n)
    return itertools.permutations(range(1, n + 1))


def unrank_permutation(n: int, index: int) -> tuple[int, ...]:
    """The permutation at a lexicographic index, via the factorial base."""
    if not 0 <= index < factorial(n):
        raise ValueError(f"index {index} outside 0..{factorial(n) - 1}")
    available = list(range(1, n + 1))
    out: list[int] = []
    for radix in range(n - 1, -1, -1):
        block = factorial(radix)
        digit, index = divmod(index, block)
        out.append(available.pop(digit))
    return tuple(out)


def next_permutation_inplace(word: list[int]) -> bool:
    """Advance to the lexicographic successor; False at the last arrangement."""
    n = len(word)
    i = n - 2
    while i >= 0 and word[i] >= word[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while word[j] <= word[i]:
        j -= 1
    word[i], word[j] = word[j], word[i]
    word[i + 1 :] = reversed(word[i + 1 :])
    return True


def permutation_range(n: int, start: int, stop: int) -> Iterator[tuple[int, ...]]:
    """Permutations with lexicographic indices in [start, stop)."""
    _check_enum_n(n)
    total = factorial(n)
    if not 0 <= start <= stop <= total:
        raise ValueError(f"bad range [{start}, {stop}) for n={n}")
    if start == stop:
        return
    current = list(unrank_permutation(n, start))
    for _ in range(stop - start):
        yield tuple(current)
        if not next_permutation_inplace(current):
            break


def split_ranges(total: int, pieces: int) -> list[tuple[int, int]]:
    """Split [0, total) into contiguous near-equal pieces."""
    pieces = max(1, min(pieces, total)) if total else 1
    step, extra = divmod(total, pieces)
    bounds = []
    lo = 0
    for t in range(pieces):
        hi = lo + step + (1 if t < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def avoiders_132(n: int) -> Iterator[tuple[int, ...]]:
    """
    All 1-3-2-avoiding permutations of {1..n}, built directly: around the
    maximum, every value on the left must exceed every value on the right.
    """
    _check_enum_n(n)

    def build(values: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if not values:
            yield ()
            return
        m = len(values)
        for k in range(1, m + 1):
            left_values = values[m - k : m - 1]
            right_values = values[: m - k]
            for left in build(left_values):
                for right in build(right_values):
                    yield left + (values[-1],) + right

    return build(tuple(range(1, n + 1)))


def avoiders_231(n: int) -> Iterator[tuple[int, ...]]:
    """
    All 2-3-1-avoiding permutations of {1..n}: around the maximum, every
    value on the left must be below every value on the right.
    """
    _check_enum_n(n)

    def build(values: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if not values:
            yield ()
            return
        for k in range(1, len(values) + 1):
            left_values = values[: k - 1]
            right_values = values[k - 1 : -1]
            for left in build(left_values):
                for right in build(right_values):
                    yield left + (values[-1],) + right

    return build(tuple(range(1, n + 1)))


def all_shapes(n: int) -> Iterator[ShapePartition]:
    """Every staircase-fitting shape with exactly n - 1 parts."""
    if n == 0:
        yield ShapePartition((), 0)
        return

    acc: list[int] = []

    def rec(j: int, bound: int) -> Iterator[ShapePartition]:
        if j == n:
            yield ShapePartition(tuple(acc), n)
            return
        for v in range(min(bound, n - j), -1, -1):
            acc.append(v)
            yield from rec(j + 1, v)
            acc.pop()

    yield from rec(1, n - 1)


@dataclass(frozen=True)
class Distribution:
    """Exact counts of one statistic over S_n or an avoidance class."""

    n: int
    statistic: str
    filter: str | None
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def parity_split(self) -> tuple[int, int]:
        """(count at even values, count at odd values)."""
        even = sum(c for v, c in self.counts.items() if v % 2 == 0)
        return even, self.total - even

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "statistic": self.statistic,
                "filter": self.filter,
                "counts": {str(v): str(c) for v, c in sorted(self.counts.items())},
            },
            sort_keys=True,
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["value", "count"])
        for v, c in sorted(self.counts.items()):
            writer.writerow([v, str(c)])
        return buf.getvalue()


def _dist_range_worker(
    args: tuple[int, int, int, str],
) -> dict[int, int]:
    n, start, stop, stat_name = args
    fn = STATISTICS[stat_name]
    counts: dict[int, int] = {}
    for word in permutation_range(n, start, stop):
        v = fn(word)
        counts[v] = counts.get(v, 0) + 1
    return counts


def distribution(
    n: int, statistic: str, avoid: str | None = None, workers: int = 1
) -> Distribution:
    """
    The exact distribution of a statistic over S_n, optionally restricted to
    the 1-3-2- or 2-3-1-avoiding class.  ``workers`` splits the full
    enumeration into lexicographic ranges handled by separate processes.
    """
    _check_enum_n(n)
    if statistic not in STATISTICS:
        raise ValueError(f"unknown statistic {statistic!r}")
    if avoid not in FILTERS:
        raise ValueError(f"unknown filter {avoid!r} (use None, '132' or '231')")
    fn = STATISTICS[statistic]
    counts: dict[int, int] = {}
    if avoid is None and workers > 1 and n >= 6:
        ranges = split_ranges(factorial(n), workers)
        with get_context("fork").Pool(workers) as pool:
            partials = pool.map(
                _dist_range_worker, [(n, lo, hi, statistic) for lo, hi in ranges]
            )
        for partial in partials:
            for v, c in partial.items():
                counts[v] = counts.get(v, 0) + c
    else:
        if avoid is None:
            source: Iterator[tuple[int, ...]] = enumerate_sn(n)
        elif avoid == "132":
            source = avoiders_132(n)
        else:
            source = avoiders_231(n)
        for word in source:
            v = fn(word)
            counts[v] = counts.get(v, 0) + 1
    return Distribution(n=n, statistic=statistic, filter=avoid, counts=counts)


def _census_range_worker(args: tuple[int, int, int]) -> dict[str, int]:
    n, start, stop = args
    counts: dict[str, int] = {}
    for word in permutation_range(n, start, stop):
        key = ",".join(map(str, shape_parts(word)))
        counts[key] = counts.get(key, 0) + 1
    return counts


def shape_census(n: int, workers: int = 1) -> dict[str, int]:
    """Exact count of permutations per shape, keyed by the shape text form."""
    if not 0 <= n <= 9:
        raise ValueError("shape census supports 0 <= n <= 9")
    counts: dict[str, int] = {}
    if workers > 1 and n >= 6:
        ranges = split_ranges(factorial(n), workers)
        with get_context("fork").Pool(workers) as pool:
            partials = pool.map(
                _census_range_worker, [(n, lo, hi) for lo, hi in ranges]
            )
        for partial in partials:
            for key, c in partial.items():
                counts[key] = counts.get(key, 0) + c
    else:
        for word in enumerate_sn(n):
            key = ",".join(map(str, shape_parts(word)))
            counts[key] = counts.get(key, 0) + 1
    return counts


def census_to_json(census: dict[str, int], n: int) -> str:
    return json.dumps(
        {"n": n, "counts": {k: str(v) for k, v in sorted(census.items())}},
        sort_keys=True,
    )


def census_to_csv(census: dict[str, int]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["shape", "count"])
    for key, c in sorted(census.items()):
        writer.writerow([key, str(c)])
    return buf.getvalue()
