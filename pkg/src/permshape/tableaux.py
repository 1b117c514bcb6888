"""
Dotted tableaux: the injective representation of a permutation as its shape
plus one dot per inversion.

Rows of the diagram are labeled so that the row of length a_j carries the
label j (rows of equal length are labeled bottom to top in increasing
order); columns are labeled 1..k from the left, k being the largest part.
A dot in column i, row j records the inversion (i, j).  Column dot counts
form an inversion table, so the permutation can be rebuilt from the filling
alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .permutations import (
    Permutation,
    contains_132,
    inversion_pairs,
)
from .shapes import (
    ShapePartition,
    borders_from_shape,
    rectangle_decomposition,
    shape,
)

__all__ = [
    "InvalidFillingError",
    "InconsistentFillingError",
    "FilledTableau",
    "row_labels_for",
    "row_lengths_by_label",
    "encode_tableau",
    "decode_tableau",
    "min_filling",
    "max_filling",
    "is_valid_filling",
    "bijection_132_to_231",
    "count_132_from_tableau",
    "count_231_from_tableau",
    "tableau_to_json",
    "tableau_from_json",
]


class InvalidFillingError(ValueError):
    """A filling whose column counts cannot decode to any permutation."""


class InconsistentFillingError(InvalidFillingError):
    """A filling whose dots contradict the permutation its counts decode to."""


def row_labels_for(s: ShapePartition) -> tuple[int, ...]:
    """Row labels bottom to top: positions j with a_j > 0, sorted by (a_j, j)."""
    a = borders_from_shape(s)
    pairs = sorted((length, j) for j, length in enumerate(a, start=1) if length > 0)
    return tuple(j for _, j in pairs)


def row_lengths_by_label(s: ShapePartition) -> dict[int, int]:
    a = borders_from_shape(s)
    return {j: length for j, length in enumerate(a, start=1) if length > 0}


@dataclass(frozen=True)
class FilledTableau:
    """A shape with labeled rows and a set of dots (column, row label)."""

    shape: ShapePartition
    row_labels: tuple[int, ...]
    dots: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "dots", frozenset(self.dots))
        expected = row_labels_for(self.shape)
        if self.row_labels != expected:
            raise ValueError(
                f"row labels {self.row_labels} do not match the shape "
                f"(expected {expected})"
            )
        lengths = row_lengths_by_label(self.shape)
        for col, label in self.dots:
            if label not in lengths:
                raise ValueError(f"dot ({col}, {label}) lies outside every row")
            if not 1 <= col <= lengths[label]:
                raise ValueError(
                    f"dot ({col}, {label}) exceeds its row of length {lengths[label]}"
                )

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def column_count(self) -> int:
        return self.shape.largest

    def column_dot_counts(self) -> tuple[int, ...]:
        """Dots per column for columns 1..n (columns beyond k hold none)."""
        counts = [0] * self.n
        for col, _ in self.dots:
            counts[col - 1] += 1
        return tuple(counts)


def encode_tableau(p: Permutation) -> FilledTableau:
    """The filled tableau of p: its shape dotted at every inversion (i, j)."""
    s = shape(p)
    dots = frozenset(inversion_pairs(p.entries))
    return FilledTableau(s, row_labels_for(s), dots)


def decode_tableau(t: FilledTableau, *, check_dots: bool = True) -> Permutation:
    """
    Rebuild the permutation from column dot counts: count c_i means the
    (c_i + 1)-th smallest unused value goes to position i.  With
    ``check_dots`` the dot set must equal the inversion set of the result,
    otherwise the filling is rejected as inconsistent.
    """
    n = t.n
    counts = t.column_dot_counts()
    unused = list(range(1, n + 1))
    values: list[int] = []
    for i, c in enumerate(counts, start=1):
        if c >= len(unused):
            raise InvalidFillingError(
                f"column {i} holds {c} dots but only {len(unused)} values remain"
            )
        values.append(unused.pop(c))
    result = Permutation(tuple(values))
    if check_dots:
        if t.dots != frozenset(inversion_pairs(result.entries)):
            raise InconsistentFillingError(
                "inconsistent filling: dots do not match the decoded inversions"
            )
        if shape(result).parts != t.shape.parts:
            raise InconsistentFillingError(
                "inconsistent filling: host shape differs from the decoded shape"
            )
    return result


def is_valid_filling(t: FilledTableau) -> bool:
    """Whether the filling is realized by a permutation (decode succeeds)."""
    try:
        decode_tableau(t)
    except InvalidFillingError:
        return False
    return True


def _tableau_from_dots(
    s: ShapePartition, dots: Iterable[tuple[int, int]]
) -> FilledTableau:
    return FilledTableau(s, row_labels_for(s), frozenset(dots))


def min_filling(s: ShapePartition) -> FilledTableau:
    """
    The sparsest realizable filling of a shape: only the rightmost column of
    every rectangle of the corner decomposition is dotted.  Its decode avoids
    the pattern 2-3-1.
    """
    labels = row_labels_for(s)
    top_down = tuple(reversed(labels))  # geometric rows 1.. from the top
    dots: set[tuple[int, int]] = set()
    for rect in rectangle_decomposition(s).rectangles:
        for row in range(rect.corner_row - rect.height + 1, rect.corner_row + 1):
            dots.add((rect.column, top_down[row - 1]))
    return _tableau_from_dots(s, dots)


def max_filling(s: ShapePartition) -> FilledTableau:
    """The fully dotted filling of a shape; its decode avoids 1-3-2."""
    lengths = row_lengths_by_label(s)
    dots = {
        (col, label)
        for label, length in lengths.items()
        for col in range(1, length + 1)
    }
    return _tableau_from_dots(s, dots)


def bijection_132_to_231(p: Permutation) -> Permutation:
    """
    The shape-preserving bijection from 1-3-2-avoiding to 2-3-1-avoiding
    permutations: decode the minimal filling of the shape of p.
    """
    if contains_132(p.entries):
        raise ValueError(f"{p} contains 1-3-2; the bijection is not defined on it")
    return decode_tableau(min_filling(shape(p)))


def count_132_from_tableau(t: FilledTableau) -> int:
    """
    Occurrences of 1-3-2 read off a permutation's tableau: pairs of an empty
    cell with a dotted cell to its right within one row.
    """
    rows: dict[int, list[int]] = {}
    for col, label in t.dots:
        rows.setdefault(label, []).append(col)
    total = 0
    for cols in rows.values():
        filled = sorted(cols)
        for rank, col in enumerate(filled):
            total += (col - 1) - rank  # empty cells to the left of this dot
    return total


def count_231_from_tableau(t: FilledTableau) -> int:
    """
    Occurrences of 2-3-1 read off a permutation's tableau: pairs of dots
    (i, k), (j, k) in one row with i < j whose companion cell (i, j) is
    absent or empty; a dotted companion marks a decreasing triple instead.
    """
    rows: dict[int, list[int]] = {}
    for col, label in t.dots:
        rows.setdefault(label, []).append(col)
    total = 0
    for cols in rows.values():
        filled = sorted(cols)
        for a in range(len(filled)):
            for b in range(a + 1, len(filled)):
                if (filled[a], filled[b]) not in t.dots:
                    total += 1
    return total


def tableau_to_json(t: FilledTableau) -> dict:
    return {
        "n": t.n,
        "shape": list(t.shape.parts),
        "row_labels": list(t.row_labels),
        "dots": sorted([col, label] for col, label in t.dots),
    }


def tableau_from_json(data: dict) -> FilledTableau:
    s = ShapePartition(tuple(data["shape"]), data["n"])
    return FilledTableau(
        s,
        tuple(data["row_labels"]),
        frozenset((col, label) for col, label in data["dots"]),
    )
