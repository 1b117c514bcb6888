"""
The recursive map from permutations to Dyck words, the staircase shape it
induces, and counting of permutations per shape.

A Dyck word is a string over the alphabet ``u`` / ``r`` with equally many of
each letter and no prefix holding more ``r`` than ``u``.  Drawn against the
main diagonal of an n x n grid (``u`` = one step up, ``r`` = one step right),
the region above the word and inside the staircase is a Young diagram; its
row lengths, padded with zeros to exactly n - 1 parts, form the shape of
every preimage permutation.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod
from typing import Iterator, Sequence

from .permutations import Permutation, left_borders

__all__ = [
    "UP",
    "RIGHT",
    "InvalidDyckWordError",
    "ShapePartition",
    "Rectangle",
    "RectangleDecomposition",
    "dyck_word",
    "dyck_path",
    "is_dyck_word",
    "shape_parts",
    "shape",
    "shape_from_path",
    "path_from_shape",
    "borders_from_shape",
    "rectangle_decomposition",
    "count_permutations_with_shape",
    "valleys",
    "first_return",
]

UP = "u"
RIGHT = "r"


class InvalidDyckWordError(ValueError):
    """Raised for words that are not balanced or leave the staircase."""


def dyck_word(word: Sequence[int]) -> str:
    """
    Map a permutation word to its Dyck word by recursive splitting at the
    maximum: the empty word maps to "", and L m R maps to
    "u" + dyck(L) + "r" + dyck(R).

    >>> dyck_word((5, 3, 1, 4, 8, 2, 7, 6))
    'uuruururrruurrur'
    >>> dyck_word((1, 2, 3))
    'uuurrr'
    """
    out: list[str] = []
    values = tuple(word)

    def emit(lo: int, hi: int) -> None:
        if lo >= hi:
            return
        k = lo
        for t in range(lo + 1, hi):
            if values[t] > values[k]:
                k = t
        out.append(UP)
        emit(lo, k)
        out.append(RIGHT)
        emit(k + 1, hi)

    emit(0, len(values))
    return "".join(out)


def dyck_path(p: Permutation) -> str:
    return dyck_word(p.entries)


def is_dyck_word(word: str) -> bool:
    height = 0
    for step in word:
        if step == UP:
            height += 1
        elif step == RIGHT:
            height -= 1
            if height < 0:
                return False
        else:
            return False
    return height == 0


def _require_dyck(word: str) -> None:
    if not is_dyck_word(word):
        raise InvalidDyckWordError(f"not a Dyck word: {word!r}")


@dataclass(frozen=True)
class ShapePartition:
    """
    A partition fitting inside the staircase (n-1, n-2, ..., 1), stored with
    exactly n - 1 parts.  Trailing zeros are kept so that n stays recoverable.
    """

    parts: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        expected = max(self.n - 1, 0)
        if len(self.parts) != expected:
            raise ValueError(
                f"a shape for n={self.n} needs exactly {expected} parts, "
                f"got {len(self.parts)}"
            )
        prev = self.n - 1
        for j, part in enumerate(self.parts):
            if part < 0 or part > prev or part > self.n - 1 - j:
                raise ValueError(
                    f"parts must decrease weakly and fit the staircase; "
                    f"offending part {part} at index {j}"
                )
            prev = part

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "ShapePartition":
        """Parse the comma-separated form, e.g. ``"7,5,5,2,1,1,0"``."""
        stripped = text.strip()
        if not stripped:
            parts: tuple[int, ...] = ()
        else:
            parts = tuple(int(t) for t in stripped.split(","))
        if n is None:
            n = len(parts) + 1
        return cls(parts, n)

    def to_text(self) -> str:
        return ",".join(str(v) for v in self.parts)

    @property
    def area(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    def nonzero_parts(self) -> tuple[int, ...]:
        return tuple(v for v in self.parts if v > 0)

    def distinct_nonzero(self) -> tuple[int, ...]:
        return tuple(sorted({v for v in self.parts if v > 0}, reverse=True))

    def __str__(self) -> str:
        return self.to_text()


def shape_parts(word: Sequence[int]) -> tuple[int, ...]:
    """Left border numbers a_2..a_n sorted decreasingly (tuple-level)."""
    return tuple(sorted(left_borders(word)[1:], reverse=True))


def shape(p: Permutation) -> ShapePartition:
    """
    The shape of a permutation: its left border numbers a_2..a_n in
    decreasing order.

    >>> shape(Permutation((5, 3, 1, 4, 8, 2, 7, 6))).parts
    (7, 5, 5, 2, 1, 1, 0)
    """
    return ShapePartition(shape_parts(p.entries), p.n)


def path_shape_parts(word: str) -> tuple[int, ...]:
    """
    Parts of the region above a Dyck word, without validation.  The j-th up
    step sits at horizontal distance x_j = number of preceding right steps;
    the parts are (x_n, ..., x_2).
    """
    xs: list[int] = []
    rights = 0
    for step in word:
        if step == UP:
            xs.append(rights)
        else:
            rights += 1
    return tuple(reversed(xs[1:]))


def shape_from_path(word: str) -> ShapePartition:
    """The cells above a Dyck word inside the staircase, read as a partition."""
    _require_dyck(word)
    return ShapePartition(path_shape_parts(word), word.count(UP))


def path_from_shape(s: ShapePartition) -> str:
    """The unique Dyck word whose diagram above the diagonal is ``s``."""
    if s.n == 0:
        return ""
    xs = [0] + list(reversed(s.parts))  # x_1..x_n
    out: list[str] = []
    rights = 0
    for x in xs:
        out.append(RIGHT * (x - rights))
        rights = x
        out.append(UP)
    out.append(RIGHT * (s.n - rights))
    return "".join(out)


def borders_from_shape(s: ShapePartition) -> tuple[int, ...]:
    """
    Recover the left border numbers a_1..a_n in their original order.
    a_1 = 0, a_{v+1} = v for every distinct nonzero part v, and the remaining
    parts fill the open positions from left to right, each taking the
    greatest still-unused part smaller than the position.
    """
    n = s.n
    if n == 0:
        return ()
    a: list[int | None] = [None] * (n + 1)
    a[1] = 0
    remaining = sorted(s.parts, reverse=True)
    for v in sorted(set(s.parts), reverse=True):
        if v > 0:
            a[v + 1] = v
            remaining.remove(v)
    for j in range(2, n + 1):
        if a[j] is None:
            for idx, v in enumerate(remaining):
                if v < j:
                    a[j] = remaining.pop(idx)
                    break
            else:
                raise ValueError(f"shape {s} admits no border sequence")
    return tuple(a[1:])  # type: ignore[arg-type]


@dataclass(frozen=True)
class Rectangle:
    """
    One tile of the corner decomposition.  ``column`` is the (1-based) column
    of the bottom-right corner cell and ``corner_row`` its row counted from
    the top of the diagram; the tile spans ``width`` columns to the left and
    ``height`` rows upward.
    """

    column: int
    width: int
    height: int
    corner_row: int

    def cells(self) -> Iterator[tuple[int, int]]:
        for row in range(self.corner_row - self.height + 1, self.corner_row + 1):
            for col in range(self.column - self.width + 1, self.column + 1):
                yield (row, col)


@dataclass(frozen=True)
class RectangleDecomposition:
    shape: ShapePartition
    rectangles: tuple[Rectangle, ...]

    def cell_assignment(self) -> dict[tuple[int, int], int]:
        """Map each cell (row from top, column) to its rectangle's index."""
        assignment: dict[tuple[int, int], int] = {}
        for idx, rect in enumerate(self.rectangles):
            for cell in rect.cells():
                if cell in assignment:
                    raise ValueError(f"rectangles overlap at {cell}")
                assignment[cell] = idx
        return assignment


def rectangle_decomposition(s: ShapePartition) -> RectangleDecomposition:
    """
    Tile the diagram with one rectangle per corner.  The cut happens at the
    corner whose reverse hook (1 + cells above + cells to the left) is
    maximal, preferring the leftmost on ties; the rectangle of all cells
    weakly above and to the left of it is removed, and the subshapes below
    it and to its right are tiled recursively (below first).
    """
    rects: list[Rectangle] = []

    def cut(rows: list[tuple[int, int]], col_offset: int) -> None:
        # rows: (absolute row index from top, remaining length), lengths
        # weakly decreasing and positive.
        if not rows:
            return
        best_i = -1
        best_hook = -1
        for i in range(1, len(rows) + 1):
            length = rows[i - 1][1]
            is_corner = i == len(rows) or rows[i][1] < length
            if not is_corner:
                continue
            hook = i + length - 1
            # Later corners have strictly smaller lengths, so on equal hook
            # the later corner is the leftmost one.
            if hook >= best_hook:
                best_hook = hook
                best_i = i
        i = best_i
        width = rows[i - 1][1]
        rects.append(
            Rectangle(
                column=col_offset + width,
                width=width,
                height=i,
                corner_row=rows[i - 1][0],
            )
        )
        cut(rows[i:], col_offset)
        shrunk = [(r, length - width) for r, length in rows[:i] if length > width]
        cut(shrunk, col_offset + width)

    nonzero = [(idx + 1, v) for idx, v in enumerate(s.parts) if v > 0]
    cut(nonzero, 0)
    return RectangleDecomposition(s, tuple(rects))


def count_permutations_with_shape(s: ShapePartition) -> int:
    """
    The number of permutations of {1..n} having shape ``s``: the product of
    binomial(w + h - 1, w - 1) over the rectangles of the decomposition.

    >>> count_permutations_with_shape(ShapePartition.from_text("7,5,5,2,1,1,0"))
    70
    """
    decomposition = rectangle_decomposition(s)
    return prod(
        comb(rect.width + rect.height - 1, rect.width - 1)
        for rect in decomposition.rectangles
    )


def valleys(word: str) -> tuple[int, ...]:
    """
    Diagonal coordinates of the valleys (factors "ru") of a Dyck word.  The
    coordinate is twice the number of right steps up to the valley; halved,
    these are the descent positions of every preimage permutation.

    >>> valleys("uuruururrruurrur")
    (2, 4, 10, 14)
    """
    _require_dyck(word)
    coords: list[int] = []
    rights = 0
    for i, step in enumerate(word):
        if step == RIGHT:
            rights += 1
            if i + 1 < len(word) and word[i + 1] == UP:
                coords.append(2 * rights)
    return tuple(coords)


def first_return(word: str) -> int:
    """
    The step count at which a nonempty Dyck word first returns to the
    diagonal; equals 2k where k is the position of n in any preimage.
    """
    _require_dyck(word)
    if not word:
        raise ValueError("the empty path has no first return")
    height = 0
    for i, step in enumerate(word, start=1):
        height += 1 if step == UP else -1
        if height == 0:
            return i
    raise AssertionError("unreachable for a valid Dyck word")
