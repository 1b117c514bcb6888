"""
Permutations in one-line notation, their border numbers and classical statistics.

A permutation of {1, ..., n} is stored as the tuple of its values
(pi_1, ..., pi_n).  Positions are 1-based throughout: descent positions,
border numbers and tableau coordinates all refer to 1-based positions,
matching the usual combinatorial conventions.

The module-level functions operate on plain value tuples; they are the hot
path for exhaustive enumeration.  The :class:`Permutation` wrapper adds
validation and convenience methods on top of them.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "InvalidPermutationError",
    "Permutation",
    "BorderProfile",
    "StatVector",
    "TreeNode",
    "parse_permutation",
    "standardize",
    "identity",
    "left_borders",
    "right_borders",
    "descent_positions",
    "inversion_count",
    "inversion_pairs",
    "lr_maxima_count",
    "stat_vector",
    "count_pattern_word",
    "count_barred_132_word",
    "contains_132",
    "contains_231",
    "avoids_word",
    "decreasing_tree_word",
    "is_permutation_word",
]


class InvalidPermutationError(ValueError):
    """Raised when a word is not a permutation of {1, ..., n}."""


def is_permutation_word(word: Sequence[int]) -> bool:
    """
    Check that ``word`` is a rearrangement of 1..n where n = len(word).

    >>> [is_permutation_word(w) for w in [(), (1,), (2, 1), (1, 1), (0, 1)]]
    [True, True, True, False, False]
    """
    n = len(word)
    if n == 0:
        return True
    seen = 0
    for v in word:
        if not isinstance(v, int) or not 1 <= v <= n:
            return False
        bit = 1 << v
        if seen & bit:
            return False
        seen |= bit
    return True


def _check_word(word: Sequence[int]) -> None:
    n = len(word)
    seen = set()
    for v in word:
        if not isinstance(v, int):
            raise InvalidPermutationError(f"non-integer value {v!r}")
        if not 1 <= v <= n:
            raise InvalidPermutationError(f"value {v} out of range 1..{n}")
        if v in seen:
            raise InvalidPermutationError(f"duplicate value {v}")
        seen.add(v)


@dataclass(frozen=True)
class StatVector:
    """The classical statistics of a permutation, computed together."""

    des: int
    maj: int
    lrmax: int
    maxdes: int
    lbsum: int
    inv: int
    descent_set: frozenset[int]


@dataclass(frozen=True)
class BorderProfile:
    """Left and right border numbers a_1..a_n and b_1..b_n."""

    left: tuple[int, ...]
    right: tuple[int, ...]


@dataclass(frozen=True)
class TreeNode:
    """A node of a decreasing binary tree; children carry smaller labels."""

    value: int
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    def inorder_values(self) -> tuple[int, ...]:
        out: list[int] = []
        stack: list[tuple[TreeNode | None, bool]] = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if node is None:
                continue
            if expanded:
                out.append(node.value)
            else:
                stack.append((node.right, False))
                stack.append((node, True))
                stack.append((node.left, False))
        return tuple(out)


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1, ..., n} in one-line (window) notation."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        _check_word(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.entries)

    def reverse(self) -> "Permutation":
        return Permutation(self.entries[::-1])

    def left_border_numbers(self) -> tuple[int, ...]:
        return left_borders(self.entries)

    def right_border_numbers(self) -> tuple[int, ...]:
        return right_borders(self.entries)

    def border_profile(self) -> BorderProfile:
        return BorderProfile(left_borders(self.entries), right_borders(self.entries))

    def stats(self) -> StatVector:
        return stat_vector(self.entries)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def parse_permutation(text: str) -> Permutation:
    """
    Parse one-line notation.  Accepts whitespace or comma separated integers,
    or a compact digit string such as "53148276" when every value is a single
    digit.

    >>> parse_permutation("53148276").entries
    (5, 3, 1, 4, 8, 2, 7, 6)
    >>> parse_permutation("3, 5, 2, 1, 4").entries
    (3, 5, 2, 1, 4)
    """
    stripped = text.strip()
    if not stripped:
        raise InvalidPermutationError("empty permutation text")
    if re.search(r"[,\s]", stripped):
        tokens = [t for t in re.split(r"[,\s]+", stripped) if t]
    elif stripped.isdigit():
        tokens = list(stripped)
    else:
        tokens = [stripped]
    values: list[int] = []
    for token in tokens:
        try:
            values.append(int(token))
        except ValueError:
            raise InvalidPermutationError(f"non-integer token {token!r}") from None
    n = len(values)
    seen = set()
    for token, v in zip(tokens, values):
        if not 1 <= v <= n:
            raise InvalidPermutationError(
                f"value {token!r} out of range for a permutation of 1..{n}"
            )
        if v in seen:
            raise InvalidPermutationError(f"duplicate value {token!r}")
        seen.add(v)
    return Permutation(tuple(values))


def standardize(word: Sequence[int]) -> Permutation:
    """
    Replace the i-th smallest value by i, keeping the relative order.

    >>> standardize((3, 5, 9, 4)).entries
    (1, 3, 4, 2)
    """
    values = tuple(word)
    if len(set(values)) != len(values):
        raise InvalidPermutationError("standardize requires distinct values")
    rank = {v: i for i, v in enumerate(sorted(values), start=1)}
    return Permutation(tuple(rank[v] for v in values))


def left_borders(word: Sequence[int]) -> tuple[int, ...]:
    """
    Left border numbers: a_i is the position of the rightmost element to the
    left of w_i that exceeds it, or 0 when w_i is a left-to-right maximum.

    >>> left_borders((5, 3, 1, 4, 8, 2, 7, 6))
    (0, 1, 2, 1, 0, 5, 5, 7)
    """
    res: list[int] = []
    stack: list[int] = []  # positions (1-based) with decreasing values
    for i, v in enumerate(word, start=1):
        while stack and word[stack[-1] - 1] < v:
            stack.pop()
        res.append(stack[-1] if stack else 0)
        stack.append(i)
    return tuple(res)


def right_borders(word: Sequence[int]) -> tuple[int, ...]:
    """
    Right border numbers: b_i is the smallest position j > i with w_j > w_i,
    or n + 1 when no later element is larger.

    >>> right_borders((5, 3, 1, 4, 8, 2, 7, 6))
    (5, 4, 4, 5, 9, 7, 9, 9)
    """
    n = len(word)
    res = [n + 1] * n
    stack: list[int] = []  # 0-based positions with decreasing values
    for i in range(n - 1, -1, -1):
        v = word[i]
        while stack and word[stack[-1]] < v:
            stack.pop()
        if stack:
            res[i] = stack[-1] + 1
        stack.append(i)
    return tuple(res)


def descent_positions(word: Sequence[int]) -> tuple[int, ...]:
    """Positions i (1-based) with w_i > w_{i+1}, in increasing order."""
    return tuple(i for i in range(1, len(word)) if word[i - 1] > word[i])


def inversion_count(word: Sequence[int]) -> int:
    n = len(word)
    return sum(1 for i in range(n) for j in range(i + 1, n) if word[i] > word[j])


def inversion_pairs(word: Sequence[int]) -> Iterator[tuple[int, int]]:
    """All inversions as 1-based position pairs (i, j) with i < j, w_i > w_j."""
    n = len(word)
    for i in range(n):
        for j in range(i + 1, n):
            if word[i] > word[j]:
                yield (i + 1, j + 1)


def lr_maxima_count(word: Sequence[int]) -> int:
    count = 0
    best = 0
    for v in word:
        if v > best:
            best = v
            count += 1
    return count


def stat_vector(word: Sequence[int]) -> StatVector:
    """All seven statistics of a word in one call."""
    descents = descent_positions(word)
    return StatVector(
        des=len(descents),
        maj=sum(descents),
        lrmax=lr_maxima_count(word),
        maxdes=descents[-1] if descents else 0,
        lbsum=sum(left_borders(word)),
        inv=inversion_count(word),
        descent_set=frozenset(descents),
    )


def count_pattern_word(word: Sequence[int], pattern: Sequence[int]) -> int:
    """
    Number of subsequences of ``word`` order-isomorphic to ``pattern``
    (a classical pattern: arbitrary gaps are allowed everywhere).
    Patterns of length 2 and 3 are supported.
    """
    n = len(word)
    if len(pattern) == 2:
        lo, hi = pattern
        if lo < hi:
            return sum(
                1 for i in range(n) for j in range(i + 1, n) if word[i] < word[j]
            )
        return inversion_count(word)
    if len(pattern) == 3:
        # Precompute the rank order of the pattern once.
        order = sorted(range(3), key=lambda t: pattern[t])
        count = 0
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    triple = (word[a], word[b], word[c])
                    if (
                        triple[order[0]] < triple[order[1]] < triple[order[2]]
                    ):
                        count += 1
        return count
    raise ValueError(f"unsupported pattern length {len(pattern)} (only 2 and 3)")


def count_barred_132_word(word: Sequence[int]) -> int:
    """
    Occurrences of 1-3-2 that no larger element interrupts: triples of
    positions a < b < c with w_a < w_c < w_b and no position d strictly
    between a and c carrying a value above w_b.  Counted per pair (a, c);
    the middle b is then forced to be the maximum of the enclosed window.
    """
    n = len(word)
    total = 0
    for a in range(n):
        va = word[a]
        window_max = 0
        for c in range(a + 1, n):
            vc = word[c]
            if va < vc < window_max:
                total += 1
            if vc > window_max:
                window_max = vc
    return total


def contains_132(word: Sequence[int]) -> bool:
    """Linear-time test for an occurrence of the classical pattern 1-3-2."""
    stack: list[int] = []
    third = 0
    for v in reversed(word):
        if v < third:
            return True
        while stack and stack[-1] < v:
            third = stack.pop()
        stack.append(v)
    return False


def contains_231(word: Sequence[int]) -> bool:
    """Linear-time test for an occurrence of the classical pattern 2-3-1."""
    return contains_132(tuple(word)[::-1])


def avoids_word(word: Sequence[int], pattern: Sequence[int]) -> bool:
    """True when ``word`` contains no occurrence of the length-3 pattern."""
    if len(pattern) != 3:
        raise ValueError("avoidance is defined here for length-3 patterns")
    pat = tuple(pattern)
    if pat == (1, 3, 2):
        return not contains_132(word)
    if pat == (2, 3, 1):
        return not contains_231(word)
    return count_pattern_word(word, pat) == 0


def decreasing_tree_word(word: Sequence[int]) -> TreeNode:
    """
    The decreasing binary tree of a nonempty word: the root is the maximum,
    and the left/right subtrees are built from the prefix/suffix around it.
    In-order traversal reproduces the word.
    """
    if not word:
        raise ValueError("the empty permutation has no decreasing tree")
    values = tuple(word)

    def build(lo: int, hi: int) -> TreeNode | None:
        if lo >= hi:
            return None
        k = lo
        for t in range(lo + 1, hi):
            if values[t] > values[k]:
                k = t
        return TreeNode(values[k], build(lo, k), build(k + 1, hi))

    root = build(0, len(values))
    assert root is not None
    return root


# -- Permutation-level wrappers ------------------------------------------------


def count_classical_pattern(p: Permutation, pattern: Permutation) -> int:
    """Occurrences of a classical pattern of length 2 or 3 in p."""
    return count_pattern_word(p.entries, pattern.entries)


def count_barred_132(p: Permutation) -> int:
    return count_barred_132_word(p.entries)


def avoids(p: Permutation, pattern: Permutation) -> bool:
    return avoids_word(p.entries, pattern.entries)


def decreasing_tree(p: Permutation) -> TreeNode:
    return decreasing_tree_word(p.entries)
