"""
Deliberately naive reference implementations used only by the tests.

Everything here follows the raw definitions (full scans, triple loops,
closures) with no shortcuts, so the production code is checked against an
independent route.
"""
from __future__ import annotations

import itertools
from collections import Counter


def naive_left_borders(word):
    out = []
    for i in range(len(word)):
        a = 0
        for j in range(i):
            if word[j] > word[i]:
                a = j + 1
        out.append(a)
    return tuple(out)


def naive_right_borders(word):
    n = len(word)
    out = []
    for i in range(n):
        b = n + 1
        for j in range(i + 1, n):
            if word[j] > word[i]:
                b = j + 1
                break
        out.append(b)
    return tuple(out)


def order_isomorphic(a, b):
    return all(
        (a[i] < a[j]) == (b[i] < b[j])
        for i in range(len(a))
        for j in range(i + 1, len(a))
    )


def naive_pattern_count(word, pattern):
    k = len(pattern)
    return sum(
        1
        for positions in itertools.combinations(range(len(word)), k)
        if order_isomorphic([word[p] for p in positions], pattern)
    )


def naive_barred_132(word):
    """Triple scan with the explicit window-maximum side condition."""
    n = len(word)
    count = 0
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                if not word[a] < word[c] < word[b]:
                    continue
                if all(word[d] <= word[b] for d in range(a + 1, c)):
                    count += 1
    return count


def naive_statistic_distribution(n, fn):
    counts = Counter()
    for word in itertools.permutations(range(1, n + 1)):
        counts[fn(word)] += 1
    return dict(counts)


def naive_avoiders(n, pattern):
    return [
        word
        for word in itertools.permutations(range(1, n + 1))
        if naive_pattern_count(word, pattern) == 0
    ]


def naive_shape_census(n, shape_fn):
    counts = Counter()
    for word in itertools.permutations(range(1, n + 1)):
        counts[shape_fn(word)] += 1
    return dict(counts)


def bruhat_leq_by_closure(p, q, upper_covers_fn):
    """Reachability from p to q in the cover graph, depth-first."""
    if p == q:
        return True
    seen = {p}
    stack = [p]
    while stack:
        current = stack.pop()
        for cover in upper_covers_fn(current):
            if cover == q:
                return True
            if cover not in seen:
                seen.add(cover)
                stack.append(cover)
    return False
