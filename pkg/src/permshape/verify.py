"""
Umbrella verification suites: every structural claim of the library gets an
exhaustive cross-check at small n, each suite timed and reporting its first
counterexamples.  The heavy per-permutation suites can split the
lexicographic enumeration across worker processes; partial results merge
associatively, so parallel and single-threaded runs agree exactly.
"""
from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from multiprocessing import get_context

from . import oracle
from .bruhat import (
    bruhat_covers,
    bruhat_leq,
    rank_table,
    shape_contains,
    upper_covers,
    verify_poset_equivalence,
)
from .genfun import (
    lbsum_polynomial,
    moments,
    parity_table,
    q_catalan,
    q_catalan_alt,
    quad_polynomial,
    tangent_numbers,
    verify_series_identities,
)
from .permutations import (
    Permutation,
    contains_132,
    contains_231,
    count_barred_132_word,
    count_pattern_word,
    decreasing_tree_word,
    descent_positions,
    inversion_count,
    left_borders,
    lr_maxima_count,
    right_borders,
    standardize,
    stat_vector,
)
from .shapes import (
    ShapePartition,
    borders_from_shape,
    count_permutations_with_shape,
    dyck_word,
    first_return,
    path_from_shape,
    path_shape_parts,
    rectangle_decomposition,
    shape_from_path,
    shape_parts,
    valleys,
)
from .tableaux import (
    bijection_132_to_231,
    count_132_from_tableau,
    count_231_from_tableau,
    decode_tableau,
    encode_tableau,
    max_filling,
    min_filling,
)

__all__ = ["SUITE_NAMES", "SuiteResult", "run_suites", "run_suite", "report_to_json"]

SUITE_NAMES = (
    "stats",
    "cp-pattern",
    "shapes",
    "count",
    "tableau",
    "bijection",
    "poset",
    "parity",
    "genfun",
    "series",
)


@dataclass
class SuiteResult:
    name: str
    max_n: int
    passed: bool = True
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def fail(self, message: str) -> None:
        self.passed = False
        if len(self.failures) < 8:
            self.failures.append(message)

    def require(self, condition: bool, message: str) -> bool:
        """Count one check; record the message when it fails."""
        self.checks += 1
        if not condition:
            self.fail(message)
        return condition


def _catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------------------
# stats: statistics of the path-derived shape match the permutation, border
# laws hold, and decreasing trees are wired to the border numbers.
# ---------------------------------------------------------------------------


def _stats_check_word(word: tuple[int, ...]) -> str | None:
    n = len(word)
    parts = path_shape_parts(dyck_word(word))
    descents = descent_positions(word)
    nonzero = [v for v in parts if v]
    if len(set(nonzero)) != len(descents):
        return f"distinct nonzero parts != des at {word}"
    if len(nonzero) != n - lr_maxima_count(word):
        return f"nonzero parts != n - lrmax at {word}"
    if (nonzero[0] if nonzero else 0) != (descents[-1] if descents else 0):
        return f"largest part != last descent at {word}"
    if sum(set(nonzero)) != sum(descents):
        return f"sum of distinct parts != maj at {word}"
    a = left_borders(word)
    if sum(parts) != sum(a):
        return f"area != border sum at {word}"
    if {v for v in a if v} != set(descents):
        return f"nonzero borders != descent set at {word}"
    rb = right_borders(word)
    if tuple(n + 1 - rb[n - 1 - t] for t in range(n)) != left_borders(word[::-1]):
        return f"right-border reflection law fails at {word}"
    return None


def _stats_range_worker(args: tuple[int, int, int]) -> tuple[int, str | None]:
    n, lo, hi = args
    checks = 0
    for word in oracle.permutation_range(n, lo, hi):
        checks += 1
        bad = _stats_check_word(word)
        if bad is not None:
            return checks, bad
    return checks, None


def _tree_parent_map(word: tuple[int, ...]) -> dict[int, tuple[int, str]]:
    """value -> (parent value, side) over the decreasing tree of the word."""
    out: dict[int, tuple[int, str]] = {}

    def walk(node, parent: int | None, side: str) -> None:
        if node is None:
            return
        if parent is not None:
            out[node.value] = (parent, side)
        walk(node.left, node.value, "left")
        walk(node.right, node.value, "right")

    walk(decreasing_tree_word(word), None, "")
    return out


def _run_ranged(
    result: SuiteResult, n: int, workers: int, worker
) -> None:
    total = factorial(n)
    if workers > 1 and n >= 7:
        ranges = oracle.split_ranges(total, workers)
        with get_context("fork").Pool(workers) as pool:
            parts = pool.map(worker, [(n, lo, hi) for lo, hi in ranges])
        result.checks += sum(c for c, _ in parts)
        for _, bad in parts:
            if bad is not None:
                result.fail(bad)
    else:
        checks, bad = worker((n, 0, total))
        result.checks += checks
        if bad is not None:
            result.fail(bad)


def suite_stats(max_n: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("stats", max_n)
    for n in range(0, min(max_n, 9) + 1):
        _run_ranged(result, n, workers, _stats_range_worker)
        if not result.passed:
            return result
    for n in range(1, min(max_n, 8) + 1):
        for word in oracle.enumerate_sn(n):
            tree = decreasing_tree_word(word)
            if not result.require(
                tree.inorder_values() == word,
                f"in-order traversal broken at {word}",
            ):
                return result
            parents = _tree_parent_map(word)
            a = left_borders(word)
            b = right_borders(word)
            ok = True
            for pos, value in enumerate(word, start=1):
                if value not in parents:
                    continue
                parent_value, side = parents[value]
                # A left child hangs below its right border position, a right
                # child below its left border position.
                expected = b[pos - 1] if side == "left" else a[pos - 1]
                if not (1 <= expected <= n) or word[expected - 1] != parent_value:
                    ok = False
                    break
            if not result.require(ok, f"tree parent law fails at {word}"):
                return result
    return result


# ---------------------------------------------------------------------------
# cp-pattern: border sum = inversions + uninterrupted 1-3-2 occurrences.
# ---------------------------------------------------------------------------


def _cp_range_worker(args: tuple[int, int, int]) -> tuple[int, str | None]:
    n, lo, hi = args
    checks = 0
    for word in oracle.permutation_range(n, lo, hi):
        checks += 1
        if sum(left_borders(word)) != inversion_count(word) + count_barred_132_word(
            word
        ):
            return checks, f"border-sum identity fails at {word}"
    return checks, None


def _naive_barred_132(word: tuple[int, ...]) -> int:
    n = len(word)
    count = 0
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                if word[a] < word[c] < word[b] and all(
                    word[d] <= word[b] for d in range(a + 1, c)
                ):
                    count += 1
    return count


def suite_cp_pattern(max_n: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("cp-pattern", max_n)
    for n in range(0, min(max_n, 9) + 1):
        _run_ranged(result, n, workers, _cp_range_worker)
        if not result.passed:
            return result
    for n in range(0, min(max_n, 6) + 1):
        for word in oracle.enumerate_sn(n):
            if not result.require(
                count_barred_132_word(word) == _naive_barred_132(word),
                f"windowed and naive barred counts differ at {word}",
            ):
                return result
    for n in range(0, min(max_n, 9) + 1):
        for word in oracle.avoiders_132(n):
            if not result.require(
                sum(left_borders(word)) == inversion_count(word),
                f"border sum != inversions for 1-3-2-avoider {word}",
            ):
                return result
    return result


# ---------------------------------------------------------------------------
# shapes: round trips between paths, shapes and borders; valley data; the
# restriction to 2-3-1-avoiders is a bijection onto Dyck words.
# ---------------------------------------------------------------------------


def suite_shapes(max_n: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("shapes", max_n)
    for n in range(0, min(max_n, 9) + 1):
        for word in oracle.enumerate_sn(n):
            path = dyck_word(word)
            parts = shape_from_path(path).parts
            if not result.require(
                parts == shape_parts(word),
                f"path shape != border shape at {word}",
            ):
                return result
            s = ShapePartition(parts, n)
            if not result.require(
                borders_from_shape(s) == left_borders(word),
                f"border reconstruction fails at {word}",
            ):
                return result
            descents = descent_positions(word)
            if not result.require(
                valleys(path) == tuple(2 * d for d in descents),
                f"valleys != doubled descents at {word}",
            ):
                return result
            if n:
                if not result.require(
                    first_return(path) == 2 * (word.index(n) + 1),
                    f"first return != twice the max position at {word}",
                ):
                    return result
        words = {dyck_word(w) for w in oracle.avoiders_231(n)}
        all_words = {path_from_shape(s) for s in oracle.all_shapes(n)}
        if not result.require(
            len(words) == _catalan(n) and words == all_words,
            f"paths of 2-3-1-avoiders are not all Dyck words at n={n}",
        ):
            return result
    return result


# ---------------------------------------------------------------------------
# count: census versus the binomial product, and exact tiling.
# ---------------------------------------------------------------------------


def suite_count(max_n: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("count", max_n)
    for n in range(0, min(max_n, 8) + 1):
        census = oracle.shape_census(n, workers=workers)
        if not result.require(
            sum(census.values()) == factorial(n),
            f"census of S_{n} does not sum to {n}!",
        ):
            return result
        expected_shapes = _catalan(n) if n else 1
        if not result.require(
            len(census) == expected_shapes,
            f"census of S_{n} has {len(census)} shapes, expected {expected_shapes}",
        ):
            return result
        for key, count in sorted(census.items()):
            s = ShapePartition.from_text(key, n=n)
            if not result.require(
                count_permutations_with_shape(s) == count,
                f"binomial product != census count for shape {key!r} (n={n})",
            ):
                return result
            decomposition = rectangle_decomposition(s)
            cells = decomposition.cell_assignment()
            corners = sum(
                1
                for j, v in enumerate(s.parts)
                if v and (j + 1 == len(s.parts) or s.parts[j + 1] < v)
            )
            if not result.require(
                len(cells) == s.area
                and len(decomposition.rectangles) == corners,
                f"rectangles do not tile shape {key!r} one per corner",
            ):
                return result
    return result


# ---------------------------------------------------------------------------
# tableau: encode/decode round trip, injectivity, extreme fillings, pattern
# counts read off the filling.
# ---------------------------------------------------------------------------


def suite_tableau(max_n: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("tableau", max_n)
    for n in range(0, min(max_n, 9) + 1):
        seen: set[tuple] = set()
        collect = n <= min(max_n, 8)
        for word in oracle.enumerate_sn(n):
            p = Permutation(word)
            t = encode_tableau(p)
            if not result.require(
                decode_tableau(t).entries == word,
                f"round trip broken at {word}",
            ):
                return result
            if collect:
                seen.add((t.shape.parts, t.dots))
        if collect:
            if not result.require(
                len(seen) == factorial(n),
                f"encode is not injective on S_{n}",
            ):
                return result
    for n in range(0, min(max_n, 9) + 1):
        for s in oracle.all_shapes(n):
            low = decode_tableau(min_filling(s))
            high = decode_tableau(max_filling(s))
            if not result.require(
                not contains_231(low.entries),
                f"minimal filling of {s} decodes to a 2-3-1 container {low}",
            ):
                return result
            if not result.require(
                not contains_132(high.entries),
                f"full filling of {s} decodes to a 1-3-2 container {high}",
            ):
                return result
            if not result.require(
                shape_parts(low.entries) == s.parts
                and shape_parts(high.entries) == s.parts,
                f"extreme fillings of {s} do not preserve the shape",
            ):
                return result
    for n in range(0, min(max_n, 8) + 1):
        for word in oracle.enumerate_sn(n):
            t = encode_tableau(Permutation(word))
            if not result.require(
                count_132_from_tableau(t) == count_pattern_word(word, (1, 3, 2)),
                f"tableau 1-3-2 count wrong at {word}",
            ):
                return result
            if not result.require(
                count_231_from_tableau(t) == count_pattern_word(word, (2, 3, 1)),
                f"tableau 2-3-1 count wrong at {word}",
            ):
                return result
    return result


# ---------------------------------------------------------------------------
# bijection: the minimal-filling map is a statistics-preserving bijection
# from 1-3-2-avoiders onto 2-3-1-avoiders.
# ---------------------------------------------------------------------------


def suite_bijection(max_n: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("bijection", max_n)
    for n in range(0, min(max_n, 10) + 1):
        image: set[tuple[int, ...]] = set()
        for word in oracle.avoiders_132(n):
            target = bijection_132_to_231(Permutation(word))
            if not result.require(
                not contains_231(target.entries),
                f"image {target} of {word} contains 2-3-1",
            ):
                return result
            sv, tv = stat_vector(word), stat_vector(target.entries)
            if not result.require(
                (sv.des, sv.maj, sv.lrmax, sv.maxdes, sv.lbsum)
                == (tv.des, tv.maj, tv.lrmax, tv.maxdes, tv.lbsum),
                f"statistics not preserved on {word} -> {target}",
            ):
                return result
            image.add(target.entries)
        if not result.require(
            len(image) == _catalan(n),
            f"image size {len(image)} != Catalan({n}) = {_catalan(n)}",
        ):
            return result
    return result


# ---------------------------------------------------------------------------
# poset: Bruhat order sanity, covers, and the equivalence with containment.
# ---------------------------------------------------------------------------


def _closure_reach(n: int) -> dict[tuple[int, ...], frozenset[tuple[int, ...]]]:
    """word -> set of words weakly above it in the cover closure."""
    by_inv: dict[int, list[tuple[int, ...]]] = {}
    for word in oracle.enumerate_sn(n):
        by_inv.setdefault(inversion_count(word), []).append(word)
    reach: dict[tuple[int, ...], frozenset[tuple[int, ...]]] = {}
    for inv in sorted(by_inv, reverse=True):
        for word in by_inv[inv]:
            acc: set[tuple[int, ...]] = {word}
            for cover in upper_covers(word):
                acc |= reach[cover]
            reach[word] = frozenset(acc)
    return reach


def suite_poset(max_n: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("poset", max_n)
    # Partial-order axioms via the dominance test.
    for n in range(1, min(max_n, 5) + 1):
        words = list(oracle.enumerate_sn(n))
        tables = {w: rank_table(w) for w in words}
        up = {
            w: frozenset(
                v
                for v in words
                if all(x >= y for x, y in zip(tables[w], tables[v]))
            )
            for w in words
        }
        for w in words:
            if not result.require(w in up[w], f"reflexivity fails at {w}"):
                return result
            for v in up[w]:
                if v != w and not result.require(
                    w not in up[v], f"antisymmetry fails at {w}, {v}"
                ):
                    return result
                if not result.require(
                    up[v] <= up[w], f"transitivity fails at {w}, {v}"
                ):
                    return result
    # Dominance equals the transitive closure of covers.
    for n in range(1, min(max_n, 6) + 1):
        reach = _closure_reach(n)
        words = list(oracle.enumerate_sn(n))
        tables = {w: rank_table(w) for w in words}
        for w in words:
            above = reach[w]
            for v in words:
                dominance = all(x >= y for x, y in zip(tables[w], tables[v]))
                if not result.require(
                    dominance == (v in above),
                    f"dominance and cover closure disagree on {w} <= {v}",
                ):
                    return result
    # Containment <=> strict order on 1-3-2-avoiders.
    for n in range(2, min(max_n, 7) + 1):
        report = verify_poset_equivalence(n, workers=workers)
        result.checks += report.pairs_checked
        if not result.require(
            report.equivalence_holds,
            f"containment/order equivalence fails at n={n}: "
            f"{report.counterexamples[:1]}",
        ):
            return result
    # Covers between avoiders add exactly one corner cell to the shape.
    for n in range(2, min(max_n, 7) + 1):
        avoiders = {w for w in oracle.avoiders_132(n)}
        for word in avoiders:
            sp = shape_parts(word)
            for cover in upper_covers(word):
                if cover not in avoiders:
                    continue
                sq = shape_parts(cover)
                diffs = [i for i in range(n - 1) if sp[i] != sq[i]]
                if not result.require(
                    len(diffs) == 1 and sq[diffs[0]] == sp[diffs[0]] + 1,
                    f"cover {word} -> {cover} does not add one cell",
                ):
                    return result
    # The two fixed reference pairs behave as documented.
    if max_n >= 4:
        p1243 = Permutation((1, 2, 4, 3))
        p1423 = Permutation((1, 4, 2, 3))
        result.require(
            bruhat_leq(p1243, p1423)
            and bruhat_covers(p1243, p1423)
            and not shape_contains(
                ShapePartition(shape_parts(p1243.entries), 4),
                ShapePartition(shape_parts(p1423.entries), 4),
            )
            and not shape_contains(
                ShapePartition(shape_parts(p1423.entries), 4),
                ShapePartition(shape_parts(p1243.entries), 4),
            ),
            "the comparable pair with incomparable shapes misbehaves",
        )
        p1342 = Permutation((1, 3, 4, 2))
        p2143 = Permutation((2, 1, 4, 3))
        result.require(
            shape_contains(
                ShapePartition(shape_parts(p1342.entries), 4),
                ShapePartition(shape_parts(p2143.entries), 4),
                strict=True,
            )
            and not bruhat_leq(p1342, p2143)
            and not bruhat_leq(p2143, p1342),
            "the contained pair with incomparable order misbehaves",
        )
    return result


# ---------------------------------------------------------------------------
# parity: three independent routes to the even/odd imbalance.
# ---------------------------------------------------------------------------


def suite_parity(max_n: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("parity", max_n)
    table = parity_table(20)
    for n in range(0, min(max_n, 8) + 1):
        dist = oracle.distribution(n, "lbsum", workers=workers)
        even, odd = dist.parity_split()
        if not result.require(
            (even, odd) == (table.even[n], table.odd[n]),
            f"enumerated parity split disagrees with the recursion at n={n}",
        ):
            return result
        if n % 2 == 0 and n >= 2:
            result.require(even == odd, f"even/odd counts differ at even n={n}")
    tangents = tangent_numbers(7)
    for k, t in enumerate(tangents, start=1):
        result.require(
            t == table.delta[2 * k - 1],
            f"tangent number {k} does not match the imbalance",
        )
    for n in range(0, 21):
        result.require(
            lbsum_polynomial(n).evaluate(-1) == table.delta[n],
            f"F_{n}(-1) disagrees with the imbalance",
        )
    return result


# ---------------------------------------------------------------------------
# genfun: polynomial identities against enumeration and between themselves.
# ---------------------------------------------------------------------------


def suite_genfun(max_n: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("genfun", max_n)
    for n in range(0, min(max_n, 9) + 1):
        dist = oracle.distribution(n, "lbsum", workers=workers)
        if not result.require(
            lbsum_polynomial(n).to_counts() == dist.counts,
            f"F_{n} disagrees with the enumerated distribution",
        ):
            return result
    for n in range(0, 21):
        result.require(
            lbsum_polynomial(n).evaluate(1) == factorial(n),
            f"F_{n}(1) != {n}!",
        )
    for n in range(0, 13):
        result.require(
            quad_polynomial(n).marginal("x") == lbsum_polynomial(n),
            f"G_{n}(x,1,1,1) != F_{n}",
        )
        f = lbsum_polynomial(n)
        result.require(
            f.degree == comb(n, 2) and f.coefficient(comb(n, 2)) == 1,
            f"degree bound fails for F_{n}",
        )
    for n in range(0, min(max_n, 8) + 1):
        truth: Counter = Counter()
        for word in oracle.enumerate_sn(n):
            descents = descent_positions(word)
            truth[
                (
                    sum(left_borders(word)),
                    len(descents),
                    descents[-1] if descents else 0,
                    n - lr_maxima_count(word),
                )
            ] += 1
        if not result.require(
            dict(quad_polynomial(n).terms()) == dict(truth),
            f"G_{n} disagrees with the enumerated joint distribution",
        ):
            return result
    for n in range(0, min(max_n, 10) + 1):
        counts: dict[int, int] = {}
        for word in oracle.avoiders_132(n):
            v = inversion_count(word)
            counts[v] = counts.get(v, 0) + 1
        if not result.require(
            q_catalan(n).to_counts() == counts,
            f"q-Catalan {n} disagrees with inversions over the avoiders",
        ):
            return result
    for n in range(0, 16):
        result.require(
            q_catalan_alt(n) == q_catalan(n).reversed_on_degree(comb(n, 2)),
            f"the two q-Catalan conventions are not degree-reversals at n={n}",
        )
    for n in range(0, 21):
        result.require(
            q_catalan(n).evaluate(1) == _catalan(n),
            f"q-Catalan {n} does not sum to the Catalan number",
        )
    for n in range(2, 51):
        moments(n)  # raises when the two routes disagree
        result.checks += 1
    for n in range(2, min(max_n, 8) + 1):
        dist = oracle.distribution(n, "lbsum")
        total = factorial(n)
        mean = Fraction(sum(v * c for v, c in dist.counts.items()), total)
        second = Fraction(sum(v * v * c for v, c in dist.counts.items()), total)
        report = moments(n)
        result.require(
            report.mean == mean and report.variance == second - mean * mean,
            f"moments disagree with enumeration at n={n}",
        )
    # The splitting law behind every recursion, pointwise.
    for n in range(1, min(max_n, 9) + 1):
        for word in oracle.enumerate_sn(n):
            k = word.index(n) + 1
            left = standardize(word[: k - 1]).entries if k > 1 else ()
            right = standardize(word[k:]).entries if k < n else ()
            if not result.require(
                sum(left_borders(word))
                == sum(left_borders(left))
                + sum(left_borders(right))
                + k * (n - k),
                f"splitting law fails at {word}",
            ):
                return result
    return result


def suite_series(max_n: int, workers: int = 1, order: int = 8) -> SuiteResult:
    result = SuiteResult("series", order)
    report = verify_series_identities(order)
    for k, ok in enumerate(report.equation_status):
        result.require(
            ok,
            f"functional equation residual at z^{k}: {report.failing_residual}",
        )
    for k, ok in enumerate(report.tanh_status):
        result.require(ok, f"tanh specialization mismatch at z^{k}")
    return result


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

_SUITES = {
    "stats": suite_stats,
    "cp-pattern": suite_cp_pattern,
    "shapes": suite_shapes,
    "count": suite_count,
    "tableau": suite_tableau,
    "bijection": suite_bijection,
    "poset": suite_poset,
    "parity": suite_parity,
    "genfun": suite_genfun,
    "series": suite_series,
}


def run_suite(name: str, max_n: int, workers: int = 1, order: int = 8) -> SuiteResult:
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}")
    started = time.perf_counter()
    if name == "series":
        result = suite_series(max_n, workers, order=order)
    else:
        result = _SUITES[name](max_n, workers)
    result.seconds = time.perf_counter() - started
    return result


def run_suites(
    selection, max_n: int, workers: int = 1, order: int = 8
) -> list[SuiteResult]:
    names: list[str] = []
    for item in selection:
        if item == "all":
            names.extend(SUITE_NAMES)
        elif item in SUITE_NAMES:
            names.append(item)
        else:
            raise ValueError(f"unknown suite {item!r}")
    deduped = list(dict.fromkeys(names))
    return [run_suite(name, max_n, workers, order) for name in deduped]


def report_to_json(results: list[SuiteResult]) -> str:
    return json.dumps(
        {
            "passed": all(r.passed for r in results),
            "suites": [
                {
                    "name": r.name,
                    "max_n": r.max_n,
                    "passed": r.passed,
                    "checks": r.checks,
                    "failures": r.failures,
                    "seconds": round(r.seconds, 3),
                }
                for r in results
            ],
        },
        sort_keys=True,
    )
