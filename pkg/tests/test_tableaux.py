import itertools
import json
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from permshape.oracle import all_shapes
from permshape.permutations import (
    Permutation,
    contains_132,
    contains_231,
    count_pattern_word,
)
from permshape.shapes import ShapePartition, shape_parts
from permshape.tableaux import (
    FilledTableau,
    InconsistentFillingError,
    bijection_132_to_231,
    count_132_from_tableau,
    count_231_from_tableau,
    decode_tableau,
    encode_tableau,
    is_valid_filling,
    max_filling,
    min_filling,
    row_labels_for,
    tableau_from_json,
    tableau_to_json,
)

from naive_oracles import naive_pattern_count

RUNNING = Permutation((5, 3, 1, 4, 8, 2, 7, 6))


def perms(max_n=7):
    return st.integers(0, max_n).flatmap(
        lambda n: st.permutations(tuple(range(1, n + 1)))
    )


class TestEncode:
    def test_running_example(self):
        t = encode_tableau(RUNNING)
        assert t.row_labels == (2, 4, 3, 6, 7, 8)
        assert len(t.dots) == 11
        assert t.column_dot_counts() == (4, 2, 0, 1, 3, 0, 1, 0)

    def test_identity(self):
        t = encode_tableau(Permutation((1, 2, 3)))
        assert t.row_labels == () and t.dots == frozenset()

    def test_transposition(self):
        t = encode_tableau(Permutation((2, 1)))
        assert t.row_labels == (2,)
        assert t.dots == frozenset({(1, 2)})

    @given(perms())
    def test_dots_are_exactly_the_inversions(self, word):
        t = encode_tableau(Permutation(word))
        inversions = {
            (i + 1, j + 1)
            for i in range(len(word))
            for j in range(i + 1, len(word))
            if word[i] > word[j]
        }
        assert t.dots == inversions


class TestDecode:
    def test_running_example(self):
        assert decode_tableau(encode_tableau(RUNNING)).entries == RUNNING.entries

    def test_empty_tableau(self):
        t = FilledTableau(ShapePartition((0, 0, 0), 4), (), frozenset())
        assert decode_tableau(t).entries == (1, 2, 3, 4)

    def test_min_filling_decode(self):
        s = ShapePartition.from_text("7,5,5,2,1,1,0")
        t = min_filling(s)
        assert t.column_dot_counts() == (3, 1, 0, 0, 3, 0, 1, 0)
        assert decode_tableau(t).entries == (4, 2, 1, 3, 8, 5, 7, 6)

    def test_inconsistent_dots_rejected(self):
        s = ShapePartition((1, 1, 0), 4)
        # Column counts decode to 2134, whose inversion set is {(1, 2)}.
        t = FilledTableau(s, row_labels_for(s), frozenset({(1, 3)}))
        assert decode_tableau(t, check_dots=False).entries == (2, 1, 3, 4)
        with pytest.raises(InconsistentFillingError):
            decode_tableau(t)
        assert not is_valid_filling(t)

    def test_wrong_host_shape_rejected(self):
        # The dots are a genuine inversion set, but 2134 has shape (1,0,0),
        # so hosting them on (1,1,0) is not realizable either.
        s = ShapePartition((1, 1, 0), 4)
        t = FilledTableau(s, row_labels_for(s), frozenset({(1, 2)}))
        with pytest.raises(InconsistentFillingError):
            decode_tableau(t)
        assert not is_valid_filling(t)

    def test_roundtrip_exhaustive(self):
        for n in range(7):
            seen = set()
            for word in itertools.permutations(range(1, n + 1)):
                t = encode_tableau(Permutation(word))
                assert decode_tableau(t).entries == word
                seen.add((t.shape.parts, t.dots))
            assert len(seen) == factorial(n)


class TestExtremeFillings:
    def test_min_running_example(self):
        s = ShapePartition.from_text("7,5,5,2,1,1,0")
        assert min_filling(s).dots == frozenset(
            {(1, 2), (1, 4), (1, 3), (2, 3), (5, 6), (5, 7), (5, 8), (7, 8)}
        )

    def test_min_all_zero(self):
        assert min_filling(ShapePartition((0, 0), 3)).dots == frozenset()

    def test_min_2_2_0(self):
        t = min_filling(ShapePartition((2, 2, 0), 4))
        assert t.dots == frozenset({(2, 3), (2, 4)})
        assert decode_tableau(t).entries == (1, 4, 2, 3)

    def test_max_2_2_0(self):
        t = max_filling(ShapePartition((2, 2, 0), 4))
        assert t.column_dot_counts() == (2, 2, 0, 0)
        assert decode_tableau(t).entries == (3, 4, 1, 2)

    def test_max_all_zero_gives_identity(self):
        t = max_filling(ShapePartition((0, 0, 0), 4))
        assert decode_tableau(t).entries == (1, 2, 3, 4)

    def test_max_staircase_gives_reversal(self):
        t = max_filling(ShapePartition((2, 1), 3))
        assert decode_tableau(t).entries == (3, 2, 1)

    def test_avoidance_for_all_shapes(self):
        for n in range(8):
            for s in all_shapes(n):
                low = decode_tableau(min_filling(s))
                high = decode_tableau(max_filling(s))
                assert not contains_231(low.entries)
                assert not contains_132(high.entries)
                assert shape_parts(low.entries) == s.parts
                assert shape_parts(high.entries) == s.parts


class TestBijection:
    def test_example(self):
        assert bijection_132_to_231(Permutation((3, 4, 1, 2))).entries == (1, 4, 2, 3)

    def test_identity_fixed(self):
        assert bijection_132_to_231(Permutation((1, 2, 3))).entries == (1, 2, 3)

    def test_reversal_fixed(self):
        assert bijection_132_to_231(Permutation((3, 2, 1))).entries == (3, 2, 1)

    def test_domain_guard(self):
        with pytest.raises(ValueError):
            bijection_132_to_231(Permutation((1, 3, 2)))

    def test_statistics_preserved_exhaustively(self):
        from permshape.oracle import avoiders_132
        from permshape.permutations import stat_vector

        for n in range(8):
            image = set()
            for word in avoiders_132(n):
                q = bijection_132_to_231(Permutation(word))
                sv, tv = stat_vector(word), stat_vector(q.entries)
                assert (sv.des, sv.maj, sv.lrmax, sv.maxdes, sv.lbsum) == (
                    tv.des,
                    tv.maj,
                    tv.lrmax,
                    tv.maxdes,
                    tv.lbsum,
                )
                image.add(q.entries)
            assert len(image) == len(list(avoiders_132(n)))


class TestPatternCountsFromFilling:
    def test_running_example(self):
        t = encode_tableau(RUNNING)
        assert count_132_from_tableau(t) == count_pattern_word(
            RUNNING.entries, (1, 3, 2)
        )

    def test_max_filling_has_no_132(self):
        for n in range(7):
            for s in all_shapes(n):
                assert count_132_from_tableau(max_filling(s)) == 0

    def test_tiny(self):
        t = encode_tableau(Permutation((1, 3, 2)))
        assert count_132_from_tableau(t) == 1

    @given(perms(6))
    def test_both_counts_match_oracle(self, word):
        t = encode_tableau(Permutation(word))
        assert count_132_from_tableau(t) == naive_pattern_count(word, (1, 3, 2))
        assert count_231_from_tableau(t) == naive_pattern_count(word, (2, 3, 1))


class TestJson:
    def test_roundtrip(self):
        t = encode_tableau(RUNNING)
        data = json.loads(json.dumps(tableau_to_json(t)))
        assert tableau_from_json(data) == t

    def test_fields(self):
        data = tableau_to_json(encode_tableau(Permutation((2, 1))))
        assert data == {"n": 2, "shape": [1], "row_labels": [2], "dots": [[1, 2]]}


class TestStructuralValidation:
    def test_bad_labels_rejected(self):
        s = ShapePartition((1,), 2)
        with pytest.raises(ValueError):
            FilledTableau(s, (3,), frozenset())

    def test_dot_outside_row_rejected(self):
        s = ShapePartition((1,), 2)
        with pytest.raises(ValueError):
            FilledTableau(s, (2,), frozenset({(2, 2)}))

    def test_decoding_is_structurally_total(self):
        # Column i reaches at most the rows labeled j > i, so its dot count
        # never exceeds the values still available; every structurally valid
        # filling decodes to some permutation.
        for n in range(7):
            for s in all_shapes(n):
                t = max_filling(s)
                for i, c in enumerate(t.column_dot_counts(), start=1):
                    assert c <= n - i
                decode_tableau(t, check_dots=False)
