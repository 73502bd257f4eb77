import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import F, families, nonempty_families, sequences
from xfam.errors import CapError, ParameterError
from xfam.family import (
    Family, FamilySeq, bar, canonical_family, canonicalize, dumps, families_from_json,
    families_to_json, format_family_text, intersect_size, is_antichain, is_isomorphic,
    is_monotone, is_pairwise_cross_t_intersecting, is_t_intersecting, link, mask_of, norm,
    parse_family_text, parse_subset, format_subset, seq_from_json, seq_to_json, slice_family,
    star, uniform,
)
from xfam.formulas import katona_family


def sizes_at_least(n, k):
    return Family(n, tuple(a for a in range(1 << n) if a.bit_count() >= k))


K42 = sizes_at_least(4, 3)
R44 = sizes_at_least(4, 2)
TOP4 = F(4, {1, 2, 3, 4})


class TestSubsets:
    def test_intersect_size_examples(self):
        assert intersect_size(mask_of({1, 2}), mask_of({2, 3})) == 1
        assert intersect_size(0, mask_of({1, 2, 3})) == 0
        assert intersect_size(mask_of({1, 2, 3}), mask_of({1, 2, 3})) == 3

    @given(st.integers(0, 255), st.integers(0, 255))
    def test_intersect_size_identity(self, a, b):
        assert intersect_size(a, b) == a.bit_count() + b.bit_count() - (a | b).bit_count()

    @given(st.integers(0, (1 << 20) - 1))
    def test_subset_text_roundtrip(self, a):
        assert parse_subset(format_subset(a)) == a

    def test_element_range(self):
        with pytest.raises(ParameterError):
            mask_of({0})


class TestFamily:
    def test_canonical_encoding(self):
        f = Family(3, (5, 1, 5, 3))
        assert f.members == (1, 3, 5)
        assert len(f) == 3

    def test_member_outside_ground_set(self):
        with pytest.raises(ParameterError):
            Family(2, (4,))

    def test_seq_needs_two_families(self):
        with pytest.raises(ParameterError):
            FamilySeq(3, 1, (F(3, {1}),))

    def test_ground_sets_must_agree(self):
        with pytest.raises(ParameterError):
            FamilySeq(3, 1, (F(3, {1}), F(4, {1})))


class TestIntersecting:
    def test_examples(self):
        assert is_t_intersecting(F(3, {1, 2}, {1, 2, 3}), 2)
        assert not is_t_intersecting(F(2, {1}, {2}), 1)
        assert is_t_intersecting(K42, 2)

    def test_equal_pair_counts(self):
        # a lone member smaller than t fails: equal pairs are included
        assert not is_t_intersecting(F(3, {1}), 2)

    def test_empty_family_rejected(self):
        with pytest.raises(ParameterError):
            is_t_intersecting(Family(3), 1)

    def test_cross_examples(self):
        assert is_pairwise_cross_t_intersecting(FamilySeq.of(2, R44, TOP4))
        assert not is_pairwise_cross_t_intersecting(FamilySeq.of(1, F(4, {1, 2}), F(4, {3, 4})))
        assert is_pairwise_cross_t_intersecting(FamilySeq.of(2, K42, K42, K42))

    def test_cross_needs_nonempty(self):
        with pytest.raises(ParameterError):
            is_pairwise_cross_t_intersecting(FamilySeq.of(1, F(3, {1}), Family(3)))

    @given(nonempty_families(n_max=4), st.integers(1, 4), st.integers(2, 3))
    def test_equal_copies_match_t_intersecting(self, f, t, m):
        # copies of one family are pairwise cross iff it is t-intersecting; the
        # diagonal pair only matters through member sizes, so compare on that
        S = FamilySeq(f.n, t, (f,) * m)
        cross = is_pairwise_cross_t_intersecting(S)
        inter = is_t_intersecting(f, t)
        assert inter == (cross and all(a.bit_count() >= t for a in f))


class TestNorm:
    def test_examples(self):
        assert norm(FamilySeq.of(1, F(3, {1, 2}), F(3, {1, 2}, {1, 2, 3}))) == 3
        five = Family(3, (1, 2, 3, 4, 5))
        assert norm(FamilySeq.of(1, five, five, five)) == 15
        assert norm(FamilySeq.of(2, R44, TOP4)) == 12


class TestSlices:
    def test_examples(self):
        assert star(F(3, {1, 2}, {1, 3}, {2, 3}), 3) == F(3, {1, 3}, {2, 3})
        assert link(F(3, {1, 3}, {2, 3}), 3) == F(3, {1}, {2})
        assert uniform(K42, 2) == Family(4)
        assert bar(F(3, {1, 2}, {1, 3}), 3) == F(3, {1, 2})

    def test_dispatch(self):
        assert slice_family(K42, "uniform", 3) == uniform(K42, 3)
        with pytest.raises(ParameterError):
            slice_family(K42, "nosuch", 1)

    @given(families(n_min=1), st.data())
    def test_star_link_bijection(self, f, data):
        x = data.draw(st.integers(1, f.n))
        assert len(link(star(f, x), x)) == len(star(f, x))
        assert len(star(f, x)) + len(bar(f, x)) == len(f)


class TestOrder:
    def test_examples(self):
        assert is_monotone(F(3, {1, 2}, {1, 2, 3}))
        assert not is_antichain(F(2, {1}, {1, 2}))
        assert is_antichain(uniform(Family.power_set(4), 3))

    def test_monotone_by_definition(self):
        # every family over [2] checked against the superset definition
        for bits in range(1 << 4):
            f = Family(2, tuple(a for a in range(4) if bits >> a & 1))
            closed = all(b in f.memberset for a in f for b in range(4) if a & b == a)
            assert is_monotone(f) == closed


class TestCanonical:
    def test_swap_example(self):
        assert canonical_family(F(2, {2})) == F(2, {1})

    def test_sequence_example(self):
        c = canonicalize(FamilySeq.of(2, TOP4, R44))
        assert c.families == (R44, TOP4)

    def test_cap(self):
        with pytest.raises(CapError):
            canonical_family(F(9, {1}))

    @given(sequences())
    def test_idempotent_and_invariants(self, S):
        c = canonicalize(S)
        assert canonicalize(c) == c
        assert norm(c) == norm(S)
        assert is_pairwise_cross_t_intersecting(c) == is_pairwise_cross_t_intersecting(S)
        assert is_isomorphic(S, c)

    @given(sequences(n_max=4), st.data())
    def test_invariant_under_relabelling(self, S, data):
        perm = data.draw(st.permutations(range(S.n)))
        order = data.draw(st.permutations(range(S.m)))

        def img(a):
            return sum(1 << perm[e] for e in range(S.n) if a >> e & 1)

        T = S.replace([Family(S.n, tuple(img(a) for a in S.families[i])) for i in order])
        assert canonicalize(T) == canonicalize(S)

    def test_katona_classes_distinct_from_layers(self):
        a = canonical_family(katona_family(5, 2))
        b = canonical_family(sizes_at_least(5, 3))
        assert a != b


class TestFormats:
    @given(families())
    def test_text_roundtrip(self, f):
        assert parse_family_text(format_family_text(f), f.n) == f

    @given(sequences())
    def test_json_roundtrip(self, S):
        assert seq_from_json(seq_to_json(S)) == S

    def test_json_layout(self):
        doc = families_to_json(3, [F(3, {1, 2})])
        assert doc == {"n": 3, "families": [["0x3"]]}
        assert families_from_json(doc) == [F(3, {1, 2})]
        assert dumps(doc).endswith("\n")

    def test_exhaustive_pairs_small(self):
        # direct definition check of the cross predicate at n = 2
        fams = [Family(2, tuple(a for a in range(4) if bits >> a & 1)) for bits in range(1, 16)]
        for f, g in itertools.product(fams, repeat=2):
            expect = all((a & b).bit_count() >= 1 for a in f for b in g)
            assert is_pairwise_cross_t_intersecting(FamilySeq.of(1, f, g)) == expect
