import json
import random
from itertools import combinations, product

import pytest

from xfam.compress import upset
from xfam.errors import CapError, ParameterError
from xfam.family import Family, FamilySeq, canonical_family, canonicalize, dumps, is_monotone, is_pairwise_cross_t_intersecting, norm
from xfam.formulas import ak_M, case_a_sequence, case_b_sequence, katona_family, main_bound, wang_zhang
from xfam.oracle import (
    Certificate, brute_M, brute_M_uniform, brute_cross_pair_uniform, brute_multi,
    enumerate_monotone, recheck_certificate, verify_theorem,
)


def all_families(n):
    for bits in range(1 << (1 << n)):
        yield Family(n, tuple(a for a in range(1 << n) if bits >> a & 1))


class TestBruteM:
    def test_examples(self):
        v, w = brute_M(4, 2)
        assert v == 5 and w == [canonical_family(katona_family(4, 2))]
        v, w = brute_M(5, 2)
        assert v == 10 and w == [canonical_family(katona_family(5, 2))]
        for n in range(1, 6):
            v, w = brute_M(n, n)
            assert v == 1 and w == [Family(n, ((1 << n) - 1,))]

    def test_against_exhaustive_family_search(self):
        # every family of 2^[n], n <= 4, checked directly
        for n in range(1, 5):
            for t in range(1, n + 1):
                best = 0
                for f in all_families(n):
                    if len(f) > best and all((a & b).bit_count() >= t for a in f for b in f):
                        best = len(f)
                assert brute_M(n, t, witnesses=False)[0] == best

    def test_caps(self):
        with pytest.raises(CapError):
            brute_M(8, 2)
        with pytest.raises(ParameterError):
            brute_M(3, 4)


class TestUniform:
    def test_examples(self):
        assert brute_M_uniform(5, 3, 2)[0] == 4
        assert brute_M_uniform(6, 3, 3)[0] == 1
        assert brute_M_uniform(6, 3, 1)[0] == 10 == ak_M(6, 3, 1)

    def test_cap(self):
        with pytest.raises(CapError):
            brute_M_uniform(12, 6, 2)


class TestCrossPair:
    @staticmethod
    def exhaustive(n, k, t):
        layer = [a for a in range(1 << n) if a.bit_count() == k]
        best = 0
        subs = [s for r in range(1, len(layer) + 1) for s in combinations(layer, r)]
        for A in subs:
            for B in subs:
                if len(A) + len(B) > best and all((a & b).bit_count() >= t for a in A for b in B):
                    best = len(A) + len(B)
        return best

    @staticmethod
    def best_partner(n, k, t):
        # for each non-empty A the largest valid B is every k-set meeting all of A
        layer = [a for a in range(1 << n) if a.bit_count() == k]
        N = len(layer)
        best = 0
        for bits in range(1, 1 << N):
            A = [layer[i] for i in range(N) if bits >> i & 1]
            B = [b for b in layer if all((a & b).bit_count() >= t for a in A)]
            if B:
                best = max(best, len(A) + len(B))
        return best

    def test_pair_exhaustive_small(self):
        for n, k, t in [(3, 2, 1), (4, 2, 1), (4, 2, 2), (4, 3, 2), (4, 3, 1), (3, 1, 1)]:
            assert brute_cross_pair_uniform(n, k, t) == self.exhaustive(n, k, t)

    def test_partner_reduction(self):
        for n, k, t in [(5, 3, 2), (5, 2, 1), (5, 3, 1), (6, 2, 1), (5, 4, 3)]:
            assert brute_cross_pair_uniform(n, k, t) == self.best_partner(n, k, t)

    def test_examples(self):
        assert brute_cross_pair_uniform(5, 3, 2) == 8 == wang_zhang(5, 3, 2)
        # t = k forces A = B = {K}
        assert brute_cross_pair_uniform(4, 2, 2) == 2
        assert brute_cross_pair_uniform(5, 3, 3) == 2

    def test_cap(self):
        with pytest.raises(CapError):
            brute_cross_pair_uniform(8, 4, 2)


class TestMonotone:
    def test_counts_by_exhaustion(self):
        for n, expect in [(1, 3), (2, 6), (3, 20), (4, 168)]:
            direct = sum(1 for f in all_families(n) if is_monotone(f))
            fams = list(enumerate_monotone(n))
            assert direct == len(fams) == expect
            assert len({f.members for f in fams}) == len(fams)
            assert all(is_monotone(f) for f in fams)

    def test_exclude_empty(self):
        assert len(list(enumerate_monotone(3, include_empty=False))) == 19

    def test_cap(self):
        with pytest.raises(CapError):
            next(enumerate_monotone(5))
        with pytest.raises(CapError):
            next(enumerate_monotone(6, allow_large=True))

    def test_monotone_reduction_sound(self):
        rng = random.Random(8)
        for _ in range(500):
            n = rng.randint(2, 5)
            t = rng.randint(1, n)
            fams = [Family(n, tuple(rng.randrange(1 << n) for _ in range(rng.randint(1, 5))))
                    for _ in range(rng.randint(2, 3))]
            S = FamilySeq(n, t, tuple(fams))
            U = S.replace([upset(f) for f in fams])
            assert norm(U) >= norm(S)
            if is_pairwise_cross_t_intersecting(S):
                assert is_pairwise_cross_t_intersecting(U)


class TestMulti:
    def test_examples(self):
        c = brute_multi(4, 2, 2)
        assert c.optimum == 12 == main_bound(4, 2, 2).value
        assert c.extremal_classes == ["case_a"]
        assert c.witnesses == [canonicalize(case_a_sequence(4, 2, 2))]
        c = brute_multi(4, 2, 3)
        assert c.optimum == 15 and c.extremal_classes == ["case_b"]
        assert c.witnesses == [canonicalize(case_b_sequence(4, 2, 3))]
        c = brute_multi(2, 2, 2)
        assert c.optimum == 2
        assert [w.families for w in c.witnesses] == [(Family(2, (3,)), Family(2, (3,)))]

    def test_against_unrestricted_search(self):
        # every pair of non-empty families (monotone or not) at n <= 3
        for n in range(1, 4):
            fams = [f for f in all_families(n) if f]
            for t in range(1, n + 1):
                best = 0
                for f, g in product(fams, repeat=2):
                    if len(f) + len(g) > best and all((a & b).bit_count() >= t for a in f for b in g):
                        best = len(f) + len(g)
                assert brute_multi(n, t, 2).optimum == best

    def test_triples_unrestricted_n2(self):
        fams = [f for f in all_families(2) if f]
        for t in (1, 2):
            best = 0
            for tp in product(fams, repeat=3):
                if all((a & b).bit_count() >= t for x, y in combinations(tp, 2) for a in x for b in y):
                    best = max(best, sum(len(f) for f in tp))
            assert brute_multi(2, t, 3).optimum == best

    def test_caps(self):
        with pytest.raises(CapError):
            brute_multi(5, 2, 2)
        with pytest.raises(CapError):
            brute_multi(3, 2, 5)

    def test_workers_agree(self):
        a = brute_multi(4, 2, 3, seed=3, workers=1).to_json()
        b = brute_multi(4, 2, 3, seed=3, workers=3).to_json()
        assert dumps(a) == dumps(b)


class TestVerify:
    def test_examples(self):
        c = verify_theorem(4, 2, 2)
        assert c.match and c.classes_match and c.extremal_classes == ["case_a"]
        c = verify_theorem(4, 2, 3)
        assert c.match and c.classes_match and c.extremal_classes == ["case_b"]
        c = verify_theorem(3, 1, 2)
        assert c.match and c.optimum == 8 and c.tie and len(c.witnesses) > 1
        assert c.classes_match is None

    def test_tie_has_both_classes(self):
        c = verify_theorem(2, 2, 2)
        assert c.tie and c.classes_match
        assert c.predicted_classes == ["case_a", "case_b"]

    def test_grid(self):
        for n in range(1, 5):
            for t in range(1, n + 1):
                for m in (2, 3):
                    c = verify_theorem(n, t, m)
                    assert c.verified, (n, t, m)
                    assert recheck_certificate(c) == []

    def test_roundtrip_and_tamper(self):
        c = verify_theorem(4, 2, 3, seed=5)
        doc = json.loads(dumps(c.to_json()))
        back = Certificate.from_json(doc)
        assert back.to_json() == c.to_json()
        assert recheck_certificate(back) == []
        doc["optimum"] = "16"
        assert recheck_certificate(Certificate.from_json(doc))
        doc = json.loads(dumps(c.to_json()))
        doc["witnesses"][0]["families"][0] = ["0x1"]
        assert recheck_certificate(Certificate.from_json(doc))

    def test_timing_opt_in(self):
        c = verify_theorem(3, 2, 2)
        assert "runtime_ms" not in c.to_json()
        assert "runtime_ms" in c.to_json(include_timing=True)
