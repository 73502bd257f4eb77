"""Executable forms of the structural lemmas.

Every operation re-checks its full hypothesis list first (raising
:class:`HypothesisError` naming the first failure) and re-checks its
conclusion afterwards.  A conclusion failing on a hypothesis-satisfying
input raises :class:`LemmaViolation` carrying a counterexample record.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .compress import (
    boundary_family,
    exchange_set,
    extent,
    is_shifted,
    minimal_members,
    minus_decomposition,
    seq_extent,
    seq_symmetric_extent,
    symmetric_extent,
    upset,
)
from .errors import HypothesisError, LemmaViolation
from .family import (
    Family,
    FamilySeq,
    bit,
    families_to_json,
    intersect_size,
    is_monotone,
    is_pairwise_cross_t_intersecting,
    norm,
    prefix_mask,
    seq_to_json,
)
from .formulas import le1_size_formula


@dataclass
class LemmaTrace:
    lemma_id: str
    hypotheses_checked: list[tuple[str, bool]] = field(default_factory=list)
    input_norm: int = 0
    output_norm: int = 0
    transformed: bool = False
    notes: list[str] = field(default_factory=list)
    output_extent: int | None = None

    def require(self, name: str, ok: bool, detail: str = "") -> None:
        self.hypotheses_checked.append((name, bool(ok)))
        if not ok:
            raise HypothesisError(name, detail)

    def to_json(self) -> dict:
        doc = {
            "lemma": self.lemma_id,
            "hypotheses": [[name, ok] for name, ok in self.hypotheses_checked],
            "input_norm": self.input_norm,
            "output_norm": self.output_norm,
            "transformed": self.transformed,
        }
        if self.output_extent is not None:
            doc["output_extent"] = self.output_extent
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc


def _violation(lemma: str, message: str, S=None, **extra) -> LemmaViolation:
    record = {"lemma": lemma, "message": message}
    if isinstance(S, FamilySeq):
        record["input"] = seq_to_json(S)
    elif isinstance(S, Family):
        record["input"] = families_to_json(S.n, [S])
    record.update(extra)
    return LemmaViolation(lemma, message, record)


def _seq_hypotheses(tr: LemmaTrace, S: FamilySeq, monotone: bool = True, cross: bool = True) -> None:
    tr.require("non-empty", all(S.families))
    if monotone:
        tr.require("monotone", all(is_monotone(f) for f in S.families))
    tr.require("shifted", all(is_shifted(f) for f in S.families))
    if cross:
        tr.require(f"pairwise cross {S.t}-intersecting", is_pairwise_cross_t_intersecting(S))


# ----------------------------------------------------------------------------
# generating-set replacement
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ReplacementSpec:
    """Sets B ⊆ G[ℓ]^(u) to delete and C ⊆ G[ℓ]^(v) to shorten by ℓ."""

    B: Family
    C: Family
    u: int
    v: int


def le1_transform(F: Family, spec: ReplacementSpec) -> tuple[Family, LemmaTrace]:
    tr = LemmaTrace("le1", input_norm=len(F))
    tr.require("non-empty", bool(F))
    tr.require("monotone", is_monotone(F))
    tr.require("shifted", is_shifted(F))
    G = minimal_members(F)
    ell = max(g.bit_length() for g in G)
    tr.require("extent >= 2", ell >= 2, f"extent {ell}")
    tr.require("u != v in [extent]", spec.u != spec.v and 1 <= spec.u <= ell and 1 <= spec.v <= ell)
    bnd = boundary_family(G, ell)
    tr.require("B ⊆ G[ℓ]^(u)", all(b in bnd and b.bit_count() == spec.u for b in spec.B))
    tr.require("C ⊆ G[ℓ]^(v)", all(c in bnd and c.bit_count() == spec.v for c in spec.C))

    drop = bit(ell)
    D = Family(F.n, tuple((set(G.members) - spec.B.memberset) | {c & ~drop for c in spec.C}))
    out = upset(D)
    expected = le1_size_formula(len(F), len(spec.B), len(spec.C), F.n, ell, spec.u, spec.v)
    tr.output_norm = len(out)
    tr.transformed = bool(spec.B or spec.C)
    if len(out) != expected:
        raise _violation("le1", f"|<D>| = {len(out)} but formula gives {expected}", F,
                         B=[hex(b) for b in spec.B], C=[hex(c) for c in spec.C], u=spec.u, v=spec.v)
    return out, tr


# ----------------------------------------------------------------------------
# boundary structure
# ----------------------------------------------------------------------------

def le2_check(S: FamilySeq) -> bool:
    """Boundary generating sets meeting in exactly t elements are complementary
    inside [ℓ] (union [ℓ], sizes summing to t + ℓ)."""
    tr = LemmaTrace("le2", input_norm=norm(S))
    _seq_hypotheses(tr, S)
    ell = seq_extent(S)
    full = prefix_mask(ell)
    bnds = [boundary_family(minimal_members(f), ell) for f in S.families]
    for i in range(S.m):
        for j in range(S.m):
            if i == j:
                continue
            for a in bnds[i]:
                for b in bnds[j]:
                    if intersect_size(a, b) == S.t:
                        if a | b != full or a.bit_count() + b.bit_count() != S.t + ell:
                            return False
    return True


def _boundary_class(f: Family, ell: int, u: int) -> Family:
    return Family(f.n, tuple(g for g in boundary_family(minimal_members(f), ell) if g.bit_count() == u))


def _shorten(f: Family, ell: int) -> Family:
    drop = bit(ell)
    return Family(f.n, tuple(a & ~drop for a in f))


def le22_rewrite(S: FamilySeq) -> tuple[FamilySeq, LemmaTrace]:
    """Remove the extent from boundary generating sets pair by pair.

    For each pair u < v with u + v = ℓ + t (ascending u, starting at u = t):
    when exactly one of the two boundary classes is populated it is shortened
    (norm strictly grows); when both are, the two replacements G' (drop the
    u-class, shorten the v-class) and G'' (drop v, shorten u) are formed and
    the larger-norm one kept, G'' on ties.
    """
    tr = LemmaTrace("le22", input_norm=norm(S))
    _seq_hypotheses(tr, S)
    t, n = S.t, S.n
    ell = seq_extent(S)
    tr.require("extent > t", ell > t, f"extent {ell}, t {t}")
    tr.require("no boundary generating set of size t",
               all(not _boundary_class(f, ell, t) for f in S.families))

    fams = list(S.families)
    current = norm(fams)
    for u in range(t, (ell + t + 1) // 2):
        v = ell + t - u
        Gs = [minimal_members(f) for f in fams]
        cu = [Family(n, tuple(g for g in boundary_family(G, ell) if g.bit_count() == u)) for G in Gs]
        cv = [Family(n, tuple(g for g in boundary_family(G, ell) if g.bit_count() == v)) for G in Gs]
        has_u, has_v = any(cu), any(cv)
        if not has_u and not has_v:
            continue
        if has_u != has_v:
            moved = cu if has_u else cv
            new = [upset(G.difference(c).union(_shorten(c, ell))) for G, c in zip(Gs, moved)]
            new_norm = norm(new)
            tr.notes.append(f"pair ({u},{v}): case 1, shortened class {u if has_u else v}")
            if new_norm <= current:
                raise _violation("le22", f"case 1 at pair ({u},{v}) did not increase the norm "
                                 f"({current} -> {new_norm})", S.replace(fams))
        else:
            g1 = [upset(G.difference(a).union(_shorten(b, ell))) for G, a, b in zip(Gs, cu, cv)]
            g2 = [upset(G.difference(b).union(_shorten(a, ell))) for G, a, b in zip(Gs, cu, cv)]
            n1, n2 = norm(g1), norm(g2)
            if n1 + n2 != 2 * current:
                raise _violation("le22", f"norms of the two replacements sum to {n1 + n2}, "
                                 f"expected {2 * current}", S.replace(fams), u=u, v=v)
            new, new_norm = (g1, n1) if n1 > n2 else (g2, n2)
            tr.notes.append(f"pair ({u},{v}): both classes populated, kept {'G1' if n1 > n2 else 'G2'}")
        cand = S.replace(new)
        if not all(new):
            raise _violation("le22", f"pair ({u},{v}) emptied a family", S.replace(fams))
        if not is_pairwise_cross_t_intersecting(cand):
            raise _violation("le22", f"pair ({u},{v}) broke the cross {t}-intersecting property",
                             S.replace(fams), output=seq_to_json(cand))
        fams, current = new, new_norm
        tr.transformed = True

    out = S.replace(fams)
    tr.output_norm = current
    out_ell = seq_extent(out)
    if out_ell > ell or ((ell + t) % 2 == 1 and out_ell == ell):
        raise _violation("le22", f"output extent {out_ell} (input extent {ell})", S)
    if (ell + t) % 2 == 0 and out_ell == ell:
        half = (ell + t) // 2
        for f in fams:
            if any(g.bit_count() != half for g in boundary_family(minimal_members(f), ell)):
                raise _violation("le22", "boundary class other than (ℓ+t)/2 survived", S)
    return out, tr


# ----------------------------------------------------------------------------
# symmetric-extent properties
# ----------------------------------------------------------------------------

def _decompositions(S: FamilySeq, s: int):
    return [minus_decomposition(f, s) for f in S.families]


def le3_check(S: FamilySeq, part: int, witnesses=None) -> bool:
    """Conclusion of one part (1-5) of the symmetric-extent lemma.

    Without ``witnesses`` every admissible choice is checked.  Witnesses are
    tuples of (family index, set) for parts 1-3, and
    (k, A, q, D) / (k, A1, q, A2) for parts 4 / 5 (0-based family indices).
    """
    if part not in (1, 2, 3, 4, 5):
        raise HypothesisError("part in 1..5", f"got {part}")
    tr = LemmaTrace(f"le3-{part}", input_norm=norm(S))
    tr.require("non-empty", all(S.families))
    tr.require("shifted", all(is_shifted(f) for f in S.families))
    s = seq_symmetric_extent(S)
    n, t = S.n, S.t
    tr.require("symmetric extent < n", s < n, f"s = {s}")
    if part in (4, 5):
        tr.require(f"pairwise cross {t}-intersecting", is_pairwise_cross_t_intersecting(S))
    dec = _decompositions(S, s)
    low = prefix_mask(s)
    s1 = bit(s + 1)

    if part in (1, 2, 3):
        if witnesses is None:
            items = [(k, a) for k, d in enumerate(dec) for a in d.minus]
        else:
            items = list(witnesses)
            for k, a in items:
                tr.require("witness A in A_k^{-s}", a in dec[k].minus)
        for k, a in items:
            fam = S.families[k]
            if part == 1:
                if a & s1:
                    return False
            elif part == 2:
                for j in range(1, s + 1):
                    if a & bit(j) and exchange_set(a, j, s + 1) in fam:
                        return False
            else:
                rest = a & ~low
                size = (a & low).bit_count()
                for combo in combinations(range(s), size):
                    b2 = 0
                    for e in combo:
                        b2 |= 1 << e
                    if (b2 | rest) not in dec[k].minus:
                        return False
        return True

    if part == 4:
        if witnesses is None:
            items = []
            for k in range(S.m):
                for q in range(S.m):
                    if k == q or not dec[k].minus:
                        continue
                    rest = S.families[q].difference(dec[q].minus)
                    items.extend((k, a, q, d) for a in dec[k].minus for d in rest)
        else:
            items = list(witnesses)
            for k, a, q, d in items:
                tr.require("k != q", k != q)
                tr.require("witness A in A_k^{-s}", a in dec[k].minus)
                tr.require("witness D in A_q minus A_q^{-s}", d in S.families[q] and d not in dec[q].minus)
        for k, a, q, d in items:
            for i in range(1, s + 1):
                if intersect_size(exchange_set(a, i, s + 1), d) < t:
                    return False
        return True

    # part 5
    if witnesses is None:
        items = []
        for k in range(S.m):
            for q in range(S.m):
                if k == q:
                    continue
                for a1 in dec[k].minus:
                    for a2 in dec[q].minus:
                        if (a1 & low).bit_count() + (a2 & low).bit_count() != s + t:
                            items.append((k, a1, q, a2))
    else:
        items = list(witnesses)
        for k, a1, q, a2 in items:
            tr.require("k != q", k != q)
            tr.require("witness A1 in A_k^{-s}", a1 in dec[k].minus)
            tr.require("witness A2 in A_q^{-s}", a2 in dec[q].minus)
            tr.require("|A1 ∩ [s]| + |A2 ∩ [s]| != s + t",
                       (a1 & low).bit_count() + (a2 & low).bit_count() != s + t)
    return all(intersect_size(a1, a2) >= t + 1 for _, a1, _, a2 in items)


def le32_le33_check(S: FamilySeq, i: int) -> bool:
    """Projections of the i-th minus class split evenly on the element n.

    Checks, for every family with a non-empty projection, that C ↦ C minus n
    maps the n-containing part onto the n-avoiding part (and hence the two
    have equal size), and that the norms agree across the sequence.
    """
    tr = LemmaTrace("le32/le33", input_norm=norm(S))
    _seq_hypotheses(tr, S, cross=False)
    n = S.n
    s = seq_symmetric_extent(S)
    ell = seq_extent(S)
    tr.require("s < ℓ < n", s < ell < n, f"s = {s}, ℓ = {ell}, n = {n}")
    dec = _decompositions(S, s)
    projs = [d.proj(i) for d in dec]
    tr.require("projection non-empty", any(projs), f"i = {i}")
    nb = bit(n)
    with_n = without_n = 0
    for k, P in enumerate(projs):
        if not P:
            continue
        f = S.families[k]
        tr.require("family symmetric extent = s", symmetric_extent(f) == s)
        tr.require("family extent < n", extent(f) < n)
        top = [c for c in P if c & nb]
        bottom = {c for c in P if not c & nb}
        image = {c & ~nb for c in top}
        if len(image) != len(top) or image != bottom:
            return False
        with_n += len(top)
        without_n += len(bottom)
    return with_n == without_n


# ----------------------------------------------------------------------------
# pushing-pulling
# ----------------------------------------------------------------------------

def _b_family(n: int, s: int, i: int, projection: Family) -> Family:
    """B(k, s, i): sets with i - 1 elements in [s], containing s + 1, and
    tail in [s + 2, n] drawn from the projection."""
    if not projection:
        return Family(n)
    head = bit(s + 1)
    out = []
    for combo in combinations(range(s), i - 1):
        low = 0
        for e in combo:
            low |= 1 << e
        for c in projection:
            out.append(low | head | c)
    return Family(n, tuple(out))


def le5_pushing_pulling(S: FamilySeq) -> tuple[FamilySeq, LemmaTrace]:
    """Trade a minus class for its companion B-family, strictly increasing the norm."""
    tr = LemmaTrace("le5", input_norm=norm(S))
    _seq_hypotheses(tr, S)
    n, t = S.n, S.t
    tr.require("t > 1", t > 1)
    s = seq_symmetric_extent(S)
    ell = seq_extent(S)
    tr.require("n > ℓ > s", n > ell > s, f"n = {n}, ℓ = {ell}, s = {s}")
    tr.require("ℓ + t even", (ell + t) % 2 == 0)
    dec = _decompositions(S, s)
    tr.require("A_k^{-s,i} empty for i in [t-1]",
               all(not d.cls(i) for d in dec for i in range(1, t)))

    populated = [i for i in range(t, s + 1) if any(d.cls(i) for d in dec)]
    if not populated:
        raise _violation("le5", "no populated minus class in [t, s]", S)

    def bvec(i: int) -> list[Family]:
        return [_b_family(n, s, i, d.proj(i)) if d.cls(i) else Family(n) for d in dec]

    def trade(remove: list[Family], add: list[Family]) -> list[Family]:
        out = []
        for f, r, a in zip(S.families, remove, add):
            if a.memberset & f.memberset:
                raise _violation("le5", "an added set is already present", S,
                                 collision=[hex(x) for x in sorted(a.memberset & f.memberset)])
            out.append(f.difference(r).union(a))
        return out

    case1 = [a for a in populated if 2 * a != s + t]
    if case1:
        a = case1[0]
        b = s + t - a
        first = trade([d.cls(a) for d in dec], bvec(b))
        second = trade([d.cls(b) for d in dec], bvec(a))
        n1, n2 = norm(first), norm(second)
        new = first if n1 > n2 else second
        tr.notes.append(f"case 1: a = {a}, partner {b}, kept {'A1' if n1 > n2 else 'A2'} ({n1} vs {n2})")
    else:
        a = (s + t) // 2
        nb = bit(n)
        removed = [Family(n, tuple(x for x in d.cls(a) if not x & nb)) for d in dec]
        added = [Family(n, tuple(x for x in B if x & nb)) for B in bvec(a)]
        new = trade(removed, added)
        tr.notes.append(f"case 2: a = {a}")

    out = S.replace(new)
    tr.output_norm = norm(out)
    tr.transformed = True
    if not all(new):
        raise _violation("le5", "output has an empty family", S)
    if not is_pairwise_cross_t_intersecting(out):
        raise _violation("le5", "output is not pairwise cross t-intersecting", S, output=seq_to_json(out))
    if tr.output_norm <= tr.input_norm:
        raise _violation("le5", f"norm did not increase ({tr.input_norm} -> {tr.output_norm})", S,
                         output=seq_to_json(out))
    # recorded, not asserted: Case 2 can add generators containing n
    tr.output_extent = seq_extent(out)
    tr.notes.append(f"extent {ell} -> {tr.output_extent}")
    return out, tr


def le34_check(S: FamilySeq, is_norm_maximal: bool) -> bool:
    """For a norm-maximal sequence the low minus classes (i < t) are empty."""
    tr = LemmaTrace("le34", input_norm=norm(S))
    _seq_hypotheses(tr, S)
    if not is_norm_maximal or S.t == 1:
        return True
    s = seq_symmetric_extent(S)
    if s >= S.n:
        return True
    return all(not d.cls(i) for d in _decompositions(S, s) for i in range(1, S.t))
