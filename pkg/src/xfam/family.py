"""Subsets, families and family sequences over the ground set [n].

A subset of [n] is a plain ``int`` bitmask: bit ``e - 1`` is set iff the
element ``e`` is a member.  A :class:`Family` keeps its members as a strictly
ascending tuple of masks; that tuple is also the interchange form used by the
text and JSON formats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapError, ParameterError

MAX_N = 20
CANON_MAX_N = 8


# ----------------------------------------------------------------------------
# subsets
# ----------------------------------------------------------------------------

def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        if e < 1:
            raise ParameterError(f"element {e} is not in [n]")
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


def prefix_mask(k: int) -> int:
    """Mask of [k] = {1, ..., k}; [0] is the empty set."""
    return (1 << k) - 1 if k > 0 else 0


def bit(e: int) -> int:
    return 1 << (e - 1)


def popcount(mask: int) -> int:
    return mask.bit_count()


def intersect_size(a: int, b: int) -> int:
    """|A ∩ B| for two masks."""
    return (a & b).bit_count()


def max_element(mask: int) -> int:
    """Largest element of a set, 0 for the empty set."""
    return mask.bit_length()


def format_subset(mask: int) -> str:
    return ",".join(map(str, elements_of(mask))) if mask else "-"


def parse_subset(text: str) -> int:
    text = text.strip()
    if text in ("-", ""):
        return 0
    return mask_of(int(tok) for tok in text.split(","))


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_N:
        raise ParameterError(f"ground size n={n} outside [1, {MAX_N}]")


# ----------------------------------------------------------------------------
# families
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    """A family of subsets of [n], stored canonically (sorted, deduplicated)."""

    n: int
    members: tuple[int, ...] = ()

    def __post_init__(self):
        _check_n(self.n)
        ms = tuple(sorted(set(int(m) for m in self.members)))
        if ms and (ms[0] < 0 or ms[-1] >> self.n):
            raise ParameterError(f"member outside 2^[{self.n}]")
        object.__setattr__(self, "members", ms)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> Family:
        return cls(n, tuple(mask_of(s) for s in sets))

    @classmethod
    def power_set(cls, n: int) -> Family:
        return cls(n, tuple(range(1 << n)))

    @cached_property
    def memberset(self) -> frozenset[int]:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in self.memberset

    def __bool__(self) -> bool:
        return bool(self.members)

    def sets(self) -> list[list[int]]:
        return [elements_of(m) for m in self.members]

    def union(self, other: Family) -> Family:
        return Family(self.n, self.memberset | other.memberset)

    def difference(self, other: Family) -> Family:
        return Family(self.n, self.memberset - other.memberset)

    def with_ground(self, n: int) -> Family:
        """Same sets regarded as a family over [n] (n must cover every member)."""
        return Family(n, self.members)

    def __repr__(self) -> str:
        body = ", ".join("{" + format_subset(m).replace("-", "") + "}" for m in self.members)
        return f"Family(n={self.n}, [{body}])"


@dataclass(frozen=True)
class FamilySeq:
    """An ordered m-tuple of families over a common [n], tagged with t."""

    n: int
    t: int
    families: tuple[Family, ...] = field(default_factory=tuple)

    def __post_init__(self):
        _check_n(self.n)
        fams = tuple(self.families)
        if len(fams) < 2:
            raise ParameterError("a family sequence needs m >= 2 families")
        if self.t < 1:
            raise ParameterError("t must be >= 1")
        for f in fams:
            if f.n != self.n:
                raise ParameterError("families of a sequence must share n")
        object.__setattr__(self, "families", fams)

    @classmethod
    def of(cls, t: int, *families: Family) -> FamilySeq:
        return cls(families[0].n, t, tuple(families))

    @property
    def m(self) -> int:
        return len(self.families)

    def __len__(self) -> int:
        return len(self.families)

    def __iter__(self) -> Iterator[Family]:
        return iter(self.families)

    def __getitem__(self, i: int) -> Family:
        return self.families[i]

    def replace(self, families: Sequence[Family]) -> FamilySeq:
        return FamilySeq(self.n, self.t, tuple(families))

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(f.members for f in self.families)


# ----------------------------------------------------------------------------
# predicates and norms
# ----------------------------------------------------------------------------

def is_t_intersecting(F: Family, t: int) -> bool:
    """Every ordered pair of members (including A with itself) shares >= t elements."""
    if not F:
        raise ParameterError("empty family")
    ms = F.members
    for idx, a in enumerate(ms):
        if a.bit_count() < t:
            return False
        for b in ms[idx + 1:]:
            if (a & b).bit_count() < t:
                return False
    return True


def is_cross_t_intersecting(F: Family, G: Family, t: int) -> bool:
    return all((a & b).bit_count() >= t for a in F.members for b in G.members)


def is_pairwise_cross_t_intersecting(S: FamilySeq, t: int | None = None) -> bool:
    t = S.t if t is None else t
    if any(not f for f in S.families):
        raise ParameterError("pairwise cross predicate needs non-empty families")
    fams = S.families
    for i in range(len(fams)):
        for j in range(i + 1, len(fams)):
            if not is_cross_t_intersecting(fams[i], fams[j], t):
                return False
    return True


def norm(S: FamilySeq | Sequence[Family]) -> int:
    fams = S.families if isinstance(S, FamilySeq) else S
    return sum(len(f) for f in fams)


# ----------------------------------------------------------------------------
# slices
# ----------------------------------------------------------------------------

def uniform(F: Family, k: int) -> Family:
    """F^(k): members of size k."""
    if not 0 <= k <= F.n:
        raise ParameterError(f"layer {k} outside [0, {F.n}]")
    return Family(F.n, tuple(a for a in F.members if a.bit_count() == k))


def _check_x(F: Family, x: int) -> int:
    if not 1 <= x <= F.n:
        raise ParameterError(f"element {x} outside [1, {F.n}]")
    return bit(x)


def star(F: Family, x: int) -> Family:
    """F[x]: members containing x."""
    b = _check_x(F, x)
    return Family(F.n, tuple(a for a in F.members if a & b))


def link(F: Family, x: int) -> Family:
    """F(x): {A minus x : x in A in F}."""
    b = _check_x(F, x)
    return Family(F.n, tuple(a & ~b for a in F.members if a & b))


def bar(F: Family, x: int) -> Family:
    """F(x̄): members avoiding x."""
    b = _check_x(F, x)
    return Family(F.n, tuple(a for a in F.members if not a & b))


_SLICES = {"uniform": uniform, "star": star, "link": link, "bar": bar}


def slice_family(F: Family, mode: str, value: int) -> Family:
    try:
        fn = _SLICES[mode]
    except KeyError:
        raise ParameterError(f"unknown slice mode {mode!r}") from None
    return fn(F, value)


# ----------------------------------------------------------------------------
# order-theoretic predicates
# ----------------------------------------------------------------------------

def is_monotone(F: Family) -> bool:
    """Closed under adding a single element (equivalently, under supersets)."""
    present = F.memberset
    for a in F.members:
        for e in range(F.n):
            if not a >> e & 1 and a | (1 << e) not in present:
                return False
    return True


def is_antichain(F: Family) -> bool:
    ms = F.members
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            # b > a numerically, so only a ⊂ b is possible
            if a & b == a:
                return False
    return True


# ----------------------------------------------------------------------------
# isomorphism normal form
# ----------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _perm_tables(n: int) -> np.ndarray:
    """Row p maps every mask of 2^[n] to its image under the p-th permutation."""
    perms = list(permutations(range(n)))
    masks = np.arange(1 << n, dtype=np.int64)
    table = np.zeros((len(perms), 1 << n), dtype=np.int64)
    for p, perm in enumerate(perms):
        img = np.zeros_like(masks)
        for src, dst in enumerate(perm):
            img |= ((masks >> src) & 1) << dst
        table[p] = img
    return table


def _check_canon(n: int) -> None:
    if n > CANON_MAX_N:
        raise CapError(f"canonicalization cap exceeded (n={n} > {CANON_MAX_N})")


def canonical_family(F: Family) -> Family:
    """Least image of F (as a sorted mask tuple) under permutations of [n]."""
    _check_canon(F.n)
    if not F:
        return F
    table = _perm_tables(F.n)
    images = np.sort(table[:, np.asarray(F.members, dtype=np.int64)], axis=1)
    best = np.lexsort(images.T[::-1])[0]
    return Family(F.n, tuple(int(x) for x in images[best]))


def canonicalize(S: FamilySeq) -> FamilySeq:
    """Least sequence over all ground-set and index permutations.

    Sequences compare as tuples of sorted mask tuples.  For a fixed ground
    permutation the best index permutation simply sorts the family images, so
    only the n! ground permutations are swept explicitly.
    """
    _check_canon(S.n)
    table = _perm_tables(S.n)
    per_family = []
    for f in S.families:
        if f:
            imgs = np.sort(table[:, np.asarray(f.members, dtype=np.int64)], axis=1)
            per_family.append([tuple(row) for row in imgs.tolist()])
        else:
            per_family.append([()] * table.shape[0])
    best = None
    for p in range(table.shape[0]):
        cand = tuple(sorted(rows[p] for rows in per_family))
        if best is None or cand < best:
            best = cand
    return FamilySeq(S.n, S.t, tuple(Family(S.n, ms) for ms in best))


def is_isomorphic(S: FamilySeq, T: FamilySeq) -> bool:
    return S.n == T.n and S.m == T.m and canonicalize(S).key() == canonicalize(T).key()


# ----------------------------------------------------------------------------
# text / JSON formats
# ----------------------------------------------------------------------------

def format_family_text(F: Family) -> str:
    return "".join(format_subset(m) + "\n" for m in F.members)


def parse_family_text(text: str, n: int) -> Family:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return Family(n, tuple(parse_subset(ln) for ln in lines))


def families_to_json(n: int, families: Sequence[Family], **extra) -> dict:
    doc = {"n": n, "families": [[format(m, "#x") for m in f.members] for f in families]}
    doc.update(extra)
    return doc


def seq_to_json(S: FamilySeq) -> dict:
    return families_to_json(S.n, S.families, t=S.t)


def families_from_json(doc: dict) -> list[Family]:
    n = int(doc["n"])
    return [Family(n, tuple(int(h, 16) for h in fam)) for fam in doc["families"]]


def seq_from_json(doc: dict, t: int | None = None) -> FamilySeq:
    t = int(doc.get("t", 1) if t is None else t)
    return FamilySeq(int(doc["n"]), t, tuple(families_from_json(doc)))


def dumps(doc) -> str:
    """Deterministic JSON rendering used for every file the package writes."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
