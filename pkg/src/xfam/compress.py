"""Compression toolkit: shifting, up-sets, generating families, extents,
exchange operators, symmetric extents and the minus decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParameterError
from .family import (
    Family,
    FamilySeq,
    bit,
    format_subset,
    is_antichain,
    prefix_mask,
)


# ----------------------------------------------------------------------------
# shifting
# ----------------------------------------------------------------------------

def _check_pair(n: int, i: int, j: int) -> None:
    if not 1 <= i < j <= n:
        raise ParameterError(f"shift needs 1 <= i < j <= n, got (i, j) = ({i}, {j}), n = {n}")


def shift(F: Family, i: int, j: int) -> Family:
    """s_{i,j}(F): move j to i in every member whose image is not already present."""
    _check_pair(F.n, i, j)
    bi, bj = bit(i), bit(j)
    present = F.memberset
    out = []
    for a in F.members:
        if a & bj and not a & bi:
            b = (a ^ bj) | bi
            out.append(a if b in present else b)
        else:
            out.append(a)
    return Family(F.n, tuple(out))


def is_shifted(F: Family) -> bool:
    present = F.memberset
    for a in F.members:
        for j in range(2, F.n + 1):
            bj = bit(j)
            if not a & bj:
                continue
            for i in range(1, j):
                bi = bit(i)
                if not a & bi and (a ^ bj) | bi not in present:
                    return False
    return True


def shift_closure(S: FamilySeq) -> FamilySeq:
    """Apply s_{i,j} to every family simultaneously, sweeping (i, j) in
    lexicographic order, until a full sweep changes nothing."""
    fams = list(S.families)
    n = S.n
    changed = True
    while changed:
        changed = False
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for k, f in enumerate(fams):
                    g = shift(f, i, j)
                    if g.members != f.members:
                        fams[k] = g
                        changed = True
    return S.replace(fams)


def shift_closure_family(F: Family) -> Family:
    fams = [F]
    changed = True
    while changed:
        changed = False
        for i in range(1, F.n + 1):
            for j in range(i + 1, F.n + 1):
                g = shift(fams[0], i, j)
                if g.members != fams[0].members:
                    fams[0] = g
                    changed = True
    return fams[0]


# ----------------------------------------------------------------------------
# up-sets and generating families
# ----------------------------------------------------------------------------

def upset(G: Family) -> Family:
    """<G>: every subset of [n] containing some member of G."""
    n = G.n
    seen = set(G.members)
    stack = list(G.members)
    while stack:
        a = stack.pop()
        for e in range(n):
            b = a | (1 << e)
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return Family(n, tuple(seen))


def minimal_members(F: Family) -> Family:
    """Inclusion-minimal members of an arbitrary family."""
    kept: list[int] = []
    for a in sorted(F.members, key=lambda x: (x.bit_count(), x)):
        if not any(g & a == g for g in kept):
            kept.append(a)
    return Family(F.n, tuple(kept))


@dataclass(frozen=True)
class GeneratingFamily:
    base: Family

    def __post_init__(self):
        if not is_antichain(self.base):
            raise ParameterError("generating family must be an antichain")

    @property
    def n(self) -> int:
        return self.base.n

    def __len__(self):
        return len(self.base)

    def __iter__(self):
        return iter(self.base)


def generating_family(F: Family) -> GeneratingFamily:
    if not F:
        raise ParameterError("empty family")
    return GeneratingFamily(minimal_members(F))


@dataclass(frozen=True)
class ExtentReport:
    extent: int
    boundary: Family
    per_size: dict[int, Family] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "extent": self.extent,
            "boundary": [format_subset(m) for m in self.boundary],
            "per_size": {str(u): [format_subset(m) for m in f] for u, f in sorted(self.per_size.items())},
        }


def _as_generating(G) -> Family:
    return G.base if isinstance(G, GeneratingFamily) else G


def extent_report(G: GeneratingFamily | Family) -> ExtentReport:
    base = _as_generating(G)
    if not base:
        raise ParameterError("empty generating family")
    ell = max(g.bit_length() for g in base)
    boundary = boundary_family(base, ell)
    per_size: dict[int, list[int]] = {}
    for g in boundary:
        per_size.setdefault(g.bit_count(), []).append(g)
    return ExtentReport(ell, boundary, {u: Family(base.n, tuple(v)) for u, v in per_size.items()})


def boundary_family(G: GeneratingFamily | Family, ell: int) -> Family:
    """G[ℓ]: generating sets containing ℓ (ℓ = 0 gives the empty family)."""
    base = _as_generating(G)
    if ell < 1:
        return Family(base.n)
    b = bit(ell)
    return Family(base.n, tuple(g for g in base if g & b))


def extent(F: Family) -> int:
    """Extent of a (monotone) family: the largest element of a generating set."""
    return max((g.bit_length() for g in minimal_members(F)), default=0)


def seq_extent(S: FamilySeq) -> int:
    return max(extent(f) for f in S.families)


# ----------------------------------------------------------------------------
# exchange operators and symmetric extent
# ----------------------------------------------------------------------------

def exchange_set(a: int, i: int, j: int) -> int:
    """A_{i,j}: A Δ {i, j} when A meets {i, j} in exactly one element."""
    pair = bit(i) | bit(j)
    return a ^ pair if (a & pair).bit_count() == 1 else a


def exchange(F: Family, i: int, j: int) -> Family:
    if i == j:
        raise ParameterError("exchange needs i != j")
    for x in (i, j):
        if not 1 <= x <= F.n:
            raise ParameterError(f"element {x} outside [1, {F.n}]")
    return Family(F.n, tuple(exchange_set(a, i, j) for a in F.members))


def _stable_under(F: Family, i: int, j: int) -> bool:
    present = F.memberset
    return all(exchange_set(a, i, j) in present for a in F.members)


def symmetric_extent(F: Family) -> int:
    """Largest s with F exchange stable on [s]; n when stable on all of [n]."""
    if not F:
        raise ParameterError("empty family")
    s = 1
    for j in range(2, F.n + 1):
        if not all(_stable_under(F, i, j) for i in range(1, j)):
            return s
        s = j
    return F.n


def seq_symmetric_extent(S: FamilySeq) -> int:
    return min(symmetric_extent(f) for f in S.families)


# ----------------------------------------------------------------------------
# minus decomposition
# ----------------------------------------------------------------------------

def minus_family(F: Family, r: int) -> Family:
    """F^{-r}: members A with A_{i,r+1} absent from F for some i in [r]."""
    if not 1 <= r < F.n:
        raise ParameterError(f"r={r} outside [1, n-1]")
    present = F.memberset
    out = []
    for a in F.members:
        if any(exchange_set(a, i, r + 1) not in present for i in range(1, r + 1)):
            out.append(a)
    return Family(F.n, tuple(out))


@dataclass(frozen=True)
class MinusDecomposition:
    s: int
    minus: Family
    classes: dict[int, Family]
    projections: dict[int, Family]

    def cls(self, i: int) -> Family:
        return self.classes.get(i, Family(self.minus.n))

    def proj(self, i: int) -> Family:
        return self.projections.get(i, Family(self.minus.n))

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "minus": [format_subset(m) for m in self.minus],
            "classes": {str(i): [format_subset(m) for m in f] for i, f in sorted(self.classes.items()) if f},
            "projections": {str(i): [format_subset(m) for m in f] for i, f in sorted(self.projections.items()) if f},
        }


def minus_decomposition(F: Family, s: int) -> MinusDecomposition:
    """F^{-s}, split by |A ∩ [s]| = i, with projections {A ∩ [s+2, n]}."""
    minus = minus_family(F, s)
    low = prefix_mask(s)
    high = ~prefix_mask(s + 1)
    buckets: dict[int, list[int]] = {i: [] for i in range(0, s + 1)}
    for a in minus:
        buckets[(a & low).bit_count()].append(a)
    classes = {i: Family(F.n, tuple(v)) for i, v in buckets.items()}
    projections = {i: Family(F.n, tuple(a & high for a in v)) for i, v in buckets.items()}
    return MinusDecomposition(s, minus, classes, projections)
