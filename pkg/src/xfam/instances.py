"""Seeded random instances for the lemma property suites.

Each trial draws from its own ``random.Random`` keyed on ``(seed, index)``,
so results do not depend on how trials are spread over workers.
"""

from __future__ import annotations

import random

from .compress import shift_closure, shift_closure_family, upset
from .family import Family, FamilySeq


def trial_rng(seed: int, index: int, salt: str = "") -> random.Random:
    return random.Random(f"{salt}:{seed}:{index}")


def _random_generators(rng: random.Random, allowed: list[int], n: int) -> list[int]:
    """A few sets from ``allowed``, biased toward small ones."""
    if not allowed:
        return []
    weights = [1.0 / (1 + a.bit_count()) ** rng.choice((0, 1, 2, 3)) for a in allowed]
    k = rng.randint(1, 4)
    return rng.choices(allowed, weights=weights, k=k)


def random_monotone(rng: random.Random, n: int, min_size: int = 0) -> Family:
    allowed = [a for a in range(1 << n) if a.bit_count() >= min_size]
    return upset(Family(n, tuple(_random_generators(rng, allowed, n))))


def random_shifted_monotone(rng: random.Random, n: int, min_size: int = 0) -> Family:
    return shift_closure_family(random_monotone(rng, n, min_size))


def random_cross_sequence(rng: random.Random, n: int, t: int, m: int, shifted: bool = True) -> FamilySeq:
    """Non-empty monotone pairwise cross t-intersecting m-tuple.

    Families are drawn one after another, each inside the up-set of sets that
    t-intersect every earlier generator; [n] is always available, so no family
    ends up empty.  Optionally shift-closed at the end.
    """
    gens_so_far: list[int] = []
    fams = []
    for _ in range(m):
        allowed = [a for a in range(1 << n)
                   if a.bit_count() >= t and all((a & g).bit_count() >= t for g in gens_so_far)]
        gens = _random_generators(rng, allowed, n)
        fam = upset(Family(n, tuple(gens)))
        fams.append(fam)
        gens_so_far.extend(gens)
    rng.shuffle(fams)
    S = FamilySeq(n, t, tuple(fams))
    return shift_closure(S) if shifted else S


def random_subfamilies(rng: random.Random, S: FamilySeq, keep: float = 0.7) -> FamilySeq:
    """Drop members at random (never emptying a family); cross properties survive."""
    out = []
    for f in S.families:
        kept = [a for a in f if rng.random() < keep]
        if not kept:
            kept = [rng.choice(f.members)]
        out.append(Family(f.n, tuple(kept)))
    return S.replace(out)


def random_replacement(rng: random.Random, F: Family):
    """A random (B, C, u, v) for the generator-replacement count, or None when
    the extent is below 2."""
    from .compress import boundary_family, minimal_members
    from .lemmas import ReplacementSpec

    G = minimal_members(F)
    ell = max((g.bit_length() for g in G), default=0)
    if ell < 2:
        return None
    bnd = boundary_family(G, ell)
    sizes = sorted({b.bit_count() for b in bnd})
    u = rng.choice(sizes)
    v = rng.choice([x for x in range(1, ell + 1) if x != u])
    if rng.random() < 0.5:
        u, v = v, u

    def pick(size: int) -> Family:
        pool = [b for b in bnd if b.bit_count() == size]
        return Family(F.n, tuple(b for b in pool if rng.random() < 0.6))

    return ReplacementSpec(pick(u), pick(v), u, v)
