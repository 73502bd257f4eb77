"""Brute-force ground truth: maximum t-intersecting families, uniform
maxima, the multi-family optimum, and certificates recording them.

Nothing here relies on shifting or on the lemma machinery; the only search
space reduction is to monotone families for the multi-family optimum.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator

from .clique import CliqueInstance, max_weight_tuples, maximum_cliques
from .errors import CapError, ParameterError
from .family import (
    Family,
    FamilySeq,
    canonical_family,
    canonicalize,
    families_from_json,
    families_to_json,
    is_pairwise_cross_t_intersecting,
    norm,
)
from .formulas import case_a_sequence, case_b_sequence, main_bound

BRUTE_M_MAX_N = 7
UNIFORM_MAX_VERTICES = 500
CROSS_PAIR_MAX_VERTICES = 30
MONOTONE_MAX_N = 4
MONOTONE_OPT_IN_N = 5
MULTI_MAX_N = 4
MULTI_MAX_M = 4


def _popcount_ge(n: int, t: int) -> list[int]:
    return [a for a in range(1 << n) if a.bit_count() >= t]


def _layer(n: int, k: int) -> list[int]:
    out = []
    for combo in combinations(range(n), k):
        m = 0
        for e in combo:
            m |= 1 << e
        out.append(m)
    return out


def _intersection_graph(vertices: list[int], t: int) -> list[int]:
    adj = [0] * len(vertices)
    for i, a in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            if (a & vertices[j]).bit_count() >= t:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _class_witnesses(n: int, vertices: list[int], cliques: list[list[int]]) -> list[Family]:
    seen = {}
    for c in cliques:
        canon = canonical_family(Family(n, tuple(vertices[v] for v in c)))
        seen.setdefault(canon.members, canon)
    return [seen[k] for k in sorted(seen)]


# ----------------------------------------------------------------------------
# single families
# ----------------------------------------------------------------------------

def brute_M(n: int, t: int, witnesses: bool = True, seed: int | None = None) -> tuple[int, list[Family]]:
    """Maximum t-intersecting family size in 2^[n] by exact clique search.

    Vertices are the sets of size >= t (a member must meet itself in t
    elements); with ``witnesses`` every maximum family is enumerated and the
    isomorphism classes are returned in canonical form.
    """
    if not 1 <= t <= n:
        raise ParameterError(f"need 1 <= t <= n, got n={n}, t={t}")
    if n > BRUTE_M_MAX_N:
        raise CapError(f"brute_M cap n <= {BRUTE_M_MAX_N} exceeded (n={n})")
    vertices = _popcount_ge(n, t)
    size, cliques = maximum_cliques(_intersection_graph(vertices, t), all_max=witnesses, seed=seed)
    return size, _class_witnesses(n, vertices, cliques)


def brute_M_uniform(n: int, k: int, t: int, witnesses: bool = False,
                    seed: int | None = None) -> tuple[int, list[Family]]:
    """Maximum t-intersecting subfamily of the k-th layer of 2^[n]."""
    if not (1 <= t <= k <= n):
        raise ParameterError(f"need 1 <= t <= k <= n, got n={n}, k={k}, t={t}")
    if comb(n, k) > UNIFORM_MAX_VERTICES:
        raise CapError(f"C({n},{k}) exceeds the {UNIFORM_MAX_VERTICES}-vertex cap")
    vertices = _layer(n, k)
    size, cliques = maximum_cliques(_intersection_graph(vertices, t), all_max=witnesses, seed=seed)
    return size, _class_witnesses(n, vertices, cliques)


def brute_cross_pair_uniform(n: int, k: int, t: int) -> int:
    """max |A| + |B| over non-empty cross t-intersecting A, B ⊆ C([n], k).

    For fixed A the best B is every k-set t-intersecting all of A, so only
    pairs closed under that Galois connection matter; those are enumerated
    with close-by-one (each closed A visited once).
    """
    if not (1 <= t <= k <= n):
        raise ParameterError(f"need 1 <= t <= k <= n, got n={n}, k={k}, t={t}")
    N = comb(n, k)
    if N > CROSS_PAIR_MAX_VERTICES:
        raise CapError(f"C({n},{k}) exceeds the {CROSS_PAIR_MAX_VERTICES}-set cap")
    layer = _layer(n, k)
    nbr = [0] * N
    for i, a in enumerate(layer):
        for j, b in enumerate(layer):
            if (a & b).bit_count() >= t:
                nbr[i] |= 1 << j
    everything = (1 << N) - 1

    def dual(X: int) -> int:
        out = everything
        while X:
            low = X & -X
            out &= nbr[low.bit_length() - 1]
            X ^= low
        return out

    best = 0

    def visit(A: int, B: int) -> None:
        nonlocal best
        if A and B:
            best = max(best, A.bit_count() + B.bit_count())

    def cbo(A: int, B: int, y: int) -> None:
        visit(A, B)
        for j in range(y, N):
            if A >> j & 1:
                continue
            B2 = B & nbr[j]
            C = dual(B2)
            below = (1 << j) - 1
            if C & below == A & below:
                cbo(C, B2, j + 1)

    B0 = everything
    cbo(dual(B0), B0, 0)
    return best


# ----------------------------------------------------------------------------
# monotone families
# ----------------------------------------------------------------------------

def enumerate_antichains(n: int) -> Iterator[tuple[int, ...]]:
    """Every antichain of 2^[n] exactly once, as ascending mask tuples."""
    universe = list(range(1 << n))

    def comparable(a: int, b: int) -> bool:
        return a & b == a or a & b == b

    def rec(start: int, chosen: list[int]) -> Iterator[tuple[int, ...]]:
        yield tuple(chosen)
        for idx in range(start, len(universe)):
            x = universe[idx]
            if all(not comparable(x, c) for c in chosen):
                chosen.append(x)
                yield from rec(idx + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def _upset_of(n: int, gens: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a for a in range(1 << n) if any(g & a == g for g in gens))


def enumerate_monotone(n: int, include_empty: bool = True, allow_large: bool = False) -> Iterator[Family]:
    """Every monotone family over [n] exactly once (via its generating antichain)."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    if n > MONOTONE_MAX_N and not (allow_large and n <= MONOTONE_OPT_IN_N):
        raise CapError(f"monotone enumeration cap n <= {MONOTONE_MAX_N} exceeded (n={n})")
    for gens in enumerate_antichains(n):
        if not gens and not include_empty:
            continue
        yield Family(n, _upset_of(n, gens))


# ----------------------------------------------------------------------------
# the multi-family optimum
# ----------------------------------------------------------------------------

def _multi_instance(n: int, t: int) -> CliqueInstance:
    gens_list = []
    fams = []
    for gens in enumerate_antichains(n):
        # a member smaller than t can meet no set in t elements, so such
        # families have no partner; skipping them is only a speed-up
        if not gens or min(g.bit_count() for g in gens) < t:
            continue
        gens_list.append(gens)
        fams.append(Family(n, _upset_of(n, gens)))

    def cross(x: tuple[int, ...], y: tuple[int, ...]) -> bool:
        # supersets intersect at least as much, so minimal members decide
        return all((a & b).bit_count() >= t for a in x for b in y)

    idx = list(range(len(fams)))
    inst = CliqueInstance.build(idx, lambda i, j: cross(gens_list[i], gens_list[j]),
                                weight=lambda i: len(fams[i]))
    inst.vertices = fams
    return inst


def _check_multi_caps(n: int, t: int, m: int, allow_large: bool) -> None:
    if not 1 <= t <= n:
        raise ParameterError(f"need 1 <= t <= n, got n={n}, t={t}")
    if m < 2:
        raise ParameterError(f"need m >= 2, got m={m}")
    max_n = MONOTONE_OPT_IN_N if allow_large else MULTI_MAX_N
    if n > max_n or m > MULTI_MAX_M:
        raise CapError(f"multi-family oracle caps n <= {max_n}, m <= {MULTI_MAX_M} exceeded (n={n}, m={m})")


def _multi_chunk(args) -> tuple[int, list[tuple[int, ...]]]:
    n, t, m, seed, first = args
    inst = _multi_instance(n, t)
    return max_weight_tuples(inst, m, all_max=True, seed=seed, first=first)


def _search_multi(n: int, t: int, m: int, seed: int, workers: int) -> tuple[int, list[tuple[int, ...]], CliqueInstance]:
    inst = _multi_instance(n, t)
    if workers <= 1:
        best, tuples = max_weight_tuples(inst, m, all_max=True, seed=seed)
        return best, tuples, inst
    nv = len(inst.vertices)
    chunks = [list(range(w, nv, workers)) for w in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_multi_chunk, [(n, t, m, seed, c) for c in chunks if c]))
    best = max(p[0] for p in parts)
    tuples = sorted(tp for b, tps in parts if b == best for tp in tps)
    return best, tuples, inst


@dataclass
class Certificate:
    n: int
    t: int
    m: int
    optimum: int
    formula_value: int
    match: bool
    witnesses: list[FamilySeq]
    witness_classes: list[list[str]]
    extremal_classes: list[str]
    branch: str = ""
    tie: bool = False
    predicted_classes: list[str] = field(default_factory=list)
    classes_match: bool | None = None
    optimal_tuples: int = 0
    seed: int = 0
    runtime_ms: int = 0
    kind: str = "certificate"

    @property
    def verified(self) -> bool:
        return self.match and self.classes_match is not False

    def to_json(self, include_timing: bool = False) -> dict:
        doc = {
            "kind": self.kind,
            "parameters": {"n": self.n, "t": self.t, "m": self.m},
            "optimum": str(self.optimum),
            "formula_value": str(self.formula_value),
            "match": self.match,
            "branch": self.branch,
            "tie": self.tie,
            "witnesses": [
                families_to_json(w.n, w.families, classes=c)
                for w, c in zip(self.witnesses, self.witness_classes)
            ],
            "extremal_classes": list(self.extremal_classes),
            "predicted_classes": list(self.predicted_classes),
            "classes_match": self.classes_match,
            "optimal_tuples": self.optimal_tuples,
            "seed": self.seed,
        }
        if include_timing:
            doc["runtime_ms"] = self.runtime_ms
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> Certificate:
        p = doc["parameters"]
        n, t, m = int(p["n"]), int(p["t"]), int(p["m"])
        witnesses = [FamilySeq(n, t, tuple(families_from_json(w))) for w in doc["witnesses"]]
        return cls(
            n=n, t=t, m=m,
            optimum=int(doc["optimum"]),
            formula_value=int(doc["formula_value"]),
            match=bool(doc["match"]),
            witnesses=witnesses,
            witness_classes=[list(w.get("classes", [])) for w in doc["witnesses"]],
            extremal_classes=list(doc["extremal_classes"]),
            branch=doc.get("branch", ""),
            tie=bool(doc.get("tie", False)),
            predicted_classes=list(doc.get("predicted_classes", [])),
            classes_match=doc.get("classes_match"),
            optimal_tuples=int(doc.get("optimal_tuples", 0)),
            seed=int(doc.get("seed", 0)),
            runtime_ms=int(doc.get("runtime_ms", 0)),
            kind=doc.get("kind", "certificate"),
        )


def _reference_classes(n: int, t: int, m: int) -> dict[str, tuple]:
    return {
        "case_a": canonicalize(case_a_sequence(n, t, m)).key(),
        "case_b": canonicalize(case_b_sequence(n, t, m)).key(),
    }


def brute_multi(n: int, t: int, m: int, seed: int = 0, workers: int = 1,
                allow_large: bool = False) -> Certificate:
    """Exact maximum of Σ|A_i| over non-empty pairwise cross t-intersecting
    m-tuples, with every optimal tuple up to isomorphism."""
    _check_multi_caps(n, t, m, allow_large)
    t0 = time.perf_counter()
    best, tuples, inst = _search_multi(n, t, m, seed, workers)
    witnesses: dict[tuple, FamilySeq] = {}
    for tp in tuples:
        S = FamilySeq(n, t, tuple(inst.vertices[v] for v in tp))
        c = canonicalize(S)
        witnesses.setdefault(c.key(), c)
    keys = sorted(witnesses)
    refs = _reference_classes(n, t, m)
    wclasses = []
    for k in keys:
        cl = [name for name, ref in refs.items() if ref == k]
        if not cl:
            cl = ["t1_degenerate"] if t == 1 else ["other"]
        wclasses.append(cl)
    bound = main_bound(n, t, m)
    return Certificate(
        n=n, t=t, m=m,
        optimum=best,
        formula_value=bound.value,
        match=best == bound.value,
        witnesses=[witnesses[k] for k in keys],
        witness_classes=wclasses,
        extremal_classes=sorted({c for cl in wclasses for c in cl}),
        branch=bound.branch,
        tie=bound.tie,
        optimal_tuples=len(tuples),
        seed=seed,
        runtime_ms=int((time.perf_counter() - t0) * 1000),
    )


def predicted_classes(n: int, t: int, m: int) -> list[str]:
    """Extremal configurations the main theorem predicts for t >= 2."""
    rep = main_bound(n, t, m)
    sum_side, m_side = rep.components["sum_side"], rep.components["m_times_M"]
    out = []
    if sum_side >= m_side:
        out.append("case_a")
    if sum_side <= m_side:
        out.append("case_b")
    return out


def verify_theorem(n: int, t: int, m: int, seed: int = 0, workers: int = 1,
                   allow_large: bool = False) -> Certificate:
    """Compare the exhaustive optimum with the closed-form bound and, for
    t >= 2, the optimal isomorphism classes with the predicted ones."""
    cert = brute_multi(n, t, m, seed=seed, workers=workers, allow_large=allow_large)
    if t >= 2:
        pred = predicted_classes(n, t, m)
        refs = _reference_classes(n, t, m)
        cert.predicted_classes = pred
        cert.classes_match = {w.key() for w in cert.witnesses} == {refs[p] for p in pred}
    else:
        cert.predicted_classes = ["t1_degenerate"]
        cert.classes_match = None
    if not cert.verified:
        cert.kind = "counterexample"
    return cert


def recheck_certificate(cert: Certificate) -> list[str]:
    """Independent re-verification of a certificate; returns problems found."""
    problems = []
    bound = main_bound(cert.n, cert.t, cert.m)
    if bound.value != cert.formula_value:
        problems.append(f"formula_value {cert.formula_value} != main_bound {bound.value}")
    if cert.match != (cert.optimum == cert.formula_value):
        problems.append("match flag inconsistent with optimum/formula_value")
    if not cert.witnesses:
        problems.append("no witnesses")
    for i, w in enumerate(cert.witnesses):
        if w.m != cert.m:
            problems.append(f"witness {i} has {w.m} families, expected {cert.m}")
        if any(not f for f in w.families):
            problems.append(f"witness {i} has an empty family")
            continue
        if not is_pairwise_cross_t_intersecting(w):
            problems.append(f"witness {i} is not pairwise cross {cert.t}-intersecting")
        if norm(w) != cert.optimum:
            problems.append(f"witness {i} has norm {norm(w)} != optimum {cert.optimum}")
        if cert.n <= 8 and canonicalize(w).key() != w.key():
            problems.append(f"witness {i} is not in canonical form")
    if cert.t >= 2 and cert.classes_match is not None:
        refs = _reference_classes(cert.n, cert.t, cert.m)
        expect = {refs[p] for p in predicted_classes(cert.n, cert.t, cert.m)}
        if ({w.key() for w in cert.witnesses} == expect) != cert.classes_match:
            problems.append("classes_match flag inconsistent with witnesses")
    return problems
