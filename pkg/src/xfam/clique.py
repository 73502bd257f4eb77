"""Exact branch-and-bound search over compatibility graphs.

Adjacency rows are Python ints used as bitsets.  Two searches are provided:
all maximum cliques (greedy-colouring bound) and all maximum-weight m-tuples
with repetition, the latter being what the multi-family oracle needs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Sequence


@dataclass
class CliqueInstance:
    vertices: list[Any]
    weights: list[int]
    adjacency: list[int]
    self_ok: list[bool]

    def __post_init__(self):
        n = len(self.vertices)
        if not (len(self.weights) == len(self.adjacency) == len(self.self_ok) == n):
            raise ValueError("instance arrays must have equal length")
        for v, row in enumerate(self.adjacency):
            if row >> v & 1:
                raise ValueError("adjacency must not contain loops; use self_ok")
            r = row
            while r:
                low = r & -r
                u = low.bit_length() - 1
                if not self.adjacency[u] >> v & 1:
                    raise ValueError("adjacency must be symmetric")
                r ^= low
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be >= 1")

    @classmethod
    def build(cls, vertices: Sequence[Any], compatible: Callable[[Any, Any], bool],
              weight: Callable[[Any], int] = lambda _: 1) -> CliqueInstance:
        vs = list(vertices)
        adj = [0] * len(vs)
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                if compatible(vs[i], vs[j]):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        self_ok = [bool(compatible(v, v)) for v in vs]
        return cls(vs, [weight(v) for v in vs], adj, self_ok)


def _relabel(adj: list[int], order: list[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        row = 0
        r = adj[v]
        while r:
            low = r & -r
            row |= 1 << pos[low.bit_length() - 1]
            r ^= low
        out.append(row)
    return out


def _degree_order(adj: list[int], seed: int | None) -> list[int]:
    idx = list(range(len(adj)))
    if seed is not None:
        random.Random(seed).shuffle(idx)
    # stable sort keeps the (possibly shuffled) order among equal degrees
    return sorted(idx, key=lambda v: -adj[v].bit_count())


def maximum_cliques(adj: list[int], all_max: bool = True, seed: int | None = None) -> tuple[int, list[list[int]]]:
    """Size of a maximum clique and every maximum clique (or one if not all_max).

    Cliques are returned as sorted vertex-index lists, in sorted order, so the
    result does not depend on ``seed``.
    """
    if not adj:
        return 0, [[]]
    order = _degree_order(adj, seed)
    g = _relabel(adj, order)
    best = [0]
    found: list[list[int]] = []
    R: list[int] = []

    def colour(P: int) -> tuple[list[int], list[int]]:
        verts, cols = [], []
        c = 0
        U = P
        while U:
            c += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                U ^= low
                Q ^= low
                Q &= ~g[v]
                verts.append(v)
                cols.append(c)
        return verts, cols

    def expand(P: int) -> None:
        verts, cols = colour(P)
        for idx in range(len(verts) - 1, -1, -1):
            bound = len(R) + cols[idx]
            if bound < best[0] or (bound == best[0] and not all_max):
                return
            v = verts[idx]
            R.append(v)
            NP = P & g[v]
            if NP:
                expand(NP)
            else:
                size = len(R)
                if size > best[0]:
                    best[0] = size
                    found.clear()
                    found.append(list(R))
                elif size == best[0] and all_max:
                    found.append(list(R))
            R.pop()
            P &= ~(1 << v)

    expand((1 << len(g)) - 1)
    cliques = sorted(sorted(order[v] for v in c) for c in found)
    return best[0], cliques


def max_weight_tuples(inst: CliqueInstance, m: int, all_max: bool = True,
                      seed: int | None = None, first: Sequence[int] | None = None) -> tuple[int, list[tuple[int, ...]]]:
    """Maximum of Σ weights over pairwise compatible m-multisets of vertices.

    A vertex may be used more than once only when it is compatible with
    itself.  Multisets are reported as non-decreasing tuples of the original
    vertex indices, sorted.  ``first`` restricts the vertex in the first
    (lowest-ranked) slot, which is how callers partition the tree.
    """
    nv = len(inst.vertices)
    if nv == 0 or m < 1:
        return 0, []
    idx = list(range(nv))
    if seed is not None:
        random.Random(seed).shuffle(idx)
    order = sorted(idx, key=lambda v: -inst.weights[v])
    rank = {v: r for r, v in enumerate(order)}
    g = _relabel(inst.adjacency, order)
    w = [inst.weights[v] for v in order]
    ok = [inst.self_ok[v] for v in order]
    best = [-1]
    found: list[tuple[int, ...]] = []
    chosen: list[int] = []
    allowed_first = None
    if first is not None:
        allowed_first = 0
        for v in first:
            allowed_first |= 1 << rank[v]

    def rec(cands: int, total: int, slots: int) -> None:
        if slots == 0:
            if total > best[0]:
                best[0] = total
                found.clear()
                found.append(tuple(chosen))
            elif total == best[0] and all_max:
                found.append(tuple(chosen))
            return
        C = cands
        while C:
            low = C & -C
            v = low.bit_length() - 1
            C ^= low
            # candidates are in descending weight order, so w[v] bounds the rest
            bound = total + slots * w[v]
            if bound < best[0] or (bound == best[0] and not all_max):
                return
            chosen.append(v)
            # later slots: vertices ranked after v, compatible with v, plus v itself if self-compatible
            nxt = cands & g[v] & ~((low << 1) - 1)
            if ok[v]:
                nxt |= low
            rec(nxt, total + w[v], slots - 1)
            chosen.pop()

    start = (1 << nv) - 1
    if allowed_first is not None:
        # first slot restricted; deeper slots may use anything ranked later
        C = allowed_first
        while C:
            low = C & -C
            v = low.bit_length() - 1
            C ^= low
            chosen.append(v)
            nxt = g[v] & ~((low << 1) - 1)
            if ok[v]:
                nxt |= low
            rec(nxt, w[v], m - 1)
            chosen.pop()
    else:
        rec(start, 0, m)
    tuples = sorted(tuple(sorted(order[v] for v in c)) for c in found)
    return (best[0] if found else 0), tuples
