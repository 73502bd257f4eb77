"""Closed-form bounds and extremal constructions, in exact integer arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .errors import ParameterError
from .family import Family, FamilySeq, full_mask, prefix_mask

FORMULA_MAX_N = 64
CONSTRUCT_MAX_N = 20


def binom(n: int, k: int) -> int:
    if not 0 <= n <= FORMULA_MAX_N:
        raise ParameterError(f"binom: n={n} outside [0, {FORMULA_MAX_N}]")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


def _check_nt(n: int, t: int) -> None:
    _need(1 <= t <= n <= FORMULA_MAX_N, f"need 1 <= t <= n <= {FORMULA_MAX_N}, got n={n}, t={t}")


def tail_sum(n: int, t: int) -> int:
    """Σ_{k=t}^{n} C(n, k): the number of subsets of [n] of size >= t."""
    return sum(binom(n, k) for k in range(max(t, 0), n + 1))


# ----------------------------------------------------------------------------
# Katona
# ----------------------------------------------------------------------------

def katona_M(n: int, t: int) -> int:
    """Maximum size of a t-intersecting family in 2^[n]."""
    _check_nt(n, t)
    if (n + t) % 2 == 0:
        return tail_sum(n, (n + t) // 2)
    return tail_sum(n, (n + t + 1) // 2) + binom(n - 1, (n + t - 1) // 2)


def _layer_masks(n: int, sizes, within: int | None = None) -> list[int]:
    ground = range(within if within is not None else n)
    out = []
    for k in sizes:
        for combo in combinations(ground, k):
            m = 0
            for e in combo:
                m |= 1 << e
            out.append(m)
    return out


def katona_family(n: int, t: int) -> Family:
    """K(n, t) when n + t is even, K'(n, t) otherwise."""
    _check_nt(n, t)
    _need(n <= CONSTRUCT_MAX_N, "construction cap n <= 20")
    if (n + t) % 2 == 0:
        return Family(n, tuple(_layer_masks(n, range((n + t) // 2, n + 1))))
    top = _layer_masks(n, range((n + t + 1) // 2, n + 1))
    extra = _layer_masks(n, [(n + t - 1) // 2], within=n - 1)
    return Family(n, tuple(top + extra))


def katona_families(n: int, t: int) -> tuple[Family, Family | None]:
    """The extremal family together with its extra uniform layer.

    Returns (K(n,t), None) when n + t is even and (K'(n,t), C([n-1], (n+t-1)/2))
    when n + t is odd.
    """
    f = katona_family(n, t)
    if (n + t) % 2 == 0:
        return f, None
    return f, Family(n, tuple(_layer_masks(n, [(n + t - 1) // 2], within=n - 1)))


# ----------------------------------------------------------------------------
# Ahlswede-Khachatrian
# ----------------------------------------------------------------------------

def _check_ak(n: int, k: int, t: int) -> None:
    _need(n >= k >= t >= 1, f"need n >= k >= t >= 1, got n={n}, k={k}, t={t}")
    _need(n > 2 * k - t, f"need n > 2k - t, got n={n}, k={k}, t={t}")
    _need(n <= FORMULA_MAX_N, "formula cap n <= 64")


def frankl_size(n: int, k: int, t: int, r: int) -> int:
    """|F_r(n, k, t)| = Σ_{i=t+r}^{t+2r} C(t+2r, i) C(n-t-2r, k-i)."""
    _check_ak(n, k, t)
    _need(0 <= r and t + 2 * r <= n, f"r={r} outside [0, (n-t)/2]")
    w = t + 2 * r
    return sum(binom(w, i) * binom(n - w, k - i) for i in range(t + r, w + 1))


def ak_M(n: int, k: int, t: int) -> int:
    _check_ak(n, k, t)
    return max(frankl_size(n, k, t, r) for r in range((n - t) // 2 + 1))


def ak_frankl_family(n: int, k: int, t: int, r: int) -> Family:
    """F_r(n, k, t): k-sets meeting [t + 2r] in at least t + r elements."""
    _check_ak(n, k, t)
    _need(0 <= r and t + 2 * r <= n, f"r={r} outside [0, (n-t)/2]")
    _need(n <= CONSTRUCT_MAX_N, "construction cap n <= 20")
    w = prefix_mask(t + 2 * r)
    return Family(n, tuple(a for a in _layer_masks(n, [k]) if (a & w).bit_count() >= t + r))


# ----------------------------------------------------------------------------
# main bound
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    n: int
    t: int
    m: int
    value: int
    branch: str
    tie: bool
    components: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "m": self.m,
            "value": str(self.value),
            "branch": self.branch,
            "tie": self.tie,
            "components": {k: str(v) for k, v in self.components.items()},
        }


def main_bound(n: int, t: int, m: int) -> BoundReport:
    """max{Σ_{k>=t} C(n,k) + m - 1, m·M(n,t)}; ties report sum_side."""
    _check_nt(n, t)
    _need(m >= 2, f"need m >= 2, got m={m}")
    tail = tail_sum(n, t)
    M = katona_M(n, t)
    sum_side = tail + m - 1
    m_side = m * M
    branch = "sum_side" if sum_side >= m_side else "m_times_M"
    return BoundReport(
        n, t, m,
        value=max(sum_side, m_side),
        branch=branch,
        tie=sum_side == m_side,
        components={"tail_sum": tail, "sum_side": sum_side, "katona_M": M, "m_times_M": m_side},
    )


# ----------------------------------------------------------------------------
# classical bounds
# ----------------------------------------------------------------------------

def wang_zhang(n: int, k: int, t: int) -> int:
    _need(k > t >= 1 and n > 2 * k - t, "Wang-Zhang needs k > t >= 1 and n > 2k - t")
    return binom(n, k) - sum(binom(k, i) * binom(n - k, k - i) for i in range(t)) + 1


def li_zhang(n: int, k: int, t: int, m: int) -> int:
    _need(k > t >= 1 and n > 2 * k - t and m >= 2, "Li-Zhang needs k > t >= 1, n > 2k - t, m >= 2")
    first = binom(n, k) - sum(binom(k, i) * binom(n - k, k - i) for i in range(t)) + m - 1
    return max(first, m * ak_M(n, k, t))


def frankl_wong(n: int, t: int) -> int:
    _check_nt(n, t)
    return tail_sum(n, t) + 1


def hilton_milner(n: int, k: int) -> int:
    _need(k >= 1 and n >= 2 * k, "Hilton-Milner needs n >= 2k, k >= 1")
    return binom(n, k) - binom(n - k, k) + 1


def shi_frankl_qian(n: int, k: int, m: int) -> int:
    _need(k >= 1 and n >= 2 * k and m >= 2, "Shi-Frankl-Qian needs n >= 2k, m >= 2")
    return max(binom(n, k) - binom(n - k, k) + m - 1, m * binom(n - 1, k - 1))


def classical_bounds(n: int, k: int, t: int, m: int) -> dict[str, int | None]:
    """All five classical bounds; entries whose constraints fail are None."""
    calls = {
        "wang_zhang": lambda: wang_zhang(n, k, t),
        "li_zhang": lambda: li_zhang(n, k, t, m),
        "frankl_wong": lambda: frankl_wong(n, t),
        "hilton_milner": lambda: hilton_milner(n, k),
        "shi_frankl_qian": lambda: shi_frankl_qian(n, k, m),
    }
    out: dict[str, int | None] = {}
    for name, fn in calls.items():
        try:
            out[name] = fn()
        except ParameterError:
            out[name] = None
    return out


# ----------------------------------------------------------------------------
# the functions f(ℓ), g(ℓ) and the R/S families
# ----------------------------------------------------------------------------

def f_ell(n: int, t: int, m: int, ell: int) -> int:
    """(Σ_{k=t}^{ℓ} C(ℓ,k) + m - 1) · 2^{n-ℓ} = |R(n,ℓ)| + (m-1)|S(n,ℓ)|."""
    _check_nt(n, t)
    _need(t <= ell <= n, f"need t <= ℓ <= n, got ℓ={ell}")
    _need(m >= 1, "need m >= 1")
    return (tail_sum(ell, t) + m - 1) << (n - ell)


def g_ell(n: int, t: int, ell: int) -> int:
    """|{A ⊆ [n] : |A ∩ [ℓ]| >= (ℓ+t)/2}| for ℓ + t even."""
    _check_nt(n, t)
    _need(t <= ell <= n, f"need t <= ℓ <= n, got ℓ={ell}")
    _need((ell + t) % 2 == 0, "g(ℓ) needs ℓ + t even")
    return tail_sum(ell, (ell + t) // 2) << (n - ell)


def rs_families(n: int, ell: int, t: int) -> tuple[Family, Family]:
    """R(n,ℓ) = {|R ∩ [ℓ]| >= t} and S(n,ℓ) = {[ℓ] ⊆ S}."""
    _check_nt(n, t)
    _need(t <= ell <= n, f"need t <= ℓ <= n, got ℓ={ell}")
    _need(n <= CONSTRUCT_MAX_N, "construction cap n <= 20")
    w = prefix_mask(ell)
    R = Family(n, tuple(a for a in range(1 << n) if (a & w).bit_count() >= t))
    S = Family(n, tuple(a for a in range(1 << n) if a & w == w))
    return R, S


def case_a_sequence(n: int, t: int, m: int) -> FamilySeq:
    """(R(n,n), {[n]}, ..., {[n]})."""
    R, _ = rs_families(n, n, t)
    top = Family(n, (full_mask(n),))
    return FamilySeq(n, t, (R,) + (top,) * (m - 1))


def case_b_sequence(n: int, t: int, m: int) -> FamilySeq:
    """m copies of K(n,t) or K'(n,t)."""
    K = katona_family(n, t)
    return FamilySeq(n, t, (K,) * m)


def le1_size_formula(size_a: int, size_b: int, size_c: int, n: int, ell: int, u: int, v: int) -> int:
    """|<D>| when D replaces the generating sets in B by nothing and those in C
    by C minus ℓ; u, v are the (distinct) sizes of the sets in B and C."""
    _need(2 <= ell <= n, f"need 2 <= ℓ <= n, got ℓ={ell}")
    _need(u != v and 1 <= u <= ell and 1 <= v <= ell, f"need u != v in [ℓ], got u={u}, v={v}")
    lost = sum(binom(n - ell, j - u) for j in range(u, n + 1))
    gained = sum(binom(n - ell, j - v + 1) for j in range(v - 1, n + 1))
    return size_a - size_b * lost + size_c * gained
