"""Randomized property suites for the lemma engine.

A suite draws candidate instances from per-attempt seeded streams, keeps the
ones that satisfy the lemma's hypotheses, and runs the check on the first
``trials`` of them in attempt order.  Attempts are evaluated in batches that
may be farmed out to worker processes; the merge is by attempt index, so the
report is identical for any worker count.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .compress import seq_extent, shift, shift_closure, seq_symmetric_extent
from .errors import HypothesisError, LemmaViolation
from .family import Family, FamilySeq, is_pairwise_cross_t_intersecting, seq_to_json
from .instances import random_cross_sequence, random_replacement, random_shifted_monotone, trial_rng
from . import lemmas

SUITE_NAMES = (
    "shift-preserves", "le1", "le2", "le22",
    "le3-1", "le3-2", "le3-3", "le3-4", "le3-5",
    "le32", "le33", "le5", "le34",
)

MAX_N = 6
ATTEMPTS_PER_TRIAL = 60
BATCH = 200


@dataclass(frozen=True)
class SuiteParams:
    n: int | None = None
    t: int | None = None
    m: int | None = None

    def draw(self, rng: random.Random, t_range=(1, 3), n_range=(3, MAX_N)) -> tuple[int, int, int]:
        n = self.n if self.n is not None else rng.randint(*n_range)
        t = self.t if self.t is not None else rng.randint(t_range[0], min(t_range[1], n))
        m = self.m if self.m is not None else rng.randint(2, 3)
        return n, t, m


@dataclass
class Outcome:
    """Result of one attempt: skipped (hypothesis name), passed, or failed."""

    index: int
    status: str
    detail: str = ""
    trace: dict | None = None
    counterexample: dict | None = None


@dataclass
class SuiteReport:
    name: str
    params: SuiteParams
    seed: int
    requested: int
    attempts: int = 0
    instances: int = 0
    passed: int = 0
    failures: list[Outcome] = field(default_factory=list)
    skipped: dict[str, int] = field(default_factory=dict)
    sample_traces: list[dict] = field(default_factory=list)
    observations: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and self.instances > 0

    @property
    def exhausted(self) -> bool:
        return self.instances < self.requested

    def to_json(self) -> dict:
        return {
            "lemma": self.name,
            "n": self.params.n,
            "t": self.params.t,
            "m": self.params.m,
            "seed": self.seed,
            "requested": self.requested,
            "attempts": self.attempts,
            "instances": self.instances,
            "passed": self.passed,
            "failed": len(self.failures),
            "skipped": dict(sorted(self.skipped.items())),
            "observations": dict(sorted(self.observations.items())),
            "failures": [{"index": f.index, "detail": f.detail, "counterexample": f.counterexample}
                         for f in self.failures],
            "sample_traces": self.sample_traces,
        }


# ----------------------------------------------------------------------------
# one attempt per lemma
# ----------------------------------------------------------------------------

def _attempt_shift(rng, p: SuiteParams):
    n, t, m = p.draw(rng)
    S = random_cross_sequence(rng, n, t, m, shifted=False)
    i, j = sorted(rng.sample(range(1, n + 1), 2))
    out = S.replace([shift(f, i, j) for f in S.families])
    if not is_pairwise_cross_t_intersecting(out):
        return "fail", f"s_{i},{j} broke the cross property", {"input": seq_to_json(S), "i": i, "j": j}, None
    closed = shift_closure(S)
    if not is_pairwise_cross_t_intersecting(closed):
        return "fail", "shift closure broke the cross property", {"input": seq_to_json(S)}, None
    return "pass", f"s_{i},{j}", None, None


def _attempt_le1(rng, p: SuiteParams):
    n = p.n if p.n is not None else rng.randint(2, MAX_N)
    F = random_shifted_monotone(rng, n)
    spec = random_replacement(rng, F)
    if spec is None:
        raise HypothesisError("extent >= 2")
    _, tr = lemmas.le1_transform(F, spec)
    return "pass", "", None, tr.to_json()


def _attempt_le2(rng, p: SuiteParams):
    S = random_cross_sequence(rng, *p.draw(rng))
    if not lemmas.le2_check(S):
        return "fail", "boundary pair meeting in t is not complementary", {"input": seq_to_json(S)}, None
    return "pass", "", None, None


def _attempt_le22(rng, p: SuiteParams):
    S = random_cross_sequence(rng, *p.draw(rng))
    _, tr = lemmas.le22_rewrite(S)
    return "pass", "", None, tr.to_json()


def _attempt_le3(part: int):
    def run(rng, p: SuiteParams):
        S = random_cross_sequence(rng, *p.draw(rng))
        if not lemmas.le3_check(S, part):
            return "fail", f"part {part} conclusion failed", {"input": seq_to_json(S)}, None
        return "pass", "", None, None
    return run


def _attempt_le32(rng, p: SuiteParams):
    S = random_cross_sequence(rng, *p.draw(rng))
    s = seq_symmetric_extent(S)
    i = rng.randint(S.t if s >= S.t else 0, max(s, 0))
    if not lemmas.le32_le33_check(S, i):
        return "fail", f"class {i}: counts differ", {"input": seq_to_json(S), "i": i}, None
    return "pass", f"i = {i}", None, None


def _attempt_le5(rng, p: SuiteParams):
    S = random_cross_sequence(rng, *p.draw(rng, t_range=(2, 3)))
    _, tr = lemmas.le5_pushing_pulling(S)
    return "pass", "", None, tr.to_json() | {"input_extent": seq_extent(S)}


@lru_cache(maxsize=None)
def _optimal_witnesses(n: int, t: int, m: int) -> tuple[FamilySeq, ...]:
    from .oracle import brute_multi
    return tuple(brute_multi(n, t, m).witnesses)


def _attempt_le34(rng, p: SuiteParams):
    n = p.n if p.n is not None else rng.randint(2, 4)
    t = p.t if p.t is not None else rng.randint(1, min(3, n))
    m = p.m if p.m is not None else rng.randint(2, 3)
    W = rng.choice(_optimal_witnesses(n, t, m))
    perm = list(range(n))
    rng.shuffle(perm)

    def relabel(a: int) -> int:
        out = 0
        for e in range(n):
            if a >> e & 1:
                out |= 1 << perm[e]
        return out

    S = shift_closure(W.replace([Family(n, tuple(relabel(a) for a in f)) for f in W.families]))
    if not lemmas.le34_check(S, True):
        return "fail", "a low minus class is populated", {"input": seq_to_json(S)}, None
    return "pass", "", None, None


_ATTEMPTS = {
    "shift-preserves": _attempt_shift,
    "le1": _attempt_le1,
    "le2": _attempt_le2,
    "le22": _attempt_le22,
    **{f"le3-{k}": _attempt_le3(k) for k in range(1, 6)},
    "le32": _attempt_le32,
    "le33": _attempt_le32,
    "le5": _attempt_le5,
    "le34": _attempt_le34,
}


def run_attempt(name: str, params: SuiteParams, seed: int, index: int) -> Outcome:
    rng = trial_rng(seed, index, salt=name)
    try:
        status, detail, cex, trace = _ATTEMPTS[name](rng, params)
    except HypothesisError as e:
        return Outcome(index, "skip", e.hypothesis)
    except LemmaViolation as e:
        return Outcome(index, "fail", str(e), counterexample=e.counterexample)
    return Outcome(index, status, detail, trace=trace, counterexample=cex)


def _run_batch(args) -> list[Outcome]:
    name, params, seed, lo, hi = args
    return [run_attempt(name, params, seed, i) for i in range(lo, hi)]


def run_suite(name: str, trials: int, seed: int = 0, params: SuiteParams = SuiteParams(),
              workers: int = 1, max_attempts: int | None = None, keep_traces: int = 3) -> SuiteReport:
    """Run ``trials`` hypothesis-satisfying instances of the named check."""
    if name not in _ATTEMPTS:
        raise KeyError(name)
    if params.n is not None and not 2 <= params.n <= MAX_N:
        raise ValueError(f"suite ground sets are limited to 2 <= n <= {MAX_N}")
    if name == "le34":
        # the oracle behind this suite caps n; build its cache once in the parent
        if params.n is not None and params.n > 4:
            raise ValueError("le34 needs oracle-maximal inputs, so n <= 4")
    limit = max_attempts if max_attempts is not None else trials * ATTEMPTS_PER_TRIAL
    rep = SuiteReport(name, params, seed, trials)
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        lo = 0
        while rep.instances < trials and lo < limit:
            span = min(BATCH * max(workers, 1), limit - lo)
            if pool is None:
                outcomes = _run_batch((name, params, seed, lo, lo + span))
            else:
                step = -(-span // workers)
                jobs = [(name, params, seed, a, min(a + step, lo + span)) for a in range(lo, lo + span, step)]
                outcomes = [o for part in pool.map(_run_batch, jobs) for o in part]
            for o in outcomes:
                if rep.instances >= trials:
                    break
                rep.attempts = o.index + 1
                if o.status == "skip":
                    rep.skipped[o.detail] = rep.skipped.get(o.detail, 0) + 1
                    continue
                rep.instances += 1
                if o.status == "pass":
                    rep.passed += 1
                    if o.trace is not None:
                        _observe(rep, o.trace)
                        if len(rep.sample_traces) < keep_traces:
                            rep.sample_traces.append(o.trace)
                else:
                    rep.failures.append(o)
            lo += span
    finally:
        if pool is not None:
            pool.shutdown()
    return rep


def _observe(rep: SuiteReport, trace: dict) -> None:
    if rep.name == "le5" and "output_extent" in trace:
        key = "extent_kept" if trace["output_extent"] == trace.get("input_extent") else "extent_changed"
        rep.observations[key] = rep.observations.get(key, 0) + 1
