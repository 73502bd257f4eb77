"""Command-line front end: ``xfam {bound,verify,lemma,family,recheck}``.

Exit codes: 0 success, 1 usage, 2 mathematical mismatch, 3 cap violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import formulas, oracle
from .errors import CapError, ParameterError
from .family import (Family, dumps, families_to_json, format_family_text,
                     is_cross_t_intersecting, is_t_intersecting)
from .suites import SUITE_NAMES, SuiteParams, run_suite

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_CAP = 0, 1, 2, 3
SWEEP_HEADER = ["n", "t", "m", "bound", "branch", "optimum", "match", "classes"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    seed: int = 0
    workers: int = 1
    fmt: str = "text"
    results_dir: Path = Path("results")
    i_know: bool = False

    @classmethod
    def from_args(cls, a: argparse.Namespace) -> RunConfig:
        if a.workers < 1:
            raise UsageError("--workers must be >= 1")
        out = a.out or os.environ.get("XFAM_RESULTS_DIR") or "results"
        return cls(a.seed, a.workers, a.format, Path(out), a.i_know)


def parse_range(text: str | None, name: str) -> list[int]:
    """``a..b`` (inclusive) or a single integer."""
    if text is None:
        raise UsageError(f"--{name} is required")
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            if lo > hi:
                raise UsageError(f"--{name}: empty range {text}")
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"--{name}: expected an integer or a..b, got {text!r}") from None


def _int(a: argparse.Namespace, name: str, required: bool = True) -> int | None:
    v = getattr(a, name)
    if v is None:
        if required:
            raise UsageError(f"--{name} is required")
        return None
    vals = parse_range(v, name)
    if len(vals) != 1:
        raise UsageError(f"--{name} takes a single value here")
    return vals[0]


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ----------------------------------------------------------------------------
# bound
# ----------------------------------------------------------------------------

def cmd_bound(a, cfg: RunConfig, out) -> int:
    n, t, m = _int(a, "n"), _int(a, "t"), _int(a, "m")
    k = _int(a, "k", required=False)
    rep = formulas.main_bound(n, t, m)
    extra: dict[str, int | None] = {}
    if a.all:
        extra["katona_M"] = formulas.katona_M(n, t)
        extra["frankl_wong"] = formulas.frankl_wong(n, t)
        if k is not None:
            cb = formulas.classical_bounds(n, k, t, m)
            extra["wang_zhang"] = cb["wang_zhang"]
            extra["li_zhang"] = cb["li_zhang"]
            try:
                extra["ak_M"] = formulas.ak_M(n, k, t)
            except ParameterError:
                extra["ak_M"] = None
    if cfg.fmt == "json":
        doc = rep.to_json()
        if extra:
            doc["extra"] = {key: None if v is None else str(v) for key, v in extra.items()}
        out.write(dumps(doc))
    elif cfg.fmt == "csv":
        header = ["n", "t", "m", "value", "branch", "tie", "sum_side", "m_times_M", *extra]
        row = [n, t, m, rep.value, rep.branch, rep.tie,
               rep.components["sum_side"], rep.components["m_times_M"],
               *("" if v is None else v for v in extra.values())]
        out.write(_csv_text(header, [row]))
    else:
        out.write(f"bound(n={n}, t={t}, m={m}) = {rep.value}  branch={rep.branch}"
                  f"{'  (tie)' if rep.tie else ''}\n")
        out.write(f"  sum side  = {rep.components['sum_side']}\n")
        out.write(f"  m * M     = {rep.components['m_times_M']}\n")
        for key, v in extra.items():
            out.write(f"  {key:<11}= {'n/a' if v is None else v}\n")
    return EXIT_OK


# ----------------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------------

def _grid(a) -> tuple[list[tuple[int, int, int]], list[str]]:
    cells, notes = [], []
    for n in parse_range(a.n, "n"):
        for t in parse_range(a.t, "t"):
            for m in parse_range(a.m, "m"):
                if not (1 <= t <= n) or m < 2:
                    notes.append(f"skipped (n={n}, t={t}, m={m}): need 1 <= t <= n and m >= 2")
                    continue
                cells.append((n, t, m))
    return cells, notes


def cmd_verify(a, cfg: RunConfig, out) -> int:
    cells, notes = _grid(a)
    if not cells:
        raise UsageError("no admissible (n, t, m) cells in the grid")
    for n, t, m in cells:
        oracle._check_multi_caps(n, t, m, cfg.i_know)
    cfg.results_dir.mkdir(parents=True, exist_ok=True)
    rows, docs, status, bad = [], [], EXIT_OK, []
    for n, t, m in cells:
        cert = oracle.verify_theorem(n, t, m, seed=cfg.seed, workers=cfg.workers, allow_large=cfg.i_know)
        path = cfg.results_dir / f"cert_n{n}_t{t}_m{m}.json"
        path.write_text(dumps(cert.to_json()))
        if not cert.verified:
            status = EXIT_MISMATCH
            bad.append(str(path))
        rows.append([n, t, m, cert.formula_value, cert.branch, cert.optimum, cert.verified,
                     ";".join(cert.extremal_classes)])
        docs.append(cert.to_json())
    sweep = cfg.results_dir / "sweep.csv"
    sweep.write_text(_csv_text(SWEEP_HEADER, rows))
    if cfg.fmt == "json":
        out.write(dumps({"cells": docs, "notes": notes}))
    elif cfg.fmt == "csv":
        out.write(_csv_text(SWEEP_HEADER, rows))
    else:
        for note in notes:
            out.write(note + "\n")
        for r in rows:
            n, t, m, bound, branch, opt, ok, classes = r
            out.write(f"n={n} t={t} m={m}: optimum {opt}, bound {bound} ({branch}), "
                      f"classes {classes or '-'}: {'ok' if ok else 'MISMATCH'}\n")
        out.write(f"{len(rows)} certificates written to {cfg.results_dir}\n")
    for p in bad:
        out.write(f"counterexample certificate: {p}\n")
    return status


# ----------------------------------------------------------------------------
# lemma
# ----------------------------------------------------------------------------

def cmd_lemma(a, cfg: RunConfig, out) -> int:
    if a.name not in SUITE_NAMES:
        raise UsageError(f"unknown lemma {a.name!r}; choose from {', '.join(SUITE_NAMES)}")
    params = SuiteParams(_int(a, "n", False), _int(a, "t", False), _int(a, "m", False))
    if params.t is not None and params.n is not None and not 1 <= params.t <= params.n:
        raise UsageError("need 1 <= t <= n")
    if params.m is not None and params.m < 2:
        raise UsageError("need m >= 2")
    try:
        rep = run_suite(a.name, a.trials, seed=cfg.seed, params=params, workers=cfg.workers)
    except ValueError as e:
        raise CapError(str(e)) from None
    doc = rep.to_json()
    if rep.failures:
        cfg.results_dir.mkdir(parents=True, exist_ok=True)
        for f in rep.failures:
            p = cfg.results_dir / f"counterexample_{a.name}_{cfg.seed}_{f.index}.json"
            p.write_text(dumps(f.counterexample or {"detail": f.detail}))
    if cfg.fmt == "json":
        out.write(dumps(doc))
    elif cfg.fmt == "csv":
        out.write(_csv_text(["lemma", "seed", "requested", "attempts", "instances", "passed", "failed"],
                            [[a.name, cfg.seed, rep.requested, rep.attempts, rep.instances, rep.passed,
                              len(rep.failures)]]))
    else:
        out.write(f"{a.name}: {rep.passed}/{rep.instances} pass "
                  f"({rep.attempts} attempts, seed {cfg.seed})\n")
        for hyp, c in sorted(rep.skipped.items()):
            out.write(f"  skipped {c}: {hyp}\n")
        for key, c in sorted(rep.observations.items()):
            out.write(f"  observed {key}: {c}\n")
        for f in rep.failures:
            out.write(f"  FAIL attempt {f.index}: {f.detail}\n")
        for tr in rep.sample_traces:
            out.write(f"  trace {json.dumps(tr, sort_keys=True)}\n")
    if rep.exhausted:
        out.write(f"instance search exhausted: found {rep.instances} of {rep.requested}\n")
    if rep.failures:
        return EXIT_MISMATCH
    if rep.instances == 0:
        return EXIT_USAGE
    return EXIT_OK


# ----------------------------------------------------------------------------
# family
# ----------------------------------------------------------------------------

def _emit_families(out, cfg: RunConfig, n: int, named: list[tuple[str, Family]], info: dict) -> None:
    if cfg.fmt == "json":
        doc = families_to_json(n, [f for _, f in named], names=[nm for nm, _ in named],
                               sizes=[len(f) for _, f in named], **info)
        out.write(dumps(doc))
    elif cfg.fmt == "csv":
        rows = [[nm, len(f), format_family_text(f).replace("\n", " ")] for nm, f in named]
        out.write(_csv_text(["name", "size", "members"], rows))
    else:
        for nm, f in named:
            out.write(f"{nm}: {len(f)} sets\n")
            out.write(format_family_text(f) + "\n")
        for key, v in info.items():
            out.write(f"{key}: {v}\n")


def cmd_family(a, cfg: RunConfig, out) -> int:
    n, t = _int(a, "n"), _int(a, "t")
    info: dict = {}
    status = EXIT_OK
    if a.kind == "katona":
        K = formulas.katona_family(n, t)
        label = "K" if (n + t) % 2 == 0 else "K'"
        named = [(f"{label}({n},{t})", K)]
        if a.check is not None:
            ok = is_t_intersecting(K, a.check)
            info.update({"intersecting": ok, "size": len(K), "formula": formulas.katona_M(n, t)})
            status = EXIT_OK if ok and len(K) == formulas.katona_M(n, t) else EXIT_MISMATCH
    elif a.kind == "rs":
        ell = _int(a, "l")
        R, S = formulas.rs_families(n, ell, t)
        named = [(f"R({n},{ell})", R), (f"S({n},{ell})", S)]
        if a.check is not None:
            ok = is_cross_t_intersecting(R, S, a.check)
            info.update({"cross_intersecting": ok, "norm": len(R) + len(S),
                         "formula": formulas.f_ell(n, t, 2, ell)})
            status = EXIT_OK if ok and len(R) + len(S) == formulas.f_ell(n, t, 2, ell) else EXIT_MISMATCH
    elif a.kind == "frankl":
        k, r = _int(a, "k"), _int(a, "r")
        F = formulas.ak_frankl_family(n, k, t, r)
        named = [(f"F_{r}({n},{k},{t})", F)]
        if a.check is not None:
            ok = is_t_intersecting(F, a.check)
            info.update({"intersecting": ok, "size": len(F), "formula": formulas.frankl_size(n, k, t, r)})
            status = EXIT_OK if ok and len(F) == formulas.frankl_size(n, k, t, r) else EXIT_MISMATCH
    else:
        raise UsageError(f"unknown construction {a.kind!r}")
    _emit_families(out, cfg, n, named, info)
    return status


# ----------------------------------------------------------------------------
# recheck
# ----------------------------------------------------------------------------

def cmd_recheck(a, cfg: RunConfig, out) -> int:
    status = EXIT_OK
    for path in a.paths:
        try:
            cert = oracle.Certificate.from_json(json.loads(Path(path).read_text()))
        except (OSError, ValueError, KeyError, TypeError) as e:
            raise UsageError(f"cannot read certificate {path}: {e}") from None
        problems = oracle.recheck_certificate(cert)
        if problems:
            status = EXIT_MISMATCH
        out.write(f"{path}: {'ok' if not problems else 'FAILED'}\n")
        for p in problems:
            out.write(f"  {p}\n")
    return status


# ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--out", default=None, help="results directory (default $XFAM_RESULTS_DIR or ./results)")
    common.add_argument("--i-know", action="store_true", help="allow runs beyond the default size caps")

    p = _Parser(prog="xfam", description="Bounds, constructions and exhaustive checks for "
                "pairwise cross t-intersecting families.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bound", parents=[common], help="closed-form bound for (n, t, m)")
    for flag in ("n", "t", "m", "k"):
        b.add_argument(f"--{flag}")
    b.add_argument("--all", action="store_true", help="also print the classical bounds")

    v = sub.add_parser("verify", parents=[common], help="exhaustive check of the bound over a grid")
    for flag in ("n", "t", "m"):
        v.add_argument(f"--{flag}", help="integer or inclusive range a..b")

    lm = sub.add_parser("lemma", parents=[common], help="randomized property suite for one lemma")
    lm.add_argument("--name", required=True)
    for flag in ("n", "t", "m"):
        lm.add_argument(f"--{flag}")
    lm.add_argument("--trials", type=int, default=1000)

    f = sub.add_parser("family", parents=[common], help="print an extremal construction")
    f.add_argument("kind", choices=["katona", "rs", "frankl"])
    for flag in ("n", "t", "k", "l", "r"):
        f.add_argument(f"--{flag}")
    f.add_argument("--check", type=int, metavar="T", help="run the t-intersecting check for this t")

    rc = sub.add_parser("recheck", parents=[common], help="re-verify certificate files")
    rc.add_argument("paths", nargs="+")
    return p


COMMANDS = {"bound": cmd_bound, "verify": cmd_verify, "lemma": cmd_lemma,
            "family": cmd_family, "recheck": cmd_recheck}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        a = build_parser().parse_args(argv)
        cfg = RunConfig.from_args(a)
        return COMMANDS[a.command](a, cfg, out)
    except UsageError as e:
        print(f"xfam: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapError as e:
        print(f"xfam: cap exceeded: {e} (rerun with --i-know to override)", file=sys.stderr)
        return EXIT_CAP
    except ParameterError as e:
        print(f"xfam: invalid parameters: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
