"""Run every randomized lemma suite and print a one-line summary per suite."""

import argparse
import json
from pathlib import Path

from xfam.suites import SUITE_NAMES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--only", nargs="*", default=None)
    ap.add_argument("--out", type=Path, default=None, help="write a JSON summary here")
    args = ap.parse_args()

    summary = {}
    for name in args.only or SUITE_NAMES:
        rep = run_suite(name, args.trials, seed=args.seed, workers=args.workers)
        summary[name] = rep.to_json()
        extra = f" {rep.observations}" if rep.observations else ""
        print(f"{name:16s} {rep.passed:5d}/{rep.instances:<5d} attempts={rep.attempts}"
              f" failed={len(rep.failures)}{extra}")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return 1 if any(s["failed"] for s in summary.values()) else 0


if __name__ == "__main__":
    raise SystemExit(main())
