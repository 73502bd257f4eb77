"""Tabulate how often the push/pull transform changes the extent of its input.

Norm growth and cross-intersection always hold in our runs; the extent does
not survive when the largest class is the only one populated. This script
counts both outcomes per (n, t) and prints the first offending instance.
"""

import argparse
from collections import Counter

from xfam.compress import seq_extent
from xfam.errors import HypothesisError
from xfam.family import families_to_json
from xfam.instances import random_cross_sequence, trial_rng
from xfam.lemmas import le5_pushing_pulling


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--attempts", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    tally = Counter()
    example = None
    for i in range(args.attempts):
        rng = trial_rng(args.seed, i, salt="probe")
        n = rng.randint(4, 6)
        t = rng.randint(1, min(3, n))
        S = random_cross_sequence(rng, n, t, rng.randint(2, 3))
        try:
            out, tr = le5_pushing_pulling(S)
        except HypothesisError:
            continue
        kept = tr.output_extent == seq_extent(S)
        tally[(n, t, kept)] += 1
        if not kept and example is None:
            example = (S, out, tr)

    print("n t  kept changed")
    for n, t in sorted({(n, t) for n, t, _ in tally}):
        print(f"{n} {t}  {tally[(n, t, True)]:4d} {tally[(n, t, False)]:7d}")
    if example:
        S, out, tr = example
        print("first change:", tr.notes[-1])
        print(" input ", families_to_json(S.n, list(S.families)))
        print(" output", families_to_json(out.n, list(out.families)))


if __name__ == "__main__":
    main()
