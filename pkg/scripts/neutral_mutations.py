"""Share of single-coefficient mutations of valid dg algebras that leave the
A-infinity identities intact (and so cannot be detected by any checker).

    python scripts/neutral_mutations.py [trials] [seed]
"""

import random
import sys

from ainfty.ainf import check_stasheff
from ainfty.field import GF
from ainfty.random_structures import mutate_coefficient, random_dg_algebra


def main(trials=500, seed=0):
    rng = random.Random(seed)
    neutral = corrupting = skipped = 0
    for _ in range(trials):
        A = random_dg_algebra(GF(7), rng)
        try:
            B, _ = mutate_coefficient(A, rng)
        except ValueError:
            skipped += 1
            continue
        if check_stasheff(B).ok:
            neutral += 1
        else:
            corrupting += 1
    print(f"{trials} trials: {corrupting} corrupting, {neutral} neutral, {skipped} without a slot")


if __name__ == "__main__":
    main(*[int(a) for a in sys.argv[1:]])
