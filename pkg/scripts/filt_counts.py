"""Indecomposable filtered twisted objects versus quiver representation counts.

    python scripts/filt_counts.py [p ...]      (primes, default 2 3)
"""

import sys
import time

from ainfty.field import GF
from ainfty.fixtures import fixture_a4cat, fixture_d4cat
from ainfty.quiver import b9_presentation, build_algebra, d4_presentation, rep_enumerate
from ainfty.twisted import filt_enumerate


def row(label, count, oracle, seconds):
    print(f"{label:<22} {count:>5} {oracle:>7} {seconds:>8.2f}s")


def main(primes):
    print(f"{'structure':<22} {'filt':>5} {'oracle':>7} {'time':>9}")
    for p in primes:
        F = GF(p)
        cases = [
            (f"A4cat over F{p}", fixture_a4cat(F), rep_enumerate(build_algebra(b9_presentation(F)), 1)),
            (f"D4cat over F{p}", fixture_d4cat(F), None),
            (f"D4cat - m3 over F{p}", fixture_d4cat(F, drop_m3=True),
             rep_enumerate(build_algebra(d4_presentation(F)), 1)),
        ]
        for label, A, oracle in cases:
            t = time.perf_counter()
            inv = filt_enumerate(A, bound=1, cap=10**6)
            row(label, inv.n_indecomposable, "-" if oracle is None else oracle.n_indecomposable,
                time.perf_counter() - t)


if __name__ == "__main__":
    main([int(a) for a in sys.argv[1:]] or [2, 3])
