"""How often each sign rule for the Yoneda realization of a twisted object
produces a valid module, over random Maurer-Cartan objects.

    python scripts/sign_rules.py [samples] [seed]
"""

import random
import sys

from ainfty.field import GF
from ainfty.fixtures import fixture_d4cat, fixture_ecat
from ainfty.modules import check_module
from ainfty.twisted import random_twisted_objects, shift_category, yoneda_realize


def survey(A, samples, seed):
    Z = shift_category(A, (-1, 0, 1))
    rng = random.Random(seed)
    tally = {"bar": 0, "display": 0}
    objs = random_twisted_objects(Z, rng, count=samples, max_blocks=4, tries=50 * samples)
    for X in objs:
        for rule in tally:
            tally[rule] += check_module(yoneda_realize(X, rule), 4).ok
    return len(objs), tally


def main(samples=120, seed=0):
    for label, A in (("Ecat over F3", fixture_ecat(GF(3))), ("D4cat over F3", fixture_d4cat(GF(3)))):
        n, tally = survey(A, samples, seed)
        print(f"{label}: {n} objects; valid modules  bar rule {tally['bar']}/{n}  "
              f"display rule {tally['display']}/{n}")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:]]
    main(*args)
