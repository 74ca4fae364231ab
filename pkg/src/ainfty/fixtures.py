"""Small named structures used throughout the tests and the CLI."""

from __future__ import annotations

from .field import QQ, Field
from .structure import AInfCategory, Gen


def _with_units(F, objects, gens, ops, units: bool, name):
    gens = dict(gens)
    ops = dict(ops)
    unit_names = {}
    if units:
        for o in objects:
            e = f"e_{o}"
            gens[e] = Gen(o, o, 0)
            unit_names[o] = e
        for x, g in list(gens.items()):
            ops[(unit_names[g.dst], x)] = {x: 1}
            ops[(x, unit_names[g.src])] = {x: 1}
    return AInfCategory(F, objects, gens, ops, unit_names or None, None, name)


def ext_a4(F: Field = QQ, units: bool = False, drop_m3: bool = False) -> AInfCategory:
    """Extensions between the simples of the A4 quiver with one zero relation.

    a: y -> x, b: z -> y, c: t -> z in degree 1, e: t -> x in degree 2,
    with m_3(a, b, c) = e and all other products zero.
    """
    objects = ["x", "y", "z", "t"]
    gens = {"a": Gen("y", "x", 1), "b": Gen("z", "y", 1), "c": Gen("t", "z", 1),
            "e": Gen("t", "x", 2)}
    ops = {} if drop_m3 else {("a", "b", "c"): {"e": 1}}
    return _with_units(F, objects, gens, ops, units, "Ecat" if units else "E")


def fixture_e(F: Field = QQ) -> AInfCategory:
    return ext_a4(F, units=False)


def fixture_ecat(F: Field = QQ) -> AInfCategory:
    return ext_a4(F, units=True)


def fixture_a4cat(F: Field = QQ) -> AInfCategory:
    cat = ext_a4(F, units=True)
    cat.name = "A4cat"
    return cat


def fixture_d4cat(F: Field = QQ, drop_m3: bool = False) -> AInfCategory:
    """Four objects with a: 1->2, b: 3->4, c: 1->4 of degree 1, f: 2->3 of
    degree 0, m_3(b, f, a) = c and strict identities."""
    objects = ["1", "2", "3", "4"]
    gens = {"a": Gen("1", "2", 1), "b": Gen("3", "4", 1), "c": Gen("1", "4", 1),
            "f": Gen("2", "3", 0)}
    ops = {} if drop_m3 else {("b", "f", "a"): {"c": 1}}
    return _with_units(F, objects, gens, ops, True, "D4cat")


def fixture_generic_pair(F: Field = QQ, parity: int = 0, arity: int = 4) -> AInfCategory:
    """Objects P, Q with degree-1 endomorphisms d, d' and f: P -> Q of the given
    parity.  Every word ``(d'^a, f, d^b)`` of length at most ``arity`` has its
    own output ``o{a}{b}``, so each term of a formula in these operations can
    be read off separately.  All other products vanish apart from the units."""
    gens = {"d": Gen("P", "P", 1), "d'": Gen("Q", "Q", 1), "f": Gen("P", "Q", parity)}
    ops = {}
    for a in range(arity):
        for b in range(arity - a):
            out = f"o{a}{b}"
            gens[out] = Gen("P", "Q", parity + 1)
            ops[("d'",) * a + ("f",) + ("d",) * b] = {out: 1}
    cat = _with_units(F, ["P", "Q"], gens, ops, True, "pair")
    return cat.with_ops(cat.ops, arity_bound=arity)


FIXTURES = {
    "E": fixture_e,
    "Ecat": fixture_ecat,
    "A4cat": fixture_a4cat,
    "D4cat": fixture_d4cat,
    "pair": fixture_generic_pair,
}
