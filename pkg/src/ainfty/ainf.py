"""Identities, morphisms, homotopies, units and deformations on the m-side.

The checks here evaluate the signed identities directly with the signs
``(-1)^(r+st)`` and the Koszul rule for elements of their actual degree; the
bar module evaluates the same content sign-free.  Agreement of the two is
tested separately.
"""

from __future__ import annotations

from typing import Mapping

from .bar import (BarFamily, Report, bar_morphism_and_homotopy, bar_transform, insert_terms,
                  multi_terms)
from .field import clean
from .graded import StructureError
from .linalg import inverse
from .structure import AInfCategory, AInfHomotopy, AInfMorphism, Gen, add_families


def _stasheff_sign(r, s, t, prefix):
    return -1 if (r + s * t) % 2 else 1


def _composite_sign(blocks):
    """``(r-1)(i_1-1) + (r-2)(i_2-1) + ... + (i_{r-1}-1)``."""
    r = len(blocks)
    return -1 if sum((r - 1 - j) * (i - 1) for j, i in enumerate(blocks)) % 2 else 1


def _cut(fam: Mapping, max_arity: int | None) -> dict:
    if max_arity is None:
        return dict(fam)
    return {w: lc for w, lc in fam.items() if len(w) <= max_arity}


def stasheff_defect(A: AInfCategory) -> dict:
    """``sum (-1)^(r+st) m_u (1^r (x) m_s (x) 1^t)`` on every word where it is nonzero."""
    return insert_terms(A.F, A.ops, A.ops, A, lambda s: 2 - s, _stasheff_sign, shift=0)


def check_stasheff(A: AInfCategory, max_arity: int | None = None) -> Report:
    """All Stasheff identities; ``max_arity`` limits the reported arities
    (used for structures known only up to a truncation)."""
    rep = Report("Stasheff identities", _cut(stasheff_defect(A), max_arity),
                 max_arity or 2 * A.arity_bound - 1)
    return rep


def morphism_defect(f: AInfMorphism) -> dict:
    A, B = f.source, f.target
    F = A.F
    lhs = insert_terms(F, f.comps, A.ops, A, lambda s: 2 - s, _stasheff_sign, shift=0)
    rhs = multi_terms(F, B.ops, [(f.comps, lambda i: 1 - i)], lambda r: [(0,) * r], A,
                      _composite_sign, shift=0)
    return add_families(F, lhs, rhs, coeffs=[1, -1])


def check_morphism(f: AInfMorphism, max_arity: int | None = None) -> Report:
    for o in f.source.objects:
        if f.objmap.get(o) not in f.target.objects:
            raise StructureError(f"object map undefined at {o!r}")
    return Report("morphism identities", _cut(morphism_defect(f), max_arity),
                  max_arity or f.source.arity_bound + f.target.arity_bound)


def compose_morphisms(f: AInfMorphism, g: AInfMorphism) -> AInfMorphism:
    """``f o g``: ``sum (-1)^s f_r (g_{i1} (x) ... (x) g_{ir})``."""
    if g.target is not f.source and g.target != f.source:
        raise StructureError("compose_morphisms: target of g is not the source of f")
    F = f.F
    comps = multi_terms(F, f.comps, [(g.comps, lambda i: 1 - i)], lambda r: [(0,) * r],
                        g.source, _composite_sign, shift=0)
    objmap = {o: f.objmap[g.objmap[o]] for o in g.source.objects}
    return AInfMorphism(g.source, f.target, comps, objmap)


def check_homotopy(f: AInfMorphism, g: AInfMorphism, h: AInfHomotopy,
                   lift_check_len: int = 0) -> Report:
    return bar_morphism_and_homotopy(bar_transform(f), bar_transform(g), bar_transform(h),
                                     lift_check_len=lift_check_len)


# ---- homology -----------------------------------------------------------------

def homology_algebra(A: AInfCategory, contraction=None) -> AInfCategory:
    """``H*A`` with the product induced by m_2 on the chosen representatives."""
    from .transfer import build_contraction

    c = contraction or build_contraction(A)
    F = A.F
    ops: dict = {}
    m2 = {w: lc for w, lc in A.ops.items() if len(w) == 2}
    H = c.H
    for w in H.composable_words(2):
        acc: dict = {}
        for a, ca in c.i[w[0]].items():
            for b, cb in c.i[w[1]].items():
                for z, cz in m2.get((a, b), {}).items():
                    acc[z] = acc.get(z, 0) + ca * cb * cz
        out = c.project(clean(F, acc))
        if out:
            ops[w] = out
    Hm = H.with_ops(ops, name=f"H({A.name})" if A.name else "")
    assoc = check_stasheff(Hm)
    if not assoc.ok:
        raise StructureError(f"induced product is not associative: {assoc.summary()}")
    return Hm


def induced_map(f: AInfMorphism, cA=None, cB=None) -> dict:
    """``H(f_1)`` as ``{class of source: {class of target: coeff}}``."""
    from .transfer import build_contraction

    cA = cA or build_contraction(f.source)
    cB = cB or build_contraction(f.target)
    f1 = {w[0]: lc for w, lc in f.comps.items() if len(w) == 1}
    out = {}
    for x, v in cA.i.items():
        acc: dict = {}
        for a, ca in v.items():
            for b, cb in f1.get(a, {}).items():
                acc[b] = acc.get(b, 0) + ca * cb
        out[x] = cB.project(clean(f.F, acc))
    return out


def is_quasi_iso(f: AInfMorphism, cA=None, cB=None) -> tuple[bool, dict]:
    from .transfer import build_contraction

    cA = cA or build_contraction(f.source)
    cB = cB or build_contraction(f.target)
    Hf = induced_map(f, cA, cB)
    F = f.F
    blocks: dict = {}
    for x, g in cA.H.gens.items():
        blocks.setdefault((f.objmap[g.src], f.objmap[g.dst], g.degree), [[], []])[0].append(x)
    for y, g in cB.H.gens.items():
        blocks.setdefault((g.src, g.dst, g.degree), [[], []])[1].append(y)
    ok = True
    for key, (xs, ys) in blocks.items():
        if len(xs) != len(ys):
            ok = False
            break
        M = [[Hf[x].get(y, F.zero) for x in xs] for y in ys]
        if xs and inverse(F, M) is None:
            ok = False
            break
    return ok, Hf


# ---- inversion ----------------------------------------------------------------

def invert_minimal_morphism(f: AInfMorphism, arity: int | None = None) -> AInfMorphism:
    """Two-sided inverse of a morphism of minimal structures, up to ``arity``.

    On the bar side ``(G F)_n = G_n (F_1^{(x) n}) + sum_{r<n} G_r (F (x)...(x) F)``,
    so ``G_n = -(sum_{r<n} ...) o (F_1^{-1})^{(x) n}`` fixes every arity.
    """
    A, B = f.source, f.target
    F = f.F
    if not A.is_minimal() or not B.is_minimal():
        raise StructureError("invert_minimal_morphism: m_1 must vanish on both sides")
    inv_obj = {}
    for a, b in f.objmap.items():
        if b in inv_obj:
            raise StructureError("object map is not injective")
        inv_obj[b] = a
    if set(inv_obj) != set(B.objects):
        raise StructureError("object map is not bijective")
    f1 = {w[0]: lc for w, lc in f.comps.items() if len(w) == 1}
    g1: dict = {}
    keys = {}
    for x, gen in A.gens.items():
        keys.setdefault((f.objmap[gen.src], f.objmap[gen.dst], gen.degree), [[], []])[0].append(x)
    for y, gen in B.gens.items():
        keys.setdefault((gen.src, gen.dst, gen.degree), [[], []])[1].append(y)
    for key, (xs, ys) in keys.items():
        M = [[f1.get(x, {}).get(y, F.zero) for x in xs] for y in ys]
        Minv = inverse(F, M) if len(xs) == len(ys) else None
        if Minv is None:
            raise StructureError(f"f_1 is not invertible on {key}")
        for j, y in enumerate(ys):
            g1[y] = {xs[i]: Minv[i][j] for i in range(len(xs)) if Minv[i][j]}
    arity = arity or max(f.arity_bound, A.arity_bound, B.arity_bound)
    Fb = bar_transform(f)
    G = {(y,): lc for y, lc in g1.items() if lc}
    for n in range(2, arity + 1):
        Gb = BarFamily(B, A, G, 0, dict(inv_obj))
        C = multi_terms(F, Gb.entries, [(Fb.entries, 0)], lambda r: [(0,) * r], A, length=n)
        if not C:
            continue
        for y in B.composable_words(n):
            acc: dict = {}
            terms = [((), F.one)]
            for yi in y:
                terms = [(w + (x,), c * v) for w, c in terms for x, v in g1.get(yi, {}).items()]
            for w, c in terms:
                for z, v in C.get(w, {}).items():
                    acc[z] = acc.get(z, 0) - c * v
            acc = clean(F, acc)
            if acc:
                G[y] = acc
    g = bar_transform(BarFamily(B, A, G, 0, dict(inv_obj)))
    return g


def identity_defect(f: AInfMorphism, arity: int) -> dict:
    """Entries where ``f`` differs from the identity, up to ``arity``."""
    ident = {(x,): {x: f.F.one} for x in f.source.gens}
    d = add_families(f.F, f.comps, ident, coeffs=[1, -1])
    return {w: lc for w, lc in d.items() if len(w) <= arity}


# ---- strict units and augmentation -------------------------------------------

def validate_units(A: AInfCategory) -> Report:
    """Strict identities: ``m_2(e, x) = x = m_2(x, e)`` and ``m_n(..e..) = 0`` for n != 2."""
    F = A.F
    defects: dict = {}
    units = A.units
    unit_names = set(units.values())
    for obj in A.objects:
        if obj not in units:
            defects[("<missing>", obj)] = {"identity": F.one}
    for x, g in A.gens.items():
        if g.dst in units:
            got = A.m(units[g.dst], x)
            if got != {x: F.one}:
                defects[(units[g.dst], x)] = clean(F, {**got, x: got.get(x, 0) - 1})
        if g.src in units:
            got = A.m(x, units[g.src])
            if got != {x: F.one}:
                defects[(x, units[g.src])] = clean(F, {**got, x: got.get(x, 0) - 1})
    for w, lc in A.ops.items():
        if len(w) != 2 and unit_names.intersection(w):
            defects[w] = lc
    return Report("strict identities", defects)


def augment(B: AInfCategory, unit: str = "1") -> AInfCategory:
    """Adjoin a strict unit to a one-object structure: ``k (+) B``."""
    if len(B.objects) != 1:
        raise StructureError("augment expects a one-object structure")
    if unit in B.gens:
        raise StructureError(f"name {unit!r} already used")
    obj = B.objects[0]
    F = B.F
    gens = {unit: Gen(obj, obj, 0), **B.gens}
    ops = dict(B.ops)
    ops[(unit, unit)] = {unit: F.one}
    for x in B.gens:
        ops[(unit, x)] = {x: F.one}
        ops[(x, unit)] = {x: F.one}
    return AInfCategory(F, [obj], gens, ops, {obj: unit}, max(B.arity_bound, 2), B.name)


def reduce_augmented(A: AInfCategory, unit: str | None = None) -> AInfCategory:
    """``ker eps`` where ``eps`` reads off the unit coordinate."""
    if len(A.objects) != 1:
        raise StructureError("reduce expects a one-object structure")
    obj = A.objects[0]
    unit = unit or A.units.get(obj)
    if unit is None:
        raise StructureError("no augmentation declared")
    rep = validate_units(A)
    if not rep.ok:
        raise StructureError(f"unit equations fail: {rep.summary()}")
    gens = {x: g for x, g in A.gens.items() if x != unit}
    ops = {}
    for w, lc in A.ops.items():
        if unit in w:
            continue
        if unit in lc:
            raise StructureError(f"kernel of the augmentation is not closed: {w!r} -> {unit!r}")
        ops[w] = lc
    return AInfCategory(A.F, [obj], gens, ops, None, None, A.name)


def unit_and_augmentation(A: AInfCategory) -> Report:
    return validate_units(A)


# ---- Hochschild cocycles and first-order deformations ---------------------------

def hochschild_differential(B: AInfCategory, c: Mapping, n: int) -> dict:
    """``delta c`` for an n-cochain on an ungraded algebra, on all words of length n+1.

    ``(delta c)(b0..bn) = b0 c(b1..bn) + sum_i (-1)^(i+1) c(..b_i b_{i+1}..)
    + (-1)^(n+1) c(b0..b_{n-1}) bn``.
    """
    F = B.F
    m2 = {w: lc for w, lc in B.ops.items() if len(w) == 2}

    def mul(x, y):
        return m2.get((x, y), {})

    def cval(w):
        return c.get(tuple(w), {})

    out = {}
    for w in B.composable_words(n + 1):
        acc: dict = {}
        for z, v in cval(w[1:]).items():
            for y, u in mul(w[0], z).items():
                acc[y] = acc.get(y, 0) + v * u
        for i in range(n):
            sg = -1 if i % 2 == 0 else 1
            for z, v in mul(w[i], w[i + 1]).items():
                for y, u in cval(w[:i] + (z,) + w[i + 2:]).items():
                    acc[y] = acc.get(y, 0) + sg * v * u
        sg = 1 if (n + 1) % 2 == 0 else -1
        for z, v in cval(w[:-1]).items():
            for y, u in mul(z, w[-1]).items():
                acc[y] = acc.get(y, 0) + sg * v * u
        acc = clean(F, acc)
        if acc:
            out[w] = acc
    return out


def deformation(B: AInfCategory, c: Mapping, n: int, prefix: str = "eps*") -> AInfCategory:
    """``B (+) eps B`` with ``eps`` of degree 2-n, ``eps^2 = 0``, ``m_2`` extended
    and ``m_n = m_n^B + eps c`` on words of B."""
    if any(g.degree for g in B.gens.values()) or len(B.objects) != 1:
        raise StructureError("deformations are built over ungraded one-object algebras")
    if any(len(w) != 2 for w in B.ops):
        raise StructureError("base must be an associative algebra (m_2 only)")
    F = B.F
    obj = B.objects[0]
    e = {x: prefix + x for x in B.gens}
    degrees = {x: 0 for x in B.gens}
    degrees.update({e[x]: 2 - n for x in B.gens})
    ops: dict = {}
    for (x, y), lc in B.ops.items():
        ops[(x, y)] = dict(lc)
        ops[(e[x], y)] = {e[z]: v for z, v in lc.items()}
        ops[(x, e[y])] = {e[z]: v for z, v in lc.items()}
    for w, lc in c.items():
        w = tuple(w)
        if len(w) != n:
            raise StructureError(f"cochain entry {w!r} does not have arity {n}")
        slot = ops.setdefault(w, {})
        for z, v in lc.items():
            slot[e[z]] = slot.get(e[z], 0) + v
    gens = {x: Gen(obj, obj, d) for x, d in degrees.items()}
    return AInfCategory(F, [obj], gens, ops, None, max(n, 2))


def hochschild_deformation_check(B: AInfCategory, c: Mapping, n: int) -> tuple[bool, bool]:
    """(deformation satisfies the Stasheff identities, c is a Hochschild cocycle)."""
    D = deformation(B, c, n)
    return check_stasheff(D).ok, not hochschild_differential(B, c, n)


# ---- homotopies ------------------------------------------------------------------

def homotopic_morphism(f: AInfMorphism, h: AInfHomotopy, arity: int) -> AInfMorphism:
    """The morphism ``g`` with ``f - g = b H + H b``, solved arity by arity.

    At arity n the right side involves ``g`` only in arities below n.
    """
    from .bar import homotopy_patterns

    F = f.F
    A, B = f.source, f.target
    Fb, Hb = bar_transform(f).entries, bar_transform(h).entries
    bA, bB = bar_transform(A).entries, bar_transform(B).entries
    G: dict = {}
    for n in range(1, arity + 1):
        bh = multi_terms(F, bB, [(Fb, 0), (Hb, -1), (G, 0)], homotopy_patterns, A, length=n)
        hb = insert_terms(F, Hb, bA, A, 1, length=n)
        fn = {w: lc for w, lc in Fb.items() if len(w) == n}
        G.update(add_families(F, fn, bh, hb, coeffs=[1, -1, -1]))
    return bar_transform(BarFamily(A, B, G, 0, dict(f.objmap)))


def homotopy_slots(f: AInfMorphism, arity: int) -> list:
    """All (word, output) pairs a homotopy component can occupy, up to ``arity``."""
    A, B = f.source, f.target
    slots = []
    for n in range(1, arity + 1):
        for w in A.composable_words(n):
            deg = A.word_degree(w) - n
            s, t = f.objmap[A.gens[w[-1]].src], f.objmap[A.gens[w[0]].dst]
            for y in B.hom(s, t):
                if B.gens[y].degree == deg:
                    slots.append((w, y))
    return slots


def find_homotopy(f: AInfMorphism, g: AInfMorphism, arity: int) -> AInfHomotopy | None:
    """Solve ``f - g = b H + H b`` for H by linear algebra, up to ``arity``.

    The identity is linear in H, so each slot's column is the defect of the
    homotopy with a single unit entry there, minus the defect of H = 0.
    """
    from .bar import bar_homotopy_defect
    from .linalg import solve

    F = f.F
    A, B = f.source, f.target
    slots = homotopy_slots(f, arity)
    Fb, Gb = bar_transform(f), bar_transform(g)
    bA, bB = bar_transform(A), bar_transform(B)

    def defect(entries):
        Hb = BarFamily(A, B, entries, -1, dict(f.objmap))
        d = bar_homotopy_defect(Fb, Gb, Hb, bA, bB)
        return {(w, y): c for w, lc in d.items() if len(w) <= arity for y, c in lc.items()}

    base = defect({})
    if not base:
        return AInfHomotopy(A, B, {}, f.objmap)
    cols = []
    for w, y in slots:
        d = defect({w: {y: F.one}})
        cols.append({k: F(d.get(k, 0) - base.get(k, 0)) for k in set(d) | set(base)})
    keys = sorted({k for c in cols for k in c if c[k]} | set(base), key=repr)
    kix = {k: i for i, k in enumerate(keys)}
    rows = [dict() for _ in keys]
    for j, col in enumerate(cols):
        for k, c in col.items():
            if c:
                rows[kix[k]][j] = c
    rhs = [F(-base.get(k, 0)) for k in keys]
    x = solve(F, rows, rhs, len(slots))
    if x is None:
        return None
    entries: dict = {}
    for j, c in x.items():
        w, y = slots[j]
        entries.setdefault(w, {})[y] = c
    return bar_transform(BarFamily(A, B, entries, -1, dict(f.objmap)))
