"""The bar side: families on the suspension, where the identities are sign-free.

An m-side entry on the word ``x = (x1, ..., xn)`` corresponds to the b-side
entry on ``(s x1, ..., s xn)`` multiplied by ``(-1)^(sum_i |x_i| (n - i))``,
the sign produced by ``s^{(x) n}`` passing the elements.  This makes
``b_n s^{(x) n} = s m_n`` commute for every arity.  Basis names are shared
between the two sides; only degrees (``|s x| = |x| - 1``) and signs change.

All evaluations here are sparse: instead of looping over basis words, each
nonzero term of an identity is produced by joining structure-constant
entries through an index on outputs.  Every word on which some term is
nonzero is visited, so the checks are exhaustive for any arity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .field import Field, clean
from .graded import StructureError
from .structure import (AInfCategory, AInfHomotopy, AInfMorphism, Family, add_families,
                        by_output, clean_family)


def suspension_sign(degrees: Sequence[int]) -> int:
    """Sign of ``s^{(x) n}`` on a word with the given m-side degrees."""
    n = len(degrees)
    return -1 if sum(d * (n - 1 - i) for i, d in enumerate(degrees)) % 2 else 1


def transport(F: Field, fam: Mapping, cat: AInfCategory) -> Family:
    """Multiply each entry by the suspension sign of its word (an involution)."""
    out = {}
    for w, lc in fam.items():
        sg = suspension_sign([cat.gens[x].degree for x in w])
        out[w] = {y: F(sg * c) for y, c in lc.items()} if sg < 0 else dict(lc)
    return out


@dataclass
class BarFamily:
    """Maps ``(SA)^{(x) n} -> SB`` of a fixed degree: +1 for codifferentials,
    0 for coalgebra morphisms, -1 for homotopies."""

    source: AInfCategory
    target: AInfCategory
    entries: Family
    degree: int
    objmap: dict = field(default_factory=dict)

    def __post_init__(self):
        F = self.source.F
        self.entries = clean_family(F, self.entries)
        for w, lc in self.entries.items():
            d = sum(self.source.gens[x].degree - 1 for x in w) + self.degree
            for y in lc:
                if self.target.gens[y].degree - 1 != d:
                    raise StructureError(
                        f"b-side entry {w!r} -> {y!r} does not have degree {self.degree}")

    @property
    def F(self) -> Field:
        return self.source.F

    def by_output(self):
        return by_output(self.entries)


def bar_transform(obj):
    """Pass between the m-side and the b-side.

    AInfCategory -> BarFamily of degree 1; AInfMorphism -> degree 0;
    AInfHomotopy -> degree -1; a BarFamily goes back to the matching m-side
    object.  The round trip is the identity.
    """
    if isinstance(obj, AInfCategory):
        return BarFamily(obj, obj, transport(obj.F, obj.ops, obj), 1)
    if isinstance(obj, AInfMorphism):
        return BarFamily(obj.source, obj.target, transport(obj.F, obj.comps, obj.source), 0,
                         dict(obj.objmap))
    if isinstance(obj, AInfHomotopy):
        return BarFamily(obj.source, obj.target, transport(obj.F, obj.comps, obj.source), -1,
                         dict(obj.objmap))
    if isinstance(obj, BarFamily):
        fam = transport(obj.F, obj.entries, obj.source)
        if obj.degree == 1:
            if obj.source is not obj.target:
                raise StructureError("a degree +1 family must be an endomorphism family")
            return obj.source.with_ops(fam)
        if obj.degree == 0:
            return AInfMorphism(obj.source, obj.target, fam, obj.objmap or None)
        if obj.degree == -1:
            return AInfHomotopy(obj.source, obj.target, fam, obj.objmap or None)
    raise StructureError(f"cannot transform {type(obj).__name__}")


# ---- sparse term generators -------------------------------------------------

def _bardeg(cat: AInfCategory, w, shift: int = 1) -> int:
    return sum(cat.gens[x].degree - shift for x in w)


def _mapdeg(d, n):
    return d(n) if callable(d) else d


def insert_terms(F: Field, outer: Mapping, inner: Mapping, cat: AInfCategory,
                 inner_degree, sign: Callable | None = None, shift: int = 1,
                 length: int | None = None) -> Family:
    """``sum outer_u (1^r (x) inner_s (x) 1^t)`` over all entries.

    The Koszul sign is ``(-1)^(inner_degree * (sum of bar degrees of x_1..x_r))``;
    an extra ``sign(r, s, t, prefix)`` factor may be supplied (used on the
    m-side).  ``cat`` describes the input words.  ``inner_degree`` may be a
    function of the inner arity; ``shift=0`` measures element degrees on the
    m-side instead of the bar side.  ``length`` keeps only words of that length.
    """
    idx = by_output(inner)
    acc: dict = {}
    for wu, lcu in outer.items():
        u = len(wu)
        if length is not None and u > length:
            continue
        for r in range(u):
            y = wu[r]
            entries = idx.get(y)
            if not entries:
                continue
            prefix = wu[:r]
            pd = _bardeg(cat, prefix, shift) % 2
            for ws, cs in entries:
                if length is not None and len(ws) + u - 1 != length:
                    continue
                sg = -1 if pd and _mapdeg(inner_degree, len(ws)) % 2 else 1
                if sign is not None:
                    sg *= sign(r, len(ws), u - 1 - r, prefix)
                w = prefix + ws + wu[r + 1:]
                slot = acc.setdefault(w, {})
                for z, cu in lcu.items():
                    slot[z] = slot.get(z, 0) + sg * cu * cs
    return clean_family(F, acc)


def multi_terms(F: Field, outer: Mapping, fams: Sequence[tuple], patterns: Callable,
                cat: AInfCategory, sign: Callable | None = None, shift: int = 1,
                length: int | None = None) -> Family:
    """``sum outer_r (Phi_1 (x) ... (x) Phi_r)``.

    ``fams`` is a list of ``(family, degree)``; ``patterns(r)`` lists tuples
    of indices into ``fams`` saying which family sits at each position.  Each
    ``Phi_j`` contributes the Koszul sign ``degree * (bar degree of the input
    elements to its left)``.  The concatenated input word must be composable
    in ``cat``.  An extra ``sign(blocks)`` (block lengths) may be supplied;
    degrees may be functions of the block length, and ``shift`` is as in
    :func:`insert_terms`.
    """
    idxs = [(by_output(f), d) for f, d in fams]
    acc: dict = {}
    for wr, lcr in outer.items():
        r = len(wr)
        if length is not None and r > length:
            continue
        for pat in patterns(r):
            partial = [((), 1, 0, ())]  # word, coeff, bar degree so far, block lengths
            for j, (y, k) in enumerate(zip(wr, pat)):
                idx, d = idxs[k]
                entries = idx.get(y)
                if not entries:
                    partial = []
                    break
                nxt = []
                for w, c, bd, blocks in partial:
                    for wi, ci in entries:
                        if w and cat.gens[w[-1]].src != cat.gens[wi[0]].dst:
                            continue
                        if length is not None and len(w) + len(wi) + (r - j - 1) > length:
                            continue
                        sg = -1 if bd % 2 and _mapdeg(d, len(wi)) % 2 else 1
                        nxt.append((w + wi, sg * c * ci, bd + _bardeg(cat, wi, shift),
                                    blocks + (len(wi),)))
                partial = nxt
                if not partial:
                    break
            for w, c, _, blocks in partial:
                if length is not None and len(w) != length:
                    continue
                if sign is not None:
                    c *= sign(blocks)
                slot = acc.setdefault(w, {})
                for z, cz in lcr.items():
                    slot[z] = slot.get(z, 0) + c * cz
    return clean_family(F, acc)


# ---- reports --------------------------------------------------------------

@dataclass
class Report:
    """Outcome of an identity check; ``defects`` maps words to defect vectors."""

    name: str
    defects: dict
    max_arity: int = 0
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.defects

    def __bool__(self):
        return self.ok

    def located(self, limit: int | None = None) -> list:
        rows = [(len(w), w, dict(sorted(lc.items()))) for w, lc in sorted(
            self.defects.items(), key=lambda kv: (len(kv[0]), kv[0]))]
        return rows if limit is None else rows[:limit]

    def summary(self) -> str:
        if self.ok:
            return f"{self.name}: pass"
        n, w, d = self.located(1)[0]
        return f"{self.name}: {len(self.defects)} defective words, first n={n} {w} -> {d}"


# ---- coderivations ----------------------------------------------------------

def lift_coderivation(b: BarFamily):
    """The coderivation on the reduced tensor coalgebra extending ``b``.

    Returns a function sending ``{word: coeff}`` to the combination of
    ``sum 1^r (x) b_s (x) 1^t`` applied to it, with the Koszul sign of
    ``b_s`` passing ``s x_1, ..., s x_r``.
    """
    F, cat = b.F, b.source
    entries = b.entries

    def D(word_lc: Mapping) -> dict:
        acc: dict = {}
        for w, c in word_lc.items():
            n = len(w)
            for r in range(n):
                pre = w[:r]
                sg = -1 if b.degree % 2 and _bardeg(cat, pre) % 2 else 1
                for s in range(1, n - r + 1):
                    lc = entries.get(w[r:r + s])
                    if not lc:
                        continue
                    for y, v in lc.items():
                        key = pre + (y,) + w[r + s:]
                        acc[key] = acc.get(key, 0) + sg * c * v
        return clean(F, acc)

    return D


def comultiply(word_lc: Mapping) -> dict:
    """Reduced deconcatenation: ``{(left, right): coeff}``."""
    out: dict = {}
    for w, c in word_lc.items():
        for k in range(1, len(w)):
            key = (w[:k], w[k:])
            out[key] = out.get(key, 0) + c
    return out


def coderivation_defect(b: BarFamily, max_len: int = 4) -> dict:
    """``Delta D - (D (x) 1 + 1 (x) D) Delta`` on all composable words up to max_len."""
    F, cat = b.F, b.source
    D = lift_coderivation(b)
    defects = {}
    for n in range(1, max_len + 1):
        for w in cat.composable_words(n):
            lhs = comultiply(D({w: F.one}))
            rhs: dict = {}
            for (u, v), c in comultiply({w: F.one}).items():
                for u2, cu in D({u: F.one}).items():
                    rhs[(u2, v)] = rhs.get((u2, v), 0) + c * cu
                sg = -1 if b.degree % 2 and _bardeg(cat, u) % 2 else 1
                for v2, cv in D({v: F.one}).items():
                    rhs[(u, v2)] = rhs.get((u, v2), 0) + sg * c * cv
            diff = clean(F, {k: lhs.get(k, 0) - rhs.get(k, 0) for k in set(lhs) | set(rhs)})
            if diff:
                defects[w] = diff
    return defects


def b_square_check(b: BarFamily) -> Report:
    """``sum b_u (1^r (x) b_s (x) 1^t) = 0`` with no signs beyond Koszul's."""
    if b.degree != 1 or b.source is not b.target:
        raise StructureError("b_square_check needs a degree +1 endomorphism family")
    d = insert_terms(b.F, b.entries, b.entries, b.source, 1)
    N = max((len(w) for w in b.entries), default=1)
    return Report("b^2 = 0", d, 2 * N - 1)


def bar_morphism_defect(F_: BarFamily, bA: BarFamily, bB: BarFamily) -> Family:
    """``F b^A - b^B F`` projected to one tensor factor."""
    F = F_.F
    lhs = insert_terms(F, F_.entries, bA.entries, F_.source, 1)
    rhs = multi_terms(F, bB.entries, [(F_.entries, 0)], lambda r: [(0,) * r], F_.source)
    return add_families(F, lhs, rhs, coeffs=[1, -1])


def bar_compose(Fb: BarFamily, Gb: BarFamily) -> BarFamily:
    """Coalgebra morphism composite ``F G``: ``sum F_r (G_{i1} (x) ... (x) G_{ir})``."""
    F = Fb.F
    ent = multi_terms(F, Fb.entries, [(Gb.entries, 0)], lambda r: [(0,) * r], Gb.source)
    objmap = {o: Fb.objmap.get(Gb.objmap.get(o, o), Gb.objmap.get(o, o))
              for o in Gb.source.objects}
    return BarFamily(Gb.source, Fb.target, ent, 0, objmap)


def homotopy_patterns(r: int) -> list:
    """Positions ``F..F H G..G`` of the (F,G)-coderivation lift of H."""
    return [(0,) * k + (1,) + (2,) * (r - k - 1) for k in range(r)]


def bar_homotopy_defect(Fb: BarFamily, Gb: BarFamily, Hb: BarFamily,
                        bA: BarFamily, bB: BarFamily) -> Family:
    """``F - G - (b H + H b)`` projected to one tensor factor."""
    F = Fb.F
    bh = multi_terms(F, bB.entries, [(Fb.entries, 0), (Hb.entries, -1), (Gb.entries, 0)],
                     homotopy_patterns, Fb.source)
    hb = insert_terms(F, Hb.entries, bA.entries, Fb.source, 1)
    return add_families(F, Fb.entries, Gb.entries, bh, hb, coeffs=[1, -1, -1, -1])


def lift_morphism(Fb: BarFamily):
    """The coalgebra morphism extending F: sums over all splittings into blocks."""
    F = Fb.F

    def apply(word_lc: Mapping) -> dict:
        acc: dict = {}
        for w, c in word_lc.items():
            for parts in _compositions(len(w)):
                terms = [((), c)]
                pos = 0
                for p in parts:
                    lc = Fb.entries.get(w[pos:pos + p], {})
                    terms = [(t + (y,), k * v) for t, k in terms for y, v in lc.items()]
                    pos += p
                for t, k in terms:
                    acc[t] = acc.get(t, 0) + k
        return clean(F, acc)

    return apply


def _compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def lift_homotopy(Fb: BarFamily, Gb: BarFamily, Hb: BarFamily):
    """The (F,G)-coderivation extending H: terms ``F..F (x) H (x) G..G``."""
    F, cat = Fb.F, Fb.source

    def apply(word_lc: Mapping) -> dict:
        acc: dict = {}
        for w, c in word_lc.items():
            for parts in _compositions(len(w)):
                for k in range(len(parts)):
                    terms = [((), c)]
                    pos = 0
                    for j, p in enumerate(parts):
                        block = w[pos:pos + p]
                        fam = Fb.entries if j < k else Hb.entries if j == k else Gb.entries
                        sg = -1 if j == k and _bardeg(cat, w[:pos]) % 2 else 1
                        lc = fam.get(block, {})
                        terms = [(t + (y,), sg * q * v) for t, q in terms for y, v in lc.items()]
                        pos += p
                    for t, q in terms:
                        acc[t] = acc.get(t, 0) + q
        return clean(F, acc)

    return apply


def bar_morphism_and_homotopy(Fb: BarFamily, Gb: BarFamily, Hb: BarFamily,
                              bA: BarFamily | None = None, bB: BarFamily | None = None,
                              lift_check_len: int = 0) -> Report:
    """Check ``F - G = b H + H b`` (and optionally ``Delta H = F (x) H + H (x) G``
    on composable words up to ``lift_check_len``)."""
    bA = bA or bar_transform(Fb.source)
    bB = bB or bar_transform(Fb.target)
    F = Fb.F
    defects = bar_homotopy_defect(Fb, Gb, Hb, bA, bB)
    notes = []
    if lift_check_len:
        Hl, Fl, Gl = lift_homotopy(Fb, Gb, Hb), lift_morphism(Fb), lift_morphism(Gb)
        for n in range(1, lift_check_len + 1):
            for w in Fb.source.composable_words(n):
                lhs = comultiply(Hl({w: F.one}))
                rhs: dict = {}
                for (u, v), c in comultiply({w: F.one}).items():
                    for a, ca in Fl({u: F.one}).items():
                        for b_, cb in Hl({v: F.one}).items():
                            rhs[(a, b_)] = rhs.get((a, b_), 0) + c * ca * cb
                    sg = -1 if _bardeg(Fb.source, u) % 2 else 1
                    for a, ca in Hl({u: F.one}).items():
                        for b_, cb in Gl({v: F.one}).items():
                            rhs[(a, b_)] = rhs.get((a, b_), 0) + sg * c * ca * cb
                diff = clean(F, {k: lhs.get(k, 0) - rhs.get(k, 0) for k in set(lhs) | set(rhs)})
                if diff:
                    notes.append(f"Delta H mismatch on {w}")
    rep = Report("F - G = bH + Hb", defects)
    rep.notes = notes
    if notes and not defects:
        rep.defects = {("<lift>",): {"Delta H": 1}}
    return rep
