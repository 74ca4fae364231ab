"""Minimal models by arity-wise obstruction solving along a contraction.

Work happens on the bar side.  With ``iota = f_1``, ``pi`` and the homotopy
``eta`` satisfying ``b_1 eta + eta b_1 = 1 - iota pi`` and the side
conditions, the arity-n part of the morphism identity reads

    iota b^H_n + F_n D_1 - b_1 F_n = R_n,

where ``R_n`` collects every term built from lower arities and ``D_1`` is
the (possibly nonzero) differential of a frozen part of the source.  Once
``b_1 R_n + R_n D_1 = 0`` is certified, ``b^H_n = pi R_n`` and
``F_n = -eta R_n`` solve it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .bar import BarFamily, Report, bar_transform, insert_terms, multi_terms
from .field import Field, axpy, clean
from .graded import GradedMap, GradedSpace, StructureError, complex_homology
from .structure import AInfCategory, AInfMorphism, Gen, add_families


class CertificationError(RuntimeError):
    """An identity that must hold by construction failed: an implementation bug."""


@dataclass
class Contraction:
    """``i: H -> A``, ``p: A -> H`` and ``h: A -> A`` of degree -1, per Hom space."""

    A: AInfCategory
    H: AInfCategory
    i: dict                      # H name -> vector in A
    blocks: dict                 # (src, dst) -> Homology
    _p: dict = field(default_factory=dict)
    _h: dict = field(default_factory=dict)

    def _block(self, vec):
        x = next(iter(vec))
        g = self.A.gens[x]
        return self.blocks[(g.src, g.dst)]

    def _split(self, vec):
        """Group a vector by Hom space and degree."""
        parts: dict = {}
        for x, c in vec.items():
            g = self.A.gens[x]
            parts.setdefault((g.src, g.dst, g.degree), {})[x] = c
        return parts.values()

    def project(self, vec: Mapping) -> dict:
        vec = clean(self.A.F, dict(vec))
        acc: dict = {}
        for part in self._split(vec):
            axpy(acc, 1, self._block(part).project(part))
        return clean(self.A.F, acc)

    def homotopy(self, vec: Mapping) -> dict:
        vec = clean(self.A.F, dict(vec))
        acc: dict = {}
        for part in self._split(vec):
            axpy(acc, 1, self._block(part).homotopy(part))
        return clean(self.A.F, acc)

    @property
    def p(self) -> dict:
        if not self._p:
            self._p = {x: self.project({x: 1}) for x in self.A.gens}
        return self._p

    @property
    def h(self) -> dict:
        if not self._h:
            self._h = {x: self.homotopy({x: 1}) for x in self.A.gens}
        return self._h

    def d(self, vec: Mapping) -> dict:
        acc: dict = {}
        for x, c in vec.items():
            axpy(acc, c, self.A.ops.get((x,), {}))
        return clean(self.A.F, acc)

    def validate(self) -> list[str]:
        """Failures of ``p i = 1``, ``1 - i p = d h + h d``, ``h i = 0``, ``p h = 0``, ``h h = 0``."""
        F = self.A.F
        bad = []
        for y, v in self.i.items():
            if self.project(v) != {y: F.one}:
                bad.append(f"p i != 1 at {y}")
            if self.homotopy(v):
                bad.append(f"h i != 0 at {y}")
            if self.d(v):
                bad.append(f"i({y}) is not a cycle")
        for x, g in self.A.gens.items():
            if (g.src, g.dst) not in self.blocks:
                continue  # frozen
            lhs = {x: F.one}
            for y, c in self.project({x: F.one}).items():
                axpy(lhs, -c, self.i[y])
            rhs = dict(self.d(self.homotopy({x: F.one})))
            axpy(rhs, 1, self.homotopy(self.d({x: F.one})))
            if clean(F, {k: lhs.get(k, 0) - rhs.get(k, 0) for k in set(lhs) | set(rhs)}):
                bad.append(f"1 - ip != dh + hd at {x}")
            hx = self.homotopy({x: F.one})
            if self.project(hx):
                bad.append(f"p h != 0 at {x}")
            if self.homotopy(hx):
                bad.append(f"h h != 0 at {x}")
        return bad


def build_contraction(A: AInfCategory, frozen: set | None = None) -> Contraction:
    """Split every Hom complex into boundaries, representatives and a complement.

    Strict identities, when declared, are used as representatives, so the
    transferred structure keeps them.  Generators in ``frozen`` are excluded:
    their Hom spaces are not contracted.
    """
    F = A.F
    frozen = frozen or set()
    blocks = {}
    H_gens: dict = {}
    i: dict = {}
    pairs: dict = {}
    for x, g in A.gens.items():
        if x in frozen:
            continue
        pairs.setdefault((g.src, g.dst), []).append(x)
    for (s, t), names in pairs.items():
        V = GradedSpace.from_degrees({x: A.gens[x].degree for x in names})
        images = {x: A.ops.get((x,), {}) for x in names}
        d = GradedMap.from_images(F, V, V, 1, images)
        pref = []
        if s == t and s in A.units:
            pref = [{A.units[s]: F.one}]
        hom = complex_homology(F, d, pref)
        blocks[(s, t)] = hom
        for y in hom.H.names():
            H_gens[y] = Gen(s, t, hom.H.degree(y))
            i[y] = hom.reps[y]
    units = {}
    for o, e in A.units.items():
        if e in H_gens and i.get(e) == {e: F.one}:
            units[o] = e
    ordered = {x: H_gens[x] for x in A.gens if x in H_gens}
    H = AInfCategory(F, A.objects, ordered, {}, units, 1, f"H({A.name})" if A.name else "")
    return Contraction(A, H, i, blocks)


def longest_chain(cat: AInfCategory, skip: set = frozenset()) -> int | None:
    """Length of the longest composable word of non-identity generators, or None
    if such words can be arbitrarily long."""
    gens = [x for x in cat.gens if x not in skip and x not in set(cat.units.values())]
    nxt = {x: [y for y in gens if cat.gens[x].src == cat.gens[y].dst] for x in gens}
    memo: dict = {}
    state: dict = {}

    def longest(x):
        if state.get(x) == 1:
            raise ValueError
        if x in memo:
            return memo[x]
        state[x] = 1
        best = 1 + max((longest(y) for y in nxt[x]), default=0)
        state[x] = 2
        memo[x] = best
        return best

    try:
        return max((longest(x) for x in gens), default=0)
    except ValueError:
        return None


@dataclass
class TransferResult:
    minimal: AInfCategory
    morphism: AInfMorphism
    contraction: Contraction
    arity: int
    reports: list


def _solve_stages(F: Field, S: AInfCategory, T: AInfCategory, bT: Mapping, bS_known: Mapping,
                  F_known: Mapping, active: Callable, project: Callable, homotopy: Callable,
                  arity: int, certify_cycles: bool = True):
    """Run the arity recursion.  ``bS_known``/``F_known`` hold frozen entries and
    the arity-one data; entries are added for words where ``active`` holds."""
    bS = dict(bS_known)
    Fam = dict(F_known)
    bT_high = {w: lc for w, lc in bT.items() if len(w) >= 2}
    bT_1 = {w: lc for w, lc in bT.items() if len(w) == 1}
    bS_1 = {w: lc for w, lc in bS.items() if len(w) == 1}
    for n in range(2, arity + 1):
        t1 = multi_terms(F, bT_high, [(Fam, 0)], lambda r: [(0,) * r], S, length=n)
        inner = {w: lc for w, lc in bS.items() if 2 <= len(w) < n}
        t2 = insert_terms(F, Fam, inner, S, 1, length=n)
        R = {w: lc for w, lc in add_families(F, t1, t2, coeffs=[1, -1]).items() if active(w)}
        if certify_cycles and R:
            c1 = insert_terms(F, bT_1, R, S, 1)
            c2 = insert_terms(F, R, bS_1, S, 1, length=n)
            cyc = {w: lc for w, lc in add_families(F, c1, c2).items() if active(w)}
            if cyc:
                w = min(cyc, key=lambda k: (len(k), k))
                raise CertificationError(
                    f"obstruction at arity {n} is not a cycle: {w} -> {cyc[w]}")
        for w, lc in R.items():
            b = project(lc)
            if b:
                bS[w] = b
            f = {y: F(-c) for y, c in homotopy(lc).items()}
            if f:
                Fam[w] = f
    return bS, Fam


def transfer_minimal_model(A: AInfCategory, c: Contraction | None = None,
                           arity: int | None = None, certify: bool = True) -> TransferResult:
    """Minimal model ``Amin`` on ``H*A`` and a quasi-isomorphism ``f: Amin -> A``.

    Without ``arity``, the recursion runs one step past the longest
    composable word of non-identity classes, which is exhaustive for
    strictly unital outputs; if such words are unbounded an explicit arity
    is required.
    """
    from .ainf import check_morphism, check_stasheff

    F = A.F
    c = c or build_contraction(A)
    bad = c.validate()
    if bad:
        raise CertificationError(f"contraction invalid: {bad[:3]}")
    H = c.H
    if arity is None:
        L = longest_chain(H)
        if L is None:
            raise StructureError(
                "homology has arbitrarily long composable words; pass an explicit arity")
        arity = max(L + 1, 2)
    bA = bar_transform(A).entries
    F1 = {(y,): dict(v) for y, v in c.i.items()}
    bS, Fam = _solve_stages(F, H, A, bA, {}, F1, lambda w: True, c.project, c.homotopy, arity)
    Hb = BarFamily(H, H, bS, 1)
    Amin = bar_transform(Hb).with_ops(bar_transform(Hb).ops, arity_bound=max(arity, 1))
    f = bar_transform(BarFamily(Amin, A, Fam, 0))
    reports = []
    if certify:
        r1 = check_stasheff(Amin, max_arity=arity)
        r2 = check_morphism(f, max_arity=arity)
        reports = [r1, r2]
        for r in reports:
            if not r.ok:
                raise CertificationError(r.summary())
    return TransferResult(Amin, f, c, arity, reports)


def obstruction_cocycle(f: AInfMorphism, s: int) -> dict:
    """Arity-(s+1) obstruction of the partial morphism ``(f_1, ..., f_s)``.

    Returned on the m-side as ``{word: vector}``: the terms of the morphism
    identity at arity s+1 that involve neither ``f_{s+1}`` nor ``m_{s+1}``
    of the source, arranged so that ``c = m_1 f_{s+1} - f_{s+1} d - f_1 m_{s+1}``
    (tensor differential ``d``) when the identity holds.  ``cycle_defect``
    measures its failure to be a cycle.
    """
    from .bar import transport

    A, B = f.source, f.target
    F = f.F
    n = s + 1
    Fam = {w: lc for w, lc in bar_transform(f).entries.items() if len(w) <= s}
    bA = bar_transform(A).entries
    bB = bar_transform(B).entries
    t1 = multi_terms(F, {w: lc for w, lc in bB.items() if len(w) >= 2}, [(Fam, 0)],
                     lambda r: [(0,) * r], A, length=n)
    inner = {w: lc for w, lc in bA.items() if 2 <= len(w) <= s}
    t2 = insert_terms(F, Fam, inner, A, 1, length=n)
    R = add_families(F, t1, t2, coeffs=[1, -1])
    return transport(F, R, A)


def cycle_defect(f: AInfMorphism, c: Mapping) -> dict:
    """``b_1 R + R D_1`` for the bar transport ``R`` of an m-side cochain ``c``
    on the words of ``f.source`` (the Hom-complex differential, up to the
    suspension isomorphism)."""
    from .bar import transport

    A, B = f.source, f.target
    F = f.F
    R = transport(F, c, A)
    n = max((len(w) for w in R), default=0)
    bB1 = {w: lc for w, lc in bar_transform(B).entries.items() if len(w) == 1}
    bA1 = {w: lc for w, lc in bar_transform(A).entries.items() if len(w) == 1}
    return add_families(F, insert_terms(F, bB1, R, A, 1),
                        insert_terms(F, R, bA1, A, 1, length=n))


def hom_complex_differential(A: AInfCategory, B: AInfCategory, c: Mapping, degree: int) -> dict:
    """``d(c) = m_1 c - (-1)^|c| c d`` on the m-side, with ``d`` the Koszul
    tensor differential ``sum 1 (x) .. (x) m_1 (x) .. (x) 1`` on words of A.

    ``degree`` is the degree of ``c`` as a multilinear map."""
    F = A.F
    m1B = {w: lc for w, lc in B.ops.items() if len(w) == 1}
    m1A = {w: lc for w, lc in A.ops.items() if len(w) == 1}
    n = max((len(w) for w in c), default=0)
    left = insert_terms(F, m1B, c, A, degree, shift=0)
    right = insert_terms(F, c, m1A, A, 1, shift=0, length=n)
    sg = -1 if degree % 2 else 1
    return add_families(F, left, right, coeffs=[1, -sg])
