"""A-infinity modules over A-infinity categories.

A right module ``M`` over ``A`` is stored as extra morphisms into a sink
object: an element of ``M(X)`` is a generator ``X -> SINK``.  Module words
``(m, a_1, ..., a_{n-1})`` are then ordinary composable words, the module
identities are the Stasheff identities on words headed by a module element,
and module morphisms are functors that are the identity on ``A``.  All checks
reuse the category machinery with that restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .ainf import (_composite_sign, _stasheff_sign, compose_morphisms, is_quasi_iso)
from .bar import BarFamily, Report, bar_transform, insert_terms, multi_terms
from .field import Field, clean
from .graded import StructureError
from .linalg import solve
from .structure import AInfCategory, AInfMorphism, Gen, add_families, clean_family
from .transfer import (CertificationError, Contraction, _solve_stages, build_contraction)

SINK = "<M>"


class AInfModule:
    """Operations ``m_n: M (x) A^(n-1) -> M`` of degree ``2-n``.

    ``gens`` maps element names to ``Gen(obj, SINK, degree)`` (an element of
    ``M(obj)``); ``ops`` maps words headed by a module element to vectors of
    module elements.
    """

    def __init__(self, base: AInfCategory, gens: Mapping[str, Gen], ops: Mapping = (),
                 arity_bound: int | None = None, name: str = ""):
        self.base = base
        self.F = base.F
        self.name = name
        self.gens = dict(gens)
        for x, g in self.gens.items():
            if g.dst != SINK or g.src not in base.objects:
                raise StructureError(f"module element {x!r} must be Gen(object, SINK, degree)")
            if x in base.gens:
                raise StructureError(f"module element {x!r} clashes with a generator of the base")
        self.ops = clean_family(self.F, dict(ops))
        for w in self.ops:
            if w[0] not in self.gens or any(x not in base.gens for x in w[1:]):
                raise StructureError(f"module word {w!r} must be (module element, base elements...)")
        longest = max((len(w) for w in self.ops), default=1)
        self.arity_bound = max(arity_bound or longest, longest)
        self._cat = None

    def category(self) -> AInfCategory:
        """``A`` with the sink object adjoined."""
        if self._cat is None:
            gens = dict(self.base.gens)
            gens.update(self.gens)
            ops = dict(self.base.ops)
            ops.update(self.ops)
            self._cat = AInfCategory(self.F, self.base.objects + (SINK,), gens, ops,
                                     self.base.units,
                                     max(self.base.arity_bound, self.arity_bound), self.name)
        return self._cat

    def degree(self, x) -> int:
        return self.gens[x].degree

    def dims(self) -> dict:
        out: dict = {}
        for g in self.gens.values():
            out[(g.src, g.degree)] = out.get((g.src, g.degree), 0) + 1
        return out

    def total_dim(self) -> int:
        return len(self.gens)

    def m(self, *word) -> dict:
        return dict(self.ops.get(tuple(word), {}))

    def is_minimal(self) -> bool:
        return not any(len(w) == 1 for w in self.ops)

    def with_ops(self, ops, arity_bound=None, name=None) -> "AInfModule":
        return AInfModule(self.base, self.gens, ops, arity_bound, self.name if name is None else name)

    def __eq__(self, other):
        return (isinstance(other, AInfModule) and self.base == other.base
                and self.gens == other.gens and self.ops == other.ops)

    def __repr__(self):
        return f"AInfModule({self.name or '?'}, dim={len(self.gens)}, entries={len(self.ops)})"


class ModuleMorphism:
    """Components ``f_n: L (x) A^(n-1) -> M`` of degree ``1-n``."""

    def __init__(self, source: AInfModule, target: AInfModule, comps: Mapping):
        if source.base != target.base:
            raise StructureError("module morphism between modules over different bases")
        self.source, self.target = source, target
        self.F = source.F
        self.comps = clean_family(self.F, dict(comps))
        AInfCategory.check_shape(self.comps, source.category(), target.category(), 1)
        for w in self.comps:
            if w[0] not in source.gens:
                raise StructureError(f"component word {w!r} is not headed by a module element")

    @classmethod
    def identity(cls, M: AInfModule) -> "ModuleMorphism":
        return cls(M, M, {(x,): {x: M.F.one} for x in M.gens})

    @classmethod
    def zero(cls, L: AInfModule, M: AInfModule) -> "ModuleMorphism":
        return cls(L, M, {})

    def arity(self, n) -> dict:
        return {w: lc for w, lc in self.comps.items() if len(w) == n}

    def is_strict(self) -> bool:
        return all(len(w) == 1 for w in self.comps)

    def functor(self) -> AInfMorphism:
        """The same data as a functor between the sink categories."""
        comps = {(a,): {a: self.F.one} for a in self.source.base.gens}
        comps.update(self.comps)
        return AInfMorphism(self.source.category(), self.target.category(), comps)

    def __eq__(self, other):
        return (isinstance(other, ModuleMorphism) and self.source == other.source
                and self.target == other.target and self.comps == other.comps)


class ModuleHomotopy:
    """Components ``h_n: L (x) A^(n-1) -> M`` of degree ``-n``."""

    def __init__(self, source: AInfModule, target: AInfModule, comps: Mapping):
        self.source, self.target = source, target
        self.F = source.F
        self.comps = clean_family(self.F, dict(comps))
        AInfCategory.check_shape(self.comps, source.category(), target.category(), 0)


def _mod_words(fam: Mapping, M: AInfModule) -> dict:
    return {w: lc for w, lc in fam.items() if w[0] in M.gens}


def _cut(fam: Mapping, max_arity: int | None) -> dict:
    return dict(fam) if max_arity is None else {w: lc for w, lc in fam.items() if len(w) <= max_arity}


# ---- identities ------------------------------------------------------------------

def module_defect(M: AInfModule, length: int | None = None) -> dict:
    """``sum (-1)^(r+st) m_u (1^r (x) m_s (x) 1^t)`` on module words; ``r = 0`` puts
    a module operation inside, ``r > 0`` an operation of the base."""
    C = M.category()
    return insert_terms(M.F, M.ops, C.ops, C, lambda s: 2 - s, _stasheff_sign, shift=0,
                        length=length)


def check_module(M: AInfModule, max_arity: int | None = None) -> Report:
    return Report("module identities", _cut(module_defect(M), max_arity),
                  max_arity or M.arity_bound + M.base.arity_bound - 1)


def module_morphism_defect(f: ModuleMorphism, length: int | None = None) -> dict:
    """``sum (-1)^(r+st) f_u (1^r (x) m_s (x) 1^t) - sum (-1)^((r+1)s) m_u (f_r (x) 1^s)``."""
    L, M = f.source, f.target
    F = f.F
    C = L.category()
    lhs = insert_terms(F, f.comps, C.ops, C, lambda s: 2 - s, _stasheff_sign, shift=0,
                       length=length)
    ident = {(a,): {a: F.one} for a in L.base.gens}
    rhs = multi_terms(F, M.ops, [(f.comps, 0), (ident, 0)],
                      lambda u: [(0,) + (1,) * (u - 1)], C,
                      lambda blocks: -1 if ((blocks[0] + 1) * (len(blocks) - 1)) % 2 else 1,
                      shift=0, length=length)
    return add_families(F, lhs, rhs, coeffs=[1, -1])


def module_quasi_iso(f: ModuleMorphism) -> bool:
    cL = build_contraction(f.source.category(), frozen=set(f.source.base.gens))
    cM = build_contraction(f.target.category(), frozen=set(f.target.base.gens))
    ok, _ = is_quasi_iso(f.functor(), cL, cM)
    return ok


def check_module_morphism(f: ModuleMorphism, max_arity: int | None = None,
                          quasi_iso: bool = True) -> Report:
    rep = Report("module morphism identities", _cut(module_morphism_defect(f), max_arity),
                 max_arity or f.source.arity_bound + max((len(w) for w in f.comps), default=1))
    if quasi_iso:
        rep.notes.append(f"quasi-isomorphism: {module_quasi_iso(f)}")
    return rep


def compose_module_morphisms(f: ModuleMorphism, g: ModuleMorphism) -> ModuleMorphism:
    """``f o g``: ``(fg)_n = sum (-1)^((r-1)s) f_u (g_r (x) 1^s)``."""
    if g.target != f.source:
        raise StructureError("compose_module_morphisms: target of g is not the source of f")
    h = compose_morphisms(f.functor(), g.functor())
    return ModuleMorphism(g.source, f.target, _mod_words(h.comps, g.source))


def add_module_morphisms(f: ModuleMorphism, g: ModuleMorphism, c=1) -> ModuleMorphism:
    return ModuleMorphism(f.source, f.target, add_families(f.F, f.comps, g.comps, coeffs=[1, c]))


def nullhomotopy_terms(h: ModuleHomotopy, length: int | None = None) -> dict:
    """``sum (-1)^(rs) m_{1+s} (h_r (x) 1^s) + sum (-1)^(r+st) h_u (1^r (x) m_s (x) 1^t)``."""
    L, M = h.source, h.target
    F = h.F
    C = L.category()
    ident = {(a,): {a: F.one} for a in L.base.gens}
    t1 = multi_terms(F, M.ops, [(h.comps, 0), (ident, 0)],
                     lambda u: [(0,) + (1,) * (u - 1)], C,
                     lambda blocks: -1 if (blocks[0] * (len(blocks) - 1)) % 2 else 1,
                     shift=0, length=length)
    t2 = insert_terms(F, h.comps, C.ops, C, lambda s: 2 - s, _stasheff_sign, shift=0,
                      length=length)
    return add_families(F, t1, t2)


def module_nullhomotopy_check(f: ModuleMorphism, h: ModuleHomotopy,
                              max_arity: int | None = None) -> Report:
    """Does ``h`` exhibit ``f`` as nullhomotopic?"""
    d = add_families(f.F, f.comps, nullhomotopy_terms(h), coeffs=[1, -1])
    bound = max_arity or max([len(w) for w in list(f.comps) + list(h.comps)] + [1]) + \
        f.source.base.arity_bound
    return Report("module nullhomotopy", _cut(d, max_arity), bound)


def comodule_square_check(M: AInfModule, max_len: int = 4) -> Report:
    """The comodule view: the coderivation on ``SM (x) TSA`` squares to zero.

    ``D D w`` is expanded on every module word up to ``max_len`` and the
    nonzero results are reported under the word they came from.
    """
    from .bar import lift_coderivation

    C = M.category()
    D = lift_coderivation(bar_transform(C))
    defects = {}
    for n in range(1, max_len + 1):
        for w in C.composable_words(n):
            if w[0] in M.gens:
                dd = D(D({w: M.F.one}))
                if dd:
                    defects[w] = dd
    return Report("comodule differential squared", defects, max_len)


# ---- constructions ------------------------------------------------------------

def yoneda_module(A: AInfCategory, X, prefix: str = "y:") -> AInfModule:
    """The representable module ``A(?, X)``; for an algebra this is ``A`` itself."""
    F = A.F
    names = {g: f"{prefix}{g}" for g, gen in A.gens.items() if gen.dst == X}
    gens = {names[g]: Gen(A.gens[g].src, SINK, A.gens[g].degree) for g in names}
    ops = {}
    for w, lc in A.ops.items():
        if w[0] in names:
            ops[(names[w[0]],) + w[1:]] = {names[y]: c for y, c in lc.items()}
    return AInfModule(A, gens, ops, A.arity_bound, f"Y({X})")


def direct_sum(*mods: AInfModule, prefixes=None) -> AInfModule:
    base = mods[0].base
    prefixes = prefixes or [f"{k}:" for k in range(len(mods))]
    gens, ops = {}, {}
    for M, pre in zip(mods, prefixes):
        if M.base != base:
            raise StructureError("direct_sum: different bases")
        gens.update({pre + x: g for x, g in M.gens.items()})
        for w, lc in M.ops.items():
            ops[(pre + w[0],) + w[1:]] = {pre + y: c for y, c in lc.items()}
    return AInfModule(base, gens, ops, max(M.arity_bound for M in mods), "sum")


def complex_of_modules(A: AInfCategory, degrees: Mapping[str, int], d: Mapping,
                       action: Mapping, obj=None) -> AInfModule:
    """``m_1 = d`` and ``m_2`` the action ``{(m, a): {m': c}}``; a dg module."""
    obj = obj if obj is not None else A.objects[0]
    gens = {x: Gen(obj, SINK, k) for x, k in degrees.items()}
    ops = {(x,): dict(v) for x, v in d.items()}
    ops.update({tuple(w): dict(v) for w, v in action.items()})
    return AInfModule(A, gens, ops, 2)


def suspend_module(M: AInfModule) -> AInfModule:
    """``(SM)^p = M^(p+1)`` and ``m_n^SM = (-1)^n m_n^M``."""
    gens = {x: Gen(g.src, SINK, g.degree - 1) for x, g in M.gens.items()}
    ops = {w: {y: (-c if len(w) % 2 else c) for y, c in lc.items()} for w, lc in M.ops.items()}
    return AInfModule(M.base, gens, ops, M.arity_bound, f"S{M.name}")


def restrict(f: AInfMorphism, M: AInfModule) -> AInfModule:
    """``f^* M`` over the source of ``f``:
    ``m_n = sum (-1)^s m_{r+1} (1 (x) f_{i_1} (x) ... (x) f_{i_r})``."""
    A, B = f.source, f.target
    if M.base != B:
        raise StructureError("restrict: module is not over the target of the morphism")
    F = f.F
    counts: dict = {}
    for o in A.objects:
        counts[f.objmap[o]] = counts.get(f.objmap[o], 0) + 1
    injective = all(v == 1 for v in counts.values())
    name_of = (lambda y, X: y) if injective else (lambda y, X: f"{y}@{X}")
    gens, back = {}, {}
    for X in A.objects:
        for y, g in M.gens.items():
            if g.src == f.objmap[X]:
                n = name_of(y, X)
                gens[n] = Gen(X, SINK, g.degree)
                back[n] = y
    N0 = AInfModule(A, gens, {}, 1)
    C = N0.category()
    ident = {(n,): {back[n]: F.one} for n in gens}
    raw = multi_terms(F, M.ops, [(ident, 0), (f.comps, lambda i: 1 - i)],
                      lambda r: [(0,) + (1,) * (r - 1)], C, _composite_sign, shift=0)
    ops = {}
    for w, lc in raw.items():
        X = C.gens[w[-1]].src
        ops[w] = {name_of(y, X): c for y, c in lc.items()}
    bound = (M.arity_bound - 1) * f.arity_bound + 1
    return AInfModule(A, gens, ops, bound, f"res({M.name})")


def restrict_morphism(f: AInfMorphism, g: ModuleMorphism) -> ModuleMorphism:
    L, M = restrict(f, g.source), restrict(f, g.target)
    F = f.F
    C = L.category()
    ident = {(n,): {n: F.one} for n in L.gens}
    raw = multi_terms(F, g.comps, [(ident, 0), (f.comps, lambda i: 1 - i)],
                      lambda r: [(0,) + (1,) * (r - 1)], C, _composite_sign, shift=0)
    return ModuleMorphism(L, M, raw)


# ---- minimal models -------------------------------------------------------------

@dataclass
class ModuleTransferResult:
    minimal: AInfModule
    morphism: ModuleMorphism
    contraction: Contraction
    arity: int
    reports: list


def module_minimal_model(M: AInfModule, arity: int = 4, certify: bool = True
                         ) -> ModuleTransferResult:
    """Minimal model of ``M`` on its homology, with a quasi-isomorphism into ``M``.

    The base is left untouched and must itself have ``m_1 = 0``.  Module words
    can be arbitrarily long, so the structure is computed up to ``arity`` and
    certified up to that arity.
    """
    A = M.base
    if any(len(w) == 1 for w in A.ops):
        raise StructureError("module_minimal_model needs a base with m_1 = 0")
    F = M.F
    C = M.category()
    frozen = set(A.gens)
    c = build_contraction(C, frozen=frozen)
    bad = c.validate()
    if bad:
        raise CertificationError(f"contraction invalid: {bad[:3]}")
    Hgens = {y: Gen(g.src, SINK, g.degree) for y, g in c.H.gens.items()}
    H0 = AInfModule(A, Hgens, {}, 1)
    S = H0.category()
    bS_known = dict(bar_transform(A).entries)
    F_known = {(a,): {a: F.one} for a in A.gens}
    F_known.update({(y,): dict(v) for y, v in c.i.items()})
    bT = bar_transform(C).entries
    bS, Fam = _solve_stages(F, S, C, bT, bS_known, F_known, lambda w: w[0] in Hgens,
                            c.project, c.homotopy, arity)
    Sfull = AInfCategory(F, S.objects, S.gens, {}, S.units, 1)
    Sm = bar_transform(BarFamily(Sfull, Sfull, bS, 1))
    Hmin = AInfModule(A, Hgens, {w: lc for w, lc in Sm.ops.items() if w[0] in Hgens},
                      arity, f"H({M.name})" if M.name else "")
    fm = bar_transform(BarFamily(Hmin.category(), C, Fam, 0))
    f = ModuleMorphism(Hmin, M, {w: lc for w, lc in fm.comps.items() if w[0] in Hgens})
    reports = []
    if certify:
        r1 = check_module(Hmin, max_arity=arity)
        r2 = check_module_morphism(f, max_arity=arity)
        reports = [r1, r2]
        for r in reports:
            if not r.ok:
                raise CertificationError(r.summary())
        if "quasi-isomorphism: True" not in r2.notes:
            raise CertificationError("transferred module morphism is not a quasi-isomorphism")
    return ModuleTransferResult(Hmin, f, c, arity, reports)


# ---- homotopy inverses ----------------------------------------------------------

def _slots(L: AInfModule, M: AInfModule, extra: int, arity: int, skip_units: bool) -> list:
    """(word, output) pairs available to a family ``L (x) A^(n-1) -> M``."""
    A = L.base
    units = set(A.units.values()) if skip_units else set()
    by_dst: dict = {}
    for a, g in A.gens.items():
        if a not in units:
            by_dst.setdefault(g.dst, []).append(a)
    out_by: dict = {}
    for y, g in M.gens.items():
        out_by.setdefault((g.src, g.degree), []).append(y)
    slots = []
    words = [(x,) for x in L.gens]
    for n in range(1, arity + 1):
        for w in words:
            src = L.category().gens[w[-1]].src
            deg = sum(L.category().gens[x].degree for x in w) + extra - n
            for y in out_by.get((src, deg), []):
                slots.append((w, y))
        words = [w + (a,) for w in words
                 for a in by_dst.get(L.category().gens[w[-1]].src, [])]
    return slots


def homotopy_inverse(f: ModuleMorphism, arity: int = 3):
    """Solve for ``g: M -> L`` and homotopies ``g f ~ 1``, ``f g ~ 1``.

    Everything is linear in the unknowns, so one linear system up to ``arity``
    decides existence.  Components on words containing a strict identity are
    set to zero.  Returns ``(g, h_L, h_M)`` or None.
    """
    L, M = f.source, f.target
    F = f.F
    sg = _slots(M, L, 1, arity, True)
    sL = _slots(L, L, 0, arity, True)
    sM = _slots(M, M, 0, arity, True)
    idL, idM = ModuleMorphism.identity(L), ModuleMorphism.identity(M)

    def unpack(x):
        fams = [{}, {}, {}]
        for j, c in x.items():
            k, (w, y) = owner[j]
            fams[k].setdefault(w, {})[y] = c
        return fams

    owner = [(0, s) for s in sg] + [(1, s) for s in sL] + [(2, s) for s in sM]

    def equations(fams):
        g = ModuleMorphism(M, L, fams[0])
        hL = ModuleHomotopy(L, L, fams[1])
        hM = ModuleHomotopy(M, M, fams[2])
        out: dict = {}
        e1 = module_morphism_defect(g)
        gf = compose_module_morphisms(g, f)
        e2 = add_families(F, gf.comps, idL.comps, nullhomotopy_terms(hL), coeffs=[1, -1, -1])
        fg = compose_module_morphisms(f, g)
        e3 = add_families(F, fg.comps, idM.comps, nullhomotopy_terms(hM), coeffs=[1, -1, -1])
        for k, e in enumerate((e1, e2, e3)):
            for w, lc in e.items():
                if len(w) <= arity:
                    for y, c in lc.items():
                        out[(k, w, y)] = c
        return out

    base = equations([{}, {}, {}])
    cols = []
    for j in range(len(owner)):
        d = equations(unpack({j: F.one}))
        cols.append(clean(F, {k: d.get(k, 0) - base.get(k, 0) for k in set(d) | set(base)}))
    keys = sorted({k for c in cols for k in c} | set(base), key=repr)
    kix = {k: i for i, k in enumerate(keys)}
    rows = [dict() for _ in keys]
    for j, col in enumerate(cols):
        for k, c in col.items():
            rows[kix[k]][j] = c
    x = solve(F, rows, [F(-base.get(k, 0)) for k in keys], len(owner))
    if x is None:
        return None
    fams = unpack(x)
    return (ModuleMorphism(M, L, fams[0]), ModuleHomotopy(L, L, fams[1]),
            ModuleHomotopy(M, M, fams[2]))


def verify_homotopy_inverse(f: ModuleMorphism, g: ModuleMorphism, hL: ModuleHomotopy,
                            hM: ModuleHomotopy, arity: int) -> list:
    """Independent re-check of a homotopy inverse up to ``arity``; returns failures."""
    bad = []
    if not check_module_morphism(g, arity, quasi_iso=False).ok:
        bad.append("g is not a module morphism")
    F = f.F
    for name, comp, ident, h in (("g f", compose_module_morphisms(g, f), f.source, hL),
                                 ("f g", compose_module_morphisms(f, g), f.target, hM)):
        diff = add_module_morphisms(comp, ModuleMorphism.identity(ident), -1)
        if not module_nullhomotopy_check(diff, h, arity).ok:
            bad.append(f"{name} is not homotopic to the identity")
    return bad
