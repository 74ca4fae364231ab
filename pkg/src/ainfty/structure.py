"""Sparse A-infinity categories, morphisms and homotopies.

Operations are stored as structure constants ``{word: {output: coeff}}``.
A word ``(x1, ..., xn)`` is written in display order: ``xn`` is applied
first, so ``x_i`` lies in ``Hom(A_{n-i}, A_{n-i+1})`` and consecutive
factors satisfy ``src(x_i) == dst(x_{i+1})``.  The output lies in
``Hom(src(xn), dst(x1))``.  Algebras are the one-object case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .field import Field, clean
from .graded import GradedMap, GradedSpace, StructureError

Family = dict  # {word tuple: {output name: coeff}}


@dataclass(frozen=True)
class Gen:
    src: str
    dst: str
    degree: int


def clean_family(F: Field, fam: Mapping) -> Family:
    out = {}
    for w, lc in fam.items():
        lc = clean(F, lc)
        if lc:
            out[tuple(w)] = lc
    return out


def add_families(F: Field, *fams, coeffs=None) -> Family:
    coeffs = coeffs or [1] * len(fams)
    acc: dict = {}
    for c, fam in zip(coeffs, fams):
        for w, lc in fam.items():
            slot = acc.setdefault(w, {})
            for y, v in lc.items():
                slot[y] = slot.get(y, 0) + c * v
    return clean_family(F, acc)


def by_output(fam: Mapping) -> dict:
    """Index ``{output: [(word, coeff), ...]}``."""
    idx: dict = {}
    for w, lc in fam.items():
        for y, c in lc.items():
            idx.setdefault(y, []).append((w, c))
    return idx


def restrict_arity(fam: Mapping, lo: int = 1, hi: int | None = None) -> Family:
    return {w: lc for w, lc in fam.items() if len(w) >= lo and (hi is None or len(w) <= hi)}


class AInfCategory:
    """Objects, graded Hom spaces with named bases, and operations m_n of degree 2-n."""

    def __init__(self, F: Field, objects, gens: Mapping[str, Gen], ops: Mapping = (),
                 units: Mapping[str, str] | None = None, arity_bound: int | None = None,
                 name: str = ""):
        self.F = F
        self.objects = tuple(objects)
        self.gens = dict(gens)
        self.name = name
        for g, gen in self.gens.items():
            if gen.src not in self.objects or gen.dst not in self.objects:
                raise StructureError(f"{g!r} joins unknown objects {gen.src!r}->{gen.dst!r}")
        self.ops = clean_family(F, dict(ops))
        self.units = dict(units or {})
        self.check_shape(self.ops, self, self, extra_degree=2)
        longest = max((len(w) for w in self.ops), default=0)
        if arity_bound is None:
            arity_bound = max(longest, 1)
        elif longest > arity_bound:
            raise StructureError(f"operation of arity {longest} exceeds bound {arity_bound}")
        self.arity_bound = arity_bound
        for obj, e in self.units.items():
            g = self.gens.get(e)
            if g is None or g.src != obj or g.dst != obj or g.degree != 0:
                raise StructureError(f"identity {e!r} of {obj!r} must be a degree-0 endomorphism")
        self._by_out = None
        self._homs = None

    # ---- validation -----------------------------------------------------
    @staticmethod
    def check_shape(fam, src_cat, dst_cat, extra_degree, objmap=None):
        """Composability, target Hom and degree of every entry.

        ``extra_degree`` is 2 for operations, 1 for morphisms, 0 for homotopies:
        the output degree is ``sum |x| + extra_degree - n``.
        """
        objmap = objmap or {}
        concentrated = all(g.degree == 0 for g in src_cat.gens.values())
        for w, lc in fam.items():
            if not w:
                raise StructureError("empty input word")
            for x in w:
                if x not in src_cat.gens:
                    raise StructureError(f"unknown generator {x!r} in word {w!r}")
            for a, b in zip(w, w[1:]):
                if src_cat.gens[a].src != src_cat.gens[b].dst:
                    raise StructureError(f"word {w!r} is not composable at {a!r},{b!r}")
            if extra_degree == 2 and concentrated and len(w) != 2 and src_cat is dst_cat:
                raise StructureError(
                    f"Hom is concentrated in degree 0, so only m_2 may be nonzero (word {w!r})")
            s = objmap.get(src_cat.gens[w[-1]].src, src_cat.gens[w[-1]].src)
            t = objmap.get(src_cat.gens[w[0]].dst, src_cat.gens[w[0]].dst)
            deg = sum(src_cat.gens[x].degree for x in w) + extra_degree - len(w)
            for y in lc:
                g = dst_cat.gens.get(y)
                if g is None:
                    raise StructureError(f"unknown output {y!r} for word {w!r}")
                if (g.src, g.dst) != (s, t):
                    raise StructureError(
                        f"output {y!r} of {w!r} should lie in Hom({s},{t})")
                if g.degree != deg:
                    raise StructureError(
                        f"output {y!r} of {w!r} has degree {g.degree}, expected {deg}")

    # ---- accessors ------------------------------------------------------
    def degree(self, x) -> int:
        return self.gens[x].degree

    def word_degree(self, w) -> int:
        return sum(self.gens[x].degree for x in w)

    def hom(self, a, b) -> tuple:
        if self._homs is None:
            homs: dict = {}
            for g, gen in self.gens.items():
                homs.setdefault((gen.src, gen.dst), []).append(g)
            self._homs = {k: tuple(v) for k, v in homs.items()}
        return self._homs.get((a, b), ())

    def space(self) -> GradedSpace:
        return GradedSpace.from_degrees({g: gen.degree for g, gen in self.gens.items()})

    def hom_space(self, a, b) -> GradedSpace:
        return GradedSpace.from_degrees({g: self.gens[g].degree for g in self.hom(a, b)})

    def arity(self, n) -> Family:
        return {w: lc for w, lc in self.ops.items() if len(w) == n}

    def by_output(self) -> dict:
        if self._by_out is None:
            self._by_out = by_output(self.ops)
        return self._by_out

    def m(self, *word) -> dict:
        return dict(self.ops.get(tuple(word), {}))

    def apply(self, word_lc: Mapping) -> dict:
        acc: dict = {}
        for w, c in word_lc.items():
            for y, v in self.ops.get(tuple(w), {}).items():
                acc[y] = acc.get(y, 0) + c * v
        return clean(self.F, acc)

    def differential(self) -> GradedMap:
        V = self.space()
        return GradedMap.from_images(self.F, V, V, 1,
                                     {w[0]: lc for w, lc in self.ops.items() if len(w) == 1})

    def is_minimal(self) -> bool:
        return not any(len(w) == 1 for w in self.ops)

    def composable_words(self, n: int) -> Iterator[tuple]:
        """All composable basis words of length n, in a fixed order."""
        by_dst: dict = {}
        for g, gen in self.gens.items():
            by_dst.setdefault(gen.dst, []).append(g)

        def extend(word):
            if len(word) == n:
                yield word
                return
            for g in by_dst.get(self.gens[word[-1]].src, []):
                yield from extend(word + (g,))

        if n <= 0:
            return
        for g in self.gens:
            yield from extend((g,))

    def with_ops(self, ops, arity_bound=None, units=None, name=None) -> "AInfCategory":
        return AInfCategory(self.F, self.objects, self.gens, ops,
                            self.units if units is None else units,
                            arity_bound, self.name if name is None else name)

    def full_subcategory(self, objects) -> "AInfCategory":
        objs = [o for o in self.objects if o in set(objects)]
        keep = {g: gen for g, gen in self.gens.items() if gen.src in objs and gen.dst in objs}
        ops = {w: lc for w, lc in self.ops.items() if all(x in keep for x in w)}
        return AInfCategory(self.F, objs, keep, ops,
                            {o: e for o, e in self.units.items() if o in objs},
                            self.arity_bound, self.name)

    def __eq__(self, other):
        return (isinstance(other, AInfCategory) and self.F == other.F
                and self.objects == other.objects and self.gens == other.gens
                and self.ops == other.ops and self.units == other.units)

    def __repr__(self):
        return (f"AInfCategory({self.name or '?'}: {len(self.objects)} objects, "
                f"{len(self.gens)} generators, {len(self.ops)} entries, N={self.arity_bound})")


def algebra(F: Field, degrees: Mapping[str, int], ops: Mapping = (), unit: str | None = None,
            arity_bound=None, obj: str = "*", name: str = "") -> AInfCategory:
    """One-object convenience constructor."""
    gens = {g: Gen(obj, obj, d) for g, d in degrees.items()}
    return AInfCategory(F, [obj], gens, ops, {obj: unit} if unit else None, arity_bound, name)


class AInfMorphism:
    """Components f_n of degree 1-n, as structure constants on source words."""

    def __init__(self, source: AInfCategory, target: AInfCategory, comps: Mapping,
                 objmap: Mapping | None = None):
        self.source, self.target = source, target
        self.objmap = dict(objmap) if objmap else {o: o for o in source.objects}
        for o in source.objects:
            if self.objmap.get(o) not in target.objects:
                raise StructureError(f"object {o!r} is not mapped into the target")
        self.F = source.F
        self.comps = clean_family(self.F, dict(comps))
        AInfCategory.check_shape(self.comps, source, target, 1, self.objmap)

    @property
    def arity_bound(self) -> int:
        return max((len(w) for w in self.comps), default=1)

    def arity(self, n) -> Family:
        return {w: lc for w, lc in self.comps.items() if len(w) == n}

    def f1(self) -> GradedMap:
        return GradedMap.from_images(self.F, self.source.space(), self.target.space(), 0,
                                     {w[0]: lc for w, lc in self.comps.items() if len(w) == 1})

    def is_strict(self) -> bool:
        return all(len(w) == 1 for w in self.comps)

    @classmethod
    def identity(cls, A: AInfCategory) -> "AInfMorphism":
        return cls(A, A, {(g,): {g: A.F.one} for g in A.gens})

    def __eq__(self, other):
        return (isinstance(other, AInfMorphism) and self.comps == other.comps
                and self.objmap == other.objmap)


class AInfHomotopy:
    """Components h_n of degree -n between parallel morphisms."""

    def __init__(self, source: AInfCategory, target: AInfCategory, comps: Mapping,
                 objmap: Mapping | None = None):
        self.source, self.target = source, target
        self.objmap = dict(objmap) if objmap else {o: o for o in source.objects}
        self.F = source.F
        self.comps = clean_family(self.F, dict(comps))
        AInfCategory.check_shape(self.comps, source, target, 0, self.objmap)
