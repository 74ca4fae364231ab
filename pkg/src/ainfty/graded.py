"""Finite-dimensional Z-graded spaces with named bases and homogeneous maps.

Vectors are sparse dicts ``{basis name: scalar}``.  Degrees are cohomological:
differentials raise degree by one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .field import Field, axpy, clean
from .linalg import Echelon, inverse, nullspace


class StructureError(ValueError):
    """Raised when data does not have the shape an operation expects."""


@dataclass(frozen=True)
class GradedSpace:
    basis: Mapping[int, tuple] = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        cleaned = {}
        for q in sorted(self.basis):
            names = tuple(self.basis[q])
            for n in names:
                if n in seen:
                    raise StructureError(f"basis name {n!r} occurs twice")
                seen.add(n)
            if names:
                cleaned[q] = names
        object.__setattr__(self, "basis", cleaned)
        object.__setattr__(self, "_deg", {n: q for q, ns in cleaned.items() for n in ns})

    @classmethod
    def from_degrees(cls, degrees: Mapping[str, int]) -> "GradedSpace":
        basis: dict[int, list] = {}
        for n, q in degrees.items():
            basis.setdefault(q, []).append(n)
        return cls({q: tuple(v) for q, v in basis.items()})

    def degree(self, name) -> int:
        try:
            return self._deg[name]
        except KeyError:
            raise StructureError(f"{name!r} is not a basis element") from None

    def __contains__(self, name) -> bool:
        return name in self._deg

    def names(self, q: int | None = None) -> tuple:
        if q is not None:
            return self.basis.get(q, ())
        return tuple(n for q in self.basis for n in self.basis[q])

    def dim(self, q: int | None = None) -> int:
        return len(self.names(q))

    @property
    def degrees(self) -> list[int]:
        return list(self.basis)

    def dims(self) -> dict[int, int]:
        return {q: len(v) for q, v in self.basis.items()}

    def index(self, q: int) -> dict:
        return {n: j for j, n in enumerate(self.names(q))}


@dataclass(frozen=True)
class GradedMap:
    """Homogeneous map of degree ``degree``; ``blocks[q]`` is a dense matrix
    with rows indexed by ``target.names(q + degree)`` and columns by
    ``source.names(q)``.  Missing blocks are zero."""

    source: GradedSpace
    target: GradedSpace
    degree: int
    blocks: Mapping[int, tuple] = field(default_factory=dict)

    def __post_init__(self):
        for q, M in self.blocks.items():
            rows, cols = self.target.dim(q + self.degree), self.source.dim(q)
            if len(M) != rows or any(len(r) != cols for r in M):
                raise StructureError(
                    f"block at source degree {q} should be {rows}x{cols}")

    @classmethod
    def from_images(cls, F: Field, source, target, degree, images: Mapping[str, dict]):
        blocks = {}
        for q in source.degrees:
            tnames = target.names(q + degree)
            tidx = {n: j for j, n in enumerate(tnames)}
            cols = []
            for n in source.names(q):
                col = [F.zero] * len(tnames)
                for y, c in images.get(n, {}).items():
                    if y not in tidx:
                        raise StructureError(
                            f"image of {n!r} contains {y!r}, not of degree {q + degree}")
                    col[tidx[y]] = F(col[tidx[y]] + c)
                cols.append(col)
            if any(any(c) for c in cols):
                blocks[q] = tuple(tuple(cols[j][i] for j in range(len(cols)))
                                  for i in range(len(tnames)))
        return cls(source, target, degree, blocks)

    @classmethod
    def zero(cls, source, target, degree=0):
        return cls(source, target, degree, {})

    @classmethod
    def identity(cls, F: Field, V: GradedSpace):
        return cls.from_images(F, V, V, 0, {n: {n: F.one} for n in V.names()})

    def image(self, name) -> dict:
        q = self.source.degree(name)
        M = self.blocks.get(q)
        if M is None:
            return {}
        j = self.source.index(q)[name]
        tn = self.target.names(q + self.degree)
        return {tn[i]: M[i][j] for i in range(len(tn)) if M[i][j]}

    def apply(self, F: Field, vec: Mapping) -> dict:
        acc: dict = {}
        for n, c in vec.items():
            axpy(acc, c, self.image(n))
        return clean(F, acc)

    def images(self) -> dict:
        return {n: self.image(n) for n in self.source.names()}

    def is_zero(self) -> bool:
        return not any(any(x for x in row) for M in self.blocks.values() for row in M)

    def equals(self, other: "GradedMap") -> bool:
        return (self.source == other.source and self.target == other.target
                and self.degree == other.degree and self.images() == other.images())


def compose(F: Field, f: GradedMap, g: GradedMap) -> GradedMap:
    """f after g."""
    if f.source != g.target:
        raise StructureError("compose: source of f differs from target of g")
    images = {n: f.apply(F, g.image(n)) for n in g.source.names()}
    return GradedMap.from_images(F, g.source, f.target, f.degree + g.degree, images)


def add_maps(F: Field, f: GradedMap, g: GradedMap, c=1) -> GradedMap:
    """f + c*g."""
    if (f.source, f.target, f.degree) != (g.source, g.target, g.degree):
        raise StructureError("add_maps: maps are not parallel")
    images = {}
    for n in f.source.names():
        acc = dict(f.image(n))
        axpy(acc, c, g.image(n))
        images[n] = clean(F, acc)
    return GradedMap.from_images(F, f.source, f.target, f.degree, images)


def koszul_apply(F: Field, maps: Sequence[GradedMap], word_lc: Mapping[tuple, object]) -> dict:
    """Evaluate ``maps[0] (x) ... (x) maps[-1]`` on a combination of words.

    Each factor of every word must be a basis element of the matching map's
    source.  The sign is ``(-1)^(|f_j| * |x_i|)`` for every map f_j passing
    an element x_i with i < j.
    """
    out: dict = {}
    k = len(maps)
    for word, coeff in word_lc.items():
        if len(word) != k:
            raise StructureError(f"word {word!r} has length {len(word)}, expected {k}")
        terms = [((), coeff)]
        passed = 0
        for j, (f, x) in enumerate(zip(maps, word)):
            if x not in f.source:
                raise StructureError(f"factor {j} ({x!r}) is not in the source of map {j}")
            if f.degree % 2 and passed % 2:
                terms = [(w, -c) for w, c in terms]
            img = f.image(x)
            terms = [(w + (y,), c * d) for w, c in terms for y, d in img.items()]
            passed += f.source.degree(x)
        for w, c in terms:
            out[w] = out.get(w, 0) + c
    return clean(F, out)


def word_degree(space: GradedSpace, word: Sequence) -> int:
    return sum(space.degree(x) for x in word)


def suspend(obj, k: int = 1):
    """Shift by k: ``(S^k V)^p = V^(p+k)``.

    Spaces keep their basis names with degrees lowered by k.  A map is
    transported to the conjugate ``s^k f s^-k``; on a single factor no
    Koszul sign arises, so its matrices are unchanged.
    """
    if isinstance(obj, GradedSpace):
        return GradedSpace({q - k: ns for q, ns in obj.basis.items()})
    if isinstance(obj, GradedMap):
        return GradedMap(suspend(obj.source, k), suspend(obj.target, k), obj.degree,
                         {q - k: M for q, M in obj.blocks.items()})
    raise TypeError(f"cannot suspend {type(obj).__name__}")


@dataclass(frozen=True)
class Homology:
    """Splitting ``V^q = B^q + R^q + C^q`` of a complex.

    B are boundaries, R representatives of homology, C a complement of the
    cycles.  The basis of B^q is ``d`` applied to the basis of C^(q-1), so
    the homotopy ``h`` sends ``d(c) -> c`` and kills R and C.
    """

    F: Field
    V: GradedSpace
    d: GradedMap
    H: GradedSpace
    reps: dict          # H name -> vector in V
    boundaries: dict    # q -> list of vectors
    complement: dict    # q -> list of vectors
    _coords: dict       # q -> (names of V^q, inverse change-of-basis matrix)

    def coordinates(self, vec: Mapping) -> tuple[dict, dict, dict]:
        """Split a homogeneous vector into its (B, R, C) coefficient lists."""
        vec = clean(self.F, dict(vec))
        if not vec:
            return {}, {}, {}
        q = self.V.degree(next(iter(vec)))
        names, Minv = self._coords[q]
        x = [vec.get(n, 0) for n in names]
        y = [self.F(sum(Minv[i][j] * x[j] for j in range(len(x)) if x[j]))
             for i in range(len(x))]
        nb = len(self.boundaries.get(q, ()))
        hnames = self.H.names(q)
        nr = len(hnames)
        b = {j: y[j] for j in range(nb) if y[j]}
        r = {hnames[j]: y[nb + j] for j in range(nr) if y[nb + j]}
        c = {j: y[nb + nr + j] for j in range(len(y) - nb - nr) if y[nb + nr + j]}
        return b, r, c

    def project(self, vec: Mapping) -> dict:
        return self.coordinates(vec)[1]

    def homotopy(self, vec: Mapping) -> dict:
        """h(vec): lands in C one degree lower."""
        b, _, _ = self.coordinates(vec)
        if not b:
            return {}
        q = self.V.degree(next(iter(clean(self.F, dict(vec)))))
        C = self.complement[q - 1]
        acc: dict = {}
        for j, c in b.items():
            axpy(acc, c, C[j])
        return clean(self.F, acc)

    @property
    def i(self) -> GradedMap:
        return GradedMap.from_images(self.F, self.H, self.V, 0, self.reps)

    @property
    def p(self) -> GradedMap:
        return GradedMap.from_images(self.F, self.V, self.H, 0,
                                     {n: self.project({n: self.F.one}) for n in self.V.names()})

    @property
    def h(self) -> GradedMap:
        return GradedMap.from_images(self.F, self.V, self.V, -1,
                                     {n: self.homotopy({n: self.F.one}) for n in self.V.names()})


def complex_homology(F: Field, d: GradedMap, preferred: Sequence[dict] = (),
                     name_of: Callable[[dict], str] | None = None) -> Homology:
    """Homology of ``(V, d)`` with deterministic representatives.

    Representatives are reduced against the boundaries in row echelon order;
    cycles listed in ``preferred`` are tried first and kept verbatim.  Each
    class is named after the pivot basis element of its representative
    unless ``name_of`` is given.
    """
    V = d.source
    if d.target != V or d.degree != 1:
        raise StructureError("complex_homology needs a degree +1 endomorphism")
    for n in V.names():
        dd = d.apply(F, d.image(n))
        if dd:
            raise StructureError(
                f"d^2 != 0 in degree {V.degree(n)} at {n!r}: {sorted(dd.items())}")

    boundaries, complement, reps_by_q, coords = {}, {}, {}, {}
    qs = sorted(set(V.degrees) | {q + 1 for q in V.degrees})
    # complements first: C^q spans V^q modulo the cycles Z^q
    cycles = {}
    for q in qs:
        names = V.names(q)
        tn = V.names(q + 1)
        tidx = {n: j for j, n in enumerate(tn)}
        # rows of the matrix of d: one row per target coordinate
        rows = [dict() for _ in tn]
        for j, n in enumerate(names):
            for y, c in d.image(n).items():
                rows[tidx[y]][j] = c
        Z = nullspace(F, rows, len(names))
        cycles[q] = [{names[j]: c for j, c in z.items()} for z in Z]
        e = Echelon(F)
        for z in Z:
            e.add(z)
        comp = []
        for j in range(len(names)):
            if e.add({j: F.one}):
                comp.append({names[j]: F.one})
        complement[q] = comp
    for q in qs:
        boundaries[q] = [d.apply(F, c) for c in complement.get(q - 1, [])]

    H_degrees: dict[str, int] = {}
    reps: dict[str, dict] = {}
    for q in qs:
        names = V.names(q)
        if not names:
            continue
        idx = {n: j for j, n in enumerate(names)}
        tovec = lambda v: {idx[n]: c for n, c in v.items()}
        e = Echelon(F)
        for b in boundaries[q]:
            e.add(tovec(b))
        chosen = []
        pref = [v for v in preferred if v and V.degree(next(iter(v))) == q]
        for v in pref:
            if tovec(v) and all(n in idx for n in v) and not d.apply(F, v):
                r = e.reduce(tovec(v))
                if r:
                    e.add(r)
                    chosen.append((min(r), clean(F, dict(v))))
        for z in sorted(cycles[q], key=lambda v: sorted(idx[n] for n in v)):
            r = e.reduce(tovec(z))
            if r:
                e.add(r)
                piv = min(r)
                r = {k: F(c * F.inv(r[piv])) for k, c in r.items()}
                chosen.append((piv, {names[k]: c for k, c in r.items()}))
        chosen.sort(key=lambda pc: pc[0])
        qreps = []
        for piv, v in chosen:
            nm = name_of(v) if name_of else names[piv]
            H_degrees[nm] = q
            reps[nm] = v
            qreps.append(v)
        reps_by_q[q] = qreps
        basis = boundaries[q] + qreps + complement[q]
        if len(basis) != len(names):
            raise StructureError(f"splitting failed in degree {q}")
        M = [[b.get(n, F.zero) for b in basis] for n in names]
        Minv = inverse(F, M)
        if Minv is None:
            raise StructureError(f"splitting is not a basis in degree {q}")
        coords[q] = (names, Minv)

    H = GradedSpace.from_degrees(dict(sorted(H_degrees.items(), key=lambda kv: kv[1])))
    return Homology(F, V, d, H, reps, boundaries, complement, coords)
