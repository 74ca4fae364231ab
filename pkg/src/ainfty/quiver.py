"""Bound quiver algebras, their representations, projective resolutions and
the Ext A-infinity category of a family of modules.

Paths are written in display order like words: ``gamma*beta*alpha`` applies
``alpha`` first.  Representations are covariant: an arrow ``a: u -> v`` acts
as a matrix ``V_v x V_u``.  Relations must be homogeneous (every path in a
relation has the same length and endpoints), which covers monomial and
commutativity relations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .field import Field, QQ, clean
from .linalg import Echelon, nullspace
from .structure import AInfCategory, Gen


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Path:
    src: str
    dst: str
    arrows: tuple = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def name(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e_{self.src}"


@dataclass
class QuiverPresentation:
    vertices: list
    arrows: dict                       # name -> (src, dst, degree)
    relations: list = field(default_factory=list)   # [{path string: coeff}]
    operations: list = field(default_factory=list)  # [(word of path strings, {path string: coeff})]
    field: Field = QQ

    def path(self, s: str) -> Path:
        s = s.strip()
        if s.startswith("e_") and s[2:] in self.vertices:
            return Path(s[2:], s[2:], ())
        names = tuple(t.strip() for t in s.split("*"))
        for a in names:
            if a not in self.arrows:
                raise QuiverError(f"unknown arrow {a!r} in {s!r}")
        for a, b in zip(names, names[1:]):
            if self.arrows[a][0] != self.arrows[b][1]:
                raise QuiverError(f"path {s!r} is not composable at {a}*{b}")
        return Path(self.arrows[names[-1]][0], self.arrows[names[0]][1], names)


class PathAlgebra:
    """``kQ / I`` with a standard-monomial basis chosen by row reduction."""

    def __init__(self, q: QuiverPresentation, max_length: int = 32):
        self.q = q
        self.F = F = q.field
        self.vertices = list(q.vertices)
        self.arrows = dict(q.arrows)
        rels = []
        for r in q.relations:
            vec = {q.path(p): F(c) for p, c in r.items()}
            vec = clean(F, vec)
            if not vec:
                continue
            shapes = {(p.length, p.src, p.dst) for p in vec}
            if len(shapes) != 1:
                raise QuiverError(f"relation {r} is not homogeneous")
            rels.append(vec)
        self.paths_by_shape: dict = {}
        self.ideal: dict = {}
        self.standard: dict = {}
        for v in self.vertices:
            p = Path(v, v, ())
            self.paths_by_shape[(0, v, v)] = [p]
            self.standard[(0, v, v)] = [p]
            self.ideal[(0, v, v)] = Echelon(F)
        frontier = [Path(v, v, ()) for v in self.vertices]
        length = 0
        while True:
            length += 1
            if length > max_length:
                raise QuiverError(f"quotient is not finite-dimensional up to length {max_length}")
            new = []
            for p in frontier:
                for a, (s, t, _) in self.arrows.items():
                    if s == p.dst:
                        new.append(Path(p.src, t, (a,) + p.arrows))
            for p in new:
                self.paths_by_shape.setdefault((length, p.src, p.dst), []).append(p)
            for key in self.paths_by_shape:
                if key[0] == length:
                    self.paths_by_shape[key].sort(key=lambda p: p.arrows)
            # ideal in this length: relations, and arrows times the previous ideal on both sides
            gens = [r for r in rels if next(iter(r)).length == length]
            for (l, s, t), e in list(self.ideal.items()):
                if l != length - 1 or l == 0:
                    continue
                cols = self.paths_by_shape[(l, s, t)]
                for row in e.basis():
                    vec = {cols[j]: c for j, c in row.items()}
                    for a, (as_, at, _) in self.arrows.items():
                        if as_ == t:
                            gens.append({Path(s, at, (a,) + p.arrows): c for p, c in vec.items()})
                        if at == s:
                            gens.append({Path(as_, t, p.arrows + (a,)): c for p, c in vec.items()})
            for key, ps in self.paths_by_shape.items():
                if key[0] == length:
                    self.ideal[key] = Echelon(F)
            index = {key: {p: j for j, p in enumerate(ps)}
                     for key, ps in self.paths_by_shape.items() if key[0] == length}
            for g in gens:
                p0 = next(iter(g))
                key = (length, p0.src, p0.dst)
                self.ideal[key].add({index[key][p]: c for p, c in g.items()})
            alive = []
            for key, ps in self.paths_by_shape.items():
                if key[0] != length:
                    continue
                piv = set(self.ideal[key].pivots)
                self.standard[key] = [p for j, p in enumerate(ps) if j not in piv]
                alive.extend(self.standard[key])
            if not alive:
                break
            frontier = [p for p in new]
        self.basis = [p for key in sorted(self.standard, key=lambda k: (k[0], self.vertices.index(k[1]), self.vertices.index(k[2])))
                      for p in self.standard[key]]
        self.basis_set = set(self.basis)

    def degree(self, p: Path) -> int:
        return sum(self.arrows[a][2] for a in p.arrows)

    def normal_form(self, vec: Mapping) -> dict:
        out: dict = {}
        groups: dict = {}
        for p, c in vec.items():
            groups.setdefault((p.length, p.src, p.dst), {})[p] = c
        for key, g in groups.items():
            ps = self.paths_by_shape.get(key)
            if ps is None:
                continue  # longer than every surviving path
            idx = {p: j for j, p in enumerate(ps)}
            red = self.ideal[key].reduce({idx[p]: c for p, c in g.items()})
            for j, c in red.items():
                out[ps[j]] = out.get(ps[j], 0) + c
        return clean(self.F, out)

    def mul(self, p: Path, q: Path) -> dict:
        """``p o q`` (q first) in the standard basis."""
        if p.src != q.dst:
            return {}
        if not p.arrows:
            return {q: self.F.one}
        if not q.arrows:
            return {p: self.F.one}
        return self.normal_form({Path(q.src, p.dst, p.arrows + q.arrows): self.F.one})

    def paths(self, src: str, dst: str) -> list:
        return [p for p in self.basis if p.src == src and p.dst == dst]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_category(self) -> AInfCategory:
        """The algebra as a category with its vertices as objects."""
        F = self.F
        gens = {p.name(): Gen(p.src, p.dst, self.degree(p)) for p in self.basis}
        ops = {}
        for p in self.basis:
            for q in self.basis:
                if p.src == q.dst:
                    prod = self.mul(p, q)
                    if prod:
                        ops[(p.name(), q.name())] = {r.name(): c for r, c in prod.items()}
        for (word, lc) in self.q.operations:
            ops[tuple(self.q.path(x).name() for x in word)] = {
                self.q.path(y).name(): F(c) for y, c in lc.items()}
        units = {v: Path(v, v, ()).name() for v in self.vertices}
        return AInfCategory(F, self.vertices, gens, ops, units, None, "path algebra")


def build_algebra(q: QuiverPresentation, max_length: int = 32):
    """Path algebra modulo relations; with ``operations`` present the result is
    an A-infinity category (checked), otherwise the path algebra object."""
    alg = PathAlgebra(q, max_length)
    if q.operations or any(d for _, _, d in q.arrows.values()):
        from .ainf import check_stasheff

        cat = alg.to_category()
        rep = check_stasheff(cat)
        if not rep.ok:
            raise QuiverError(f"presentation violates the Stasheff identities: {rep.summary()}")
        return cat
    return alg


# ---- representations -----------------------------------------------------------

def _matmul(F, A, B, n_rows, n_inner, n_cols):
    return [[F(sum(A[i][k] * B[k][j] for k in range(n_inner))) for j in range(n_cols)]
            for i in range(n_rows)]


@dataclass
class Rep:
    """Covariant representation: ``maps[a]`` is ``dims[dst] x dims[src]``."""

    alg: PathAlgebra
    dims: dict
    maps: dict

    def path_matrix(self, p: Path):
        F = self.alg.F
        n = self.dims.get(p.src, 0)
        M = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
        cur = p.src
        for a in reversed(p.arrows):
            s, t, _ = self.alg.arrows[a]
            M = _matmul(F, self.maps[a], M, self.dims.get(t, 0), self.dims.get(s, 0), n)
            cur = t
        return M

    def act(self, p: Path, vec: Sequence) -> list:
        M = self.path_matrix(p)
        return [self.alg.F(sum(M[i][j] * vec[j] for j in range(len(vec)))) for i in range(len(M))]

    def satisfies_relations(self) -> bool:
        F = self.alg.F
        for r in self.alg.q.relations:
            acc = None
            for ps, c in r.items():
                p = self.alg.q.path(ps)
                M = self.path_matrix(p)
                if acc is None:
                    acc = [[F.zero] * len(M[0]) if M else [] for _ in M]
                for i in range(len(M)):
                    for j in range(len(M[i])):
                        acc[i][j] = F(acc[i][j] + F(c) * M[i][j])
            if acc and any(any(row) for row in acc):
                return False
        return True

    def total_dim(self) -> int:
        return sum(self.dims.values())


def simple(alg: PathAlgebra, v: str) -> Rep:
    dims = {u: (1 if u == v else 0) for u in alg.vertices}
    maps = {a: [[alg.F.zero] * dims[s] for _ in range(dims[t])]
            for a, (s, t, _) in alg.arrows.items()}
    return Rep(alg, dims, maps)


@dataclass
class ProjSum:
    """``(+)_i P_{a_i}`` with basis at v: pairs (i, standard path a_i -> v)."""

    alg: PathAlgebra
    tops: list

    def basis(self, v) -> list:
        return [(i, p) for i, a in enumerate(self.tops) for p in self.alg.paths(a, v)]

    def rep(self) -> Rep:
        F = self.alg.F
        dims = {v: len(self.basis(v)) for v in self.alg.vertices}
        maps = {}
        for a, (s, t, _) in self.alg.arrows.items():
            bs, bt = self.basis(s), self.basis(t)
            tix = {b: j for j, b in enumerate(bt)}
            M = [[F.zero] * len(bs) for _ in bt]
            arrow = Path(s, t, (a,))
            for j, (i, p) in enumerate(bs):
                for q, c in self.alg.mul(arrow, p).items():
                    M[tix[(i, q)]][j] = c
            maps[a] = M
        return Rep(self.alg, dims, maps)


def _kernel_and_top(M: Rep, images: dict):
    """Helper: for each vertex, a basis of ``M(v)`` modulo the span of ``images[v]``
    (lexicographic choice of coordinate vectors)."""
    F = M.alg.F
    tops = {}
    for v in M.alg.vertices:
        e = Echelon(F)
        for vec in images.get(v, []):
            e.add({j: c for j, c in enumerate(vec) if c})
        chosen = []
        for j in range(M.dims.get(v, 0)):
            if e.add({j: F.one}):
                chosen.append(j)
        tops[v] = chosen
    return tops


@dataclass
class Submodule:
    """A subrepresentation given by basis vectors in an ambient representation."""

    ambient: Rep
    vectors: dict   # v -> list of coordinate vectors in ambient.dims[v]

    def as_rep(self) -> Rep:
        F = self.ambient.alg.F
        alg = self.ambient.alg
        dims = {v: len(self.vectors.get(v, [])) for v in alg.vertices}
        maps = {}
        for a, (s, t, _) in alg.arrows.items():
            cols = []
            e = Echelon(F)
            tvecs = self.vectors.get(t, [])
            n = self.ambient.dims.get(t, 0)
            # coordinates of images in the chosen basis of the target part
            for vec in self.vectors.get(s, []):
                img = [F(sum(self.ambient.maps[a][i][j] * vec[j] for j in range(len(vec))))
                       for i in range(n)]
                cols.append(_coords(F, tvecs, img))
            maps[a] = [[cols[j][i] for j in range(len(cols))] for i in range(len(tvecs))]
        return Rep(alg, dims, maps)


def _coords(F, basis: list, vec: list) -> list:
    """Coordinates of vec in the given (linearly independent) basis."""
    from .linalg import solve

    n = len(vec)
    rows = [{j: basis[j][i] for j in range(len(basis)) if basis[j][i]} for i in range(n)]
    x = solve(F, rows, vec, len(basis))
    if x is None:
        raise QuiverError("vector is not in the submodule")
    return [x.get(j, F.zero) for j in range(len(basis))]


def radical_images(M: Rep) -> dict:
    imgs: dict = {}
    for a, (s, t, _) in M.alg.arrows.items():
        A = M.maps[a]
        for j in range(M.dims.get(s, 0)):
            imgs.setdefault(t, []).append([A[i][j] for i in range(M.dims.get(t, 0))])
    return imgs


def projective_cover(M: Rep):
    """Generators of ``M`` modulo its radical and the map ``(+) P_v -> M``.

    Returns ``(tops, images)`` where ``tops`` is the list of vertices and
    ``images[k]`` gives, for every basis element of the cover at vertex w,
    its image in ``M(w)``.
    """
    F = M.alg.F
    top_idx = _kernel_and_top(M, radical_images(M))
    tops, gens = [], []
    for v in M.alg.vertices:
        for j in top_idx[v]:
            tops.append(v)
            gens.append([F.one if k == j else F.zero for k in range(M.dims[v])])
    P = ProjSum(M.alg, tops)
    phi = {}
    for w in M.alg.vertices:
        cols = [M.act(p, gens[i]) for i, p in P.basis(w)]
        phi[w] = [[cols[j][i] for j in range(len(cols))] for i in range(M.dims.get(w, 0))]
    return P, phi


def kernel(P: ProjSum, phi: dict, M: Rep) -> Submodule:
    F = P.alg.F
    vecs = {}
    for w in P.alg.vertices:
        n = len(P.basis(w))
        rows = [{j: c for j, c in enumerate(row) if c} for row in phi[w]]
        vecs[w] = [[z.get(j, F.zero) for j in range(n)] for z in nullspace(F, rows, n)]
    return Submodule(P.rep(), vecs)


@dataclass
class ProjResolution:
    """Minimal projective resolution ``... -> P^{-1} -> P^0 -> M``.

    ``terms[n]`` lists the vertices of the summands of ``P^{-n}``; ``diffs[n]``
    (n >= 1) maps summand i of ``P^{-n}`` to ``{summand j of P^{-n+1}: {path
    b_j -> a_i: coeff}}``.
    """

    alg: PathAlgebra
    terms: list
    diffs: list
    truncated: bool = False

    @property
    def length(self) -> int:
        return len(self.terms) - 1


def minimal_projective_resolution(alg: PathAlgebra, M: Rep, max_length: int = 32) -> ProjResolution:
    F = alg.F
    P, phi = projective_cover(M)
    terms, diffs = [P.tops], [None]
    K = kernel(P, phi, M)
    truncated = False
    while any(K.vectors.get(v) for v in alg.vertices):
        if len(terms) > max_length:
            truncated = True
            break
        Krep = K.as_rep()
        Q, psi = projective_cover(Krep)
        # d: Q -> P is the cover followed by the inclusion of K into P
        d = []
        for i, a in enumerate(Q.tops):
            # image of the generator e_a of summand i: psi at vertex a, column for (i, e_a)
            col_idx = Q.basis(a).index((i, Path(a, a, ())))
            kcoords = [psi[a][r][col_idx] for r in range(Krep.dims[a])]
            amb = [F(sum(K.vectors[a][k][j] * kcoords[k] for k in range(len(kcoords))))
                   for j in range(len(P.basis(a)))]
            entry: dict = {}
            for (j, p), c in zip(P.basis(a), amb):
                if c:
                    entry.setdefault(j, {})[p] = c
            d.append(entry)
        terms.append(Q.tops)
        diffs.append(d)
        K2 = kernel(Q, psi, Krep)
        P, K = Q, K2
    res = ProjResolution(alg, terms, diffs, truncated)
    _certify_resolution(res, M)
    return res


def _certify_resolution(res: ProjResolution, M: Rep) -> None:
    """Exactness by rank counts at every vertex, and ``d^2 = 0``."""
    F = res.alg.F
    mats = []
    for n in range(1, len(res.terms)):
        mats.append(_diff_matrices(res, n))
    for v in res.alg.vertices:
        dims = [len(ProjSum(res.alg, t).basis(v)) for t in res.terms]
        ranks = []
        for n, D in enumerate(mats, start=1):
            rows = [{j: c for j, c in enumerate(row) if c} for row in D[v]]
            from .linalg import rank
            ranks.append(rank(F, rows))
        # H^0 = M(v), higher homology zero
        r_in = [0] + ranks + [0]
        for n in range(len(res.terms)):
            h = dims[n] - r_in[n + 1] - (r_in[n] if n > 0 else 0)
            want = M.dims.get(v, 0) if n == 0 else 0
            if n == len(res.terms) - 1 and res.truncated:
                continue
            if h != want:
                raise QuiverError(f"resolution not exact at vertex {v}, degree {-n}")
        for n in range(1, len(mats)):
            prod = _matmul(F, mats[n - 1][v], mats[n][v], len(mats[n - 1][v]),
                           len(mats[n][v]), len(mats[n][v][0]) if mats[n][v] else 0)
            if any(any(r) for r in prod):
                raise QuiverError("d^2 != 0 in resolution")


def _diff_matrices(res: ProjResolution, n: int) -> dict:
    """Matrices of ``d: P^{-n} -> P^{-n+1}`` at each vertex."""
    alg, F = res.alg, res.alg.F
    src, dst = ProjSum(alg, res.terms[n]), ProjSum(alg, res.terms[n - 1])
    out = {}
    for v in alg.vertices:
        bs, bt = src.basis(v), dst.basis(v)
        tix = {b: j for j, b in enumerate(bt)}
        M = [[F.zero] * len(bs) for _ in bt]
        for col, (i, p) in enumerate(bs):
            # d(p . e_{a_i}) = p o d(e_{a_i})
            for j, lc in res.diffs[n][i].items():
                for q, c in lc.items():
                    for r, c2 in alg.mul(p, q).items():
                        M[tix[(j, r)]][col] = F(M[tix[(j, r)]][col] + c * c2)
        out[v] = M
    return out


def ext_dims_by_ranks(res: ProjResolution, target: Rep) -> dict:
    """``dim Ext^n(M, N)`` from the complex ``Hom(P^{-n}, N)`` by rank counting.

    ``Hom(P_a, N) = N(a)``, and ``d^*`` sends ``phi`` to ``phi o d``.
    """
    F = res.alg.F
    alg = res.alg
    dims = []
    for t in res.terms:
        dims.append(sum(target.dims.get(a, 0) for a in t))
    ranks = []
    for n in range(1, len(res.terms)):
        # rows: coordinates of Hom(P^{-n}, N); columns: Hom(P^{-n+1}, N)
        cols = []
        src_tops, dst_tops = res.terms[n], res.terms[n - 1]
        for j, b in enumerate(dst_tops):
            for k in range(target.dims.get(b, 0)):
                # phi = basis vector k of N(b) on summand j; phi o d on summand i
                vec = {}
                pos = 0
                for i, a in enumerate(src_tops):
                    for m in range(target.dims.get(a, 0)):
                        val = F.zero
                        for q, c in res.diffs[n][i].get(j, {}).items():
                            e = [F.one if r == k else F.zero for r in range(target.dims[b])]
                            img = target.act(q, e)
                            val = F(val + c * img[m])
                        if val:
                            vec[pos] = val
                        pos += 1
                cols.append(vec)
        from .linalg import rank
        ranks.append(rank(F, cols))
    out = {}
    for n in range(len(res.terms)):
        r_out = ranks[n] if n < len(ranks) else 0     # d^*: Hom(P^{-n}) -> Hom(P^{-n-1})
        r_in = ranks[n - 1] if n >= 1 else 0
        h = dims[n] - r_out - r_in
        if h:
            out[n] = h
    return out


# ---- dg endomorphism category ----------------------------------------------------

def dg_end_category(alg: PathAlgebra, resolutions: Mapping[str, ProjResolution]) -> AInfCategory:
    """Objects are the resolutions; ``Hom^k(P, Q) = prod_n Hom(P^{-n}, Q^{-n+k})``
    with ``m_1(f) = d f - (-1)^|f| f d`` and ``m_2`` the composition."""
    F = alg.F
    gens: dict = {}
    info: dict = {}
    names = list(resolutions)
    for X in names:
        for Y in names:
            P, Q = resolutions[X], resolutions[Y]
            for n, ptops in enumerate(P.terms):
                for m, qtops in enumerate(Q.terms):
                    k = n - m   # P^{-n} -> Q^{-m} has degree -m + n
                    for i, a in enumerate(ptops):
                        for j, b in enumerate(qtops):
                            for path in alg.paths(b, a):
                                g = f"{X}>{Y}|{n}.{i}>{m}.{j}|{path.name()}"
                                gens[g] = Gen(X, Y, k)
                                info[g] = (X, Y, n, i, m, j, path)
    lookup = {(X, Y, n, i, m, j, p): g for g, (X, Y, n, i, m, j, p) in info.items()}
    ops: dict = {}
    # composition: g o f with f: P_a -> P_b (path q: b -> a), g: P_b -> P_c (path r: c -> b)
    by_src: dict = {}
    for g, (X, Y, n, i, m, j, p) in info.items():
        by_src.setdefault((X, n, i), []).append(g)
    for f, (X, Y, n, i, m, j, q) in info.items():
        for g in by_src.get((Y, m, j), []):
            _, Z, _, _, l, k, r = info[g]
            prod = alg.mul(q, r)
            if prod:
                ops[(g, f)] = {lookup[(X, Z, n, i, l, k, s)]: c for s, c in prod.items()}
    # differential
    for f, (X, Y, n, i, m, j, q) in info.items():
        P, Q = resolutions[X], resolutions[Y]
        deg = n - m
        acc: dict = {}
        # d_Q o f: summand j of Q^{-m} -> Q^{-m+1}
        if m >= 1:
            for j2, lc in Q.diffs[m][j].items():
                for r, c in lc.items():
                    for s, c2 in alg.mul(q, r).items():
                        key = lookup[(X, Y, n, i, m - 1, j2, s)]
                        acc[key] = acc.get(key, 0) + c * c2
        # f o d_P: P^{-n-1} -> P^{-n} -> Q^{-m}
        sg = -1 if deg % 2 else 1
        if n + 1 < len(P.terms):
            for i2, row in enumerate(P.diffs[n + 1]):
                for r, c in row.get(i, {}).items():
                    for s, c2 in alg.mul(r, q).items():
                        key = lookup[(X, Y, n + 1, i2, m, j, s)]
                        acc[key] = acc.get(key, 0) - sg * c * c2
        acc = clean(F, acc)
        if acc:
            ops[(f,)] = acc
    units = {}
    for X in names:
        P = resolutions[X]
        # identity = sum of identities of the summands; adjoined as a basis change is
        # avoided by declaring no strict unit here
    cat = AInfCategory(F, names, gens, ops, units or None, 2, "dg End")
    cat.identity_vectors = {
        X: {lookup[(X, X, n, i, n, i, Path(a, a, ()))]: F.one
            for n, tops in enumerate(resolutions[X].terms) for i, a in enumerate(tops)}
        for X in names}
    return cat


def _with_identity_basis(cat: AInfCategory) -> AInfCategory:
    """Rename so that each object's identity is a basis element ``id_X``.

    The identity is a sum of summand identities; a triangular change of basis
    replaces one of them by the sum, which keeps structure constants exact.
    """
    F = cat.F
    ids = cat.identity_vectors
    new_gens = dict(cat.gens)
    subst: dict = {}   # old name -> vector in new basis
    inv: dict = {}     # new name -> vector in old basis
    for X, vec in ids.items():
        first = sorted(vec)[0]
        e = f"id_{X}"
        new_gens.pop(first)
        new_gens[e] = Gen(X, X, 0)
        # old first = id - sum of the others
        subst[first] = clean(F, {e: F.one, **{g: -c for g, c in vec.items() if g != first}})
        inv[e] = dict(vec)
    def to_new(v):
        acc: dict = {}
        for g, c in v.items():
            for h, d in subst.get(g, {g: F.one}).items():
                acc[h] = acc.get(h, 0) + c * d
        return clean(F, acc)
    def to_old(g):
        return inv.get(g, {g: F.one})
    ops: dict = {}
    for n in (1, 2):
        for w in _words_from(cat, new_gens, n):
            terms = [((), F.one)]
            for x in w:
                terms = [(t + (y,), c * d) for t, c in terms for y, d in to_old(x).items()]
            acc: dict = {}
            for t, c in terms:
                for z, d in cat.ops.get(t, {}).items():
                    acc[z] = acc.get(z, 0) + c * d
            out = to_new(clean(F, acc))
            if out:
                ops[w] = out
    units = {X: f"id_{X}" for X in ids}
    ordered = {}
    for X in cat.objects:
        ordered[f"id_{X}"] = new_gens[f"id_{X}"]
    for g, gen in new_gens.items():
        ordered.setdefault(g, gen)
    return AInfCategory(F, cat.objects, ordered, ops, units, 2, cat.name)


def _words_from(cat, gens, n):
    by_dst: dict = {}
    for g, gen in gens.items():
        by_dst.setdefault(gen.dst, []).append(g)
    if n == 1:
        for g in gens:
            yield (g,)
        return
    for g, gen in gens.items():
        for h in by_dst.get(gen.src, []):
            yield (g, h)


@dataclass
class ExtResult:
    algebra: PathAlgebra
    resolutions: dict
    dg: AInfCategory
    minimal: AInfCategory
    morphism: object
    ext_dims: dict


def ext_ainf_category(alg: PathAlgebra, modules: Mapping[str, Rep], arity: int | None = None,
                      max_length: int = 32) -> ExtResult:
    """Resolve, build the dg endomorphism category, contract and transfer."""
    from .ainf import check_stasheff
    from .transfer import transfer_minimal_model

    res = {X: minimal_projective_resolution(alg, M, max_length) for X, M in modules.items()}
    dg = dg_end_category(alg, res)
    rep = check_stasheff(dg)
    if not rep.ok:
        raise QuiverError(f"dg endomorphism category fails: {rep.summary()}")
    dgu = _with_identity_basis(dg)
    rep = check_stasheff(dgu)
    if not rep.ok:
        raise QuiverError(f"dg endomorphism category fails after rebasing: {rep.summary()}")
    tr = transfer_minimal_model(dgu, arity=arity)
    ext = {}
    for X in modules:
        for Y in modules:
            ext[(X, Y)] = ext_dims_by_ranks(res[X], modules[Y])
    return ExtResult(alg, res, dgu, tr.minimal, tr.morphism, ext)


# ---- enumeration oracle -------------------------------------------------------

def _dim_vectors(vertices, bound):
    if isinstance(bound, int):
        bound = {v: bound for v in vertices}
    ranges = [range(bound.get(v, 0) + 1) for v in vertices]
    for dv in itertools.product(*ranges):
        yield dict(zip(vertices, dv))


def intertwiners(X: Rep, Y: Rep) -> list:
    """Basis of ``Hom(X, Y)``: families ``g_v`` with ``g_t X_a = Y_a g_s``."""
    alg = X.alg
    F = alg.F
    var = {}
    for v in alg.vertices:
        for r in range(Y.dims.get(v, 0)):
            for c in range(X.dims.get(v, 0)):
                var[(v, r, c)] = len(var)
    rows = []
    for a, (s, t, _) in alg.arrows.items():
        for r in range(Y.dims.get(t, 0)):
            for c in range(X.dims.get(s, 0)):
                row: dict = {}
                for k in range(X.dims.get(t, 0)):     # (g_t X_a)[r][c]
                    if X.maps[a][k][c]:
                        j = var[(t, r, k)]
                        row[j] = row.get(j, 0) + X.maps[a][k][c]
                for k in range(Y.dims.get(s, 0)):     # (Y_a g_s)[r][c]
                    if Y.maps[a][r][k]:
                        j = var[(s, k, c)]
                        row[j] = row.get(j, 0) - Y.maps[a][r][k]
                row = clean(F, row)
                if row:
                    rows.append(row)
    basis = nullspace(F, rows, len(var))
    out = []
    for z in basis:
        g = {v: [[F.zero] * X.dims.get(v, 0) for _ in range(Y.dims.get(v, 0))] for v in alg.vertices}
        for (v, r, c), j in var.items():
            if z.get(j):
                g[v][r][c] = z[j]
        out.append(g)
    return out


def _combos(F, basis, cap):
    q = F.p
    if q is None:
        raise QuiverError("searching intertwiners needs a finite field")
    if q ** len(basis) > cap:
        raise QuiverError(f"search space {q}^{len(basis)} exceeds cap {cap}")
    for coeffs in itertools.product(range(q), repeat=len(basis)):
        yield coeffs


def _lin(F, basis, coeffs, vertices, dimsY, dimsX):
    return {v: [[F(sum(c * b[v][r][k] for c, b in zip(coeffs, basis) if c))
                 for k in range(dimsX.get(v, 0))] for r in range(dimsY.get(v, 0))]
            for v in vertices}


def is_isomorphic(X: Rep, Y: Rep, cap: int = 100000) -> bool:
    if X.dims != Y.dims:
        return False
    from .linalg import inverse

    F = X.alg.F
    basis = intertwiners(X, Y)
    for coeffs in _combos(F, basis, cap):
        g = _lin(F, basis, coeffs, X.alg.vertices, Y.dims, X.dims)
        if all(inverse(F, g[v]) is not None for v in X.alg.vertices if X.dims.get(v, 0)):
            return True
    return False


def is_indecomposable(X: Rep, cap: int = 100000) -> bool:
    if X.total_dim() == 0:
        return False
    F = X.alg.F
    basis = intertwiners(X, X)
    if len(basis) == 1:                 # End(X) is the ground field
        return True
    for coeffs in _combos(F, basis, cap):
        e = _lin(F, basis, coeffs, X.alg.vertices, X.dims, X.dims)
        zero = all(not any(any(r) for r in e[v]) for v in X.alg.vertices)
        one = all(e[v][i][j] == (F.one if i == j else F.zero)
                  for v in X.alg.vertices for i in range(X.dims.get(v, 0))
                  for j in range(X.dims.get(v, 0)))
        if zero or one:
            continue
        sq = {v: _matmul(F, e[v], e[v], X.dims[v], X.dims[v], X.dims[v]) for v in X.alg.vertices}
        if all(sq[v] == e[v] for v in X.alg.vertices):
            return False
    return True


@dataclass
class RepInventory:
    classes: list          # representatives, deterministic order
    indecomposable: list   # flags
    searched: int

    @property
    def n_indecomposable(self) -> int:
        return sum(self.indecomposable)


def rep_enumerate(alg: PathAlgebra, bound=1, cap: int = 100000) -> RepInventory:
    """All representations with ``dim V_v <= bound``, up to isomorphism."""
    F = alg.F
    if not F.is_finite:
        raise QuiverError("enumeration needs a finite field")
    classes, flags = [], []
    searched = 0
    for dv in _dim_vectors(alg.vertices, bound):
        shapes = [(a, dv[t], dv[s]) for a, (s, t, _) in alg.arrows.items()]
        n_entries = sum(r * c for _, r, c in shapes)
        if F.p ** n_entries > cap:
            raise QuiverError(f"search space {F.p}^{n_entries} exceeds cap {cap}")
        for vals in itertools.product(range(F.p), repeat=n_entries):
            searched += 1
            maps, pos = {}, 0
            for a, r, c in shapes:
                maps[a] = [[vals[pos + i * c + j] for j in range(c)] for i in range(r)]
                pos += r * c
            X = Rep(alg, dict(dv), maps)
            if not X.satisfies_relations():
                continue
            if any(is_isomorphic(X, Y, cap) for Y in classes if Y.dims == X.dims):
                continue
            classes.append(X)
            flags.append(is_indecomposable(X, cap))
    return RepInventory(classes, flags, searched)


def presentation_from_json(doc: Mapping) -> QuiverPresentation:
    F = Field.from_descriptor(doc.get("field", "Q"))
    arrows = {a["name"]: (a["src"], a["dst"], int(a.get("degree", 0))) for a in doc["arrows"]}
    rels = [{k: F.parse(v) for k, v in r.items()} for r in doc.get("relations", [])]
    ops = [(tuple(o["word"]), {o["output"]: F.parse(o.get("coeff", 1))})
           for o in doc.get("operations", [])]
    return QuiverPresentation(list(doc["vertices"]), arrows, rels, ops, F)


def b9_presentation(F: Field = QQ) -> QuiverPresentation:
    """``x -> y -> z -> t`` with arrows alpha, beta, gamma and ``gamma beta alpha = 0``."""
    return QuiverPresentation(
        ["x", "y", "z", "t"],
        {"alpha": ("x", "y", 0), "beta": ("y", "z", 0), "gamma": ("z", "t", 0)},
        [{"gamma*beta*alpha": 1}], [], F)


def a4_presentation(F: Field = QQ) -> QuiverPresentation:
    return QuiverPresentation(
        ["x", "y", "z", "t"],
        {"alpha": ("x", "y", 0), "beta": ("y", "z", 0), "gamma": ("z", "t", 0)}, [], [], F)


def d4_presentation(F: Field = QQ) -> QuiverPresentation:
    """The zigzag ``2 <-a- 1 -c-> 4 <-b- 3`` without relations."""
    return QuiverPresentation(
        ["1", "2", "3", "4"],
        {"a": ("1", "2", 0), "c": ("1", "4", 0), "b": ("3", "4", 0)}, [], [], F)


PRESENTATIONS = {"B9": b9_presentation, "A4": a4_presentation, "D4": d4_presentation}
