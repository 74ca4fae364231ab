"""Random structures for property tests and the acceptance suite.

Every generator takes an explicit ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .field import Field, clean
from .linalg import inverse, nullspace
from .structure import AInfCategory, Gen, algebra


@dataclass
class DgAlgebraConfig:
    max_dim: int = 3          # per degree
    min_degree: int = 0
    max_degree: int = 3
    max_generators: int = 3
    max_length: int = 3


def _random_invertible(F: Field, rng: random.Random, n: int) -> list:
    while True:
        M = [[F.random(rng) for _ in range(n)] for _ in range(n)]
        if inverse(F, M) is not None:
            return M


def base_change(A: AInfCategory, rng: random.Random) -> AInfCategory:
    """Conjugate all structure constants by a random invertible map on each
    (Hom space, degree) block, keeping the basis names."""
    F = A.F
    groups: dict = {}
    for x, g in A.gens.items():
        groups.setdefault((g.src, g.dst, g.degree), []).append(x)
    T, Tinv = {}, {}
    for names in groups.values():
        M = _random_invertible(F, rng, len(names))
        Mi = inverse(F, M)
        for j, x in enumerate(names):
            T[x] = {names[i]: M[i][j] for i in range(len(names)) if M[i][j]}
            Tinv[x] = {names[i]: Mi[i][j] for i in range(len(names)) if Mi[i][j]}
    ops: dict = {}
    for w in _all_words(A):
        terms = [((), F.one)]
        for x in w:
            terms = [(t + (y,), c * v) for t, c in terms for y, v in Tinv[x].items()]
        acc: dict = {}
        for t, c in terms:
            for z, v in A.ops.get(t, {}).items():
                for y, u in T[z].items():
                    acc[y] = acc.get(y, 0) + c * v * u
        acc = clean(F, acc)
        if acc:
            ops[w] = acc
    return A.with_ops(ops, arity_bound=A.arity_bound)


def _all_words(A: AInfCategory):
    for n in range(1, A.arity_bound + 1):
        yield from A.composable_words(n)


def random_dg_algebra(F: Field, rng: random.Random, cfg: DgAlgebraConfig = DgAlgebraConfig()
                      ) -> AInfCategory:
    """A monomial graded algebra with an inner differential ``[u, -]`` (``u^2 = 0``),
    disguised by a random base change."""
    while True:
        k = rng.randint(1, cfg.max_generators)
        gdeg = [rng.randint(cfg.min_degree, min(cfg.max_degree, 2)) for _ in range(k)]
        if rng.random() < 0.8:
            gdeg[0] = 1
        words = []
        for L in range(1, cfg.max_length + 1):
            for w in itertools.product(range(k), repeat=L):
                d = sum(gdeg[i] for i in w)
                if cfg.min_degree <= d <= cfg.max_degree:
                    words.append(w)
        killed = {(0, 0)} if gdeg[0] == 1 else set()
        for w in words:
            if len(w) >= 2 and rng.random() < 0.35:
                killed.add(w)

        def alive(w):
            if len(w) > cfg.max_length:
                return False
            d = sum(gdeg[i] for i in w)
            if not cfg.min_degree <= d <= cfg.max_degree:
                return False
            return not any(w[a:b] in killed for a in range(len(w)) for b in range(a + 1, len(w) + 1))

        basis = [w for w in words if alive(w)]
        by_deg: dict = {}
        for w in basis:
            by_deg.setdefault(sum(gdeg[i] for i in w), []).append(w)
        if all(len(v) <= cfg.max_dim for v in by_deg.values()):
            break
    # a square-zero degree-one element for the differential
    ones = [w for w in basis if sum(gdeg[i] for i in w) == 1 and not alive(w + w)]
    u = rng.choice(ones) if ones and rng.random() < 0.8 else None
    name = {w: "g" + "".join(map(str, w)) for w in basis}
    degrees = {name[w]: sum(gdeg[i] for i in w) for w in basis}
    ops: dict = {}
    for x in basis:
        for y in basis:
            if alive(x + y):
                ops[(name[x], name[y])] = {name[x + y]: F.one}
    if u is not None:
        for x in basis:
            acc: dict = {}
            if alive(u + x):
                acc[name[u + x]] = acc.get(name[u + x], 0) + 1
            if alive(x + u):
                sg = -1 if sum(gdeg[i] for i in x) % 2 else 1
                acc[name[x + u]] = acc.get(name[x + u], 0) - sg
            acc = clean(F, acc)
            if acc:
                ops[(name[x],)] = acc
    A = algebra(F, degrees, ops, arity_bound=2, name="dg")
    return base_change(A, rng)


def mutate_coefficient(A: AInfCategory, rng: random.Random, max_arity: int | None = None):
    """Change one structure constant (possibly a zero one) to a different value.

    Returns the mutated structure and ``(word, output, old, new)``."""
    F = A.F
    N = max_arity or A.arity_bound
    slots = []
    for n in range(1, N + 1):
        for w in A.composable_words(n):
            deg = A.word_degree(w) + 2 - n
            s, t = A.gens[w[-1]].src, A.gens[w[0]].dst
            for y in A.hom(s, t):
                if A.gens[y].degree == deg:
                    slots.append((w, y))
    if not slots:
        raise ValueError("no slot to mutate")
    w, y = rng.choice(slots)
    old = A.ops.get(w, {}).get(y, F.zero)
    new = old
    while new == old:
        new = F.random(rng)
    ops = {k: dict(v) for k, v in A.ops.items()}
    ops.setdefault(w, {})[y] = new
    return A.with_ops(ops, arity_bound=max(A.arity_bound, len(w))), (w, y, old, new)


def random_family(F: Field, rng: random.Random, n_gens: int = 3, max_arity: int = 4,
                  degrees=(-2, 2), density: float = 0.25) -> AInfCategory:
    """Arbitrary degree-correct operations on a one-object graded space."""
    degs = {f"x{i}": rng.randint(*degrees) for i in range(n_gens)}
    names = list(degs)
    ops = {}
    for n in range(1, max_arity + 1):
        for w in itertools.product(names, repeat=n):
            d = sum(degs[x] for x in w) + 2 - n
            outs = [y for y in names if degs[y] == d]
            if outs and rng.random() < density:
                ops[w] = {rng.choice(outs): F.random(rng) or F.one}
    return algebra(F, degs, ops, arity_bound=max_arity)


def random_upper_triangular(F: Field, rng: random.Random, n_objects: int,
                            arrows_per_pair: int = 1, max_degree: int = 2,
                            max_path: int | None = None) -> AInfCategory:
    """A dg path category on objects ``0 < 1 < ... < N-1``.

    Arrows only go from smaller to larger objects, so Hom is finite and the
    reduced part is strictly upper triangular; the endomorphisms of each
    object are its identity.  Differentials of arrows are random cycles in
    the span of longer paths, which makes ``d^2 = 0`` by construction.
    """
    objs = [str(i) for i in range(n_objects)]
    arrows = []
    for i in range(n_objects):
        for j in range(i + 1, n_objects):
            for k in range(rng.randint(0, arrows_per_pair)):
                arrows.append((f"a{i}{j}_{k}", i, j, rng.randint(-1, max_degree)))
    adeg = {a: d for a, _, _, d in arrows}
    out_of: dict = {}
    for a, i, j, _ in arrows:
        out_of.setdefault(i, []).append((a, j))
    # paths are tuples of arrows in display order (last applied first)
    paths = []

    def grow(path, at):
        if path:
            paths.append(tuple(reversed(path)))
        for a, j in out_of.get(at, []):
            if max_path is None or len(path) < max_path:
                grow(path + [a], j)

    for i in range(n_objects):
        grow([], i)
    src = {a: i for a, i, _, _ in arrows}
    dst = {a: j for a, _, j, _ in arrows}
    name = {p: "*".join(p) for p in paths}
    pdeg = {p: sum(adeg[a] for a in p) for p in paths}
    pset = set(paths)
    d_arrow: dict = {}

    def d_path(p):
        acc: dict = {}
        passed = 0
        for k, a in enumerate(p):
            for q, c in d_arrow.get(a, {}).items():
                w = p[:k] + q + p[k + 1:]
                if w in pset:
                    acc[w] = acc.get(w, 0) + (-c if passed % 2 else c)
            passed += adeg[a]
        return clean(F, acc)

    for a, i, j, dg in sorted(arrows, key=lambda t: (t[2] - t[1], t[0])):
        cands = [p for p in paths if len(p) >= 2 and src[p[-1]] == i and dst[p[0]] == j
                 and pdeg[p] == dg + 1]
        if not cands:
            continue
        tgt = sorted({q for p in cands for q in d_path(p)})
        tix = {q: k for k, q in enumerate(tgt)}
        rows = [dict() for _ in tgt]
        for c, p in enumerate(cands):
            for q, v in d_path(p).items():
                rows[tix[q]][c] = v
        Z = nullspace(F, rows, len(cands))
        vec: dict = {}
        for z in Z:
            coeff = F.random(rng)
            for c, v in z.items():
                vec[cands[c]] = vec.get(cands[c], 0) + coeff * v
        vec = clean(F, vec)
        if vec:
            d_arrow[a] = vec
    gens = {name[p]: Gen(objs[src[p[-1]]], objs[dst[p[0]]], pdeg[p]) for p in paths}
    ops: dict = {}
    for p in paths:
        for q in paths:
            if src[p[-1]] == dst[q[0]] and p + q in pset:
                ops[(name[p], name[q])] = {name[p + q]: F.one}
        dp = d_path(p)
        if dp:
            ops[(name[p],)] = {name[q]: c for q, c in dp.items()}
    units = {}
    for o in objs:
        e = f"e{o}"
        gens[e] = Gen(o, o, 0)
        units[o] = e
    for x, g in list(gens.items()):
        ops[(units[g.dst], x)] = {x: F.one}
        ops[(x, units[g.src])] = {x: F.one}
    return AInfCategory(F, objs, gens, ops, units, 2, f"upper{n_objects}")


def random_minimal_category(F: Field, rng: random.Random, n_objects: int = 3) -> AInfCategory:
    """Minimal model of a random upper-triangular dg category."""
    from .transfer import transfer_minimal_model

    return transfer_minimal_model(random_upper_triangular(F, rng, n_objects, 2)).minimal


def pushforward(A: AInfCategory, f1: dict, higher: dict, objmap=None):
    """Target structure B on the same generators making ``f`` an A-infinity
    morphism ``A -> B``; needs words of non-identity generators to be bounded."""
    from .bar import BarFamily, bar_transform, insert_terms, multi_terms
    from .structure import AInfMorphism
    from .transfer import longest_chain

    Fld = A.F
    arity = longest_chain(A)
    if arity is None:
        raise ValueError("pushforward needs bounded composable words")
    fam = dict(higher)
    fam.update({(x,): v for x, v in f1.items()})
    f_stub = AInfMorphism(A, A, fam)
    Fb = bar_transform(f_stub).entries
    bA = bar_transform(A).entries
    # invert f_1
    groups: dict = {}
    for x, g in A.gens.items():
        groups.setdefault((g.src, g.dst, g.degree), []).append(x)
    g1 = {}
    for names in groups.values():
        M = [[f1.get(x, {}).get(y, Fld.zero) for x in names] for y in names]
        Mi = inverse(Fld, M)
        if Mi is None:
            raise ValueError("f_1 is not invertible")
        for j, y in enumerate(names):
            g1[y] = {names[i]: Mi[i][j] for i in range(len(names)) if Mi[i][j]}
    bB: dict = {}
    for n in range(1, arity + 1):
        lhs = insert_terms(Fld, Fb, bA, A, 1, length=n)
        rhs = multi_terms(Fld, bB, [(Fb, 0)], lambda r: [(0,) * r], A, length=n)
        rest = {w: {y: lc.get(y, 0) - rhs.get(w, {}).get(y, 0) for y in set(lc) | set(rhs.get(w, {}))}
                for w, lc in lhs.items()}
        for w, lc in rhs.items():
            if w not in rest:
                rest[w] = {y: -c for y, c in lc.items()}
        rest = {w: clean(Fld, lc) for w, lc in rest.items()}
        for y in A.composable_words(n):
            terms = [((), Fld.one)]
            for yi in y:
                terms = [(t + (x,), c * v) for t, c in terms for x, v in g1[yi].items()]
            acc: dict = {}
            for t, c in terms:
                for z, v in rest.get(t, {}).items():
                    acc[z] = acc.get(z, 0) + c * v
            acc = clean(Fld, acc)
            if acc:
                bB[y] = acc
    B = bar_transform(BarFamily(A, A, bB, 1))
    B = AInfCategory(Fld, A.objects, A.gens, B.ops, None, None, "pushforward")
    return B, AInfMorphism(A, B, fam)


def random_minimal_morphism(F: Field, rng: random.Random, n_objects: int = 3, max_arity: int = 3):
    """A random morphism ``A -> B`` of minimal structures with invertible ``f_1``
    and random components up to ``max_arity``."""
    M = random_minimal_category(F, rng, n_objects)
    units = set(M.units.values())
    A = AInfCategory(F, M.objects, {x: g for x, g in M.gens.items() if x not in units},
                     {w: lc for w, lc in M.ops.items() if not units.intersection(w)},
                     None, None, "minimal")
    groups: dict = {}
    for x, g in A.gens.items():
        groups.setdefault((g.src, g.dst, g.degree), []).append(x)
    f1 = {}
    for names in groups.values():
        M = _random_invertible(F, rng, len(names))
        for j, x in enumerate(names):
            f1[x] = {names[i]: M[i][j] for i in range(len(names)) if M[i][j]}
    higher = {}
    for n in range(2, max_arity + 1):
        for w in A.composable_words(n):
            deg = A.word_degree(w) + 1 - n
            outs = [y for y in A.hom(A.gens[w[-1]].src, A.gens[w[0]].dst)
                    if A.gens[y].degree == deg]
            if outs and rng.random() < 0.7:
                higher[w] = {rng.choice(outs): F.random(rng)}
    return pushforward(A, f1, higher)


# ---- local algebras and complexes of modules ------------------------------------

_LOCAL_TABLES = {
    # products of radical basis elements x, y, z (missing entries are zero)
    "k[x]/x^4": {("x", "x"): "y", ("x", "y"): "z", ("y", "x"): "z"},
    "square zero": {},
    "k[x,y]/(x^2,y^2)": {("x", "y"): "z", ("y", "x"): "z"},
    "exterior": {("x", "y"): "z", ("y", "x"): ("z", -1)},
    "k<x,y>/(x^2,y^2,yx)": {("x", "y"): "z"},
    "k[x,y]/(x^3,xy,y^2)": {("x", "x"): "z"},
}


def random_local_algebra(F: Field, rng: random.Random, kind: str | None = None) -> AInfCategory:
    """A 4-dimensional local algebra ``k 1 + rad`` in a random basis of the radical."""
    kind = kind or rng.choice(sorted(_LOCAL_TABLES))
    table = _LOCAL_TABLES[kind]
    rad = ["x", "y", "z"]
    mult: dict = {}
    for (a, b), v in table.items():
        y, c = (v, 1) if isinstance(v, str) else v
        mult[(a, b)] = {y: F(c)}
    T = _random_invertible(F, rng, 3)
    Ti = inverse(F, T)
    new = [f"r{i}" for i in range(3)]
    # new basis element r_j = sum_i T[i][j] old_i; old_i = sum_j Ti[j][i] r_j
    ops = {}
    for a in range(3):
        for b in range(3):
            acc: dict = {}
            for i in range(3):
                for k in range(3):
                    c = T[i][a] * T[k][b]
                    if not c:
                        continue
                    for z, v in mult.get((rad[i], rad[k]), {}).items():
                        zi = rad.index(z)
                        for j in range(3):
                            acc[new[j]] = acc.get(new[j], 0) + c * v * Ti[j][zi]
            acc = clean(F, acc)
            if acc:
                ops[(new[a], new[b])] = acc
    for x in ["1"] + new:
        ops[("1", x)] = {x: F.one}
        ops[(x, "1")] = {x: F.one}
    return algebra(F, {x: 0 for x in ["1"] + new}, ops, unit="1", name=kind)


def _right_mult(A: AInfCategory, v: dict, b: str) -> dict:
    acc: dict = {}
    for x, c in v.items():
        for y, d in A.ops.get((x, b), {}).items():
            acc[y] = acc.get(y, 0) + c * d
    return clean(A.F, acc)


def _quotient(A: AInfCategory, gens_of_ideal: list):
    """``A / I`` for the right ideal generated by the given vectors: returns the
    index of basis names, the echelon form of I and the complement names."""
    from .linalg import Echelon

    F = A.F
    names = list(A.gens)
    idx = {x: i for i, x in enumerate(names)}
    e = Echelon(F)
    for v in gens_of_ideal:
        for b in names:
            w = _right_mult(A, v, b)
            e.add({idx[x]: c for x, c in w.items()})
    piv = set(e.pivots)
    comp = [x for x in names if idx[x] not in piv]
    return idx, e, comp


def _reduce_to(A, idx, e, comp, v: dict) -> dict:
    names = list(A.gens)
    red = e.reduce({idx[x]: c for x, c in v.items()})
    return {names[i]: c for i, c in red.items() if names[i] in comp}


def random_complex_module(A: AInfCategory, rng: random.Random, max_total: int = 6):
    """A two-term complex ``A/I -> A/J`` of right modules (or a single module),
    in random degrees, with a random module map as differential."""
    from .modules import SINK, AInfModule

    F = A.F
    names = list(A.gens)
    unit = A.units[A.objects[0]]
    rad = [x for x in names if x != unit]

    def random_quotient():
        while True:
            k = rng.randint(0, 2)
            gens = [{x: F.random(rng) for x in rad} for _ in range(k)]
            gens = [clean(F, g) for g in gens if clean(F, g)]
            q = _quotient(A, gens)
            if 1 <= len(q[2]) <= max_total // 2:
                return q

    terms = [random_quotient() for _ in range(rng.choice([1, 2, 2, 2]))]
    low = rng.randint(-1, 1)
    gens, ops = {}, {}
    labels = []
    for t, (idx, e, comp) in enumerate(terms):
        lab = {x: f"m{t}_{x}" for x in comp}
        labels.append(lab)
        for x in comp:
            gens[lab[x]] = Gen(A.objects[0], SINK, low + t)
        for x in comp:
            for b in names:
                img = _reduce_to(A, idx, e, comp, _right_mult(A, {x: F.one}, b))
                if img:
                    ops[(lab[x], b)] = {lab[y]: c for y, c in img.items()}
    if len(terms) == 2:
        (idx0, e0, comp0), (idx1, e1, comp1) = terms
        # v with v * I0 contained in I1: I0 is spanned by the pivot rows of e0
        basis_I0 = [{names[i]: c for i, c in row.items()} for row in e0.basis()]
        cols = []
        for x in names:
            cols.append([_reduce_to(A, idx1, e1, comp1, _right_mult(A, {x: F.one}, b))
                         for b in names])
        rows, keys = [], []
        for v0 in basis_I0:
            for y in comp1:
                row = {}
                for j, x in enumerate(names):
                    acc = 0
                    for b, c in v0.items():
                        acc += c * cols[j][names.index(b)].get(y, 0)
                    if F(acc):
                        row[j] = F(acc)
                rows.append(row)
        sols = nullspace(F, rows, len(names))
        v = {}
        for s in sols:
            c = F.random(rng)
            for j, a in s.items():
                v[names[j]] = v.get(names[j], 0) + c * a
        v = clean(F, v)
        for x in comp0:
            img = _reduce_to(A, idx1, e1, comp1, _right_mult(A, v, x))
            if img:
                ops[(labels[0][x],)] = {labels[1][y]: c for y, c in img.items()}
    return AInfModule(A, gens, ops, 2, "complex")


def random_associative_algebra(F: Field, rng: random.Random, max_dim: int = 3) -> AInfCategory:
    """An ungraded associative algebra of dimension at most ``max_dim``: a
    monomial algebra in a random basis, sometimes with a unit adjoined."""
    from .ainf import augment

    unital = max_dim >= 2 and rng.random() < 0.5
    cfg = DgAlgebraConfig(max_dim=max_dim - unital, min_degree=0, max_degree=0,
                          max_generators=2, max_length=3)
    B = random_dg_algebra(F, rng, cfg)
    return augment(B, "u") if unital else B


def cochain_words(B: AInfCategory, n: int) -> list:
    return [(w, y) for w in B.composable_words(n) for y in sorted(B.gens)]


def random_cochain(B: AInfCategory, n: int, rng: random.Random,
                   cocycle: bool | None = None, density: float = 0.4) -> dict:
    """A random n-cochain; ``cocycle=True`` draws from the cocycle space."""
    from .ainf import hochschild_differential

    F = B.F
    slots = cochain_words(B, n)
    if cocycle:
        rows: dict = {}
        for k, (w, y) in enumerate(slots):
            for v, lc in hochschild_differential(B, {w: {y: F.one}}, n).items():
                for z, c in lc.items():
                    rows.setdefault((v, z), {})[k] = c
        kernel = nullspace(F, list(rows.values()), len(slots))
        vec: dict = {}
        for b in kernel:
            c = F.random(rng)
            for k, v in b.items():
                vec[k] = vec.get(k, 0) + c * v
        vec = clean(F, vec)
    else:
        vec = {k: F.random(rng) for k in range(len(slots)) if rng.random() < density}
    out: dict = {}
    for k, c in clean(F, vec).items():
        w, y = slots[k]
        out.setdefault(w, {})[y] = c
    return out
