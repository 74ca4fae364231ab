"""Shifted objects, twisted objects and the H^0 category of tw(A).

Compositions are computed on the bar side, where they are sign-free: the
twisted composition is ``b_n = sum_t b'_{n+t} o phi_{n,t}`` with ``phi_{n,t}``
inserting ``t`` copies of the (degree 0) suspended twisting cochain in all
gaps.  Everything is then transported to the m-side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .bar import BarFamily, Report, bar_transform
from .field import Field, clean
from .graded import GradedMap, GradedSpace, StructureError, complex_homology
from .linalg import inverse, solve
from .structure import AInfCategory, Gen


class TwistError(StructureError):
    pass


# ---- the shift closure ---------------------------------------------------------

def shifted_name(obj: str, n: int) -> str:
    return obj if n == 0 else f"{obj}[{n}]"


def shift_category(A: AInfCategory, shifts: Sequence[int] = (0,)) -> AInfCategory:
    """``ZA`` restricted to the given shifts.

    ``Hom((X,n), (Y,n')) = Hom(X,Y)[n'-n]``; the element ``x[n,n']`` has degree
    ``|x| + n - n'``.  On the bar side ``b(x_1..x_k) = (-1)^(sum of target
    shifts) b^A(x_1..x_k)``, which keeps ``e[n,n]`` a strict identity and
    makes the shift-0 part equal to ``A``.
    """
    if not A.units or set(A.units) != set(A.objects):
        raise TwistError("the shift closure needs strict identities on every object")
    F = A.F
    shifts = sorted(set(shifts))
    objects = [shifted_name(o, n) for o in A.objects for n in shifts]
    where = {}
    gens = {}
    for x, g in A.gens.items():
        for n in shifts:
            for m in shifts:
                name = x if n == m == 0 else f"{x}[{n},{m}]"
                gens[name] = Gen(shifted_name(g.src, n), shifted_name(g.dst, m), g.degree + n - m)
                where[name] = (x, n, m)
    bA = bar_transform(A).entries
    by_first: dict = {}
    for name, (x, n, m) in where.items():
        by_first.setdefault(x, []).append(name)
    entries = {}
    # extend each entry of b^A over all consistent shift assignments
    for w, lc in bA.items():
        k = len(w)
        for sh in itertools.product(shifts, repeat=k + 1):
            # sh[0] is the target shift of w[0]; sh[i] the target shift of w[i]
            # and the source shift of w[i-1]
            word = []
            for i, x in enumerate(w):
                m, n = sh[i], sh[i + 1]
                word.append(x if n == m == 0 else f"{x}[{n},{m}]")
            sign = -1 if sum(sh[:k]) % 2 else 1
            out = {}
            for y, c in lc.items():
                yn = y if sh[k] == sh[0] == 0 else f"{y}[{sh[k]},{sh[0]}]"
                out[yn] = sign * c
            entries[tuple(word)] = out
    units = {shifted_name(o, n): (e if n == 0 else f"{e}[{n},{n}]")
             for o, e in A.units.items() for n in shifts}
    Z0 = AInfCategory(F, objects, gens, {}, units, 1, f"Z{A.name}")
    Zm = bar_transform(BarFamily(Z0, Z0, entries, 1))
    Z = AInfCategory(F, objects, gens, Zm.ops, units, A.arity_bound, f"Z{A.name}")
    Z.shift_of = {shifted_name(o, n): (o, n) for o in A.objects for n in shifts}
    Z.base = A
    Z.element_of = where
    return Z


# ---- signs of the explicit formula ---------------------------------------------

def normal_order_sign(monomial: str) -> int:
    """Sign of ``(S u_1)(S u_2)...(S u_k) = +- S^k u_1...u_k`` in
    ``k<X,Y,S>/(SX - XS, SY + YS)``; ``monomial`` is a string over X and Y."""
    sign = 1
    ys = 0
    for ch in monomial:
        if ch not in "XY":
            raise ValueError(f"bad letter {ch!r}")
        if ys % 2:
            sign = -sign      # this S moves left past an odd number of Y's
        if ch == "Y":
            ys += 1
    return sign


def koszul_insertion_sign(monomial: str, parities: Sequence[int]) -> int:
    """Koszul sign of applying ``1^(i_1) (x) delta^(j_1) (x) ...`` to ``f_n (x) ... (x) f_1``:
    each delta (degree 1) passes the arguments to its left."""
    sign, left, k = 1, 0, 0
    for ch in monomial:
        if ch == "X":
            left += parities[k]
            k += 1
        elif left % 2:
            sign = -sign
    return sign


def explicit_tw_sign(monomial: str, parities: Sequence[int]) -> int:
    return normal_order_sign(monomial) * koszul_insertion_sign(monomial, parities)


def bar_side_tw_sign(monomial: str, parities: Sequence[int]) -> int:
    """The sign carried by ``m_{n+t}(...)`` in ``m^tw_n`` when ``m^tw`` is obtained
    by transporting the sign-free bar formula (degrees of delta are 1)."""
    N = len(monomial)
    n = monomial.count("X")
    degs, k = [], 0
    for ch in monomial:
        if ch == "X":
            degs.append(parities[k])
            k += 1
        else:
            degs.append(1)
    # m_N entry sign relative to b_N, and back for the output of arity n
    e_in = sum(d * (N - i) for i, d in enumerate(degs, start=1))
    e_out = sum(parities[i - 1] * (n - i) for i in range(1, n + 1))
    return -1 if (e_in + e_out) % 2 else 1


def insertion_monomials(n: int, t: int) -> list:
    """All words with ``n`` X's and ``t`` Y's."""
    out = []
    for pos in itertools.combinations(range(n + t), t):
        s = ["X"] * (n + t)
        for p in pos:
            s[p] = "Y"
        out.append("".join(s))
    return sorted(out, key=lambda m: [c == "X" for c in m])


def m1_tw_expansion(parity: int, max_arity: int = 4, sign_rule=bar_side_tw_sign) -> list:
    """``[(sign, word)]`` for ``m^tw_1(f)``, words spelled with ``d'``, ``f``, ``d``."""
    out = []
    for N in range(1, max_arity + 1):
        for mono in insertion_monomials(1, N - 1):
            p = mono.index("X")
            word = tuple(["d'"] * p + ["f"] + ["d"] * (N - 1 - p))
            out.append((sign_rule(mono, [parity]), word))
    return out


# ---- insertion patterns -----------------------------------------------------

def phi_patterns(n: int, t: int) -> list:
    """``phi_{n,t}`` as the gap-count vectors ``(g_0, ..., g_n)`` summing to t
    (``g_0`` counts insertions to the left of the first argument)."""
    out = []
    for bars in itertools.combinations(range(t + n), n):
        prev, gaps = -1, []
        for b in bars:
            gaps.append(b - prev - 1)
            prev = b
        gaps.append(t + n - prev - 1)
        out.append(tuple(gaps))
    return sorted(out)


def phi_split_check(n: int, t: int) -> bool:
    """For ``n = i + 1 + k``, ``phi_{n,t} = sum phi_{i,s1} (x) 1 (x) phi_{k,s2}``
    as multisets of insertion patterns (the middle argument separates gaps)."""
    whole = sorted(phi_patterns(n, t))
    for i in range(n):
        k = n - 1 - i
        glued = []
        for s1 in range(t + 1):
            for p in phi_patterns(i, s1):
                for q in phi_patterns(k, t - s1):
                    glued.append(p + q)
        if sorted(glued) != whole:
            return False
    return True


def phi_concatenation_counts(n1: int, n2: int, t: int) -> tuple:
    """``(#phi_{n1+n2,t}, sum_{t1+t2=t} #phi_{n1,t1} * #phi_{n2,t2})``; the two
    agree only when the shared middle gap is counted once."""
    lhs = len(phi_patterns(n1 + n2, t))
    rhs = sum(len(phi_patterns(n1, a)) * len(phi_patterns(n2, t - a)) for a in range(t + 1))
    return lhs, rhs


# ---- twisted objects ----------------------------------------------------------

@dataclass
class TwistedObject:
    """Blocks are objects of ``ZA``; ``delta[(i, j)]`` (``i < j``) is a degree-1
    vector in ``Hom(blocks[j], blocks[i])``."""

    Z: AInfCategory
    blocks: tuple
    delta: dict
    name: str = "X"

    def __post_init__(self):
        self.blocks = tuple(self.blocks)
        F = self.Z.F
        clean_delta = {}
        for (i, j), v in self.delta.items():
            if not (0 <= i < j < len(self.blocks)):
                raise TwistError(f"{self.name}: delta entry ({i},{j}) is not strictly upper triangular")
            v = clean(F, {y: F(c) for y, c in v.items()})
            for y in v:
                g = self.Z.gens.get(y)
                if g is None or (g.src, g.dst) != (self.blocks[j], self.blocks[i]) or g.degree != 1:
                    raise TwistError(f"{self.name}: delta[{i},{j}] must be a degree-1 map "
                                     f"{self.blocks[j]} -> {self.blocks[i]}, got {y!r}")
            if v:
                clean_delta[(i, j)] = v
        self.delta = clean_delta

    def delta_from(self, j) -> list:
        """Entries leaving block j: ``[(i, element, coeff)]``."""
        return [(i, y, c) for (i, jj), v in self.delta.items() if jj == j for y, c in v.items()]


def mc_defect(X: TwistedObject) -> dict:
    """``sum_t (-1)^(t(t-1)/2) m_t(delta, ..., delta)`` per block entry (m-side)."""
    Z, F = X.Z, X.Z.F
    out: dict = {}
    for j in range(len(X.blocks)):
        # chains j = c_0 > c_1 > ... > c_t, word in display order
        stack = [((), 1, j)]
        while stack:
            word, coef, cur = stack.pop()
            for i, y, c in X.delta_from(cur):
                w = (y,) + word
                t = len(w)
                sg = -1 if (t * (t - 1) // 2) % 2 else 1
                for z, v in Z.ops.get(w, {}).items():
                    slot = out.setdefault((i, j), {})
                    slot[z] = slot.get(z, 0) + sg * coef * c * v
                stack.append((w, coef * c, i))
    return {k: v for k, v in ((k, clean(F, v)) for k, v in out.items()) if v}


def mc_defect_bar(X: TwistedObject) -> dict:
    """``sum_t b_t(alpha, ..., alpha)`` per block entry (bar side, sign-free)."""
    Z, F = X.Z, X.Z.F
    bZ = bar_transform(Z).entries
    out: dict = {}
    for j in range(len(X.blocks)):
        stack = [((), 1, j)]
        while stack:
            word, coef, cur = stack.pop()
            for i, y, c in X.delta_from(cur):
                w = (y,) + word
                for z, v in bZ.get(w, {}).items():
                    slot = out.setdefault((i, j), {})
                    slot[z] = slot.get(z, 0) + coef * c * v
                stack.append((w, coef * c, i))
    return {k: v for k, v in ((k, clean(F, v)) for k, v in out.items()) if v}


def validate_mc(X: TwistedObject) -> Report:
    d = mc_defect(X)
    defects = {(f"{X.name}[{i},{j}]",): v for (i, j), v in sorted(d.items())}
    return Report("Maurer-Cartan equation", defects, len(X.blocks))


# ---- tw(A) --------------------------------------------------------------------

class TwCategory(AInfCategory):
    """``tw A`` on a finite list of twisted objects.

    A generator ``X>Y:i>j:z`` is the element ``z`` of ``Hom(A_i, A'_j)`` placed
    in the (i, j) block of ``Hom((B,delta), (B',delta'))``.
    """

    def __init__(self, Z: AInfCategory, objects: Sequence[TwistedObject], check_mc: bool = True,
                 max_arity: int | None = None, chains: Sequence[tuple] | None = None):
        names = [X.name for X in objects]
        if len(set(names)) != len(names):
            raise TwistError("twisted objects need distinct names")
        if check_mc:
            for X in objects:
                rep = validate_mc(X)
                if not rep.ok:
                    raise TwistError(f"{X.name} violates the Maurer-Cartan equation: {rep.summary()}")
        self.Z = Z
        self.F = Z.F
        self.twisted = {X.name: X for X in objects}
        gens, info = {}, {}
        for X in objects:
            for Y in objects:
                for i, a in enumerate(X.blocks):
                    for j, b in enumerate(Y.blocks):
                        for z in Z.hom(a, b):
                            g = f"{X.name}>{Y.name}:{i}>{j}:{z}"
                            gens[g] = Gen(X.name, Y.name, Z.gens[z].degree)
                            info[g] = (X.name, Y.name, i, j, z)
        self.info = info
        self.lookup = {v: k for k, v in info.items()}
        self._by_src: dict = {}
        for g, (Xn, Yn, i, j, z) in info.items():
            self._by_src.setdefault((Xn, Yn, i), []).append((g, j, z))
        N = max_arity or Z.arity_bound
        self._bZ = bar_transform(Z).entries
        self._suffixes = {w[k:] for w in self._bZ for k in range(len(w))}
        base = AInfCategory(Z.F, names, gens, {}, None, 1, "tw")
        entries: dict = {}
        if chains is None:
            chains = [c for n in range(1, N + 1) for c in itertools.product(names, repeat=n + 1)]
        for chain in chains:
            entries.update(self._chain_entries(chain))
        m = bar_transform(BarFamily(base, base, entries, 1))
        super().__init__(Z.F, names, gens, m.ops, None, max(N, 1), "tw")
        self.bar_entries = entries

    def _close(self, states, X: TwistedObject):
        out = list(states)
        frontier = list(states)
        while frontier:
            nxt = []
            for word, coef, cur, tw, s in frontier:
                for i, y, c in X.delta_from(cur):
                    w = (y,) + word
                    if w in self._suffixes:
                        nxt.append((w, coef * c, i, tw, s))
            out.extend(nxt)
            frontier = nxt
        return out

    def _chain_entries(self, chain) -> dict:
        """Bar entries on words along ``chain = (X_0, ..., X_n)`` (display order:
        the rightmost argument maps ``X_n -> X_{n-1}``)."""
        F = self.F
        objs = [self.twisted[c] for c in chain]
        n = len(chain) - 1
        states = []
        for s in range(len(objs[n].blocks)):
            states.append(((), F.one, s, (), s))
        states = self._close(states, objs[n])
        for k in range(n, 0, -1):
            src, dst = chain[k], chain[k - 1]
            new = []
            for word, coef, cur, tw, s in states:
                for g, j, z in self._by_src.get((src, dst, cur), []):
                    w = (z,) + word
                    if w in self._suffixes:
                        new.append((w, coef, j, (g,) + tw, s))
            states = self._close(new, objs[k - 1])
            if not states:
                return {}
        acc: dict = {}
        for word, coef, cur, tw, s in states:
            lc = self._bZ.get(word)
            if not lc:
                continue
            slot = acc.setdefault(tw, {})
            for y, c in lc.items():
                g = self.lookup[(chain[n], chain[0], s, cur, y)]
                slot[g] = slot.get(g, 0) + coef * c
        return {w: v for w, v in ((w, clean(F, v)) for w, v in acc.items()) if v}

    def identity_vector(self, X: str) -> dict:
        Xo = self.twisted[X]
        return {self.lookup[(X, X, i, i, self.Z.units[a])]: self.F.one
                for i, a in enumerate(Xo.blocks)}

    def element(self, X: str, Y: str, i: int, j: int, z: str) -> str:
        return self.lookup[(X, Y, i, j, z)]


def tw_category(Z: AInfCategory, objects: Sequence[TwistedObject], **kw) -> TwCategory:
    return TwCategory(Z, objects, **kw)


def tw_compose(T: TwCategory, *args: Mapping) -> dict:
    """``m^tw_n(f_n, ..., f_1)`` on vectors (display order)."""
    word_lc = {(): T.F.one}
    for v in args:
        word_lc = {w + (x,): c * d for w, c in word_lc.items() for x, d in v.items()}
    return T.apply(word_lc)


# ---- Yoneda realization ---------------------------------------------------------

def yoneda_realize(X: TwistedObject, sign_rule: str = "bar"):
    """The module ``(+) Y A_i`` over the shift-0 part with
    ``m_n = sum_t +- m_{n+t} (delta^t (x) 1^n)``.

    ``sign_rule="bar"`` uses ``(-1)^(tn + t(t-1)/2)``, the transport of the
    sign-free bar formula; ``"display"`` uses ``(-1)^(t(t-1)/2)`` alone.
    """
    from .modules import SINK, AInfModule

    Z = X.Z
    A = Z.base
    F = Z.F
    gens, info = {}, {}
    for i, b in enumerate(X.blocks):
        for z, g in Z.gens.items():
            if g.dst == b and g.src in A.objects:
                name = f"{X.name}:{i}:{z}"
                gens[name] = Gen(g.src, SINK, g.degree)
                info[(i, z)] = name
    ops: dict = {}
    # entries m^Z_{n+t}(delta..., z, a...) with z landing in block j, chained to block i
    for w, lc in Z.ops.items():
        for p in range(len(w)):
            z, rest = w[p], w[p + 1:]
            if any(a not in A.gens for a in rest) or Z.gens[z].src not in A.objects:
                continue
            ds = w[:p]
            t = len(ds)
            e = t * (t - 1) // 2 + (t * (len(w) - t) if sign_rule == "bar" else 0)
            sg = -1 if e % 2 else 1
            for j, b in enumerate(X.blocks):
                if Z.gens[z].dst != b:
                    continue
                # chains of delta entries spelling ds, ending (leftmost) at block i
                paths = [(j, 1)]
                for y in reversed(ds):
                    paths = [(i2, c * c2) for cur, c in paths
                             for i2, y2, c2 in X.delta_from(cur) if y2 == y]
                for i, c in paths:
                    key = (info[(j, z)],) + rest
                    slot = ops.setdefault(key, {})
                    for y, v in lc.items():
                        slot[info[(i, y)]] = slot.get(info[(i, y)], 0) + sg * c * v
    ops = {w: v for w, v in ((w, clean(F, v)) for w, v in ops.items()) if v}
    return AInfModule(A, gens, ops, Z.arity_bound, f"Y{X.name}")


# ---- the H^0 category ------------------------------------------------------------

@dataclass
class H0Category:
    T: TwCategory
    homs: dict = field(default_factory=dict)      # (X, Y) -> Homology of m1 on Hom^*(X, Y)
    names: dict = field(default_factory=dict)     # (X, Y) -> degree-0 class names

    def dim(self, X, Y) -> int:
        return len(self.names[(X, Y)])

    def rep(self, X, Y, coords: Sequence) -> dict:
        """Representative cycle of the class with the given coordinates."""
        h = self.homs[(X, Y)]
        acc: dict = {}
        for c, y in zip(coords, self.names[(X, Y)]):
            if c:
                for x, v in h.reps[y].items():
                    acc[x] = acc.get(x, 0) + c * v
        return clean(self.T.F, acc)

    def classify(self, X, Y, vec: Mapping) -> list:
        h = self.homs[(X, Y)]
        cl = h.project(dict(vec)) if vec else {}
        return [cl.get(y, self.T.F.zero) for y in self.names[(X, Y)]]

    def compose(self, X, Y, Z, g: Sequence, f: Sequence) -> list:
        """Class of ``m_2(g, f)`` for classes ``f: X -> Y``, ``g: Y -> Z``."""
        out = tw_compose(self.T, self.rep(Y, Z, g), self.rep(X, Y, f))
        return self.classify(X, Z, out)

    def identity(self, X) -> list:
        return self.classify(X, X, self.T.identity_vector(X))


def h0_category(T: TwCategory, pairs: Sequence[tuple] | None = None) -> H0Category:
    """Degree-0 homology of every Hom complex, with composition from ``m_2``."""
    F = T.F
    H = H0Category(T)
    pairs = pairs or [(X, Y) for X in T.objects for Y in T.objects]
    for X, Y in pairs:
        names = T.hom(X, Y)
        V = GradedSpace.from_degrees({x: T.gens[x].degree for x in names})
        d = GradedMap.from_images(F, V, V, 1, {x: T.ops.get((x,), {}) for x in names})
        pref = [T.identity_vector(X)] if X == Y else []
        h = complex_homology(F, d, pref)
        H.homs[(X, Y)] = h
        H.names[(X, Y)] = [y for y in h.H.names() if h.H.degree(y) == 0]
    return H


def h0_well_defined(H: H0Category, X, Y, Z) -> bool:
    """``m_2`` of a boundary and a cycle is a boundary, on basis elements."""
    T = H.T
    F = T.F
    for (A_, B_, C_) in ((X, Y, Z),):
        hf, hg = H.homs[(A_, B_)], H.homs[(B_, C_)]
        zf = [hf.reps[y] for y in H.names[(A_, B_)]]
        zg = [hg.reps[y] for y in H.names[(B_, C_)]]
        bf = _boundaries(T, A_, B_)
        bg = _boundaries(T, B_, C_)
        for g in zg:
            for b in bf:
                if any(H.classify(A_, C_, tw_compose(T, g, b))):
                    return False
        for b in bg:
            for f in zf:
                if any(H.classify(A_, C_, tw_compose(T, b, f))):
                    return False
    return True


def _boundaries(T: TwCategory, X, Y) -> list:
    out = []
    for x in T.hom(X, Y):
        if T.gens[x].degree == -1:
            v = T.ops.get((x,), {})
            if v:
                out.append(dict(v))
    return out


def _elements(F: Field, dim: int, cap: int):
    if not F.is_finite:
        if dim:
            raise TwistError("exhaustive search over Q with a nonzero Hom space is unsupported")
        yield ()
        return
    if F.p ** dim > cap:
        raise TwistError(f"search space {F.p}^{dim} exceeds cap {cap}")
    yield from F.vectors(dim)


def h0_isomorphic(H: H0Category, X, Y, cap: int = 100000) -> bool:
    """Exhaustive over ``f in H0(X, Y)``; for each, ``g`` with ``g f = 1`` and
    ``f g = 1`` is found by linear solving."""
    F = H.T.F
    if X == Y:
        return True
    dXY, dYX = H.dim(X, Y), H.dim(Y, X)
    idX, idY = H.identity(X), H.identity(Y)
    if not any(idX) and not any(idY):
        return True
    basis_g = [[F.one if k == l else F.zero for k in range(dYX)] for l in range(dYX)]
    for f in _elements(F, dXY, cap):
        if not any(f):
            continue
        # columns: g_l o f and f o g_l
        c1 = [H.compose(X, Y, X, g, f) for g in basis_g]
        c2 = [H.compose(Y, X, Y, f, g) for g in basis_g]
        rows, rhs = [], []
        for r in range(len(idX)):
            rows.append({l: c1[l][r] for l in range(dYX) if c1[l][r]})
            rhs.append(idX[r])
        for r in range(len(idY)):
            rows.append({l: c2[l][r] for l in range(dYX) if c2[l][r]})
            rhs.append(idY[r])
        if solve(F, rows, rhs, dYX) is not None:
            return True
    return False


def h0_indecomposable(H: H0Category, X, cap: int = 100000) -> bool:
    """No idempotent in ``H0(X, X)`` other than 0 and 1 (and X is nonzero)."""
    F = H.T.F
    one = H.identity(X)
    if not any(one):
        return False
    d = H.dim(X, X)
    for e in _elements(F, d, cap):
        e = list(e)
        if not any(e) or e == one:
            continue
        if H.compose(X, X, X, e, e) == e:
            return False
    return True


def h0_iso_and_indec(H: H0Category, X, Y, cap: int = 100000) -> tuple:
    return h0_isomorphic(H, X, Y, cap), h0_indecomposable(H, X, cap)


# ---- filtered objects -------------------------------------------------------------

def filtration_order(A: AInfCategory, objects: Sequence | None = None) -> list:
    """A total order in which every degree-1 generator points to an earlier
    object (so twisting cochains are strictly upper triangular)."""
    objects = list(objects if objects is not None else A.objects)
    before = {o: set() for o in objects}
    for x, g in A.gens.items():
        if g.degree == 1 and g.src in before and g.dst in before and g.src != g.dst:
            before[g.src].add(g.dst)
    order = []
    left = list(objects)
    while left:
        ready = [o for o in left if before[o] <= set(order)]
        if not ready:
            raise TwistError("degree-1 morphisms form a cycle; no filtration order exists")
        order.append(ready[0])
        left.remove(ready[0])
    return order


@dataclass
class FiltInventory:
    objects: list                 # twisted objects, deterministic order
    classes: list                 # indices of class representatives
    indecomposable: list          # flag per class
    searched: int
    mc_valid: int

    @property
    def n_indecomposable(self) -> int:
        return sum(self.indecomposable)

    def representatives(self) -> list:
        return [self.objects[k] for k in self.classes]


def _thin_candidates(Z, A, order, bound, F):
    """Multiplicity vectors and all strictly triangular delta within bounds."""
    bounds = bound if isinstance(bound, Mapping) else {o: bound for o in order}
    for mult in itertools.product(*[range(bounds.get(o, 0) + 1) for o in order]):
        blocks = [o for o, k in zip(order, mult) for _ in range(k)]
        slots = []
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                for y in Z.hom(blocks[j], blocks[i]):
                    if Z.gens[y].degree == 1:
                        slots.append((i, j, y))
        yield mult, blocks, slots


def filt_enumerate(A: AInfCategory, objects: Sequence | None = None, bound=1,
                   cap: int = 100000) -> FiltInventory:
    """Twisted objects built from non-shifted copies of the given objects,
    up to H^0-isomorphism, with indecomposability flags."""
    F = A.F
    if not F.is_finite:
        raise TwistError("filt_enumerate needs a finite field")
    Z = shift_category(A, (0,))
    order = filtration_order(A, objects if objects is not None else A.objects)
    objs = []
    searched = 0
    total = 0
    for mult, blocks, slots in _thin_candidates(Z, A, order, bound, F):
        total += F.p ** len(slots)
    if total > cap:
        raise TwistError(f"search space {total} exceeds cap {cap}")
    for mult, blocks, slots in _thin_candidates(Z, A, order, bound, F):
        for vals in F.vectors(len(slots)):
            searched += 1
            delta: dict = {}
            for (i, j, y), c in zip(slots, vals):
                if c:
                    delta.setdefault((i, j), {})[y] = c
            X = TwistedObject(Z, blocks, delta, f"T{len(objs)}")
            if mc_defect(X):
                continue
            objs.append(X)
    mc_valid = len(objs)
    if not objs:
        return FiltInventory([], [], [], searched, 0)
    same = [(X, Y) for X in objs for Y in objs if _same_dims(X, Y)]
    T = TwCategory(Z, objs, check_mc=False, max_arity=2,
                   chains=[(X.name, Y.name) for X, Y in same] +
                          [(X.name, Y.name, W.name) for X, Y in same for W in objs
                           if _same_dims(Y, W)])
    H = h0_category(T, [(X.name, Y.name) for X in objs for Y in objs if _same_dims(X, Y)])
    classes: list = []
    for k, X in enumerate(objs):
        if not any(h0_isomorphic(H, objs[r].name, X.name, cap) for r in classes
                   if _same_dims(objs[r], X)):
            classes.append(k)
    flags = [h0_indecomposable(H, objs[k].name, cap) for k in classes]
    return FiltInventory(objs, classes, flags, searched, mc_valid)


def _same_dims(X: TwistedObject, Y: TwistedObject) -> bool:
    return sorted(X.blocks) == sorted(Y.blocks)


def random_twisted_objects(Z: AInfCategory, rng, count: int = 3, max_blocks: int = 4,
                           tries: int = 2000) -> list:
    """Random Maurer-Cartan objects over ``Z`` (rejection sampling)."""
    F = Z.F
    objs = []
    objects = list(Z.objects)
    for _ in range(tries):
        if len(objs) == count:
            break
        blocks = [rng.choice(objects) for _ in range(rng.randint(1, max_blocks))]
        delta: dict = {}
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                for y in Z.hom(blocks[j], blocks[i]):
                    if Z.gens[y].degree == 1 and rng.random() < 0.7:
                        c = F.random(rng)
                        if c:
                            delta.setdefault((i, j), {})[y] = c
        X = TwistedObject(Z, blocks, delta, f"R{len(objs)}")
        if X.delta and not mc_defect(X):
            objs.append(X)
    return objs
