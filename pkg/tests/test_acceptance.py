"""The eleven acceptance criteria, each with its time limit.

Every criterion records one PASS/FAIL line; the lines are printed at the end
of the pytest session (see conftest.py) and when this file is run directly.
"""

from __future__ import annotations

import random
import sys
import time

import pytest

from ainfty.ainf import (check_morphism, check_stasheff, compose_morphisms,
                         hochschild_deformation_check, identity_defect,
                         invert_minimal_morphism, validate_units)
from ainfty.bar import BarFamily, b_square_check, bar_transform, lift_coderivation
from ainfty.field import GF, QQ
from ainfty.fixtures import (ext_a4, fixture_a4cat, fixture_d4cat, fixture_ecat,
                             fixture_generic_pair)
from ainfty.modules import (check_module, homotopy_inverse, module_minimal_model,
                            verify_homotopy_inverse)
from ainfty.quiver import (b9_presentation, build_algebra, d4_presentation, ext_ainf_category,
                           rep_enumerate, simple)
from ainfty.random_structures import (random_associative_algebra, random_cochain,
                                      random_complex_module, random_dg_algebra, random_family,
                                      random_local_algebra, random_minimal_morphism,
                                      random_upper_triangular, mutate_coefficient)
from ainfty.structure import AInfCategory, AInfMorphism
from ainfty.transfer import longest_chain, transfer_minimal_model
from ainfty.twisted import (TwistedObject, filt_enumerate, filtration_order, h0_category,
                            mc_defect, random_twisted_objects, shift_category, tw_category)

RESULTS: list = []


def record(cid: str, ok: bool, seconds: float, limit: float, detail: str) -> None:
    status = "PASS" if ok and seconds < limit else "FAIL"
    RESULTS.append(f"{cid} {status} ({seconds:.2f}s < {limit:.0f}s) {detail}")


class Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


# ---- oracles --------------------------------------------------------------------

def bar_square_support(A: AInfCategory) -> set:
    """Words w where the length-one part of D(D(w)) is nonzero, D the lifted
    coderivation, by brute force over all composable words up to 2N-1."""
    b = bar_transform(A)
    D = lift_coderivation(b)
    bad = set()
    for n in range(1, 2 * A.arity_bound):
        for w in A.composable_words(n):
            dd = D(D({w: A.F.one}))
            if any(len(k) == 1 for k in dd):
                bad.add(w)
    return bad


# ---- 1 ------------------------------------------------------------------------------

def test_c1_stasheff_and_mutations():
    F = GF(5)
    rng = random.Random(1001)
    valid = detected = neutral = 0
    mismatches = []
    with Clock() as clk:
        while valid < 500:
            A = random_dg_algebra(F, rng)
            rep = check_stasheff(A)
            if not rep.ok or bar_square_support(A):
                mismatches.append(("valid", A))
            valid += 1
        while detected < 500:
            A = random_dg_algebra(F, rng)
            try:
                B, _ = mutate_coefficient(A, rng)
            except ValueError:
                continue
            rep = check_stasheff(B)
            oracle = bar_square_support(B)
            if set(rep.defects) != oracle:
                mismatches.append(("mutant", B))
            if oracle:
                n, w, d = rep.located(1)[0]
                assert w in oracle and d
                detected += 1
            else:
                neutral += 1
    ok = not mismatches
    record("C1", ok, clk.seconds, 60,
           f"{valid} dg algebras valid; {detected} corrupting mutations located "
           f"(oracle D^2 agrees on every defect set; {neutral} neutral mutations also agreed)")
    assert ok, mismatches[:1]
    assert clk.seconds < 60


# ---- 2 ------------------------------------------------------------------------------

def _c2_families(rng):
    F = GF(3)
    fams = []
    for k in range(200):
        kind = k % 4
        if kind == 0:
            fams.append(random_family(F, rng, n_gens=3, max_arity=4, density=0.2))
        elif kind == 1:
            fams.append(random_family(F, rng, n_gens=2, max_arity=4, density=0.1))
        elif kind == 2:
            A = random_upper_triangular(F, rng, 3, 2)
            fams.append(transfer_minimal_model(A).minimal)
        else:
            fams.append(random_dg_algebra(F, rng))
    return fams


def test_c2_sign_bridge():
    rng = random.Random(2002)
    agree = both_pass = both_fail = 0
    with Clock() as clk:
        fams = _c2_families(rng)
        for A in fams:
            m_side = check_stasheff(A)
            b = bar_transform(A)
            b_side = b_square_check(b)
            if m_side.ok == b_side.ok and set(m_side.defects) == set(b_side.defects):
                agree += 1
            both_pass += m_side.ok and b_side.ok
            both_fail += (not m_side.ok) and (not b_side.ok)
    ok = agree == 200 and both_pass > 0 and both_fail > 0
    record("C2", ok, clk.seconds, 60,
           f"{agree}/200 verdict and defect-word agreements ({both_pass} valid, {both_fail} invalid)")
    assert ok
    assert clk.seconds < 60


# ---- 3 ------------------------------------------------------------------------------

def test_c3_b9_ext_pipeline():
    with Clock() as clk:
        alg = build_algebra(b9_presentation(QQ))
        res = ext_ainf_category(alg, {v: simple(alg, v) for v in alg.vertices})
        M = res.minimal
        units = set(M.units.values())
        classes = {x: g for x, g in M.gens.items() if x not in units}
        # relabel objects so that the classes read as a: y->x, b: z->y, c: t->z, e: t->x
        flip = {"x": "t", "y": "z", "z": "y", "t": "x"}
        by_pair = {(flip[g.src], flip[g.dst], g.degree): x for x, g in classes.items()}
        a, b, c = by_pair.get(("y", "x", 1)), by_pair.get(("z", "y", 1)), by_pair.get(("t", "z", 1))
        e = by_pair.get(("t", "x", 2))
        shape_ok = None not in (a, b, c, e) and len(classes) == 4
        m1_zero = M.is_minimal()
        m2_nonunit = {w: lc for w, lc in M.arity(2).items() if not units.intersection(w)}
        m3 = M.arity(3)
        lam = m3.get((a, b, c), {}).get(e, 0)
        m3_ok = set(m3) == {(a, b, c)} and set(m3[(a, b, c)]) == {e} and lam != 0
        higher = [w for n in range(4, 7) for w in M.composable_words(n)
                  if M.m(*w)]
        stasheff = check_stasheff(M).ok and validate_units(M).ok
        # the relabelled structure is E up to the scalar lambda
        E = ext_a4(QQ)
        support_ok = {tuple(flip_word(w, {a: "a", b: "b", c: "c"})) for w in m3} == set(E.ops)
    ok = shape_ok and m1_zero and not m2_nonunit and m3_ok and not higher and stasheff and support_ok
    record("C3", ok, clk.seconds, 10,
           f"m1 = 0, ab = bc = 0, m3(a,b,c) = {lam}*e, no products of arity >= 4")
    assert ok
    assert clk.seconds < 10


def flip_word(w, names):
    return [names.get(x, x) for x in w]


# ---- 4 ------------------------------------------------------------------------------

def test_c4_upper_triangular_vanishing():
    F = GF(7)
    rng = random.Random(4004)
    checked = {3: 0, 4: 0}
    with_m3 = 0
    ok = True
    with Clock() as clk:
        for N in (3, 4):
            for _ in range(20):
                A = random_upper_triangular(F, rng, N, 2)
                tr = transfer_minimal_model(A, arity=N + 2)
                M = tr.minimal
                units = set(M.units.values())
                chain = longest_chain(M)
                ok &= chain is not None and chain <= N - 1
                ok &= validate_units(M).ok
                # m_n vanishes for n >= 3 (three blocks) or n >= 4 (four blocks)
                lo = 3 if N == 3 else 4
                ok &= all(len(w) < lo for w in M.ops)
                ok &= not any(M.m(*w) for n in range(lo, N + 3) for w in M.composable_words(n))
                ok &= not any(units.intersection(w) for w in M.ops if len(w) != 2)
                checked[N] += 1
                with_m3 += N == 4 and bool(M.arity(3))
        ok &= with_m3 > 0
    record("C4", ok, clk.seconds, 10,
           f"m_n = 0 for n >= 3 on {checked[3]} three-block and for n >= 4 on "
           f"{checked[4]} four-block algebras ({with_m3} of them with m3 != 0)")
    assert ok
    assert clk.seconds < 10


# ---- 5 ------------------------------------------------------------------------------

def test_c5_tw_is_ainfinity():
    rng = random.Random(5005)
    done = []
    ok = True
    with Clock() as clk:
        for make in (fixture_ecat, fixture_a4cat, fixture_d4cat):
            A = make(GF(5))
            Z = shift_category(A, (-1, 0, 1))
            objs = random_twisted_objects(Z, rng, count=3, max_blocks=4)
            ok &= len(objs) >= 3 and all(not mc_defect(X) for X in objs)
            T = tw_category(Z, objs)
            ok &= check_stasheff(T).ok
            done.append(f"{A.name}: {len(T.gens)} generators")
    record("C5", ok, clk.seconds, 30, "tw passes Stasheff; " + ", ".join(done))
    assert ok
    assert clk.seconds < 30


# ---- 6 ------------------------------------------------------------------------------

# the displayed expansions, with m_N(d'^a, f, d^b) written as (a, b)
EVEN = {(0, 0): 1, (1, 0): -1, (0, 1): 1, (2, 0): -1, (1, 1): 1, (0, 2): -1,
        (3, 0): 1, (2, 1): -1, (1, 2): 1, (0, 3): -1}
ODD = {(0, 0): 1, (1, 0): -1, (0, 1): -1, (2, 0): -1, (1, 1): -1, (0, 2): -1,
       (3, 0): 1, (2, 1): 1, (1, 2): 1, (0, 3): 1}


def m1_tw_terms(parity: int) -> dict:
    """``m^tw_1(f)`` on the generic pair, read off term by term."""
    A = fixture_generic_pair(QQ, parity, 4)
    Z = shift_category(A, (0,))
    X = TwistedObject(Z, ["P"] * 4, {(i, i + 1): {"d": 1} for i in range(3)}, "X")
    Y = TwistedObject(Z, ["Q"] * 4, {(i, i + 1): {"d'": 1} for i in range(3)}, "Y")
    T = tw_category(Z, [X, Y])
    out = T.ops.get((T.element("X", "Y", 0, 3, "f"),), {})
    terms = {}
    for g, c in out.items():
        _, blocks, z = g.split(":")
        i, j = map(int, blocks.split(">"))
        a, b = int(z[1]), int(z[2])
        assert (i, j) == (b, 3 - a)
        terms[(a, b)] = c
    return terms


def test_c6_m1_tw_golden():
    with Clock() as clk:
        even, odd = m1_tw_terms(0), m1_tw_terms(1)
    ok = even == EVEN and odd == ODD
    record("C6", ok, clk.seconds, 5, "both displayed expansions reproduced term for term through arity 4")
    assert even == EVEN
    assert odd == ODD
    assert clk.seconds < 5


# ---- 7 ------------------------------------------------------------------------------

def _coefficients(X: TwistedObject, order) -> dict:
    """Scalars V_x of a thin twisted object, keyed by base arrow."""
    Z = X.Z
    return {Z.element_of[z][0]: c for v in X.delta.values() for z, c in v.items()}


def _commuting_square_dim(F, X, Y, arrows, extra=None) -> int:
    """Dimension of {(f_v)} (plus optional extra unknowns) solving the linear
    conditions, computed independently of tw."""
    from ainfty.linalg import rank

    vx = {b: k for k, b in enumerate(X.blocks)}
    vy = {b: k for k, b in enumerate(Y.blocks)}
    common = [v for v in vx if v in vy]
    cols = {v: i for i, v in enumerate(common)}
    extra = extra or []
    for name in extra:
        cols[name] = len(cols)
    VX, VY = _coefficients(X, None), _coefficients(Y, None)
    rows = []
    for a, (s, t), extra_terms in arrows:
        # f_t V_a - V'_a f_s = 0, only when the arrow lives in both objects' supports
        if t in vy and s in vx:
            row = {}
            if t in cols:
                row[cols[t]] = row.get(cols[t], 0) + VX.get(a, 0)
            if s in cols:
                row[cols[s]] = row.get(cols[s], 0) - VY.get(a, 0)
            for name, coeff in extra_terms(VX, VY):
                if name in cols:
                    row[cols[name]] = row.get(cols[name], 0) + coeff
            rows.append({k: F(v) for k, v in row.items() if F(v)})
    return len(cols) - rank(F, rows)


def test_c7_a4cat_filt():
    F = GF(2)
    with Clock() as clk:
        A = fixture_a4cat(F)
        inv = filt_enumerate(A, bound=1)
        oracle = rep_enumerate(build_algebra(b9_presentation(F)), 1)
        # MC reproduces V_a V_b V_c = 0 on every thin object (checked over F_3 as well)
        mc_ok = True
        for Fq in (GF(2), GF(3)):
            Aq = fixture_a4cat(Fq)
            Zq = shift_category(Aq, (0,))
            order = filtration_order(Aq)
            idx = {o: k for k, o in enumerate(order)}
            for va in Fq.elements():
                for vb in Fq.elements():
                    for vc in Fq.elements():
                        delta = {}
                        for x, v in (("a", va), ("b", vb), ("c", vc)):
                            g = Aq.gens[x]
                            if v:
                                delta[(idx[g.dst], idx[g.src])] = {x: v}
                        X = TwistedObject(Zq, order, delta)
                        d = mc_defect(X)
                        mc_ok &= (not d) == (Fq(va * vb * vc) == 0)
        # degree-0 morphisms are exactly the commuting squares f_x V_a = V'_a f_y
        objs = inv.objects
        T = tw_category(objs[0].Z, objs, check_mc=False, max_arity=2)
        H = h0_category(T)
        arrows = [(x, (A.gens[x].src, A.gens[x].dst), lambda VX, VY: []) for x in "abc"]
        square_ok = all(H.dim(X.name, Y.name) == _commuting_square_dim(F, X, Y, arrows)
                        for X in objs for Y in objs)
    ok = inv.n_indecomposable == 9 == oracle.n_indecomposable and mc_ok and square_ok
    record("C7", ok, clk.seconds, 60,
           f"filt(A4cat) has {inv.n_indecomposable} indecomposable isoclasses, "
           f"rep oracle {oracle.n_indecomposable}; MC <=> V_aV_bV_c = 0; "
           f"H0 = commuting squares on {len(objs) ** 2} pairs")
    assert ok
    assert clk.seconds < 60


# ---- 8 ------------------------------------------------------------------------------

def _correction_term(VX, VY):
    # rows are the m1 components f_t V_x - V'_x f_s; on c the tw differential
    # adds + V'_b phi V_a
    return [("phi", VY.get("b", 0) * VX.get("a", 0))]


def test_c8_d4cat_filt():
    F = GF(2)
    with Clock() as clk:
        inv = filt_enumerate(fixture_d4cat(F), bound=1)
        inv_drop = filt_enumerate(fixture_d4cat(F, drop_m3=True), bound=1)
        oracle_drop = rep_enumerate(build_algebra(d4_presentation(F)), 1)
        # the morphism condition, checked exactly over Q on generic scalars
        A = fixture_d4cat(QQ)
        Z = shift_category(A, (0,))
        order = filtration_order(A)
        idx = {o: k for k, o in enumerate(order)}

        def thin(name, va, vb, vc):
            delta = {}
            for x, v in (("a", va), ("b", vb), ("c", vc)):
                g = A.gens[x]
                delta[(idx[g.dst], idx[g.src])] = {x: v}
            return TwistedObject(Z, order, delta, name)

        X, Y = thin("X", 2, 3, 5), thin("Y", 7, 11, 13)
        T = tw_category(Z, [X, Y], max_arity=2)
        f = {v: T.element("X", "Y", idx[v], idx[v], f"e_{v}") for v in "1234"}
        phi = T.element("X", "Y", idx["2"], idx["3"], "f")
        ca = T.element("X", "Y", idx["1"], idx["2"], "a")
        cb = T.element("X", "Y", idx["3"], idx["4"], "b")
        cc = T.element("X", "Y", idx["1"], idx["4"], "c")
        m1 = {k: T.ops.get((g,), {}) for k, g in list(f.items()) + [("phi", phi)]}

        def coeff(k, g):
            return m1[k].get(g, 0)

        # m1 of (f1, f2, f3, f4, phi) has components
        #   a: f2 V_a - V'_a f1,  b: f4 V_b - V'_b f3,  c: f4 V_c - V'_c f1 + V'_b phi V_a
        # which is the negated square condition once phi is replaced by -phi
        square_ok = (
            (coeff("1", ca), coeff("2", ca)) == (-7, 2)
            and (coeff("3", cb), coeff("4", cb)) == (-11, 3)
            and (coeff("1", cc), coeff("4", cc), coeff("phi", cc)) == (-13, 5, 11 * 2)
            and all(coeff(k, g) == 0 for k in m1 for g in m1[k] if g not in (ca, cb, cc))
        )
        objs = inv.objects
        T2 = tw_category(objs[0].Z, objs, check_mc=False, max_arity=2)
        H = h0_category(T2)
        arrows = [("a", ("1", "2"), lambda VX, VY: []), ("b", ("3", "4"), lambda VX, VY: []),
                  ("c", ("1", "4"), _correction_term)]
        dims_ok = all(
            H.dim(P.name, Q.name) == _commuting_square_dim(
                F, P, Q, arrows, ["phi"] if "2" in P.blocks and "3" in Q.blocks else [])
            for P in objs for Q in objs)
    ok = (inv.n_indecomposable == 9 and inv_drop.n_indecomposable == 10
          and oracle_drop.n_indecomposable == 10 and square_ok and dims_ok)
    record("C8", ok, clk.seconds, 60,
           f"filt(D4cat) has {inv.n_indecomposable}, without m3 {inv_drop.n_indecomposable} "
           f"(rep oracle {oracle_drop.n_indecomposable}); condition with V'_b phi V_a term verified")
    assert ok
    assert clk.seconds < 60


# ---- 9 ------------------------------------------------------------------------------

def test_c9_module_transfer():
    F = GF(3)
    rng = random.Random(9009)
    certified = inverted = 0
    failures = []
    with Clock() as clk:
        A = random_local_algebra(F, rng)
        for k in range(100):
            M = random_complex_module(A, rng, max_total=6)
            assert M.total_dim() <= 6 and check_module(M).ok
            tr = module_minimal_model(M, arity=4)
            if all(r.ok for r in tr.reports) and tr.minimal.is_minimal():
                certified += 1
            inv = homotopy_inverse(tr.morphism, arity=3)
            if inv is None:
                failures.append(k)
                continue
            if not verify_homotopy_inverse(tr.morphism, *inv, arity=3):
                inverted += 1
    ok = certified == 100 and inverted == 100
    record("C9", ok, clk.seconds, 120,
           f"{certified}/100 certified minimal modules, {inverted}/100 homotopy inverses "
           f"(through arity 3)")
    assert ok, failures
    assert clk.seconds < 120


# ---- 10 -----------------------------------------------------------------------------

def test_c10_minimal_inversion():
    F = GF(5)
    rng = random.Random(1010)
    good = 0
    with Clock() as clk:
        for _ in range(100):
            B, f = random_minimal_morphism(F, rng, n_objects=3, max_arity=3)
            assert check_morphism(f).ok
            N = max(f.arity_bound, longest_chain(f.source) or 1)
            g = invert_minimal_morphism(f, N)
            fg, gf = compose_morphisms(f, g), compose_morphisms(g, f)
            if (check_morphism(g).ok and not identity_defect(fg, N)
                    and not identity_defect(gf, N)):
                good += 1
    ok = good == 100
    record("C10", ok, clk.seconds, 30, f"{good}/100 inverses with f g = 1 and g f = 1 componentwise")
    assert ok
    assert clk.seconds < 30


# ---- 11 -----------------------------------------------------------------------------

def test_c11_deformation_bridge():
    F = GF(3)
    rng = random.Random(1111)
    agree = cocycles = 0
    with Clock() as clk:
        for k in range(200):
            B = random_associative_algebra(F, rng, max_dim=3)
            n = 2 + k % 2
            c = random_cochain(B, n, rng, cocycle=rng.random() < 0.5)
            ainf, cocycle = hochschild_deformation_check(B, c, n)
            agree += ainf == cocycle
            cocycles += cocycle
    ok = agree == 200 and 0 < cocycles < 200
    record("C11", ok, clk.seconds, 30,
           f"{agree}/200 verdicts agree ({cocycles} cocycles, {200 - cocycles} non-cocycles)")
    assert ok
    assert clk.seconds < 30


if __name__ == "__main__":
    code = pytest.main([__file__, "-q"])
    print("\n".join(RESULTS))
    sys.exit(code)
