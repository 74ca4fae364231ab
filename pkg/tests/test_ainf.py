import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ainfty.ainf import (augment, check_homotopy, check_morphism, check_stasheff,
                         compose_morphisms, deformation, find_homotopy, hochschild_differential,
                         homology_algebra, homotopic_morphism, identity_defect,
                         invert_minimal_morphism, is_quasi_iso, reduce_augmented,
                         stasheff_defect, validate_units)
from ainfty.bar import (BarFamily, b_square_check, bar_transform, coderivation_defect,
                        lift_coderivation, suspension_sign, transport)
from ainfty.field import GF, QQ
from ainfty.fixtures import ext_a4, fixture_d4cat, fixture_e, fixture_ecat
from ainfty.graded import StructureError
from ainfty.random_structures import (base_change, mutate_coefficient, random_dg_algebra,
                                      random_family, random_minimal_morphism)
from ainfty.structure import AInfCategory, AInfHomotopy, AInfMorphism, Gen, algebra

SEEDS = st.integers(0, 10**6)


# ---- structures ------------------------------------------------------------------

def test_shape_errors():
    with pytest.raises(StructureError):
        algebra(QQ, {"x": 1}, {("x",): {"x": 1}})          # m1 must raise degree by one
    with pytest.raises(StructureError):
        algebra(QQ, {"x": 0}, {("x", "x", "x"): {"x": 1}})  # degree 0 only allows m2
    with pytest.raises(StructureError):
        AInfCategory(QQ, ["p", "q"], {"a": Gen("p", "q", 0), "b": Gen("p", "q", 0)},
                     {("a", "b"): {"a": 1}})                # not composable
    with pytest.raises(StructureError):
        algebra(QQ, {"x": 1}, {("x", "x"): {"y": 1}})       # unknown output


def test_fixture_e_and_units():
    assert check_stasheff(fixture_e()).ok
    Ecat = fixture_ecat()
    assert check_stasheff(Ecat).ok and validate_units(Ecat).ok
    assert check_stasheff(fixture_d4cat(GF(2))).ok
    assert check_stasheff(fixture_d4cat(QQ, drop_m3=True)).ok


def test_non_associative_product_is_located():
    A = algebra(QQ, {"x": 0, "y": 0}, {("x", "x"): {"y": 1}, ("x", "y"): {"y": 1}})
    rep = check_stasheff(A)
    assert not rep.ok
    assert ("x", "x", "x") in rep.defects


def test_report_summary_mentions_first_word():
    A = fixture_e()
    B, (w, y, old, new) = mutate_coefficient(A, random.Random(3))
    rep = check_stasheff(B)
    assert rep.ok or str(rep.located(1)[0][1]) in rep.summary()


# ---- the bar bridge ---------------------------------------------------------------

def test_suspension_sign_values():
    assert suspension_sign([1, 1]) == -1
    assert suspension_sign([1, 0, 1]) == 1
    assert suspension_sign([0, 1, 1]) == -1
    assert suspension_sign([2, 3]) == 1


@given(SEEDS)
def test_transport_is_an_involution(seed):
    A = random_family(GF(3), random.Random(seed))
    b = bar_transform(A)
    assert bar_transform(b) == A
    assert transport(A.F, transport(A.F, A.ops, A), A) == A.ops


@given(SEEDS)
def test_stasheff_iff_b_squared(seed):
    """m-side verdict and defect words agree with the b-side for arbitrary families."""
    A = random_family(GF(3), random.Random(seed), n_gens=2, max_arity=3, density=0.2)
    m = check_stasheff(A)
    b = b_square_check(bar_transform(A))
    assert m.ok == b.ok
    assert set(m.defects) == set(b.defects)


@given(SEEDS)
def test_lifted_coderivation(seed):
    """D is a coderivation, and D^2 = 0 exactly when the identities hold."""
    rng = random.Random(seed)
    A = random_dg_algebra(GF(5), rng) if seed % 2 else random_family(GF(5), rng, 2, 2, density=0.3)
    b = bar_transform(A)
    assert not coderivation_defect(b, max_len=3)
    D = lift_coderivation(b)
    square_zero = all(not D(D({w: A.F.one})) for n in range(1, 4) for w in A.composable_words(n))
    assert square_zero == check_stasheff(A).ok


@given(SEEDS)
def test_base_change_preserves_validity(seed):
    rng = random.Random(seed)
    A = random_dg_algebra(GF(7), rng)
    assert check_stasheff(A).ok
    assert check_stasheff(base_change(A, rng)).ok


# ---- morphisms -------------------------------------------------------------------------

def test_identity_morphism_and_composition():
    E = fixture_ecat()
    one = AInfMorphism.identity(E)
    assert check_morphism(one).ok
    assert compose_morphisms(one, one) == one


@given(SEEDS)
def test_minimal_morphisms_invert(seed):
    rng = random.Random(seed)
    B, f = random_minimal_morphism(GF(5), rng, n_objects=3, max_arity=3)
    assert check_morphism(f).ok
    g = invert_minimal_morphism(f, 4)
    assert check_morphism(g).ok
    assert not identity_defect(compose_morphisms(f, g), 4)
    assert not identity_defect(compose_morphisms(g, f), 4)


@given(SEEDS)
def test_composition_is_associative(seed):
    rng = random.Random(seed)
    _, f = random_minimal_morphism(GF(3), rng, n_objects=2, max_arity=2)
    g = invert_minimal_morphism(f, 3)
    fg = compose_morphisms(f, g)
    lhs = compose_morphisms(compose_morphisms(f, g), f)
    rhs = compose_morphisms(f, compose_morphisms(g, f))
    assert lhs == rhs
    assert check_morphism(fg).ok


def test_non_invertible_f1_is_rejected():
    E = fixture_e()
    f = AInfMorphism(E, E, {})
    with pytest.raises(StructureError):
        invert_minimal_morphism(f)


def test_morphism_defect_located():
    E = fixture_ecat()
    comps = {(x,): {x: 1} for x in E.gens}
    comps[("a",)] = {"a": 2}        # rescaling a alone breaks f m3 = m3 f
    rep = check_morphism(AInfMorphism(E, E, comps))
    assert not rep.ok
    assert ("a", "b", "c") in rep.defects


# ---- homotopies -------------------------------------------------------------------------

@given(SEEDS)
def test_homotopies_solve_back(seed):
    rng = random.Random(seed)
    _, f = random_minimal_morphism(GF(5), rng, n_objects=3, max_arity=2)
    A, B = f.source, f.target
    comps = {}
    for n in (1, 2):
        for w in A.composable_words(n):
            deg = A.word_degree(w) - n
            outs = [y for y in B.hom(A.gens[w[-1]].src, A.gens[w[0]].dst) if B.gens[y].degree == deg]
            if outs and rng.random() < 0.5:
                comps[w] = {rng.choice(outs): GF(5).random(rng) or 1}
    h = AInfHomotopy(A, B, comps)
    g = homotopic_morphism(f, h, 4)
    assert check_morphism(g, 4).ok
    assert check_homotopy(f, g, h).ok
    assert find_homotopy(f, g, 4) is not None


def test_quasi_iso_detection():
    E = fixture_ecat()
    ok, _ = is_quasi_iso(AInfMorphism.identity(E))
    assert ok
    units = {(e,): {e: 1} for e in E.units.values()}
    ok, _ = is_quasi_iso(AInfMorphism(E, E, units))
    assert not ok


# ---- units, augmentation, deformations -------------------------------------------------------

def test_augment_and_reduce():
    B = algebra(QQ, {"x": 1, "y": 2}, {("x", "x"): {"y": 1}})
    A = augment(B)
    assert check_stasheff(A).ok and validate_units(A).ok
    assert reduce_augmented(A) == B


def test_homology_algebra_of_dg_algebra():
    """d u = v on a square-zero algebra leaves only w in homology."""
    A = algebra(QQ, {"u": 0, "v": 1, "w": 1}, {("u",): {"v": 1}})
    assert check_stasheff(A).ok
    H = homology_algebra(A)
    assert len(H.gens) == 1 and next(iter(H.gens.values())).degree == 1


def test_hochschild_by_hand():
    """On k[x]/x^2, c(x, x) = 1 is a cocycle (it gives k[x]/(x^2 - eps)); c(1, x) = x is not."""
    B = augment(algebra(QQ, {"x": 0}), "1")
    c_bad = {("1", "x"): {"x": 1}}
    c_good = {("x", "x"): {"1": 1}}
    assert hochschild_differential(B, c_bad, 2)
    assert not hochschild_differential(B, c_good, 2)
    assert check_stasheff(deformation(B, c_good, 2)).ok
    assert not check_stasheff(deformation(B, c_bad, 2)).ok


def test_deformation_requires_ungraded_base():
    with pytest.raises(StructureError):
        deformation(fixture_e(), {}, 2)


def test_stasheff_defect_is_sparse():
    E = ext_a4(QQ)
    assert stasheff_defect(E) == {}


@given(SEEDS)
def test_composition_is_unital(seed):
    _, f = random_minimal_morphism(GF(5), random.Random(seed), n_objects=2, max_arity=3)
    assert compose_morphisms(AInfMorphism.identity(f.target), f) == f
    assert compose_morphisms(f, AInfMorphism.identity(f.source)) == f
