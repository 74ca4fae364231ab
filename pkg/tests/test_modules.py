import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ainfty.ainf import augment, check_stasheff
from ainfty.field import GF, QQ
from ainfty.fixtures import fixture_e, fixture_ecat
from ainfty.graded import StructureError
from ainfty.modules import (AInfModule, ModuleHomotopy, ModuleMorphism, check_module,
                            check_module_morphism, comodule_square_check, complex_of_modules,
                            compose_module_morphisms, direct_sum, homotopy_inverse,
                            module_minimal_model, module_nullhomotopy_check, restrict,
                            suspend_module, verify_homotopy_inverse, yoneda_module)
from ainfty.random_structures import random_minimal_morphism
from ainfty.structure import AInfMorphism, algebra


def unit_algebra(F=QQ):
    return augment(algebra(F, {}), "1")


def cone_with_extra(F=QQ):
    """p -> q acyclic, r a lone class; the unit acts as the identity."""
    A = unit_algebra(F)
    deg = {"p": 0, "q": 1, "r": 0}
    return complex_of_modules(A, deg, {"p": {"q": 1}},
                              {(x, "1"): {x: 1} for x in deg})


def test_yoneda_modules_are_modules():
    E = fixture_ecat()
    for X in E.objects:
        M = yoneda_module(E, X)
        assert check_module(M).ok
        assert comodule_square_check(M).ok


def test_suspension_twice_and_validity():
    M = yoneda_module(fixture_ecat(), "x")
    S = suspend_module(M)
    assert check_module(S).ok
    assert all(S.degree(x) == M.degree(x) - 1 for x in M.gens)
    SS = suspend_module(S)
    assert SS.ops == M.ops


def test_broken_action_is_located():
    M = cone_with_extra()
    bad = M.with_ops({**M.ops, ("q", "1"): {"q": 2}})
    rep = check_module(bad)
    assert not rep.ok
    assert not comodule_square_check(bad).ok


def test_restrict_along_identity():
    E = fixture_ecat()
    M = yoneda_module(E, "t")
    assert restrict(AInfMorphism.identity(E), M) == M


@given(st.integers(0, 10**6))
def test_restriction_keeps_identities(seed):
    B, f = random_minimal_morphism(GF(3), random.Random(seed), n_objects=3, max_arity=3)
    for X in f.target.objects:
        R = restrict(f, yoneda_module(f.target, X))
        assert check_module(R, 4).ok


def test_direct_sum_and_identity_morphism():
    E = fixture_ecat()
    M = direct_sum(yoneda_module(E, "x"), yoneda_module(E, "t"))
    assert check_module(M).ok
    one = ModuleMorphism.identity(M)
    assert check_module_morphism(one).ok
    assert compose_module_morphisms(one, one) == one


def test_minimal_model_of_cone():
    M = cone_with_extra()
    res = module_minimal_model(M)
    assert res.minimal.total_dim() == 1
    assert check_module(res.minimal, res.arity).ok
    assert check_module_morphism(res.morphism, res.arity).ok


def test_minimal_model_needs_minimal_base():
    A = augment(algebra(QQ, {"u": 0, "v": 1}, {("u",): {"v": 1}}))
    M = yoneda_module(A, A.objects[0])
    with pytest.raises(StructureError):
        module_minimal_model(M)


def test_homotopy_inverse_of_minimal_model_map():
    M = cone_with_extra()
    res = module_minimal_model(M)
    found = homotopy_inverse(res.morphism, 3)
    assert found is not None
    g, hL, hM = found
    assert verify_homotopy_inverse(res.morphism, g, hL, hM, 3) == []


def test_zero_map_has_no_inverse():
    M = yoneda_module(fixture_ecat(), "x")
    assert homotopy_inverse(ModuleMorphism.zero(M, M), 2) is None


def test_nullhomotopic_zero():
    M = cone_with_extra()
    zero = ModuleMorphism.zero(M, M)
    h = ModuleHomotopy(M, M, {})
    assert module_nullhomotopy_check(zero, h).ok


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_module_identities_iff_comodule_square(a, b, c, d):
    F = GF(3)
    A = unit_algebra(F)
    deg = {"p": 0, "q": 1}
    M = complex_of_modules(A, deg, {"p": {"q": a}},
                           {("p", "1"): {"p": b}, ("q", "1"): {"q": c}, ("q", "1", "1"): {"p": d}})
    assert check_module(M, 4).ok == comodule_square_check(M, 4).ok


@given(st.integers(0, 10**6))
def test_restriction_along_quasi_iso_keeps_homology(seed):
    """Restrict Yoneda modules of a dg algebra along the quasi-isomorphism from
    its minimal model; homology dimensions agree degree by degree."""
    from collections import Counter

    from ainfty.random_structures import random_dg_algebra
    from ainfty.transfer import build_contraction, transfer_minimal_model

    A = random_dg_algebra(GF(3), random.Random(seed))
    f = transfer_minimal_model(A, arity=3).morphism
    M = yoneda_module(A, A.objects[0])
    R = restrict(f, M)

    def dims(N):
        H = build_contraction(N.category(), frozen=set(N.base.gens)).H
        return Counter(g.degree for x, g in H.gens.items() if x in N.gens)

    assert dims(R) == dims(M)
