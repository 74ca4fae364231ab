import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ainfty.ainf import augment, check_morphism, check_stasheff, is_quasi_iso
from ainfty.field import GF, QQ
from ainfty.fixtures import fixture_e
from ainfty.graded import StructureError
from ainfty.random_structures import random_dg_algebra
from ainfty.structure import algebra
from ainfty.transfer import (build_contraction, cycle_defect, longest_chain,
                             obstruction_cocycle, transfer_minimal_model)


@given(st.integers(0, 10**6))
def test_random_dg_algebras_transfer(seed):
    A = random_dg_algebra(GF(5), random.Random(seed))
    c = build_contraction(A)
    assert c.validate() == []
    tr = transfer_minimal_model(A, c, arity=4)
    assert tr.minimal.is_minimal()
    assert check_stasheff(tr.minimal, tr.arity).ok
    assert check_morphism(tr.morphism, tr.arity).ok
    assert is_quasi_iso(tr.morphism)[0]


def test_minimal_input_transfers_to_itself():
    E = fixture_e()
    tr = transfer_minimal_model(E)
    assert tr.minimal.ops == E.ops


def test_acyclic_piece_disappears():
    """d u = v: the pair (u, v) contributes nothing to homology."""
    A = augment(algebra(QQ, {"u": 0, "v": 1, "w": 2}, {("u",): {"v": 1}}))
    tr = transfer_minimal_model(A, arity=3)
    assert sorted(g.degree for g in tr.minimal.gens.values()) == [0, 2]


def test_unbounded_words_need_an_arity():
    A = algebra(QQ, {"x": 1})
    assert longest_chain(A) is None
    with pytest.raises(StructureError):
        transfer_minimal_model(A)
    tr = transfer_minimal_model(A, arity=3)
    assert tr.arity == 3


def test_longest_chain_counts_words():
    E = fixture_e()
    assert longest_chain(E) == 3


def test_obstructions_of_a_valid_morphism_are_cycles():
    E = fixture_e()
    tr = transfer_minimal_model(E)
    for s in (1, 2, 3):
        c = obstruction_cocycle(tr.morphism, s)
        assert not cycle_defect(tr.morphism, c)


# ---- two contraction choices ----------------------------------------------------------

def _invariants(H):
    """Homology dimensions per (src, dst, degree), the rank of m2 as a linear map
    and the arities carrying nonzero products (unit words excluded)."""
    from collections import Counter

    from ainfty.linalg import rank

    dims = Counter((g.src, g.dst, g.degree) for g in H.gens.values())
    cols = {y: k for k, y in enumerate(H.gens)}
    m2_rows = [{cols[y]: c for y, c in lc.items()} for w, lc in H.ops.items() if len(w) == 2]
    units = set(H.units.values())
    arities = {len(w) for w, lc in H.ops.items() if lc and not units.intersection(w)}
    return dims, rank(H.F, m2_rows), arities


@given(st.integers(0, 10**6))
def test_contraction_choice_keeps_invariants(seed):
    """Conjugating the input by a random basis change changes the contraction;
    the invariants of the minimal model stay put."""
    from ainfty.random_structures import base_change

    rng = random.Random(seed)
    A = random_dg_algebra(GF(5), rng)
    B = base_change(A, rng)
    d1, r1, _ = _invariants(transfer_minimal_model(A, arity=4).minimal)
    d2, r2, _ = _invariants(transfer_minimal_model(B, arity=4).minimal)
    assert (d1, r1) == (d2, r2)


def test_massey_product_survives_a_basis_change():
    from ainfty.quiver import b9_presentation, build_algebra, ext_ainf_category, simple
    from ainfty.random_structures import base_change

    alg = build_algebra(b9_presentation(GF(5)))
    res = ext_ainf_category(alg, {v: simple(alg, v) for v in alg.vertices})
    dg = res.dg
    other = base_change(dg, random.Random(1))
    assert check_stasheff(other).ok
    inv1 = _invariants(transfer_minimal_model(dg, arity=4).minimal)
    inv2 = _invariants(transfer_minimal_model(other, arity=4).minimal)
    assert inv1[0] == inv2[0] and inv1[1] == inv2[1]
    assert 3 in inv1[2] and 3 in inv2[2]
