import pytest

from ainfty.ainf import check_stasheff
from ainfty.field import GF, QQ
from ainfty.quiver import (PRESENTATIONS, QuiverError, QuiverPresentation, a4_presentation,
                           b9_presentation, build_algebra, d4_presentation, ext_ainf_category,
                           intertwiners, is_indecomposable, is_isomorphic,
                           minimal_projective_resolution, presentation_from_json,
                           rep_enumerate, simple)


def test_b9_path_algebra():
    alg = build_algebra(b9_presentation())
    assert alg.dim == 9
    assert alg.paths("x", "t") == []
    assert len(alg.paths("x", "z")) == 1


def test_b9_resolutions():
    alg = build_algebra(b9_presentation())
    terms = {v: minimal_projective_resolution(alg, simple(alg, v)).terms for v in alg.vertices}
    assert terms == {"x": [["x"], ["y"], ["t"]], "y": [["y"], ["z"]],
                     "z": [["z"], ["t"]], "t": [["t"]]}


def test_b9_ext_category():
    alg = build_algebra(b9_presentation())
    res = ext_ainf_category(alg, {v: simple(alg, v) for v in alg.vertices})
    nonzero = {k: v for k, v in res.ext_dims.items() if v}
    assert nonzero == {("x", "x"): {0: 1}, ("y", "y"): {0: 1}, ("z", "z"): {0: 1},
                       ("t", "t"): {0: 1}, ("x", "y"): {1: 1}, ("y", "z"): {1: 1},
                       ("z", "t"): {1: 1}, ("x", "t"): {2: 1}}
    assert check_stasheff(res.minimal).ok
    m3 = {w: lc for w, lc in res.minimal.ops.items() if len(w) == 3}
    assert len(m3) == 1 and all(abs(c) == 1 for lc in m3.values() for c in lc.values())


def test_a4_ext_is_formal_and_hereditary():
    alg = build_algebra(a4_presentation())
    res = ext_ainf_category(alg, {v: simple(alg, v) for v in alg.vertices})
    assert all(max(d, default=0) <= 1 for d in res.ext_dims.values())
    assert not any(len(w) >= 3 for w in res.minimal.ops)


def test_enumeration_counts():
    a4 = build_algebra(a4_presentation(GF(2)))
    assert rep_enumerate(a4, 1).n_indecomposable == 10
    b9 = build_algebra(b9_presentation(GF(2)))
    assert rep_enumerate(b9, 1).n_indecomposable == 9
    d4 = build_algebra(d4_presentation(GF(2)))
    assert rep_enumerate(d4, 1).n_indecomposable == 10


def test_zero_bound_and_cap():
    a4 = build_algebra(a4_presentation(GF(2)))
    inv = rep_enumerate(a4, 0)
    assert len(inv.classes) == 1 and inv.n_indecomposable == 0
    with pytest.raises(QuiverError):
        rep_enumerate(a4, 3, cap=100)
    with pytest.raises(QuiverError):
        rep_enumerate(build_algebra(a4_presentation(QQ)), 1)


def test_one_vertex_gives_the_ground_field():
    alg = build_algebra(QuiverPresentation(["v"], {}, [], [], QQ))
    assert alg.dim == 1
    S = simple(alg, "v")
    assert len(intertwiners(S, S)) == 1
    assert is_indecomposable(S)


def test_simples_are_pairwise_non_isomorphic():
    alg = build_algebra(a4_presentation(GF(3)))
    S = [simple(alg, v) for v in alg.vertices]
    assert all(is_isomorphic(X, X) for X in S)
    assert not is_isomorphic(S[0], S[1])


def test_presentation_from_json_matches_builtin():
    doc = {"field": "Q", "vertices": ["x", "y", "z", "t"],
           "arrows": [{"name": "alpha", "src": "x", "dst": "y"},
                      {"name": "beta", "src": "y", "dst": "z"},
                      {"name": "gamma", "src": "z", "dst": "t"}],
           "relations": [{"gamma*beta*alpha": "1"}]}
    assert build_algebra(presentation_from_json(doc)).dim == 9
    assert set(PRESENTATIONS) == {"B9", "A4", "D4"}


def _graded_dims(cat):
    out = {}
    for g in cat.gens.values():
        d = out.setdefault((g.src, g.dst), {})
        d[g.degree] = d.get(g.degree, 0) + 1
    return out


@pytest.mark.parametrize("make", [b9_presentation, a4_presentation, d4_presentation])
def test_ext_dims_agree_three_ways(make):
    """Minimal model, homology of the dg endomorphism category and ranks of the
    resolution differentials give the same graded dimensions."""
    from ainfty.transfer import build_contraction

    alg = build_algebra(make(GF(3)))
    res = ext_ainf_category(alg, {v: simple(alg, v) for v in alg.vertices})
    by_ranks = {k: v for k, v in res.ext_dims.items() if v}
    assert _graded_dims(res.minimal) == by_ranks
    assert _graded_dims(build_contraction(res.dg).H) == by_ranks


@pytest.mark.parametrize("make", [a4_presentation, b9_presentation, d4_presentation])
def test_counts_do_not_depend_on_the_field(make):
    two = rep_enumerate(build_algebra(make(GF(2))), 1)
    three = rep_enumerate(build_algebra(make(GF(3))), 1)
    assert (len(two.classes), two.n_indecomposable) == (len(three.classes), three.n_indecomposable)
