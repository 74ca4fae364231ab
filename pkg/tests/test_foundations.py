from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ainfty.field import GF, QQ, Field, FieldError, clean
from ainfty.graded import (GradedMap, GradedSpace, StructureError, complex_homology,
                           compose, koszul_apply, suspend)
from ainfty.linalg import inverse, mat_mul, nullspace, rank, solve

PRIMES = st.sampled_from([2, 3, 5, 7])
FIELDS = st.one_of(st.just(QQ), PRIMES.map(GF))


def test_field_arithmetic_and_format():
    F = GF(11)
    assert F(-1) == 10
    assert F.inv(3) * 3 % 11 == 1
    assert F.format(4) == "4 mod 11"
    assert F.parse("4 mod 11") == 4
    assert F(Fraction(1, 2)) == 6
    assert QQ.format(Fraction(3, 7)) == "3/7"
    assert QQ.parse("3/7") == Fraction(3, 7)
    assert QQ.parse("-2") == -2


def test_field_errors():
    with pytest.raises(FieldError):
        Field(4)
    with pytest.raises(FieldError):
        GF(5).parse("1 mod 7")
    with pytest.raises(FieldError):
        QQ.parse("x")
    with pytest.raises(ZeroDivisionError):
        GF(3).inv(0)
    with pytest.raises(FieldError):
        list(QQ.vectors(1))


@pytest.mark.parametrize("d", ["Q", {"Fp": 5}, "F7", 3])
def test_descriptor_round_trip(d):
    F = Field.from_descriptor(d)
    assert Field.from_descriptor(F.descriptor()) == F


def test_vectors_enumerate_everything():
    assert len(list(GF(3).vectors(3))) == 27


@st.composite
def square(draw, field=None):
    F = field or draw(FIELDS)
    n = draw(st.integers(1, 4))
    vals = st.integers(-3, 3)
    M = [[F(draw(vals)) for _ in range(n)] for _ in range(n)]
    return F, M


@given(square())
def test_inverse_is_two_sided(data):
    F, M = data
    Mi = inverse(F, M)
    rows = [{j: v for j, v in enumerate(r) if v} for r in M]
    if Mi is None:
        assert rank(F, rows) < len(M)
    else:
        I = [[F.one if i == j else F.zero for j in range(len(M))] for i in range(len(M))]
        assert mat_mul(F, M, Mi) == I and mat_mul(F, Mi, M) == I


@given(square(), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_nullspace_and_solve(data, b):
    F, M = data
    n = len(M)
    rows = [{j: v for j, v in enumerate(r) if v} for r in M]
    K = nullspace(F, rows, n)
    assert len(K) == n - rank(F, rows)
    for v in K:
        assert all(F(sum(r.get(j, 0) * v.get(j, 0) for j in range(n))) == 0 for r in rows)
    rhs = [F(x) for x in b[:n]]
    x = solve(F, rows, rhs, n)
    if x is not None:
        assert [F(sum(r.get(j, 0) * x.get(j, 0) for j in range(n))) for r in rows] == rhs


# ---- graded maps --------------------------------------------------------------

@st.composite
def graded_map(draw, F, V, W, degree):
    images = {}
    for x in V.names():
        q = V.degree(x) + degree
        targets = W.names(q) if q in W.basis else ()
        lc = {y: F(draw(st.integers(-2, 2))) for y in targets}
        images[x] = clean(F, lc)
    return GradedMap.from_images(F, V, W, degree, images)


SPACE = GradedSpace.from_degrees({"u": 0, "v": 1, "w": 1, "z": 2})


@given(st.data(), st.integers(-1, 1), st.integers(-1, 1), st.integers(-1, 1), st.integers(-1, 1))
def test_koszul_interchange_law(data, df, dg, df2, dg2):
    """(f (x) g)(f' (x) g') = (-1)^(|g||f'|) (f f') (x) (g g')."""
    F = GF(5)
    V = SPACE
    f, g = data.draw(graded_map(F, V, V, df)), data.draw(graded_map(F, V, V, dg))
    f2, g2 = data.draw(graded_map(F, V, V, df2)), data.draw(graded_map(F, V, V, dg2))
    words = {(x, y): F.one for x in V.names() for y in V.names()}
    for w in words:
        inner = koszul_apply(F, [f2, g2], {w: F.one})
        lhs = koszul_apply(F, [f, g], inner)
        rhs = koszul_apply(F, [compose(F, f, f2), compose(F, g, g2)], {w: F.one})
        sign = -1 if (dg * df2) % 2 else 1
        assert lhs == clean(F, {k: sign * c for k, c in rhs.items()})


def test_koszul_sign_by_hand():
    F = QQ
    V = GradedSpace.from_degrees({"x": 1, "y": 0})
    s = GradedMap.from_images(F, V, V, 1, {"y": {"x": 1}})
    one = GradedMap.identity(F, V)
    # (1 (x) s)(x (x) y) = (-1)^(|s||x|) x (x) s(y)
    assert koszul_apply(F, [one, s], {("x", "y"): 1}) == {("x", "x"): -1}
    assert koszul_apply(F, [s, one], {("y", "y"): 1}) == {("x", "y"): 1}


def test_koszul_rejects_wrong_length():
    V = SPACE
    with pytest.raises(StructureError):
        koszul_apply(QQ, [GradedMap.identity(QQ, V)], {("u", "v"): 1})


@st.composite
def cochain_complex(draw):
    """A random complex built as d = P D P^-1 with D a random square-zero shape."""
    F = GF(draw(PRIMES))
    dims = [draw(st.integers(0, 3)) for _ in range(4)]
    names = {q: [f"e{q}_{i}" for i in range(n)] for q, n in enumerate(dims)}
    V = GradedSpace.from_degrees({x: q for q, xs in names.items() for x in xs})
    # d^q maps the first r_q basis vectors of a complement onto the next degree
    images = {x: {} for x in V.names()}
    used = {q: 0 for q in names}
    for q in range(3):
        r = draw(st.integers(0, min(dims[q] - used[q], dims[q + 1])))
        for i in range(r):
            images[names[q][used[q] + i]] = {names[q + 1][i]: F.one}
        used[q + 1] = max(used[q + 1], r)
    d = GradedMap.from_images(F, V, V, 1, images)
    return F, V, d


@given(cochain_complex())
def test_homology_dimensions_match_rank_nullity(data):
    F, V, d = data
    h = complex_homology(F, d)
    for q in range(4):
        def rank_from(p):
            return rank(F, [d.image(x) for x in V.names(p)]) if p in V.basis else 0
        expected = V.dim(q) - rank_from(q) - rank_from(q - 1)
        assert h.H.dim(q) == expected
    # i, p, h form a contraction: p i = 1, 1 - i p = d h + h d
    for x in V.names():
        v = {x: F.one}
        ip = h.i.apply(F, h.p.apply(F, v))
        dh = d.apply(F, h.h.apply(F, v))
        hd = h.h.apply(F, d.apply(F, v))
        lhs = clean(F, {k: v.get(k, 0) - ip.get(k, 0) for k in set(v) | set(ip)})
        rhs = clean(F, {k: dh.get(k, 0) + hd.get(k, 0) for k in set(dh) | set(hd)})
        assert lhs == rhs
    for y in h.H.names():
        assert h.p.apply(F, h.i.apply(F, {y: F.one})) == {y: F.one}


def test_homology_rejects_non_complex():
    V = GradedSpace.from_degrees({"a": 0, "b": 1, "c": 2})
    d = GradedMap.from_images(QQ, V, V, 1, {"a": {"b": 1}, "b": {"c": 1}})
    with pytest.raises(StructureError):
        complex_homology(QQ, d)


def test_suspension_lowers_degrees():
    S = suspend(SPACE)
    assert S.degree("u") == -1 and S.degree("z") == 1
    f = GradedMap.from_images(QQ, SPACE, SPACE, 1, {"u": {"v": 1}})
    assert suspend(f).image("u") == {"v": 1}
