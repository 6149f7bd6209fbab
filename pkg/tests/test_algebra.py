from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from dgtor.algebra import (
    FreeGca,
    TensorAlgebra,
    augmentation_morphism,
    evaluate_morphism,
    ground_algebra,
    identity_morphism,
    morphism_from_images,
    multiplication_morphism,
    parse_polynomial,
    tensor_morphism,
)
from dgtor.exceptions import (
    CutoffTooSmall,
    DegreeMismatch,
    NotAChainMap,
    ParseError,
    ResourceGuardExceeded,
)
from dgtor.graded import GradedBasis, ExplicitComplex, check_d_squared, complex_homology
from dgtor.linalg import GF, QQ, ZZ

rings = st.sampled_from([ZZ, QQ, GF(2), GF(3)])


@st.composite
def free_gcas(draw, top=6):
    ring = draw(rings)
    degs = draw(st.lists(st.integers(1, 4), min_size=0, max_size=3))
    gens = [(f"g{i}", d) for i, d in enumerate(degs)]
    return FreeGca(gens, ring, top)


def series_dims(degs, ring, top):
    """Hilbert series of a free graded-commutative algebra by series multiplication."""
    out = [1] + [0] * top
    for d in degs:
        if d % 2:
            factor = [1 if i in (0, d) else 0 for i in range(top + 1)]
        else:
            factor = [1 if i % d == 0 else 0 for i in range(top + 1)]
        out = [sum(out[i] * factor[n - i] for i in range(n + 1)) for n in range(top + 1)]
    return out


@given(free_gcas())
def test_dims_match_hilbert_series(a):
    assert list(a.dims(6)) == series_dims(a.gdeg, a.ring, 6)


@given(free_gcas(top=5))
def test_free_gca_axioms(a):
    assert a.check_axioms(5) is None
    assert a.is_commutative(5)


def test_polynomial_odd_generators_in_char_two():
    a = FreeGca([("x", 3)], GF(2), 9, polynomial=["x"])
    assert a.dims(9) == (1, 0, 0, 1, 0, 0, 1, 0, 0, 1)
    x = a.gen_element("x")
    assert a.product(x, x) == {a.monomial(x=2): 1}
    b = FreeGca([("y", 2)], GF(2), 6, exterior=["y"])
    assert b.dims(6) == (1, 0, 1, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        FreeGca([("x", 3)], ZZ, 9, polynomial=["x"])


def test_odd_generators_anticommute():
    a = FreeGca([("u", 1), ("v", 3)], ZZ, 6)
    u, v = a.gen_element("u"), a.gen_element("v")
    assert a.product(u, v) == {k: -c for k, c in a.product(v, u).items()}
    assert a.product(u, u) == {}


def test_parse_polynomial():
    a = FreeGca([("s", 2), ("y", 5)], ZZ, 12)
    assert parse_polynomial("-6*s^2", a) == {a.monomial(s=2): -6}
    assert parse_polynomial("(s + 1)^2 - 1", a) == {a.monomial(s=2): 1, a.monomial(s=1): 2}
    assert parse_polynomial("s*y - y*s", a) == {}
    with pytest.raises(ParseError):
        parse_polynomial("s + ", a)
    with pytest.raises(ParseError):
        parse_polynomial("t", a)


def test_differential_extends_as_derivation():
    x = FreeGca([("x", 2), ("z", 1)], ZZ, 8, differential={"z": "x"})
    z, xx = x.gen_element("z"), x.gen_element("x")
    assert x.d_elem(x.product(z, xx)) == x.product(xx, xx)
    assert check_d_squared(x, 8) is None
    hom = complex_homology(x, top=6)
    assert [h.free_rank for h in hom] == [1, 0, 0, 0, 0, 0, 0]


def test_morphism_validation():
    a = FreeGca([("c", 4)], ZZ, 8)
    t = FreeGca([("s", 2), ("y", 3)], ZZ, 8)
    f = evaluate_morphism({"c": "-6*s^2"}, a, t)
    assert f(a.gen_element("c")) == {t.monomial(s=2): -6}
    assert f({a.monomial(c=2): 1}) == {t.monomial(s=4): 36}
    with pytest.raises(DegreeMismatch):
        evaluate_morphism({"c": "s^3"}, a, t)
    with pytest.raises(ValueError):
        evaluate_morphism({"q": "s^2"}, a, t)
    y = FreeGca([("x", 3), ("z", 2)], ZZ, 8, differential={"z": "x"})
    with pytest.raises(NotAChainMap):
        # w is a cycle but its image z is not
        morphism_from_images(FreeGca([("w", 2)], ZZ, 8), y, {"w": y.gen_element("z")})


@given(st.data())
def test_random_morphisms_are_multiplicative(data):
    ring = data.draw(rings)
    a = FreeGca([("a", 2), ("b", 2), ("u", 3)], ring, 8)
    t = FreeGca([("x", 2), ("v", 1)], ring, 8)
    c = [data.draw(st.integers(-3, 3)) for _ in range(4)]
    f = morphism_from_images(a, t, {
        "a": {t.monomial(x=1): c[0]},
        "b": {t.monomial(x=1): c[1]},
        "u": {t.monomial(x=1, v=1): c[2]},
    })
    for n in range(9):
        for k1 in a.basis(n):
            for m in range(9 - n):
                for k2 in a.basis(m):
                    assert f(a.mul(k1, k2)) == t.product(f.on_basis(k1), f.on_basis(k2))


def test_tensor_algebra_and_multiplication():
    a = FreeGca([("x", 2), ("u", 1)], ZZ, 5)
    aa = TensorAlgebra(a, a)
    assert aa.check_axioms(4) is None
    mu = multiplication_morphism(a, aa)
    assert mu.failure(4) is None
    i = identity_morphism(a)
    assert tensor_morphism(i, i, aa, aa).failure(4) is None
    k = ground_algebra(ZZ, 5)
    assert augmentation_morphism(a, k).failure(5) is None


def test_cutoff_and_resource_guard(monkeypatch):
    with pytest.raises(CutoffTooSmall):
        FreeGca([("x", 6)], ZZ, 4)
    monkeypatch.setenv("DGTOR_MAX_CELLS", "10")
    a = FreeGca([("x", 2), ("y", 2), ("z", 2)], ZZ, 20)
    with pytest.raises(ResourceGuardExceeded):
        a.dims(20)


def test_explicit_complex_homology():
    basis = GradedBasis((("a", 0), ("b", 1), ("c", 1), ("e", 2)), 2)
    c = ExplicitComplex(basis, {"a": {"b": 2, "c": 2}, "b": {"e": 1}, "c": {"e": -1}}, ZZ)
    assert check_d_squared(c) is None
    hom = complex_homology(c)
    assert hom[0].is_zero
    assert (hom[1].free_rank, hom[1].torsion) == (0, (2,))
    assert hom[2].is_zero
