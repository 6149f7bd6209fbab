from __future__ import annotations

from hypothesis import given, strategies as st

from dgtor.algebra import FreeGca, TensorAlgebra, TensorCoalgebra
from dgtor.barcobar import (
    BarConstruction,
    CobarConstruction,
    adjunction_counit,
    adjunction_unit,
    bar_map,
    bar_twisting_cochain,
    cobar_twisting_cochain,
    dgc_map_failure,
    extend_from_cobar,
    lift_to_bar,
    nabla_twisting_cochain,
    shuffle_nabla,
    shuffle_words,
)
from dgtor.graded import check_d_squared, complex_homology, identity_map
from dgtor.linalg import GF, QQ, ZZ

rings = st.sampled_from([ZZ, GF(2), GF(3)])


@st.composite
def connected_dgas(draw, top=6):
    """Free GCAs with generators in degrees 2..4, sometimes with dz = x."""
    ring = draw(rings)
    degs = draw(st.lists(st.integers(2, 4), min_size=1, max_size=2))
    gens = [(f"g{i}", d) for i, d in enumerate(degs)]
    diff = None
    if draw(st.booleans()):
        gens += [("x", 4), ("z", 3)]
        diff = {"z": "x"}
    return FreeGca(gens, ring, top, differential=diff)


@given(connected_dgas())
def test_bar_and_cobar_square_to_zero(a):
    b = BarConstruction(a, 6)
    assert check_d_squared(b, 6) is None
    assert b.check_axioms(5) is None
    o = CobarConstruction(b, 5)
    assert check_d_squared(o, 5) is None


@given(connected_dgas())
def test_universal_twisting_cochains(a):
    b = BarConstruction(a, 6)
    assert bar_twisting_cochain(b).check(6).valid
    o = CobarConstruction(b, 5)
    assert cobar_twisting_cochain(o).check(5).valid


@given(connected_dgas())
def test_twisting_adjunction_round_trips(a):
    # lifting the universal cochain back to the bar construction is the identity,
    # and so is extending the universal cochain out of the cobar construction
    b = BarConstruction(a, 6)
    assert lift_to_bar(bar_twisting_cochain(b), b).first_difference(identity_map(b), 6) is None
    o = CobarConstruction(b, 5)
    assert extend_from_cobar(cobar_twisting_cochain(o), o).first_difference(identity_map(o), 5) is None


def test_unit_counit_triangle():
    c = FreeGca([("x", 4), ("z", 3), ("y", 2)], ZZ, 7, differential={"z": "x"})
    bc = BarConstruction(c, 7)
    o = CobarConstruction(bc, 6)
    eps = adjunction_counit(c, bc, o)
    assert eps.failure(6) is None
    bo = BarConstruction(o, 5)
    eta = adjunction_unit(bc, o, bo)
    assert dgc_map_failure(eta, 4) is None
    composite = bar_map(eps, bo, BarConstruction(c, 5)).compose(eta)
    assert composite.first_difference(identity_map(bc), 4) is None


def test_counit_is_quasi_isomorphism():
    a = FreeGca([("x", 2)], QQ, 6)
    b = BarConstruction(a, 6)
    o = CobarConstruction(b, 6)
    assert [h.free_rank for h in complex_homology(o, top=6)] == [1, 0, 1, 0, 1, 0, 1]


def test_bar_homology_of_polynomial_ring():
    # H(B k[x2]) is exterior on one class of total degree 1
    a = FreeGca([("x", 2)], ZZ, 8)
    hom = complex_homology(BarConstruction(a, 8), top=6)
    assert [h.free_rank for h in hom] == [1, 1, 0, 0, 0, 0, 0]


def test_shuffle_nabla_is_the_lift_of_its_cochain():
    a1 = FreeGca([("a", 2)], ZZ, 4)
    a2 = FreeGca([("b", 3)], ZZ, 4)
    b1, b2 = BarConstruction(a1, 4), BarConstruction(a2, 4)
    src = TensorCoalgebra(b1, b2)
    tgt = BarConstruction(TensorAlgebra(a1, a2), 4)
    nab = shuffle_nabla(b1, b2, src, tgt)
    tau = nabla_twisting_cochain(src, tgt.a)
    assert tau.check(4).valid
    assert nab.first_difference(lift_to_bar(tau, tgt), 4) is None
    assert dgc_map_failure(nab, 4) is None


@given(st.lists(st.integers(2, 5), max_size=3), st.lists(st.integers(2, 5), max_size=3))
def test_shuffle_count_and_signs(d1, d2):
    w1 = tuple(f"a{i}" for i in range(len(d1)))
    w2 = tuple(f"b{i}" for i in range(len(d2)))
    out = list(shuffle_words(w1, d1, w2, d2, lambda x: x, lambda x: x))
    from math import comb

    assert len(out) == comb(len(d1) + len(d2), len(d1))
    assert len({w for w, _ in out}) == len(out)
    # the unshuffled concatenation comes with sign +1
    assert dict(out)[w1 + w2] == 1
