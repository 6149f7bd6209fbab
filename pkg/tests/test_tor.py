from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from dgtor.algebra import FreeGca, augmentation_morphism, ground_algebra, identity_morphism, morphism_from_images
from dgtor.exceptions import InvalidHomotopy, NotOneConnected, ResourceGuardExceeded, SquaresDoNotCommute
from dgtor.graded import check_d_squared
from dgtor.linalg import GF, QQ, ZZ
from dgtor.pipeline import ProductPipeline
from dgtor.tor import (
    KoszulComplex,
    TorSpace,
    TwoSidedBar,
    classical_product,
    identity_tor_map,
    koszul_oracle,
    shuffle_product,
    tor_bigraded,
    tor_map,
    tor_map_with_homotopy,
)
from spans import HomotopyFamily, su4_data


def loop_span(ring, top):
    a = FreeGca([("x", 2)], ring, top + 4)
    k = ground_algebra(ring, top + 4)
    e = augmentation_morphism(a, k)
    return k, a, k, e, e


def test_loop_space_table():
    b = TwoSidedBar(*loop_span(ZZ, 8), 8)
    assert check_d_squared(b, 8) is None
    t = tor_bigraded(b, 8)
    assert t.totals == [(1, ()), (1, ())] + [(0, ())] * 7
    assert t.table == {(0, 0): (1, ()), (1, 2): (1, ())}


def test_two_sided_bar_requires_one_connected_base():
    a = FreeGca([("u", 1)], ZZ, 6)
    k = ground_algebra(ZZ, 6)
    e = augmentation_morphism(a, k)
    with pytest.raises(NotOneConnected):
        TwoSidedBar(k, a, k, e, e, 4)


def test_resource_guard(monkeypatch):
    monkeypatch.setenv("DGTOR_MAX_CELLS", "50")
    b = TwoSidedBar(*loop_span(ZZ, 30), 30)
    with pytest.raises(ResourceGuardExceeded):
        TorSpace(b, 30).group(30)


@pytest.mark.parametrize("ring", [ZZ, GF(2)])
def test_su4_bar_matches_koszul(ring):
    a, k, y, eps, phi = su4_data(ring, 12)
    bar = tor_bigraded(TwoSidedBar(k, a, y, eps, phi, 12), 12)
    kos = koszul_oracle(a, k, y, eps, phi, 12)
    assert bar.table == kos.table
    assert bar.totals == kos.totals


def test_koszul_complex_squares_to_zero():
    a, k, y, eps, phi = su4_data(ZZ, 12)
    kc = KoszulComplex(a, k, y, eps, phi, 12)
    assert check_d_squared(kc, 12) is None


@st.composite
def small_spans(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    ring = GF(p)
    top = 8
    nb = draw(st.integers(1, 2))
    base = FreeGca([(f"a{i}", draw(st.sampled_from([2, 4]))) for i in range(nb)], ring, top + 4)
    sides = []
    for side in "xy":
        n = draw(st.integers(0, 2))
        sides.append(FreeGca([(f"{side}{i}", 2) for i in range(n)], ring, top + 4))
    maps = []
    for t in sides:
        images = {}
        for name, d in base.generators:
            elem = {}
            for key in t.basis(d):
                c = draw(st.integers(0, p - 1))
                if c:
                    elem[key] = c
            images[name] = elem
        maps.append(morphism_from_images(base, t, images))
    return base, sides[0], sides[1], maps[0], maps[1], top


@settings(max_examples=15)
@given(small_spans())
def test_bar_route_agrees_with_koszul(span):
    a, x, y, fx, fy, top = span
    b = TwoSidedBar(x, a, y, fx, fy, top)
    assert check_d_squared(b, top) is None
    assert tor_bigraded(b, top).table == koszul_oracle(a, x, y, fx, fy, top).table


# maps on Tor ---------------------------------------------------------------


def test_identity_tor_map():
    span = loop_span(QQ, 6)
    b = TwoSidedBar(*span, 6)
    sp = TorSpace(b, 6)
    m = tor_map(identity_morphism(span[1]), identity_morphism(span[0]), identity_morphism(span[2]), b, b, sp, sp)
    assert m.equals(identity_tor_map(sp))


def test_tor_map_requires_commuting_squares():
    fam = HomotopyFamily(QQ, 4)
    with pytest.raises(SquaresDoNotCommute):
        tor_map(fam.id_a, fam.u, fam.id_k, fam.source, fam.target)


def test_tor_map_with_homotopy_rejects_wrong_endpoints():
    fam = HomotopyFamily(QQ, 4)
    bogus = fam.homotopy(fam.element(z=-1), pre=None)
    bogus.h._func = lambda k: {}
    with pytest.raises(InvalidHomotopy):
        tor_map_with_homotopy(fam.id_a, fam.u, fam.id_k, bogus, fam.h_y, fam.source, fam.target)


@pytest.mark.parametrize("ring", [ZZ, QQ, GF(3)])
def test_exact_perturbation_does_not_change_the_map(ring):
    fam = HomotopyFamily(ring, 6)
    args = (fam.source, fam.target, fam.source_space, fam.target_space)
    m0 = tor_map_with_homotopy(fam.id_a, fam.u, fam.id_k, fam.homotopy(fam.element(z=-1)), fam.h_y, *args)
    m1 = tor_map_with_homotopy(fam.id_a, fam.u, fam.id_k, fam.homotopy(fam.element(z=-1, q=1)), fam.h_y, *args)
    assert m0.equals(m1)


def test_non_exact_perturbation_changes_the_map():
    # adding the cycle w (not a boundary) to the homotopy moves the image of the
    # degree-3 class by [w]; independence only holds for homotopies that are
    # themselves homotopic rel endpoints
    fam = HomotopyFamily(QQ, 6)
    args = (fam.source, fam.target, fam.source_space, fam.target_space)
    m0 = tor_map_with_homotopy(fam.id_a, fam.u, fam.id_k, fam.homotopy(fam.element(z=-1)), fam.h_y, *args)
    m1 = tor_map_with_homotopy(fam.id_a, fam.u, fam.id_k, fam.homotopy(fam.element(z=-1, w=1)), fam.h_y, *args)
    assert not m0.equals(m1)
    assert m0.column(0, 0) == m1.column(0, 0)


# products ------------------------------------------------------------------


@pytest.mark.parametrize("ring", [ZZ, GF(2)])
def test_su4_products(ring):
    a, k, y, eps, phi = su4_data(ring, 10)
    sp = TorSpace(TwoSidedBar(k, a, y, eps, phi, 10), 10)
    rs = shuffle_product(sp)
    assert rs.unital_failure() is None
    assert rs.commutative_failure() is None
    assert rs.associative_failure() is None
    assert rs.same_as(classical_product(sp))


def test_pipeline_on_loop_span():
    res = ProductPipeline(*loop_span(QQ, 4), 4).run()
    assert res.agrees
    assert res.unit_image == [1]
