from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from dgtor.algebra import FreeGca, check_homotopy, derivation_homotopy, morphism_from_images
from dgtor.barcobar import BarConstruction, CobarConstruction, TwistingCochain, bar_twisting_cochain
from dgtor.exceptions import EndpointMismatch
from dgtor.graded import GradedMap, check_d_squared, complex_homology, cup, hom_differential, identity_map
from dgtor.homotopy import (
    TwistingHomotopy,
    compose_twisting_homotopies,
    cup_inverse,
    dga_homotopy_to_twisting,
    double_path,
    interval_algebra,
    invert_twisting_homotopy,
    path_object,
    right_homotopy,
    twisting_to_dga_homotopy,
    unit_cochain,
)
from dgtor.linalg import GF, ZZ


def test_interval_algebra_is_contractible():
    i = interval_algebra(ZZ)
    assert i.check_axioms(1) is None
    assert [h.free_rank for h in complex_homology(i)] == [1, 0]


def test_path_object_structure():
    a = FreeGca([("x", 2), ("y", 3)], ZZ, 6)
    p = path_object(a)
    assert p.carrier.check_axioms(5) is None
    assert check_d_squared(p.carrier, 6) is None
    assert [h.free_rank for h in complex_homology(p.carrier, top=5)] == [h.free_rank for h in complex_homology(a, top=5)]
    for f in (p.pi0, p.pi1, p.zeta):
        assert f.failure(5) is None
    assert (p.pi0 @ p.zeta).first_difference(identity_map(a), 5) is None
    assert (p.pi1 @ p.zeta).first_difference(identity_map(a), 5) is None
    d = double_path(a.with_cutoff(4))
    assert d.carrier.check_axioms(4) is None


def test_right_homotopy_has_the_right_ends():
    src = FreeGca([("a", 2)], ZZ, 6)
    x = FreeGca([("x", 2), ("z", 1)], ZZ, 6, differential={"z": "x"})
    f0 = morphism_from_images(src, x, {"a": x.gen_element("x")})
    f1 = morphism_from_images(src, x, {})
    h = derivation_homotopy(f0, f1, {"a": x.gen_element("z")})
    assert check_homotopy(h).valid
    px = path_object(x)
    hp = right_homotopy(h, px)
    assert hp.failure(6) is None
    assert (px.pi0 @ hp).first_difference(f0) is None
    assert (px.pi1 @ hp).first_difference(f1) is None
    bad = derivation_homotopy(f0, f1, {"a": {}})
    assert not check_homotopy(bad).valid


class _Gauge:
    """Random twisting cochains ``B k[x] -> T`` related by random gauge maps."""

    def __init__(self, seed, ring):
        self.rng = random.Random(seed)
        a = FreeGca([("x", 2)], ring, 5)
        self.c = BarConstruction(a, 5)
        self.t = FreeGca([("u", 2), ("v", 3), ("w", 4)], ring, 6)
        phi = morphism_from_images(a, self.t, {"x": self.t.gen_element("u")})
        self.t0 = TwistingCochain(self.c, self.t, phi @ bar_twisting_cochain(self.c).map)

    def random_x(self):
        c, t, rng = self.c, self.t, self.rng
        table = {}

        def f(k):
            if k == ():
                return t.unit_element()
            if k not in table:
                n = c.degree(k)
                table[k] = {m: rng.randint(-2, 2) for m in t.reduced_basis(n)} if n > 0 else {}
            return table[k]

        return GradedMap(c, t, 0, f, "x")

    def gauge(self, tc, x):
        inner = cup(tc.map, x) - hom_differential(x)
        return TwistingCochain(self.c, self.t, cup(cup_inverse(x), inner))


@given(st.integers(0, 10_000), st.sampled_from([ZZ, GF(3)]))
def test_twisting_homotopy_groupoid_laws(seed, ring):
    g = _Gauge(seed, ring)
    x = g.random_x()
    t1 = g.gauge(g.t0, x)
    assert t1.check().valid
    x01 = TwistingHomotopy(g.t0, t1, x)
    assert x01.check().valid
    unit = unit_cochain(g.c, g.t)
    inv = cup_inverse(x)
    assert cup(x, inv).first_difference(unit) is None
    assert cup(inv, x).first_difference(unit) is None
    assert invert_twisting_homotopy(x01).check().valid
    y = g.random_x()
    t2 = g.gauge(t1, y)
    x12 = TwistingHomotopy(t1, t2, y)
    composed = compose_twisting_homotopies(x01, x12)
    assert composed.check().valid
    # composing with the inverse gives the constant homotopy
    loop = compose_twisting_homotopies(x01, invert_twisting_homotopy(x01))
    assert loop.x.first_difference(unit) is None


def test_composition_needs_matching_ends():
    g = _Gauge(1, ZZ)
    x = g.random_x()
    x01 = TwistingHomotopy(g.t0, g.gauge(g.t0, x), x)
    with pytest.raises(EndpointMismatch):
        compose_twisting_homotopies(x01, x01)


@given(st.integers(0, 10_000))
def test_dga_and_twisting_homotopies_correspond(seed):
    g = _Gauge(seed, ZZ)
    x = g.random_x()
    x01 = TwistingHomotopy(g.t0, g.gauge(g.t0, x), x)
    omega = CobarConstruction(g.c, 5)
    h = twisting_to_dga_homotopy(x01, omega)
    assert check_homotopy(h, 5).valid
    back = dga_homotopy_to_twisting(h)
    assert back.check().valid
    assert back.x.first_difference(x) is None
    assert back.t0.map.first_difference(g.t0.map) is None
