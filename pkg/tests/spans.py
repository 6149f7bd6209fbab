"""Hand-built spans shared by the tor and acceptance tests."""
from __future__ import annotations

from dataclasses import dataclass

from dgtor.algebra import (
    FreeGca,
    augmentation_morphism,
    constant_homotopy,
    derivation_homotopy,
    ground_algebra,
    identity_morphism,
    morphism_from_images,
    unit_morphism,
)
from dgtor.tor import TorSpace, TwoSidedBar


@dataclass
class HomotopyFamily:
    """Source ``k <- A -> k`` and target ``X <- A -> k`` with ``A = k[a4]``.

    ``X = k[x4] (x) Lambda[z3, w3] (x) k[p2] (x) Lambda[q3]`` with ``dz = x`` and
    ``dp = q``, ``phi_X(a) = x``.  The left square commutes only up to a
    homotopy ``h(a) = -z``; adding ``q = dp`` gives an equivalent homotopy,
    adding the non-exact cycle ``w`` does not.
    """

    ring: object
    top: int = 8

    def __post_init__(self):
        r, c = self.ring, self.top + 4
        self.a = FreeGca([("a", 4)], r, c)
        self.k = ground_algebra(r, c)
        self.x = FreeGca([("x", 4), ("z", 3), ("w", 3), ("p", 2), ("q", 3)], r, c, differential={"z": "x", "p": "q"})
        self.eps = augmentation_morphism(self.a, self.k)
        self.phi = morphism_from_images(self.a, self.x, {"a": self.x.gen_element("x")})
        self.u = unit_morphism(self.k, self.x)
        self.id_a = identity_morphism(self.a)
        self.id_k = identity_morphism(self.k)
        self.source = TwoSidedBar(self.k, self.a, self.k, self.eps, self.eps, self.top)
        self.target = TwoSidedBar(self.x, self.a, self.k, self.phi, self.eps, self.top)
        self.source_space = TorSpace(self.source)
        self.target_space = TorSpace(self.target)
        self.h_y = constant_homotopy(self.eps)

    def element(self, **coeffs):
        return {self.x.gen(n): c for n, c in coeffs.items() if c}

    def homotopy(self, value, pre=None):
        """Derivation homotopy from ``u eps`` to ``phi`` (precomposed with ``pre``)."""
        f0 = self.u.compose(self.eps)
        f1 = self.phi
        if pre is not None:
            f0, f1 = f0.compose(pre), f1.compose(pre)
        return derivation_homotopy(f0, f1, {"a": value})


def su4_data(ring, top=16):
    """``k <- Z[c2, c3, c4] -> Z[s]`` restricted along the weights (-3, 1, 1, 1)."""
    c = top + 8
    a = FreeGca([("c2", 4), ("c3", 6), ("c4", 8)], ring, c)
    y = FreeGca([("s", 2)], ring, c)
    k = ground_algebra(ring, c)
    phi = morphism_from_images(a, y, {"c2": {y.monomial(s=2): -6}, "c3": {y.monomial(s=3): -8}, "c4": {y.monomial(s=4): -3}})
    return a, k, y, augmentation_morphism(a, k), phi
