"""The product on Tor assembled from bar/cobar models, for strict CDGA spans.

Starting from ``Tor_{OBA}(OBX, OBY)`` (``O`` = cobar, ``B`` = bar), a pair of
classes goes through

    exterior product      -> Tor_{OBA (x) OBA}(OBX (x) OBX, OBY (x) OBY)
    Tor_gamma inverse     -> Tor_{O(BA (x) BA)}(O(BX (x) BX), O(BY (x) BY))
    Tor_{O nabla}         -> Tor_{OB(A (x) A)}(OB(X (x) X), OB(Y (x) Y))
    Tor_id(O Phi, O Phi)  -> Tor_{OB(A (x) A)}(OBX, OBY)
    Tor_id(pi0, pi0)^-1   -> Tor_{OB(A (x) A)}(P OBX, P OBY)
    Tor_{O Phi}(pi1, pi1) -> Tor_{OBA}(OBX, OBY)

with ``Phi = B mu``.  Since the inputs are strictly commutative the two
module structures on the path objects agree and the right homotopies are the
constant ones.  The counit ``OB -> id`` identifies the ends with ``Tor_A(X, Y)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import (
    AlgebraMorphism,
    FreeGca,
    TensorAlgebra,
    TensorCoalgebra,
    constant_homotopy,
    identity_morphism,
    multiplication_morphism,
    tensor_morphism,
)
from .barcobar import (
    BarConstruction,
    CobarConstruction,
    adjunction_counit,
    bar_map,
    cobar_map,
    shuffle_gamma,
    shuffle_nabla,
)
from .exceptions import CutoffTooLarge
from .graded import tensor_maps
from .linalg import vec_axpy
from .homotopy import path_object, right_homotopy
from .tor import (
    RingStructure,
    TorMap,
    TorSpace,
    TwoSidedBar,
    classical_product,
    exterior_bar,
    exterior_chain,
    tor_map,
    _require_commutative,
)

MAX_PIPELINE_CUTOFF = 4


def _ob(alg, cut):
    b = BarConstruction(alg, cut)
    return b, CobarConstruction(b, cut)


def _ob_map(f: AlgebraMorphism, src, tgt):
    """``OB f`` between already built ``(B, OB)`` pairs."""
    return cobar_map(bar_map(f, src[0], tgt[0]), src[1], tgt[1])


@dataclass
class PipelineResult:
    """Pipeline and classical structure constants over ``Tor_A(X, Y)``."""

    space: TorSpace
    pipeline: Dict[Tuple[int, int, int, int], List]
    classical: Dict[Tuple[int, int, int, int], List]
    unit_image: List

    @property
    def agrees(self) -> bool:
        return self.pipeline == self.classical

    def disagreements(self):
        return sorted(k for k in self.classical if self.pipeline.get(k) != self.classical[k])


class ProductPipeline:
    """Builds every space and map of the composite once; evaluates lazily."""

    def __init__(self, x: FreeGca, a: FreeGca, y: FreeGca, phi_x: AlgebraMorphism, phi_y: AlgebraMorphism, cutoff: int):
        if cutoff > MAX_PIPELINE_CUTOFF:
            raise CutoffTooLarge(f"the pipeline is limited to cutoff {MAX_PIPELINE_CUTOFF}")
        _require_commutative(x, a, y, top=cutoff + 2)
        self.cutoff = cutoff
        cut = cutoff + 2
        self.base = TwoSidedBar(x, a, y, phi_x, phi_y, cutoff)
        self.base_space = TorSpace(self.base, cutoff, bigraded=False)

        bx, ba, by = _ob(x, cut), _ob(a, cut), _ob(y, cut)
        s1 = TwoSidedBar(bx[1], ba[1], by[1], _ob_map(phi_x, ba, bx), _ob_map(phi_y, ba, by), cutoff, check=False)
        self.s1 = TorSpace(s1, cutoff)
        eps = [adjunction_counit(alg, pair[0], pair[1]) for alg, pair in ((a, ba), (x, bx), (y, by))]
        self.counit = tor_map(eps[0], eps[1], eps[2], s1, self.base, self.s1, self.base_space, check=False)

        # exterior square of s1
        e = exterior_bar(s1, s1)
        self.e = TorSpace(e, cutoff)
        self.ext_chain = exterior_chain(s1, s1, e)

        # O(BA (x) BA) and friends, with gamma down to OBA (x) OBA
        def tensor_side(alg, pair, dest):
            tc = TensorCoalgebra(pair[0], pair[0])
            om = CobarConstruction(tc, cut)
            return tc, om, shuffle_gamma(pair[0], pair[0], om, dest)

        ga = tensor_side(a, ba, e.a)
        gx = tensor_side(x, bx, e.x)
        gy = tensor_side(y, by, e.y)

        def cobar_of_tensor(f, src, tgt, src_side, tgt_side):
            bf = bar_map(f, src[0], tgt[0])
            return cobar_map(tensor_maps(bf, bf, src_side[0], tgt_side[0]), src_side[1], tgt_side[1])

        g_fx = cobar_of_tensor(phi_x, ba, bx, ga, gx)
        g_fy = cobar_of_tensor(phi_y, ba, by, ga, gy)
        g = TwoSidedBar(gx[1], ga[1], gy[1], g_fx, g_fy, cutoff, check=False)
        self.g = TorSpace(g, cutoff)
        self.tor_gamma = tor_map(ga[2], gx[2], gy[2], g, e, self.g, self.e, check=False)

        # OB of the tensor squares, reached by O nabla
        def square_side(alg):
            sq = TensorAlgebra(alg, alg)
            b, o = _ob(sq, cut)
            return sq, (b, o)

        asq, bsq_a = square_side(a)
        xsq, bsq_x = square_side(x)
        ysq, bsq_y = square_side(y)
        h_fx = _ob_map(tensor_morphism(phi_x, phi_x, asq, xsq), bsq_a, bsq_x)
        h_fy = _ob_map(tensor_morphism(phi_y, phi_y, asq, ysq), bsq_a, bsq_y)
        h = TwoSidedBar(bsq_x[1], bsq_a[1], bsq_y[1], h_fx, h_fy, cutoff, check=False)
        self.h = TorSpace(h, cutoff)

        def omega_nabla(pair, side, bsq):
            nab = shuffle_nabla(pair[0], pair[0], side[0], bsq[0])
            return cobar_map(nab, side[1], bsq[1])

        self.tor_nabla = tor_map(omega_nabla(ba, ga, bsq_a), omega_nabla(bx, gx, bsq_x), omega_nabla(by, gy, bsq_y),
                                 g, h, self.g, self.h, check=False)

        # O Phi on the module slots; base stays OB(A (x) A)
        def omega_phi(alg, sq, bsq, pair):
            mu = multiplication_morphism(alg, sq)
            return _ob_map(mu, bsq, pair)

        phi_ox = omega_phi(x, xsq, bsq_x, bx)
        phi_oy = omega_phi(y, ysq, bsq_y, by)
        phi_oa = omega_phi(a, asq, bsq_a, ba)
        m_fx = phi_ox.compose(h_fx)
        m_fy = phi_oy.compose(h_fy)
        m = TwoSidedBar(bx[1], bsq_a[1], by[1], m_fx, m_fy, cutoff, check=False)
        self.m = TorSpace(m, cutoff)
        self.tor_phi = tor_map(identity_morphism(bsq_a[1]), phi_ox, phi_oy, h, m, self.h, self.m, check=False)

        # path objects with the constant right homotopies
        px, py = path_object(bx[1]), path_object(by[1])
        hp_x = right_homotopy(constant_homotopy(m_fx), px, check=False)
        hp_y = right_homotopy(constant_homotopy(m_fy), py, check=False)
        pm = TwoSidedBar(px.carrier, bsq_a[1], py.carrier, hp_x, hp_y, cutoff, check=False)
        self.p = TorSpace(pm, cutoff)
        self.tor_pi0 = tor_map(identity_morphism(bsq_a[1]), px.pi0, py.pi0, pm, m, self.p, self.m, check=False)
        self.tor_pi1 = tor_map(phi_oa, px.pi1, py.pi1, pm, s1, self.p, self.s1, check=True)

        self.after_ext: TorMap = (self.tor_pi1 @ self.tor_pi0.inverse() @ self.tor_phi @ self.tor_nabla
                                  @ self.tor_gamma.inverse())
        self.counit_inverse = self.counit.inverse()
        self.classical = RingStructure(self.base_space, classical_product(TorSpace(self.base, cutoff))._prod)

    def ext_coords(self, n1: int, a: List, n2: int, b: List) -> List:
        """Exterior product of two ``s1`` classes given by coordinates."""
        ring = self.e.ring

        def chain(n, coords):
            out = {}
            for c, cls in zip(coords, self.s1.classes(n)):
                if c:
                    vec_axpy(out, c, cls.cycle, ring)
            return out

        e1, e2 = chain(n1, a), chain(n2, b)
        out = {}
        for k1, c in e1.items():
            for k2, v in e2.items():
                vec_axpy(out, c * v, self.ext_chain(k1, k2), ring)
        return self.e.coordinates(n1 + n2, out)

    def product(self, n1: int, i: int, n2: int, j: int) -> List:
        """Pipeline product of base classes ``(n1, i)`` and ``(n2, j)`` in base coordinates."""
        sp = self.base_space
        ea = [1 if k == i else 0 for k in range(len(sp.classes(n1)))]
        eb = [1 if k == j else 0 for k in range(len(sp.classes(n2)))]
        a = self.counit_inverse.apply(n1, ea)
        b = self.counit_inverse.apply(n2, eb)
        n = n1 + n2
        ext = self.ext_coords(n1, a, n2, b)
        return self.counit.apply(n, self.after_ext.apply(n, ext))

    def run(self) -> PipelineResult:
        sp = self.base_space
        pipe, classical = {}, {}
        for n1 in range(self.cutoff + 1):
            for n2 in range(self.cutoff + 1 - n1):
                for i in range(len(sp.classes(n1))):
                    for j in range(len(sp.classes(n2))):
                        pipe[(n1, i, n2, j)] = self.product(n1, i, n2, j)
                        classical[(n1, i, n2, j)] = self.classical.constant(n1, i, n2, j)
        unit = self.product(0, 0, 0, 0)
        return PipelineResult(sp, pipe, classical, unit)


def pipeline_product_smoke(x, a, y, phi_x, phi_y, cutoff: int = 4) -> PipelineResult:
    return ProductPipeline(x, a, y, phi_x, phi_y, cutoff).run()
