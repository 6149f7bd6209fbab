"""Interval algebra, path objects, right homotopies, and the groupoid of
twisting-cochain homotopies.

The path object of ``A`` is ``k (+) (I (x) Abar)`` where ``I`` is the
normalized cochain algebra of the simplicial interval.  Iterated versions
(double and triple path objects) replace ``I`` by the fibre product of ``k``
copies of ``I`` glued end to end.  In that fibre product the vertex classes
are ``w_0 = (v0, 0, ...)``, ``w_m = (..., v1, v0, ...)`` straddling slots
``m-1`` and ``m``, ``w_k = (..., 0, v1)``, and edges ``e_m`` sit in slot
``m``.  Products: ``w_m w_m = w_m``, ``w_m e_m = e_m``, ``e_m w_{m+1} = e_m``,
everything else zero; ``d w_m = e_{m-1} - e_m``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Optional

from .algebra import (
    AlgebraMorphism,
    DgAlgebra,
    DgaHomotopy,
    ExplicitDga,
    HomotopyReport,
    TensorAlgebra,
    check_homotopy,
)
from .barcobar import CobarConstruction, TwistingCochain, extend_from_cobar, iterated_reduced_diagonal
from .exceptions import EndpointMismatch, InvalidHomotopy, SourceNotCobar
from .graded import Element, GradedBasis, GradedMap, cup, hom_differential, sign
from .linalg import CoefficientRing, vec_axpy


def interval_algebra(ring: CoefficientRing) -> ExplicitDga:
    """Cochains on the interval: basis ``v0, v1`` (degree 0) and ``e`` (degree 1)."""
    basis = GradedBasis((("v0", 0), ("v1", 0), ("e", 1)), 1)
    mult = {
        ("v0", "v0"): {"v0": 1},
        ("v0", "e"): {"e": 1},
        ("v1", "v1"): {"v1": 1},
        ("e", "v1"): {"e": 1},
    }
    diff = {"v0": {"e": -1}, "v1": {"e": 1}}
    return ExplicitDga(basis, ring, mult, {"v0": 1, "v1": 1}, diff)


_UNIT = ("1",)


def _tag_degree(tag) -> int:
    return 1 if tag[0] == "e" else 0


def _tag_mul(t1, t2):
    k1, m1 = t1
    k2, m2 = t2
    if k1 == "w":
        if k2 == "w":
            return t1 if m1 == m2 else None
        return t2 if m1 == m2 else None
    if k2 == "w":
        return t1 if m2 == m1 + 1 else None
    return None


class PathAlgebra(DgAlgebra):
    """``k (+) (I^{x k} (x) Abar)``: the path object for ``k = 1``, the double
    path object for ``k = 2`` and the triple path object for ``k = 3``."""

    def __init__(self, a: DgAlgebra, length: int = 1):
        if length < 1:
            raise ValueError("length must be at least 1")
        self.a = a
        self.length = length
        self.ring = a.ring
        self.cutoff = a.cutoff
        self.limit = a.limit
        self.unit_key = _UNIT
        self.tags = [("w", 0)]
        for m in range(length):
            self.tags += [("e", m), ("w", m + 1)]

    def _enumerate(self, n):
        out = [_UNIT] if n == 0 else []
        for tag in self.tags:
            for x in self.a.reduced_basis(n - _tag_degree(tag)):
                out.append((tag, x))
        return out

    def degree(self, key):
        if key == _UNIT:
            return 0
        return _tag_degree(key[0]) + self.a.degree(key[1])

    def mul(self, k1, k2):
        if k1 == _UNIT:
            return {k2: 1}
        if k2 == _UNIT:
            return {k1: 1}
        t = _tag_mul(k1[0], k2[0])
        if t is None:
            return {}
        s = sign(self.a.degree(k1[1]) * _tag_degree(k2[0]))
        ring = self.ring
        return {(t, y): ring.norm(s * c) for y, c in self.a.mul(k1[1], k2[1]).items()}

    def d(self, key):
        if key == _UNIT:
            return {}
        (kind, m), x = key
        ring = self.ring
        out: Element = {}
        if kind == "w":
            if m > 0:
                out[(("e", m - 1), x)] = 1
            if m < self.length:
                vec_axpy(out, -1, {(("e", m), x): 1}, ring)
        s = sign(_tag_degree(key[0]))
        for y, c in self.a.d(x).items():
            vec_axpy(out, s * c, {(key[0], y): 1}, ring)
        return out

    def tag_name(self, tag) -> str:
        kind, m = tag
        if self.length == 1:
            return {("w", 0): "v0", ("w", 1): "v1", ("e", 0): "e"}[tag]
        slots = ["0"] * self.length
        if kind == "e":
            slots[m] = "e"
        else:
            if m > 0:
                slots[m - 1] = "v1"
            if m < self.length:
                slots[m] = "v0"
        return "(" + ",".join(slots) + ")"

    def key_name(self, key):
        if key == _UNIT:
            return "1"
        return f"{self.tag_name(key[0])}(x){self.a.key_name(key[1])}"

    def element(self, tag, elem: Mapping) -> Element:
        """``tag (x) elem`` for ``elem`` in the augmentation ideal of ``A``."""
        out: Element = {}
        for x, c in elem.items():
            if x == self.a.unit_key:
                raise ValueError("element has a unit component")
            out[(tag, x)] = c
        return out

    def vertex_projection(self, m: int) -> AlgebraMorphism:
        """The algebra map to ``A`` evaluating at vertex ``m``."""
        a = self.a
        tag = ("w", m)

        def func(key):
            if key == _UNIT:
                return a.unit_element()
            return {key[1]: 1} if key[0] == tag else {}

        return AlgebraMorphism(self, a, func, f"q{m}")

    def section(self) -> AlgebraMorphism:
        """The constant-path map ``A -> P``."""
        a = self.a
        vertices = [("w", m) for m in range(self.length + 1)]

        def func(key):
            if key == a.unit_key:
                return {_UNIT: 1}
            return {(t, key): 1 for t in vertices}

        return AlgebraMorphism(a, self, func, "zeta")


@dataclass
class PathObject:
    base: DgAlgebra
    carrier: PathAlgebra
    pi0: AlgebraMorphism
    pi1: AlgebraMorphism
    zeta: AlgebraMorphism


def path_object(a: DgAlgebra) -> PathObject:
    p = PathAlgebra(a, 1)
    return PathObject(a, p, p.vertex_projection(0), p.vertex_projection(1), p.section())


@dataclass
class MultiPathObject:
    base: DgAlgebra
    carrier: PathAlgebra
    projections: list  # vertex projections q_0..q_k

    @property
    def p0(self):
        return self.projections[0]

    @property
    def p1(self):
        return self.projections[-1]


def double_path(a: DgAlgebra) -> MultiPathObject:
    p = PathAlgebra(a, 2)
    return MultiPathObject(a, p, [p.vertex_projection(m) for m in range(3)])


def triple_path(a: DgAlgebra) -> MultiPathObject:
    p = PathAlgebra(a, 3)
    return MultiPathObject(a, p, [p.vertex_projection(m) for m in range(4)])


def right_homotopy(h: DgaHomotopy, path: Optional[PathObject] = None, check: bool = True) -> AlgebraMorphism:
    """``a -> v0 (x) f0(a) - e (x) h(a) + v1 (x) f1(a)`` into the path object."""
    if check:
        rep = check_homotopy(h)
        if not rep.valid:
            raise InvalidHomotopy(f"homotopy axioms fail: {rep.failures}")
    src = h.f0.source
    path = path or path_object(h.f0.target)
    p = path.carrier
    ring = p.ring
    f0, f1, hh = h.f0, h.f1, h.h

    def func(key):
        if key == src.unit_key:
            return {_UNIT: 1}
        out = p.element(("w", 0), f0.on_basis(key))
        vec_axpy(out, 1, p.element(("w", 1), f1.on_basis(key)), ring)
        vec_axpy(out, -1, p.element(("e", 0), hh.on_basis(key)), ring)
        return out

    return AlgebraMorphism(src, p, func, "hP")


_R_TABLE = {
    (("w", 0), ("w", 0)): ("w", 0),
    (("e", 0), ("w", 0)): ("e", 0),
    (("w", 1), ("w", 0)): ("w", 1),
    (("w", 1), ("e", 0)): ("e", 1),
    (("w", 1), ("w", 1)): ("w", 2),
}


def square_to_double(pa: PathAlgebra, pb: Optional[PathAlgebra] = None, source: Optional[TensorAlgebra] = None,
                     target: Optional[PathAlgebra] = None) -> AlgebraMorphism:
    """The map ``r: PA (x) PB -> D(A (x) B)`` collapsing the square to two edges."""
    pb = pb or pa
    source = source or TensorAlgebra(pa, pb)
    target = target or PathAlgebra(TensorAlgebra(pa.a, pb.a), 2)
    ua, ub = pa.a.unit_key, pb.a.unit_key
    vertices = [("w", 0), ("w", 1)]
    ring = target.ring

    def expand(key, unit):
        if key == _UNIT:
            return [(t, unit) for t in vertices]
        return [key]

    def func(key):
        k1, k2 = key
        if k1 == _UNIT and k2 == _UNIT:
            return {_UNIT: 1}
        out: Element = {}
        for t1, x in expand(k1, ua):
            for t2, y in expand(k2, ub):
                t = _R_TABLE.get((t1, t2))
                if t is None:
                    continue
                s = sign(pa.a.degree(x) * _tag_degree(t2))
                vec_axpy(out, s, {(t, (x, y)): 1}, ring)
        return out

    return AlgebraMorphism(source, target, func, "r")


# ---------------------------------------------------------------------------
# twisting-cochain homotopies


@dataclass
class TwistingHomotopy:
    """``x: C -> A`` of degree 0 with ``d(x) = t0 u x - x u t1``."""

    t0: TwistingCochain
    t1: TwistingCochain
    x: GradedMap

    @property
    def source(self):
        return self.t0.source

    @property
    def target(self):
        return self.t0.target

    def check(self, top: Optional[int] = None) -> HomotopyReport:
        return check_tc_homotopy(self.x, self.t0, self.t1, top)


def unit_cochain(c, a) -> GradedMap:
    """``eta_A eps_C``, the unit for the cup product."""
    unit = a.unit_element()
    return GradedMap(c, a, 0, lambda k: dict(unit) if c.counit(k) else {}, "1")


def check_tc_homotopy(x: GradedMap, t0: TwistingCochain, t1: TwistingCochain, top: Optional[int] = None) -> HomotopyReport:
    c, a = x.source, x.target
    top = c.cutoff if top is None else top
    ring = a.ring
    failures = []
    for n in range(top + 1):
        bad = next((k for k in c.basis(n) if ring.norm(a.augment(x.on_basis(k)) - c.counit(k))), None)
        if bad is not None:
            failures.append(("counit", bad))
            break
    if c.unit_key is not None and x.on_basis(c.unit_key) != a.unit_element():
        failures.append(("unit", c.unit_key))
    lhs = hom_differential(x, c, a)
    rhs = cup(t0.map, x, c, a) - cup(x, t1.map, c, a)
    for n in range(top + 1):
        bad = next((k for k in c.basis(n) if lhs.on_basis(k) != rhs.on_basis(k)), None)
        if bad is not None:
            failures.append(("differential", bad))
            break
    return HomotopyReport(not failures, failures)


def constant_twisting_homotopy(t: TwistingCochain) -> TwistingHomotopy:
    return TwistingHomotopy(t, t, unit_cochain(t.source, t.target))


def cup_inverse(x: GradedMap, coalg=None, alg=None) -> GradedMap:
    """Two-sided cup inverse ``sum_l (eta eps - x)^{u l}`` of a degree-0 map
    with ``x eta = eta``; the sum stops at each element's cocompleteness index."""
    c = coalg or x.source
    a = alg or x.target
    ring = a.ring
    memo: dict = {}
    unit = a.unit_element()

    def y(k):
        out = dict(unit) if c.counit(k) else {}
        vec_axpy(out, -1, x.on_basis(k), ring)
        return out

    def func(key):
        out: Element = dict(unit) if c.counit(key) else {}
        for parts, v in iterated_reduced_diagonal(c, key, memo).items():
            acc = {a.unit_key: v} if a.unit_key is not None else {k: ring.norm(v * u) for k, u in unit.items()}
            for p in parts:
                acc = a.product(acc, y(p))
                if not acc:
                    break
            vec_axpy(out, 1, acc, ring)
        return out

    return GradedMap(c, a, 0, func, f"{x.name}^-1")


def _same_cochain(s: TwistingCochain, t: TwistingCochain, top=None) -> bool:
    return s is t or s.map.first_difference(t.map, top) is None


def compose_twisting_homotopies(x01: TwistingHomotopy, x12: TwistingHomotopy, top: Optional[int] = None) -> TwistingHomotopy:
    if not _same_cochain(x01.t1, x12.t0, top):
        raise EndpointMismatch("the end of the first homotopy is not the start of the second")
    return TwistingHomotopy(x01.t0, x12.t1, cup(x01.x, x12.x))


def invert_twisting_homotopy(x: TwistingHomotopy) -> TwistingHomotopy:
    return TwistingHomotopy(x.t1, x.t0, cup_inverse(x.x))


def dga_homotopy_to_twisting(h: DgaHomotopy) -> TwistingHomotopy:
    """``x = eta eps + h t_C`` for a homotopy of maps out of a cobar construction."""
    omega = h.f0.source
    if not isinstance(omega, CobarConstruction):
        raise SourceNotCobar("the homotopy's source is not a cobar construction")
    c, a = omega.c, h.f0.target
    ring = a.ring
    unit = a.unit_element()

    def tmap(f, name):
        return TwistingCochain(c, a, GradedMap(c, a, 1, lambda k: {} if k == c.unit_key else f.on_basis((k,)), name))

    def func(k):
        if k == c.unit_key:
            return dict(unit)
        return dict(h.h.on_basis((k,)))

    x = GradedMap(c, a, 0, func, "x")
    return TwistingHomotopy(tmap(h.f0, "t0"), tmap(h.f1, "t1"), x)


def twisting_to_dga_homotopy(x: TwistingHomotopy, omega: Optional[CobarConstruction] = None) -> DgaHomotopy:
    """The homotopy ``f^{t0} ~ f^{t1}`` determined by ``h<c> = x(c)``."""
    c, a = x.source, x.target
    omega = omega or CobarConstruction(c)
    f0 = extend_from_cobar(x.t0, omega)
    f1 = extend_from_cobar(x.t1, omega)
    ring = a.ring

    def func(w):
        out: Element = {}
        e = 0
        for i, ci in enumerate(w):
            left = f0.on_basis(w[:i])
            if left:
                term = a.product(left, x.x.on_basis(ci))
                if term:
                    term = a.product(term, f1.on_basis(w[i + 1:]))
                    vec_axpy(out, sign(e), term, ring)
            e += c.degree(ci) + 1
        return out

    return DgaHomotopy(f0, f1, GradedMap(omega, a, -1, func, "h"))
