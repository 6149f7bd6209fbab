"""Bar and cobar constructions, twisting cochains, the bar-cobar adjunction,
shuffle maps, and the bar of a commutative multiplication.

Sign conventions (certified by the ``d^2 = 0`` tests):

* A bar word ``[a1|...|ap]`` has degree ``sum(|ai| - 1)``; writing
  ``e_i = sum_{j<=i}(|aj| - 1)``,
  ``D[a1|...|ap] = sum_i -(-1)^{e_{i-1}} [..|d ai|..] + sum_i (-1)^{e_i} [..|ai ai+1|..]``.
* A cobar word ``<c1;...;cl>`` has degree ``sum(|ci| + 1)`` and
  ``d<c> = -<dc> + sum (-1)^{|c'|} <c';c''>`` over the reduced diagonal,
  extended as a derivation.
* The tautological cochains are ``t^A[a] = a`` and ``t_C(c) = <c>``; both
  satisfy ``d(t) = t u t`` with ``d(t) = d t + t d``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .algebra import (
    AlgebraMorphism,
    DgAlgebra,
    DgCoalgebra,
    HomotopyReport,
    TensorAlgebra,
    TensorCoalgebra,
    multiplication_morphism,
    tensor_morphism,
)
from .exceptions import InvalidTwistingCochain, NotCocomplete, NotCommutative, NotOneConnected
from .graded import Element, GradedMap, Key, cup, hom_differential, sign
from .linalg import vec_axpy


def _letter_sort_key(alg, k):
    n = alg.degree(k)
    return (n, alg.index(n)[k])


class BarConstruction(DgCoalgebra):
    """Reduced bar construction of a 1-connected augmented DGA."""

    def __init__(self, a: DgAlgebra, cutoff: Optional[int] = None):
        a.require_one_connected()
        self.a = a
        self.ring = a.ring
        self.cutoff = a.cutoff if cutoff is None else cutoff
        self.limit = None
        self.unit_key = ()
        self._dmemo: Dict[Key, Element] = {}
        self._degmemo: Dict[Key, int] = {}

    def _enumerate(self, n):
        a = self.a
        if n == 0:
            return [()]
        out = []
        for m in range(1, n + 1):
            letters = a.reduced_basis(m + 1)
            if not letters:
                continue
            for rest in self.basis(n - m):
                for x in letters:
                    out.append((x,) + rest)
        out.sort(key=lambda w: (len(w), tuple(_letter_sort_key(a, x) for x in w)))
        return out

    def degree(self, w):
        got = self._degmemo.get(w)
        if got is None:
            a = self.a
            got = self._degmemo[w] = sum(a.degree(x) - 1 for x in w)
        return got

    def d(self, w):
        got = self._dmemo.get(w)
        if got is None:
            got = self._dmemo[w] = self._d(w)
        return got

    def _d(self, w):
        a = self.a
        norm = self.ring.norm
        out: Element = {}

        def add(k, c):
            v = norm(out.get(k, 0) + c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)

        e = 0
        p = len(w)
        for i, x in enumerate(w):
            dx = a.d(x)
            if dx:
                s = -sign(e)
                for y, c in dx.items():
                    add(w[:i] + (y,) + w[i + 1:], s * c)
            e += a.degree(x) - 1
            if i + 1 < p:
                prod = a.mul(x, w[i + 1])
                if prod:
                    s = sign(e)
                    for y, c in prod.items():
                        add(w[:i] + (y,) + w[i + 2:], s * c)
        return out

    def comult(self, w):
        return {(w[:k], w[k:]): 1 for k in range(len(w) + 1)}

    def coaug_index(self, w):
        return len(w) + 1

    def key_name(self, w):
        return "[" + "|".join(self.a.key_name(x) for x in w) + "]"

    def word(self, *letters) -> Key:
        return tuple(letters)


def bar(a: DgAlgebra, cutoff: Optional[int] = None) -> BarConstruction:
    return BarConstruction(a, cutoff)


def bar_map(f: AlgebraMorphism, source: Optional[BarConstruction] = None, target: Optional[BarConstruction] = None) -> GradedMap:
    """``Bf[a1|...|ap] = [f a1|...|f ap]``."""
    source = source or BarConstruction(f.source)
    target = target or BarConstruction(f.target)
    ring = target.ring

    def func(w):
        acc: Dict[Tuple, object] = {(): 1}
        for x in w:
            img = f.on_basis(x)
            nxt = {}
            for pre, c in acc.items():
                for y, e in img.items():
                    v = ring.norm(nxt.get(pre + (y,), 0) + c * e)
                    if v:
                        nxt[pre + (y,)] = v
                    else:
                        nxt.pop(pre + (y,), None)
            acc = nxt
            if not acc:
                break
        return acc

    return GradedMap(source, target, 0, func, f"B{f.name}")


class CobarConstruction(DgAlgebra):
    """Cobar construction of a coaugmented coalgebra with reduced part in degrees >= 1."""

    def __init__(self, c: DgCoalgebra, cutoff: Optional[int] = None):
        if c.unit_key is None or c.basis(0) != [c.unit_key]:
            raise NotCocomplete("cobar needs a connected coaugmented coalgebra")
        self.c = c
        self.ring = c.ring
        self.cutoff = c.cutoff if cutoff is None else cutoff
        self.limit = None
        self.unit_key = ()

    def _enumerate(self, n):
        c = self.c
        if n == 0:
            return [()]
        out = []
        for m in range(2, n + 1):
            letters = c.reduced_basis(m - 1)
            if not letters:
                continue
            for rest in self.basis(n - m):
                for x in letters:
                    out.append((x,) + rest)
        out.sort(key=lambda w: (len(w), tuple(_letter_sort_key(c, x) for x in w)))
        return out

    def degree(self, w):
        c = self.c
        return sum(c.degree(x) + 1 for x in w)

    def _delta_letter(self, x) -> Element:
        c = self.c
        ring = self.ring
        out: Element = {}
        for y, v in c.d(x).items():
            vec_axpy(out, -v, {(y,): 1}, ring)
        for (x1, x2), v in c.reduced_comult(x).items():
            vec_axpy(out, sign(c.degree(x1)) * v, {(x1, x2): 1}, ring)
        return out

    def d(self, w):
        c = self.c
        ring = self.ring
        out: Element = {}
        e = 0
        for i, x in enumerate(w):
            s = sign(e)
            for mid, v in self._delta_letter(x).items():
                vec_axpy(out, s * v, {w[:i] + mid + w[i + 1:]: 1}, ring)
            e += c.degree(x) + 1
        return out

    def mul(self, a, b):
        return {a + b: 1}

    def key_name(self, w):
        return "<" + ";".join(self.c.key_name(x) for x in w) + ">"


def cobar(c: DgCoalgebra, cutoff: Optional[int] = None) -> CobarConstruction:
    return CobarConstruction(c, cutoff)


def cobar_map(g: GradedMap, source: Optional[CobarConstruction] = None, target: Optional[CobarConstruction] = None) -> AlgebraMorphism:
    """``Omega g<c1;...;cl> = <g c1;...;g cl>`` for a coaugmentation-preserving DGC map."""
    source = source or CobarConstruction(g.source)
    target = target or CobarConstruction(g.target)
    ring = target.ring
    unit = g.target.unit_key

    def func(w):
        acc: Dict[Tuple, object] = {(): 1}
        for x in w:
            img = {k: v for k, v in g.on_basis(x).items() if k != unit}
            nxt: Dict[Tuple, object] = {}
            for pre, c in acc.items():
                for y, e in img.items():
                    vec_axpy(nxt, c * e, {pre + (y,): 1}, ring)
            acc = nxt
            if not acc:
                break
        return acc

    return AlgebraMorphism(source, target, func, f"Omega{g.name}")


# ---------------------------------------------------------------------------
# twisting cochains


@dataclass
class TwistingCochain:
    """A degree +1 map ``t: C -> A`` with ``eps t = 0``, ``t eta = 0`` and ``d(t) = t u t``."""

    source: DgCoalgebra
    target: DgAlgebra
    map: GradedMap

    def __call__(self, elem):
        return self.map(elem)

    def on_basis(self, key):
        return self.map.on_basis(key)

    def check(self, top: Optional[int] = None) -> HomotopyReport:
        c, a, t = self.source, self.target, self.map
        top = c.cutoff if top is None else top
        failures = []
        for n in range(top + 1):
            bad = next((k for k in c.basis(n) if a.augment(t.on_basis(k))), None)
            if bad is not None:
                failures.append(("counit", bad))
                break
        if c.unit_key is not None and t.on_basis(c.unit_key):
            failures.append(("unit", c.unit_key))
        lhs = hom_differential(t, c, a)
        rhs = cup(t, t, c, a)
        for n in range(top + 1):
            bad = next((k for k in c.basis(n) if lhs.on_basis(k) != rhs.on_basis(k)), None)
            if bad is not None:
                failures.append(("maurer-cartan", bad))
                break
        return HomotopyReport(not failures, failures)


def bar_twisting_cochain(b: BarConstruction) -> TwistingCochain:
    """``t^A: BA -> A``, nonzero only on words of length one."""
    m = GradedMap(b, b.a, 1, lambda w: {w[0]: 1} if len(w) == 1 else {}, "tA")
    return TwistingCochain(b, b.a, m)


def cobar_twisting_cochain(o: CobarConstruction) -> TwistingCochain:
    """``t_C: C -> Omega C``, ``c -> <c>`` on the reduced part."""
    c = o.c
    m = GradedMap(c, o, 1, lambda k: {} if k == c.unit_key else {(k,): 1}, "tC")
    return TwistingCochain(c, o, m)


def iterated_reduced_diagonal(c: DgCoalgebra, key: Key, memo: Optional[dict] = None) -> Dict[Tuple, object]:
    """All terms of every iterated reduced diagonal of ``key`` as tuples of basis keys."""
    memo = {} if memo is None else memo
    got = memo.get(key)
    if got is not None:
        return got
    c.coaug_index(key)  # raises NotCocomplete without a witness
    ring = c.ring
    out: Dict[Tuple, object] = {}
    if key == c.unit_key:
        memo[key] = out
        return out
    out[(key,)] = 1
    for (x1, x2), v in c.reduced_comult(key).items():
        for tail, w in iterated_reduced_diagonal(c, x2, memo).items():
            vec_axpy(out, v * w, {(x1,) + tail: 1}, ring)
    memo[key] = out
    return out


def lift_to_bar(t: TwistingCochain, target: Optional[BarConstruction] = None) -> GradedMap:
    """The DGC map ``g_t: C -> BA`` with ``t^A g_t = t``."""
    c, a = t.source, t.target
    target = target or BarConstruction(a)
    ring = a.ring
    memo: dict = {}

    def func(key):
        out: Element = {}
        eps = c.counit(key)
        if eps:
            out[()] = eps
        for parts, v in iterated_reduced_diagonal(c, key, memo).items():
            acc: Dict[Tuple, object] = {(): v}
            for x in parts:
                img = t.on_basis(x)
                nxt: Dict[Tuple, object] = {}
                for pre, u in acc.items():
                    for y, e in img.items():
                        vec_axpy(nxt, u * e, {pre + (y,): 1}, ring)
                acc = nxt
                if not acc:
                    break
            for w, u in acc.items():
                vec_axpy(out, u, {w: 1}, ring)
        return out

    return GradedMap(c, target, 0, func, "g_t")


def extend_from_cobar(t: TwistingCochain, source: Optional[CobarConstruction] = None) -> AlgebraMorphism:
    """The DGA map ``f^t: Omega C -> A`` with ``f^t t_C = t``."""
    c, a = t.source, t.target
    source = source or CobarConstruction(c)

    def func(w):
        out = a.unit_element()
        for x in w:
            out = a.product(out, t.on_basis(x))
            if not out:
                break
        return out

    return AlgebraMorphism(source, a, func, "f^t")


def require_twisting(t: TwistingCochain, top: Optional[int] = None):
    rep = t.check(top)
    if not rep.valid:
        raise InvalidTwistingCochain(f"not a twisting cochain: {rep.failures}")


def adjunction_unit(c: DgCoalgebra, omega: Optional[CobarConstruction] = None, target: Optional[BarConstruction] = None) -> GradedMap:
    """``eta_C: C -> B Omega C``."""
    omega = omega or CobarConstruction(c)
    return lift_to_bar(cobar_twisting_cochain(omega), target or BarConstruction(omega))


def adjunction_counit(a: DgAlgebra, b: Optional[BarConstruction] = None, omega: Optional[CobarConstruction] = None) -> AlgebraMorphism:
    """``eps_A: Omega B A -> A``."""
    b = b or BarConstruction(a)
    return extend_from_cobar(bar_twisting_cochain(b), omega or CobarConstruction(b))


def dgc_map_failure(g: GradedMap, top: Optional[int] = None):
    """First failing DGC-map axiom as ``(name, witness)`` or ``None``."""
    c, e = g.source, g.target
    top = c.cutoff if top is None else top
    ring = e.ring
    for n in range(top + 1):
        for k in c.basis(n):
            img = g.on_basis(k)
            if ring.norm(e.counit_elem(img) - c.counit(k)):
                return ("counit", k)
            if e.d_elem(img) != g(c.d(k)):
                return ("chain", k)
            lhs: Element = {}
            for t, v in img.items():
                vec_axpy(lhs, v, e.comult(t), ring)
            rhs: Element = {}
            for (x, y), v in c.comult(k).items():
                gx = g.on_basis(x)
                if not gx:
                    continue
                gy = g.on_basis(y)
                for a_, u in gx.items():
                    for b_, w in gy.items():
                        vec_axpy(rhs, v * u * w, {(a_, b_): 1}, ring)
            if lhs != rhs:
                return ("comultiplicative", k)
    if c.unit_key is not None and g.on_basis(c.unit_key) != {e.unit_key: 1}:
        return ("coaugmentation", c.unit_key)
    return None


# ---------------------------------------------------------------------------
# shuffle maps


def _shuffles(p: int, q: int):
    """Positions of the first word inside an interleaving of lengths p and q."""
    return itertools.combinations(range(p + q), p)


def shuffle_words(w1: Tuple, deg1: List[int], w2: Tuple, deg2: List[int], letter1, letter2):
    """Signed interleavings of two bar words; ``deg`` holds shifted letter degrees."""
    p, q = len(w1), len(w2)
    for pos in _shuffles(p, q):
        pos_set = set(pos)
        out = []
        i = j = 0
        s = 0
        for k in range(p + q):
            if k in pos_set:
                out.append(letter1(w1[i]))
                i += 1
            else:
                # b_j jumps over the letters of w1 not yet placed
                s += deg2[j] * sum(deg1[i:])
                out.append(letter2(w2[j]))
                j += 1
        yield tuple(out), sign(s)


def shuffle_nabla(b1: BarConstruction, b2: BarConstruction, source: Optional[TensorCoalgebra] = None, target: Optional[BarConstruction] = None) -> GradedMap:
    """``nabla: BA1 (x) BA2 -> B(A1 (x) A2)`` by signed shuffles."""
    a1, a2 = b1.a, b2.a
    source = source or TensorCoalgebra(b1, b2)
    target = target or BarConstruction(TensorAlgebra(a1, a2))
    u1, u2 = a1.unit_key, a2.unit_key
    ring = target.ring

    def func(key):
        w1, w2 = key
        d1 = [a1.degree(x) - 1 for x in w1]
        d2 = [a2.degree(x) - 1 for x in w2]
        out: Element = {}
        for w, s in shuffle_words(w1, d1, w2, d2, lambda x: (x, u2), lambda y: (u1, y)):
            vec_axpy(out, s, {w: 1}, ring)
        return out

    return GradedMap(source, target, 0, func, "nabla")


def nabla_twisting_cochain(src: TensorCoalgebra, target: TensorAlgebra) -> TwistingCochain:
    """``t^{A1} (x) eta eps + eta eps (x) t^{A2}`` on ``BA1 (x) BA2``."""
    u1, u2 = target.a.unit_key, target.b.unit_key

    def func(key):
        w1, w2 = key
        if len(w1) == 1 and w2 == ():
            return {(w1[0], u2): 1}
        if w1 == () and len(w2) == 1:
            return {(u1, w2[0]): 1}
        return {}

    return TwistingCochain(src, target, GradedMap(src, target, 1, func, "tau"))


def shuffle_gamma(c1: DgCoalgebra, c2: DgCoalgebra, source: Optional[CobarConstruction] = None, target: Optional[TensorAlgebra] = None) -> AlgebraMorphism:
    """``gamma: Omega(C1 (x) C2) -> Omega C1 (x) Omega C2``."""
    source = source or CobarConstruction(TensorCoalgebra(c1, c2))
    target = target or TensorAlgebra(CobarConstruction(c1), CobarConstruction(c2))
    return extend_from_cobar(gamma_twisting_cochain(source.c, target), source)


def gamma_twisting_cochain(src: TensorCoalgebra, target: TensorAlgebra) -> TwistingCochain:
    c1, c2 = src.a, src.b

    def func(key):
        x, y = key
        if y == c2.unit_key and x != c1.unit_key:
            return {((x,), ()): 1}
        if x == c1.unit_key and y != c2.unit_key:
            return {((), (y,)): 1}
        return {}

    return TwistingCochain(src, target, GradedMap(src, target, 1, func, "tau'"))


def shc_structure_cdga(a: DgAlgebra, source: Optional[BarConstruction] = None, target: Optional[BarConstruction] = None, top: Optional[int] = None) -> GradedMap:
    """``Phi = B mu: B(A (x) A) -> BA`` for a strictly commutative ``A``."""
    bad = a.commutativity_failure(top)
    if bad is not None:
        raise NotCommutative(f"{a.key_name(bad[0])} and {a.key_name(bad[1])} do not graded-commute")
    source = source or BarConstruction(TensorAlgebra(a, a))
    target = target or BarConstruction(a)
    mu = multiplication_morphism(a, source.a)
    phi = bar_map(mu, source, target)
    phi.name = "Phi"
    return phi
