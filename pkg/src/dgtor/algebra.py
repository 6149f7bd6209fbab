"""Augmented DG algebras, coaugmented DG coalgebras, free graded-commutative
algebras, morphisms between them, and validity checks for homotopies.

Algebras and coalgebras are :class:`~dgtor.graded.ChainComplex` objects with
extra structure evaluated on basis keys: ``mul(k1, k2)`` and
``comult(k) -> {(k1, k2): c}``.  A basis is *adapted* when the unit is a basis
key and every other key lies in the augmentation ideal; every construction in
this package produces adapted bases except the interval algebra.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exceptions import (
    CutoffMismatch,
    CutoffTooSmall,
    DegreeMismatch,
    NotAChainMap,
    NotCocomplete,
    NotOneConnected,
    ParseError,
)
from .graded import ChainComplex, Element, GradedBasis, GradedMap, Key, TensorModule, sign
from .linalg import CoefficientRing, vec_axpy


class DgAlgebra(ChainComplex):
    """Base class: subclasses provide ``mul``, ``unit_key`` and ``augmentation``."""

    unit_key: Optional[Key] = None
    augmented: bool = True

    def mul(self, a: Key, b: Key) -> Element:
        raise NotImplementedError

    def d(self, key: Key) -> Element:
        return {}

    def unit_element(self) -> Element:
        return {self.unit_key: 1}

    def augmentation(self, key: Key):
        return 1 if key == self.unit_key else 0

    def augment(self, elem: Mapping):
        return self.ring.norm(sum(c * self.augmentation(k) for k, c in elem.items()))

    def product(self, x: Mapping, y: Mapping) -> Element:
        acc: Element = {}
        ring = self.ring
        for a, c in x.items():
            for b, e in y.items():
                vec_axpy(acc, c * e, self.mul(a, b), ring)
        return acc

    def power(self, x: Mapping, n: int) -> Element:
        out = self.unit_element()
        for _ in range(n):
            out = self.product(out, x)
        return out

    def reduced_basis(self, n: int) -> List[Key]:
        return [k for k in self.basis(n) if k != self.unit_key]

    def key_name(self, key: Key) -> str:
        return str(key)

    def format(self, elem: Mapping) -> str:
        return format_element(elem, self.key_name)

    # structure checks ------------------------------------------------------

    def is_connected(self) -> bool:
        return self.unit_key is not None and self.basis(0) == [self.unit_key]

    def require_one_connected(self):
        if not self.is_connected():
            raise NotOneConnected("degree-0 part is not the ground ring")
        if self.basis(1):
            raise NotOneConnected("augmentation ideal has elements in degree 1")

    def check_axioms(self, top: Optional[int] = None):
        """First failing axiom as ``(name, witness)`` or ``None``."""
        top = self.cutoff if top is None else top
        ring = self.ring
        unit = self.unit_element()
        keys = [(n, k) for n in range(top + 1) for k in self.basis(n)]
        for n, k in keys:
            if self.product(unit, {k: 1}) != {k: 1} or self.product({k: 1}, unit) != {k: 1}:
                return ("unit", k)
            if self.d_elem(self.d(k)):
                return ("d^2", k)
        for n, a in keys:
            for m, b in keys:
                if n + m > top:
                    continue
                ab = self.mul(a, b)
                if self.augmented:
                    if ring.norm(self.augment(ab) - self.augmentation(a) * self.augmentation(b)):
                        return ("augmentation", (a, b))
                lhs = self.d_elem(ab)
                rhs = self.product(self.d(a), {b: 1})
                vec_axpy(rhs, sign(n), self.product({a: 1}, self.d(b)), ring)
                if lhs != rhs:
                    return ("leibniz", (a, b))
                for l, c in keys:
                    if n + m + l > top:
                        continue
                    if self.product(ab, {c: 1}) != self.product({a: 1}, self.mul(b, c)):
                        return ("associativity", (a, b, c))
        return None

    def commutativity_failure(self, top: Optional[int] = None):
        top = self.cutoff if top is None else top
        for n in range(top + 1):
            for a in self.basis(n):
                for m in range(top + 1 - n):
                    for b in self.basis(m):
                        ba = {k: self.ring.norm(sign(n * m) * c) for k, c in self.mul(b, a).items()}
                        if self.mul(a, b) != ba:
                            return (a, b)
        return None

    def is_commutative(self, top: Optional[int] = None) -> bool:
        return self.commutativity_failure(top) is None


class DgCoalgebra(ChainComplex):
    """Base class: subclasses provide ``comult``, ``unit_key`` and ``coaug_index``."""

    unit_key: Optional[Key] = None

    def comult(self, key: Key) -> Dict[Tuple[Key, Key], object]:
        raise NotImplementedError

    def d(self, key: Key) -> Element:
        return {}

    def counit(self, key: Key):
        return 1 if key == self.unit_key else 0

    def counit_elem(self, elem: Mapping):
        return self.ring.norm(sum(c * self.counit(k) for k, c in elem.items()))

    def reduced_comult(self, key: Key) -> Dict[Tuple[Key, Key], object]:
        u = self.unit_key
        return {(a, b): c for (a, b), c in self.comult(key).items() if a != u and b != u}

    def coaug_index(self, key: Key) -> int:
        """Least ``n`` such that the ``n``-fold reduced diagonal kills ``key``."""
        raise NotCocomplete(f"{type(self).__name__} has no cocompleteness witness")

    def reduced_basis(self, n: int) -> List[Key]:
        return [k for k in self.basis(n) if k != self.unit_key]

    def key_name(self, key: Key) -> str:
        return str(key)

    def check_axioms(self, top: Optional[int] = None):
        top = self.cutoff if top is None else top
        ring = self.ring
        for n in range(top + 1):
            for k in self.basis(n):
                if self.d_elem(self.d(k)):
                    return ("d^2", k)
                delta = self.comult(k)
                left: Element = {}
                right: Element = {}
                for (a, b), c in delta.items():
                    vec_axpy(left, c * self.counit(a), {b: 1}, ring)
                    vec_axpy(right, c * self.counit(b), {a: 1}, ring)
                if left != {k: 1} or right != {k: 1}:
                    return ("counit", k)
                # coassociativity
                lhs: Element = {}
                rhs: Element = {}
                for (a, b), c in delta.items():
                    for (a1, a2), e in self.comult(a).items():
                        vec_axpy(lhs, c * e, {(a1, a2, b): 1}, ring)
                    for (b1, b2), e in self.comult(b).items():
                        vec_axpy(rhs, c * e, {(a, b1, b2): 1}, ring)
                if lhs != rhs:
                    return ("coassociativity", k)
                # coderivation: delta d = (d (x) 1 + 1 (x) d) delta
                lhs = {}
                for t, c in self.d(k).items():
                    vec_axpy(lhs, c, self.comult(t), ring)
                rhs = {}
                for (a, b), c in delta.items():
                    for a2, e in self.d(a).items():
                        vec_axpy(rhs, c * e, {(a2, b): 1}, ring)
                    s = sign(self.degree(a))
                    for b2, e in self.d(b).items():
                        vec_axpy(rhs, s * c * e, {(a, b2): 1}, ring)
                if lhs != rhs:
                    return ("coderivation", k)
        return None


def format_element(elem: Mapping, name=str) -> str:
    if not elem:
        return "0"
    parts = []
    for k, c in elem.items():
        label = name(k)
        if label == "1":
            parts.append(f"{c}")
        elif c == 1:
            parts.append(label)
        elif c == -1:
            parts.append(f"-{label}")
        else:
            parts.append(f"{c}*{label}")
    return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# explicit finite algebras


class ExplicitDga(DgAlgebra):
    """A finite DGA given by tables over a named basis.

    ``mult`` maps ``(a, b)`` to ``{c: coeff}``; pairs missing from the table
    multiply to zero.  ``unit`` is a basis name or an element dict.
    """

    def __init__(self, basis: GradedBasis, ring: CoefficientRing, mult: Mapping, unit, differential: Optional[Mapping] = None, augmentation: Optional[Mapping] = None):
        self.gb = basis
        self.ring = ring
        self.cutoff = basis.cutoff
        self.limit = None
        self._deg = dict(basis.elements)
        self._mult = {k: {t: ring(c) for t, c in v.items() if ring(c)} for k, v in mult.items()}
        self._d = {k: {t: ring(c) for t, c in v.items() if ring(c)} for k, v in (differential or {}).items()}
        if isinstance(unit, str):
            self.unit_key = unit
            self._unit = {unit: 1}
        else:
            self.unit_key = None
            self._unit = {k: ring(c) for k, c in unit.items()}
        if augmentation is None and self.unit_key is None:
            self.augmented = False
            self._aug = None
        else:
            self._aug = dict(augmentation) if augmentation is not None else None

    def _enumerate(self, n):
        return self.gb.in_degree(n) if n <= self.cutoff else []

    def degree(self, key):
        return self._deg[key]

    def mul(self, a, b):
        if a == self.unit_key:
            return {b: 1}
        if b == self.unit_key:
            return {a: 1}
        return dict(self._mult.get((a, b), {}))

    def d(self, key):
        return dict(self._d.get(key, {}))

    def unit_element(self):
        return dict(self._unit)

    def augmentation(self, key):
        if self._aug is None:
            if not self.augmented:
                raise ValueError("algebra is not augmented")
            return super().augmentation(key)
        return self._aug.get(key, 0)

    def key_name(self, key):
        return str(key)


def ground_algebra(ring: CoefficientRing, cutoff: int) -> "FreeGca":
    """The ground ring as a free GCA on no generators."""
    return FreeGca([], ring, cutoff)


# ---------------------------------------------------------------------------
# free graded-commutative algebras


@dataclass(frozen=True)
class FreeGcaPresentation:
    """Generators ``(name, degree)``; ``polynomial`` lists odd generators allowed
    nonzero squares (characteristic 2 only); ``exterior`` lists even generators
    forced to square zero (characteristic 2 only)."""

    generators: Tuple[Tuple[str, int], ...]
    ring: CoefficientRing
    cutoff: int
    polynomial: Tuple[str, ...] = ()
    exterior: Tuple[str, ...] = ()


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class FreeGca(DgAlgebra):
    """Free graded-commutative algebra on named generators.

    Basis keys are exponent tuples.  Even generators are polynomial and odd
    ones exterior, except for the characteristic-2 overrides.  An optional
    ``differential`` (generator name -> expression) is extended as a
    derivation; it is the caller's job to make it square to zero.
    """

    def __init__(self, generators: Sequence[Tuple[str, int]], ring: CoefficientRing, cutoff: int,
                 polynomial: Iterable[str] = (), exterior: Iterable[str] = (), differential: Optional[Mapping[str, object]] = None):
        self.ring = ring
        self.cutoff = cutoff
        self.limit = None
        self.names = [str(n) for n, _ in generators]
        self.gdeg = [int(d) for _, d in generators]
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")
        for n, d in zip(self.names, self.gdeg):
            if not _NAME.match(n):
                raise ValueError(f"bad generator name {n!r}")
            if d < 1:
                raise ValueError(f"generator {n} must have degree >= 1")
        if self.gdeg and cutoff < max(self.gdeg):
            raise CutoffTooSmall(f"cutoff {cutoff} is below the largest generator degree {max(self.gdeg)}")
        polynomial, exterior = set(polynomial), set(exterior)
        if (polynomial or exterior) and ring.characteristic != 2:
            raise ValueError("square overrides are only meaningful in characteristic 2")
        self.polynomial = tuple(n for n in self.names if n in polynomial)
        self.exterior = tuple(n for n in self.names if n in exterior)
        self.is_ext = [
            (d % 2 == 1 and n not in polynomial) or n in exterior for n, d in zip(self.names, self.gdeg)
        ]
        self.odd = [d % 2 == 1 for d in self.gdeg]
        self.ngens = len(self.names)
        self.unit_key = (0,) * self.ngens
        self._gen_index = {n: i for i, n in enumerate(self.names)}
        self._dmemo: Dict[Key, Element] = {}
        self._degmemo: Dict[Key, int] = {}
        self._mulmemo: Dict[Tuple[Key, Key], Element] = {}
        self._dgen: Optional[List[Element]] = None
        self._dspec = dict(differential or {})
        for n in self._dspec:
            if n not in self._gen_index:
                raise ValueError(f"differential given for unknown generator {n}")

    @classmethod
    def from_presentation(cls, p: FreeGcaPresentation) -> "FreeGca":
        return cls(p.generators, p.ring, p.cutoff, p.polynomial, p.exterior)

    @property
    def presentation(self) -> FreeGcaPresentation:
        return FreeGcaPresentation(tuple(zip(self.names, self.gdeg)), self.ring, self.cutoff, self.polynomial, self.exterior)

    @property
    def generators(self) -> List[Tuple[str, int]]:
        return list(zip(self.names, self.gdeg))

    def with_cutoff(self, cutoff: int) -> "FreeGca":
        return FreeGca(self.generators, self.ring, cutoff, self.polynomial, self.exterior, self._dspec)

    def with_ring(self, ring: CoefficientRing) -> "FreeGca":
        return FreeGca(self.generators, ring, self.cutoff, self.polynomial if ring.characteristic == 2 else (),
                       self.exterior if ring.characteristic == 2 else (), self._dspec)

    def gen(self, name: str) -> Key:
        i = self._gen_index[name]
        return tuple(1 if j == i else 0 for j in range(self.ngens))

    def gen_element(self, name: str) -> Element:
        return {self.gen(name): 1}

    def _enumerate(self, n):
        out: List[Tuple[int, ...]] = []
        gdeg, is_ext, ng = self.gdeg, self.is_ext, self.ngens
        exps = [0] * ng

        def rec(i, rem):
            if i == ng:
                if rem == 0:
                    out.append(tuple(exps))
                return
            d = gdeg[i]
            top = rem // d
            if is_ext[i]:
                top = min(top, 1)
            for e in range(top, -1, -1):
                exps[i] = e
                rec(i + 1, rem - e * d)
            exps[i] = 0

        rec(0, n)
        return out

    def degree(self, key):
        got = self._degmemo.get(key)
        if got is None:
            got = self._degmemo[key] = sum(e * d for e, d in zip(key, self.gdeg))
        return got

    def mul(self, a, b):
        got = self._mulmemo.get((a, b))
        if got is None:
            got = self._mulmemo[(a, b)] = self._mul(a, b)
        return got

    def _mul(self, a, b):
        s = 0
        odd, is_ext = self.odd, self.is_ext
        out = []
        odd_a_after = 0  # number of odd letters of a strictly after position j
        for i in range(self.ngens - 1, -1, -1):
            ai, bi = a[i], b[i]
            if is_ext[i] and ai and bi:
                return {}
            if odd[i]:
                if bi:
                    s += bi * odd_a_after
                odd_a_after += ai
            out.append(ai + bi)
        c = self.ring.norm(-1 if s & 1 else 1)
        return {tuple(reversed(out)): c} if c else {}

    def _gen_differentials(self) -> List[Element]:
        if self._dgen is None:
            self._dgen = [{} for _ in range(self.ngens)]
            for name, expr in self._dspec.items():
                i = self._gen_index[name]
                val = parse_polynomial(expr, self) if isinstance(expr, str) else dict(expr)
                for k in val:
                    if self.degree(k) != self.gdeg[i] + 1:
                        raise DegreeMismatch(f"d({name}) must have degree {self.gdeg[i] + 1}")
                self._dgen[i] = val
        return self._dgen

    def d(self, key):
        if not self._dspec:
            return {}
        got = self._dmemo.get(key)
        if got is not None:
            return got
        dg = self._gen_differentials()
        i = next((j for j, e in enumerate(key) if e), None)
        if i is None:
            out = {}
        else:
            g = tuple(1 if j == i else 0 for j in range(self.ngens))
            rest = tuple(e - (1 if j == i else 0) for j, e in enumerate(key))
            # key = g * rest with no sign since g is the first letter
            out = self.product(dg[i], {rest: 1})
            vec_axpy(out, sign(self.gdeg[i]), self.product({g: 1}, self.d(rest)), self.ring)
        self._dmemo[key] = out
        return out

    @property
    def has_differential(self) -> bool:
        return any(self._gen_differentials())

    def key_name(self, key):
        parts = []
        for n, e in zip(self.names, key):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) if parts else "1"

    def monomial(self, **exps) -> Key:
        return tuple(exps.get(n, 0) for n in self.names)


def build_free_gca(p: FreeGcaPresentation) -> FreeGca:
    return FreeGca.from_presentation(p)


# ---------------------------------------------------------------------------
# polynomial expressions

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokens(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", int(num), start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            if op not in "+-*^()":
                raise ParseError(f"unexpected character {op!r} at column {start + 1}", [(0, f"column {start + 1}: unexpected {op!r}")])
            out.append((op, op, start))
        pos = m.end()
    return out


def parse_polynomial(text: str, alg: FreeGca) -> Element:
    """Evaluate an expression like ``-6*t^2 + x*y`` inside ``alg``."""
    toks = _tokens(str(text))
    if not toks:
        raise ParseError("empty expression")
    pos = 0
    ring = alg.ring

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def take(kind=None):
        nonlocal pos
        if pos >= len(toks):
            raise ParseError(f"unexpected end of expression {text!r}")
        t = toks[pos]
        if kind is not None and t[0] != kind:
            raise ParseError(f"expected {kind!r} at column {t[2] + 1} in {text!r}")
        pos += 1
        return t

    def expr():
        negate = False
        if peek() in ("+", "-"):
            negate = take()[0] == "-"
        acc = term()
        if negate:
            acc = {k: ring.norm(-c) for k, c in acc.items()}
        while peek() in ("+", "-"):
            op = take()[0]
            vec_axpy(acc, 1 if op == "+" else -1, term(), ring)
        return acc

    def term():
        acc = factor()
        while peek() == "*":
            take()
            acc = alg.product(acc, factor())
        return acc

    def factor():
        base = atom()
        if peek() == "^":
            take()
            n = take("num")[1]
            return alg.power(base, n)
        return base

    def atom():
        kind, val, col = take()
        if kind == "num":
            c = ring(val)
            return {alg.unit_key: c} if c else {}
        if kind == "name":
            if val not in alg._gen_index:
                raise ParseError(f"unknown generator {val!r} in {text!r}")
            return alg.gen_element(val)
        if kind == "-":
            inner = atom()
            return {k: ring.norm(-c) for k, c in inner.items()}
        if kind == "(":
            inner = expr()
            take(")")
            return inner
        raise ParseError(f"unexpected {val!r} at column {col + 1} in {text!r}")

    out = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input at column {toks[pos][2] + 1} in {text!r}")
    return out


def homogeneous_degree(elem: Mapping, alg) -> Optional[int]:
    degs = {alg.degree(k) for k in elem}
    if len(degs) > 1:
        raise DegreeMismatch(f"expression mixes degrees {sorted(degs)}")
    return degs.pop() if degs else None


# ---------------------------------------------------------------------------
# morphisms


class AlgebraMorphism(GradedMap):
    """A degree-0 map of DGAs."""

    def __init__(self, source: DgAlgebra, target: DgAlgebra, func, name: str = "f"):
        super().__init__(source, target, 0, func, name)

    def compose(self, inner: GradedMap) -> GradedMap:
        if not isinstance(inner, AlgebraMorphism):
            return GradedMap.compose(self, inner)
        return AlgebraMorphism(inner.source, self.target, lambda k: self(inner.on_basis(k)), f"{self.name}.{inner.name}")

    def failure(self, top: Optional[int] = None):
        """First failing axiom as ``(name, witness)`` or ``None``."""
        a, b = self.source, self.target
        top = a.cutoff if top is None else top
        if self(a.unit_element()) != b.unit_element():
            return ("unit", a.unit_key)
        keys = [(n, k) for n in range(top + 1) for k in a.basis(n)]
        for n, k in keys:
            img = self.on_basis(k)
            if getattr(a, "augmented", True) and getattr(b, "augmented", True):
                if b.ring.norm(b.augment(img) - a.augmentation(k)):
                    return ("augmentation", k)
            if b.d_elem(img) != self(a.d(k)):
                return ("chain", k)
        for n, x in keys:
            for m, y in keys:
                if n + m > top:
                    continue
                if self(a.mul(x, y)) != b.product(self.on_basis(x), self.on_basis(y)):
                    return ("multiplicative", (x, y))
        return None

    def is_valid(self, top: Optional[int] = None) -> bool:
        return self.failure(top) is None


def identity_morphism(a: DgAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(a, a, lambda k: {k: 1}, "id")


def unit_morphism(ground: DgAlgebra, a: DgAlgebra) -> AlgebraMorphism:
    """``eta: k -> A`` from a ground algebra."""
    return AlgebraMorphism(ground, a, lambda k: a.unit_element() if k == ground.unit_key else {}, "eta")


def augmentation_morphism(a: DgAlgebra, ground: DgAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(a, ground, lambda k: {ground.unit_key: 1} if a.augmentation(k) else {}, "eps")


def morphism_from_images(source: FreeGca, target: DgAlgebra, images: Mapping[str, Mapping], name: str = "f", check: bool = True) -> AlgebraMorphism:
    """Multiplicative extension of generator images from a free GCA."""
    imgs: List[Element] = []
    for n, d in source.generators:
        img = dict(images.get(n, {}))
        for k in img:
            if target.degree(k) != d:
                raise DegreeMismatch(f"image of {n} has degree {target.degree(k)}, expected {d}")
        imgs.append(img)
    ring = target.ring

    def func(key):
        i = next((j for j, e in enumerate(key) if e), None)
        if i is None:
            return target.unit_element()
        rest = tuple(e - (1 if j == i else 0) for j, e in enumerate(key))
        return target.product(imgs[i], f.on_basis(rest))

    f = AlgebraMorphism(source, target, func, name)
    f.generator_images = {n: img for (n, _), img in zip(source.generators, imgs)}
    if check:
        for (n, d), img, ext in zip(source.generators, imgs, source.is_ext):
            g = source.gen(n)
            if target.d_elem(img) != f(source.d(g)):
                raise NotAChainMap(f"d(f({n})) != f(d({n}))")
            if ext and target.product(img, img):
                raise NotAChainMap(f"image of the exterior generator {n} does not square to zero")
        sq = _commutation_failure(source, target, imgs)
        if sq is not None:
            raise NotAChainMap(f"images of {sq[0]} and {sq[1]} do not graded-commute, so the extension is not multiplicative")
    return f


def _commutation_failure(source: FreeGca, target: DgAlgebra, imgs: List[Element]):
    for i in range(source.ngens):
        for j in range(i + 1, source.ngens):
            ab = target.product(imgs[i], imgs[j])
            ba = target.product(imgs[j], imgs[i])
            s = sign(source.gdeg[i] * source.gdeg[j])
            diff = dict(ab)
            vec_axpy(diff, -s, ba, target.ring)
            if diff:
                return (source.names[i], source.names[j])
    return None


def evaluate_morphism(images: Mapping[str, str], source: FreeGca, target: FreeGca, name: str = "f") -> AlgebraMorphism:
    """Morphism from textual generator images such as ``{"c2": "-6*t^2"}``."""
    parsed = {}
    for n, d in source.generators:
        text = images.get(n, "0")
        val = parse_polynomial(text, target)
        deg = homogeneous_degree(val, target)
        if deg is not None and deg != d:
            raise DegreeMismatch(f"image of {n} has degree {deg}, expected {d}")
        parsed[n] = val
    unknown = set(images) - set(source.names)
    if unknown:
        raise ValueError(f"images given for unknown generators {sorted(unknown)}")
    return morphism_from_images(source, target, parsed, name)


# ---------------------------------------------------------------------------
# tensor products of algebras and coalgebras


class TensorAlgebra(DgAlgebra, TensorModule):
    """``A (x) B`` with ``(a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb'``."""

    def __init__(self, a: DgAlgebra, b: DgAlgebra, check_cutoff: bool = True):
        TensorModule.__init__(self, a, b, check_cutoff)
        self.unit_key = (a.unit_key, b.unit_key) if a.unit_key is not None and b.unit_key is not None else None
        self.augmented = getattr(a, "augmented", True) and getattr(b, "augmented", True)

    d = TensorModule.d

    def unit_element(self):
        out = {}
        for x, c in self.a.unit_element().items():
            for y, e in self.b.unit_element().items():
                out[(x, y)] = self.ring.norm(c * e)
        return out

    def augmentation(self, key):
        return self.a.augmentation(key[0]) * self.b.augmentation(key[1])

    def mul(self, k1, k2):
        (a1, b1), (a2, b2) = k1, k2
        pa = self.a.mul(a1, a2)
        if not pa:
            return {}
        pb = self.b.mul(b1, b2)
        if not pb:
            return {}
        s = sign(self.b.degree(b1) * self.a.degree(a2))
        ring = self.ring
        out = {}
        for x, c in pa.items():
            for y, e in pb.items():
                v = ring.norm(s * c * e)
                if v:
                    out[(x, y)] = v
        return out

    def key_name(self, key):
        return f"{self.a.key_name(key[0])}(x){self.b.key_name(key[1])}"


def algebra_tensor(a: DgAlgebra, b: DgAlgebra) -> TensorAlgebra:
    if a.ring != b.ring:
        raise ValueError("algebras over different rings")
    return TensorAlgebra(a, b)


def interchange(ab: TensorModule, ba: Optional[TensorModule] = None) -> GradedMap:
    """``chi(a (x) b) = (-1)^{|a||b|} b (x) a``."""
    if ba is None:
        ba = TensorAlgebra(ab.b, ab.a, False) if isinstance(ab, TensorAlgebra) else TensorModule(ab.b, ab.a, False)
    A, B = ab.a, ab.b

    def func(key):
        x, y = key
        return {(y, x): sign(A.degree(x) * B.degree(y))}

    cls = AlgebraMorphism if isinstance(ab, TensorAlgebra) else None
    if cls is not None:
        return AlgebraMorphism(ab, ba, func, "chi")
    return GradedMap(ab, ba, 0, func, "chi")


def tensor_morphism(f: AlgebraMorphism, g: AlgebraMorphism, source: Optional[TensorAlgebra] = None, target: Optional[TensorAlgebra] = None) -> AlgebraMorphism:
    source = source or TensorAlgebra(f.source, g.source, False)
    target = target or TensorAlgebra(f.target, g.target, False)
    ring = target.ring

    def func(key):
        x, y = key
        out = {}
        fx = f.on_basis(x)
        if not fx:
            return out
        for a, c in fx.items():
            for b, e in g.on_basis(y).items():
                vec_axpy(out, c * e, {(a, b): 1}, ring)
        return out

    return AlgebraMorphism(source, target, func, f"{f.name}(x){g.name}")


def multiplication_morphism(a: DgAlgebra, aa: Optional[TensorAlgebra] = None) -> AlgebraMorphism:
    """``mu: A (x) A -> A``; an algebra map exactly when ``A`` is commutative."""
    aa = aa or TensorAlgebra(a, a)
    return AlgebraMorphism(aa, a, lambda k: a.mul(k[0], k[1]), "mu")


class TensorCoalgebra(DgCoalgebra, TensorModule):
    """``C (x) D`` with ``Delta(c (x) d) = sum (-1)^{|d1||c2|} (c1 (x) d1) (x) (c2 (x) d2)``."""

    def __init__(self, c: DgCoalgebra, e: DgCoalgebra, check_cutoff: bool = True):
        TensorModule.__init__(self, c, e, check_cutoff)
        self.unit_key = (c.unit_key, e.unit_key)

    d = TensorModule.d

    def counit(self, key):
        return self.a.counit(key[0]) * self.b.counit(key[1])

    def comult(self, key):
        x, y = key
        ring = self.ring
        out = {}
        dy = self.b.comult(y)
        for (c1, c2), u in self.a.comult(x).items():
            dc2 = self.a.degree(c2)
            for (d1, d2), v in dy.items():
                s = sign(self.b.degree(d1) * dc2)
                k = ((c1, d1), (c2, d2))
                val = ring.norm(out.get(k, 0) + s * u * v)
                if val:
                    out[k] = val
                else:
                    out.pop(k, None)
        return out

    def coaug_index(self, key):
        # a reduced diagonal of length n on c (x) d needs one side nontrivial in each slot
        return self.a.coaug_index(key[0]) + self.b.coaug_index(key[1]) - 1

    def key_name(self, key):
        return f"{self.a.key_name(key[0])}(x){self.b.key_name(key[1])}"


# ---------------------------------------------------------------------------
# homotopies


@dataclass
class HomotopyReport:
    valid: bool
    failures: List[Tuple[str, object]] = field(default_factory=list)

    def __bool__(self):
        return self.valid

    @property
    def failed_axioms(self) -> List[str]:
        return [name for name, _ in self.failures]


@dataclass
class DgaHomotopy:
    """``h: A' -> A`` of degree -1 with ``d(h) = f0 - f1`` and the derivation rule."""

    f0: AlgebraMorphism
    f1: AlgebraMorphism
    h: GradedMap

    @property
    def source(self):
        return self.f0.source

    @property
    def target(self):
        return self.f0.target


def constant_homotopy(f: AlgebraMorphism) -> DgaHomotopy:
    return DgaHomotopy(f, f, GradedMap(f.source, f.target, -1, lambda k: {}, "0"))


def derivation_homotopy(f0: AlgebraMorphism, f1: AlgebraMorphism, values: Mapping[str, Mapping]) -> DgaHomotopy:
    """Extend generator values of ``h`` on a free GCA source by the rule
    ``h(ab) = (-1)^{|a|} f0(a) h(b) + h(a) f1(b)``."""
    src: FreeGca = f0.source
    tgt = f0.target
    vals = [dict(values.get(n, {})) for n in src.names]

    def func(key):
        i = next((j for j, e in enumerate(key) if e), None)
        if i is None:
            return {}
        g = tuple(1 if j == i else 0 for j in range(src.ngens))
        rest = tuple(e - (1 if j == i else 0) for j, e in enumerate(key))
        if not any(rest):
            return vals[i]
        out = tgt.product(f0.on_basis(g), h.on_basis(rest))
        out = {k: tgt.ring.norm(sign(src.gdeg[i]) * c) for k, c in out.items()}
        vec_axpy(out, 1, tgt.product(vals[i], f1.on_basis(rest)), tgt.ring)
        return out

    h = GradedMap(src, tgt, -1, func, "h")
    return DgaHomotopy(f0, f1, h)


def check_homotopy(cand: DgaHomotopy, top: Optional[int] = None, stop_early: bool = True) -> HomotopyReport:
    """Check the four DGA-homotopy axioms on all tracked basis elements."""
    f0, f1, h = cand.f0, cand.f1, cand.h
    a, b = f0.source, f0.target
    top = a.cutoff if top is None else top
    ring = b.ring
    failures = []

    def fail(name, witness):
        failures.append((name, witness))

    keys = [(n, k) for n in range(top + 1) for k in a.basis(n)]
    for n, k in keys:
        if getattr(b, "augmented", True) and b.augment(h.on_basis(k)):
            fail("counit", k)
            break
    if h(a.unit_element()):
        fail("unit", a.unit_key)
    for n, k in keys:
        lhs = b.d_elem(h.on_basis(k))
        vec_axpy(lhs, 1, h(a.d(k)), ring)
        rhs = dict(f0.on_basis(k))
        vec_axpy(rhs, -1, f1.on_basis(k), ring)
        if lhs != rhs:
            fail("differential", k)
            break
    done = False
    for n, x in keys:
        for m, y in keys:
            if n + m > top:
                continue
            lhs = h(a.mul(x, y))
            rhs = b.product(f0.on_basis(x), h.on_basis(y))
            rhs = {t: ring.norm(sign(n) * c) for t, c in rhs.items()}
            vec_axpy(rhs, 1, b.product(h.on_basis(x), f1.on_basis(y)), ring)
            if lhs != rhs:
                fail("leibniz", (x, y))
                done = True
                break
        if done:
            break
    return HomotopyReport(not failures, failures)


def check_dgc_homotopy(j: GradedMap, g0: GradedMap, g1: GradedMap, top: Optional[int] = None) -> HomotopyReport:
    """``j: C -> C'`` of degree -1 with ``d(j) = g1 - g0`` and ``Delta j = (g0 (x) j + j (x) g1) Delta``."""
    c, c2 = j.source, j.target
    top = c.cutoff if top is None else top
    ring = c2.ring
    failures = []
    for n in range(top + 1):
        for k in c.basis(n):
            if c2.counit_elem(j.on_basis(k)):
                failures.append(("counit", k))
                break
        if failures:
            break
    if c.unit_key is not None and j.on_basis(c.unit_key):
        failures.append(("unit", c.unit_key))
    stop = False
    for n in range(top + 1):
        for k in c.basis(n):
            lhs = c2.d_elem(j.on_basis(k))
            vec_axpy(lhs, 1, j(c.d(k)), ring)
            rhs = dict(g1.on_basis(k))
            vec_axpy(rhs, -1, g0.on_basis(k), ring)
            if lhs != rhs:
                failures.append(("differential", k))
                stop = True
                break
        if stop:
            break
    stop = False
    for n in range(top + 1):
        for k in c.basis(n):
            lhs = {}
            for t, v in j.on_basis(k).items():
                vec_axpy(lhs, v, c2.comult(t), ring)
            rhs = {}
            for (x, y), v in c.comult(k).items():
                sx = sign(c.degree(x))  # j has degree -1 and passes x
                for a_, u in g0.on_basis(x).items():
                    for b_, w in j.on_basis(y).items():
                        vec_axpy(rhs, sx * v * u * w, {(a_, b_): 1}, ring)
                for a_, u in j.on_basis(x).items():
                    for b_, w in g1.on_basis(y).items():
                        vec_axpy(rhs, v * u * w, {(a_, b_): 1}, ring)
            if lhs != rhs:
                failures.append(("coleibniz", k))
                stop = True
                break
        if stop:
            break
    return HomotopyReport(not failures, failures)
