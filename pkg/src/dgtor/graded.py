"""Graded modules with explicit bases, homogeneous maps, and chain complexes.

Objects here are lazy: a module knows how to enumerate its basis in any
degree it can reach, and a map knows how to evaluate itself on one basis
element.  Elements are dicts ``{basis key: coefficient}``.  Everything is
cohomologically graded (differentials raise degree by one) and signs follow
the Koszul rule ``(f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y)``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exceptions import CutoffMismatch, CutoffTooSmall, ResourceGuardExceeded
from .linalg import CoefficientRing, ModuleSummary, SparseMatrix, homology_at, vec_axpy, vec_clean

Key = Hashable
Element = Dict[Key, object]

DEFAULT_MAX_CELLS = 5_000_000


def max_cells() -> int:
    raw = os.environ.get("DGTOR_MAX_CELLS")
    if not raw:
        return DEFAULT_MAX_CELLS
    return int(float(raw))


def sign(n: int) -> int:
    return -1 if n & 1 else 1


def add_into(acc: Element, c, elem: Mapping, ring: CoefficientRing) -> Element:
    return vec_axpy(acc, c, elem, ring)


def combine(terms: Iterable[Tuple[object, Mapping]], ring: CoefficientRing) -> Element:
    acc: Element = {}
    for c, elem in terms:
        vec_axpy(acc, c, elem, ring)
    return acc


class GradedModule:
    """A free graded module described by its basis in each degree.

    Subclasses implement :meth:`_enumerate` and :meth:`degree`.  ``cutoff``
    is the top of the tracked window; ``limit`` is the highest degree whose
    basis can be produced exactly (``None`` for unbounded lazy objects).
    """

    ring: CoefficientRing
    cutoff: int
    limit: Optional[int] = None

    def _enumerate(self, n: int) -> List[Key]:
        raise NotImplementedError

    def degree(self, key: Key) -> int:
        raise NotImplementedError

    def basis(self, n: int) -> List[Key]:
        cache = self.__dict__.setdefault("_basis_cache", {})
        got = cache.get(n)
        if got is None:
            if n < 0:
                got = []
            else:
                self.require(n)
                got = self._enumerate(n)
                total = self.__dict__.get("_cells", 0) + len(got)
                if total > max_cells():
                    raise ResourceGuardExceeded(
                        f"{type(self).__name__} would enumerate more than {max_cells()} basis elements"
                    )
                self.__dict__["_cells"] = total
            cache[n] = got
        return got

    def index(self, n: int) -> Dict[Key, int]:
        cache = self.__dict__.setdefault("_index_cache", {})
        got = cache.get(n)
        if got is None:
            got = {k: i for i, k in enumerate(self.basis(n))}
            cache[n] = got
        return got

    def require(self, n: int):
        if self.limit is not None and n > self.limit:
            raise CutoffTooSmall(f"{type(self).__name__} is only known through degree {self.limit}, needed {n}")

    def dims(self, top: Optional[int] = None) -> Tuple[int, ...]:
        top = self.cutoff if top is None else top
        return tuple(len(self.basis(n)) for n in range(top + 1))

    def to_vector(self, elem: Mapping, n: int) -> Dict[int, object]:
        idx = self.index(n)
        return {idx[k]: v for k, v in elem.items()}

    def from_vector(self, vec: Mapping[int, object], n: int) -> Element:
        b = self.basis(n)
        return {b[i]: v for i, v in vec.items()}


@dataclass(frozen=True)
class GradedBasis:
    """Named basis elements with degrees, truncated at ``cutoff``."""

    elements: Tuple[Tuple[str, int], ...]
    cutoff: int

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple((str(n), int(d)) for n, d in self.elements))
        names = [n for n, _ in self.elements]
        if len(set(names)) != len(names):
            raise ValueError("basis names must be unique")
        for n, d in self.elements:
            if d < 0:
                raise ValueError(f"negative degree for {n}")
            if d > self.cutoff:
                raise ValueError(f"{n} has degree {d} above the cutoff {self.cutoff}")

    def degree_of(self, name: str) -> int:
        return dict(self.elements)[name]

    def in_degree(self, n: int) -> List[str]:
        return [name for name, d in self.elements if d == n]


class ExplicitModule(GradedModule):
    """A finite module given by a :class:`GradedBasis`."""

    def __init__(self, basis: GradedBasis, ring: CoefficientRing):
        self.gb = basis
        self.ring = ring
        self.cutoff = basis.cutoff
        self.limit = None  # silently zero above the cutoff
        self._deg = dict(basis.elements)

    def _enumerate(self, n):
        return self.gb.in_degree(n) if n <= self.cutoff else []

    def degree(self, key):
        return self._deg[key]


class ChainComplex(GradedModule):
    """A graded module with a degree +1 differential ``d(key) -> element``."""

    def d(self, key: Key) -> Element:
        raise NotImplementedError

    def d_elem(self, elem: Mapping) -> Element:
        acc: Element = {}
        for k, c in elem.items():
            vec_axpy(acc, c, self.d(k), self.ring)
        return acc

    def differential_block(self, n: int) -> SparseMatrix:
        """Matrix of ``d: C^n -> C^{n+1}``."""
        src = self.basis(n)
        tgt = self.index(n + 1)
        ent = {}
        for j, k in enumerate(src):
            for t, c in self.d(k).items():
                ent[(tgt[t], j)] = c
        return SparseMatrix(len(tgt), len(src), ent)

    @property
    def differential(self) -> "GradedMap":
        return GradedMap(self, self, 1, self.d)


class ExplicitComplex(ChainComplex):
    """A finite complex: named basis plus a table ``{name: {name: coeff}}``."""

    def __init__(self, basis: GradedBasis, differential: Optional[Mapping[str, Mapping[str, object]]] = None, ring=None):
        from .linalg import ZZ

        self.gb = basis
        self.ring = ring or ZZ
        self.cutoff = basis.cutoff
        self.limit = None
        self._deg = dict(basis.elements)
        self._d = {}
        for src, img in (differential or {}).items():
            out = {}
            for tgt, c in img.items():
                c = self.ring(c)
                if c:
                    if self._deg[tgt] != self._deg[src] + 1:
                        raise ValueError(f"d({src}) = ...{tgt} does not raise degree by one")
                    out[tgt] = c
            self._d[src] = out

    def _enumerate(self, n):
        return self.gb.in_degree(n) if n <= self.cutoff else []

    def degree(self, key):
        return self._deg[key]

    def d(self, key):
        return dict(self._d.get(key, {}))


class GradedMap:
    """A homogeneous map of fixed ``degree`` given by its values on basis keys.

    Values are memoised, so expensive recursive definitions (cup powers, bar
    lifts) are evaluated once per basis element.
    """

    def __init__(self, source: GradedModule, target: GradedModule, degree: int, func: Callable[[Key], Mapping], name: str = ""):
        self.source = source
        self.target = target
        self.degree = degree
        self._func = func
        self._memo: Dict[Key, Element] = {}
        self.name = name

    def __repr__(self):
        return f"GradedMap({self.name or '?'}, degree={self.degree})"

    def on_basis(self, key: Key) -> Element:
        got = self._memo.get(key)
        if got is None:
            got = vec_clean(self._func(key), self.target.ring)
            self._memo[key] = got
        return got

    def __call__(self, elem: Mapping) -> Element:
        acc: Element = {}
        ring = self.target.ring
        for k, c in elem.items():
            vec_axpy(acc, c, self.on_basis(k), ring)
        return acc

    def block(self, q: int) -> SparseMatrix:
        """Matrix from the degree-``q`` basis of the source to degree ``q + degree`` of the target."""
        src = self.source.basis(q)
        tgt = self.target.index(q + self.degree)
        ent = {}
        for j, k in enumerate(src):
            for t, c in self.on_basis(k).items():
                ent[(tgt[t], j)] = c
        return SparseMatrix(len(tgt), len(src), ent)

    # algebra of maps -------------------------------------------------------

    def compose(self, inner: "GradedMap") -> "GradedMap":
        """``self o inner``; blocks multiply with no hidden sign."""
        return GradedMap(inner.source, self.target, self.degree + inner.degree, lambda k: self(inner.on_basis(k)), f"{self.name}.{inner.name}")

    def __matmul__(self, inner: "GradedMap") -> "GradedMap":
        return self.compose(inner)

    def _check_same_shape(self, other: "GradedMap"):
        if other.degree != self.degree:
            raise ValueError(f"cannot add maps of degrees {self.degree} and {other.degree}")

    def __add__(self, other: "GradedMap") -> "GradedMap":
        self._check_same_shape(other)
        ring = self.target.ring
        return GradedMap(self.source, self.target, self.degree, lambda k: combine([(1, self.on_basis(k)), (1, other.on_basis(k))], ring), f"({self.name}+{other.name})")

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        self._check_same_shape(other)
        ring = self.target.ring
        return GradedMap(self.source, self.target, self.degree, lambda k: combine([(1, self.on_basis(k)), (-1, other.on_basis(k))], ring), f"({self.name}-{other.name})")

    def scale(self, c) -> "GradedMap":
        ring = self.target.ring
        return GradedMap(self.source, self.target, self.degree, lambda k: combine([(c, self.on_basis(k))], ring), f"{c}*{self.name}")

    def __neg__(self) -> "GradedMap":
        return self.scale(-1)

    def equals(self, other: "GradedMap", top: Optional[int] = None) -> bool:
        return self.first_difference(other, top) is None

    def first_difference(self, other: "GradedMap", top: Optional[int] = None):
        """First tracked basis key on which the two maps differ, or ``None``."""
        if other.degree != self.degree:
            return ("degree", self.degree, other.degree)
        top = self.source.cutoff if top is None else top
        for n in range(top + 1):
            if n + self.degree > self.target.cutoff and self.target.limit is not None:
                continue
            for k in self.source.basis(n):
                if self.on_basis(k) != other.on_basis(k):
                    return k
        return None

    def is_zero(self, top: Optional[int] = None) -> bool:
        return self.first_nonzero(top) is None

    def first_nonzero(self, top: Optional[int] = None):
        top = self.source.cutoff if top is None else top
        for n in range(top + 1):
            for k in self.source.basis(n):
                if self.on_basis(k):
                    return k
        return None


def zero_map(source: GradedModule, target: GradedModule, degree: int) -> GradedMap:
    return GradedMap(source, target, degree, lambda k: {}, "0")


def identity_map(module: GradedModule) -> GradedMap:
    return GradedMap(module, module, 0, lambda k: {k: 1}, "id")


# ---------------------------------------------------------------------------
# tensor products


class TensorModule(ChainComplex):
    """``a (x) b`` with basis pairs ``(x, y)`` and differential ``dx (x) y + (-1)^{|x|} x (x) dy``."""

    def __init__(self, a: GradedModule, b: GradedModule, check_cutoff: bool = True):
        if check_cutoff and a.cutoff != b.cutoff:
            raise CutoffMismatch(f"cutoffs differ: {a.cutoff} vs {b.cutoff}")
        if a.ring != b.ring:
            raise ValueError("tensor factors over different rings")
        self.a, self.b = a, b
        self.ring = a.ring
        self.cutoff = min(a.cutoff, b.cutoff)
        self.limit = _combine_limits(a, b)

    def _enumerate(self, n):
        out = []
        for i in range(n + 1):
            left = self.a.basis(i)
            if not left:
                continue
            right = self.b.basis(n - i)
            for x in left:
                for y in right:
                    out.append((x, y))
        return out

    def require(self, n):
        # each factor is consulted separately through its own basis()
        return None

    def degree(self, key):
        return self.a.degree(key[0]) + self.b.degree(key[1])

    def d(self, key):
        x, y = key
        out: Element = {}
        ring = self.ring
        if isinstance(self.a, ChainComplex):
            for x2, c in self.a.d(x).items():
                out[(x2, y)] = c
        if isinstance(self.b, ChainComplex):
            s = sign(self.a.degree(x))
            for y2, c in self.b.d(y).items():
                k = (x, y2)
                v = ring.norm(out.get(k, 0) + s * c)
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out


def _combine_limits(a, b):
    if a.limit is None and b.limit is None:
        return None
    if a.limit is None:
        return b.limit
    if b.limit is None:
        return a.limit
    return min(a.limit, b.limit)


def tensor(a: GradedModule, b: GradedModule) -> TensorModule:
    """Tensor product of modules or complexes with equal cutoffs."""
    return TensorModule(a, b)


def tensor_maps(f: GradedMap, g: GradedMap, source: Optional[TensorModule] = None, target: Optional[TensorModule] = None) -> GradedMap:
    """``f (x) g`` with the Koszul sign ``(-1)^{|g||x|}``."""
    source = source or TensorModule(f.source, g.source, check_cutoff=False)
    target = target or TensorModule(f.target, g.target, check_cutoff=False)
    ring = target.ring

    def func(key):
        x, y = key
        s = sign(g.degree * f.source.degree(x))
        out: Element = {}
        fx = f.on_basis(x)
        if not fx:
            return out
        gy = g.on_basis(y)
        for a, c in fx.items():
            for b, e in gy.items():
                v = ring.norm(out.get((a, b), 0) + s * c * e)
                if v:
                    out[(a, b)] = v
                else:
                    out.pop((a, b), None)
        return out

    return GradedMap(source, target, f.degree + g.degree, func, f"{f.name}(x){g.name}")


def hom_differential(f: GradedMap, source: Optional[ChainComplex] = None, target: Optional[ChainComplex] = None) -> GradedMap:
    """``d(f) = d_A f - (-1)^{|f|} f d_C``; zero exactly when ``f`` is a cochain map."""
    c = source or f.source
    a = target or f.target
    s = sign(f.degree)
    ring = a.ring

    def func(key):
        acc = a.d_elem(f.on_basis(key))
        vec_axpy(acc, -s, f(c.d(key)), ring)
        return acc

    return GradedMap(c, a, f.degree + 1, func, f"d({f.name})")


def cup(f: GradedMap, g: GradedMap, coalg=None, alg=None) -> GradedMap:
    """Cup product ``mu_A (f (x) g) Delta_C`` on maps from a coalgebra to an algebra."""
    c = coalg or f.source
    a = alg or f.target
    ring = a.ring
    gdeg = g.degree

    def func(key):
        acc: Element = {}
        for (c1, c2), coef in c.comult(key).items():
            fx = f.on_basis(c1)
            if not fx:
                continue
            gy = g.on_basis(c2)
            if not gy:
                continue
            s = coef * sign(gdeg * c.degree(c1))
            for x, u in fx.items():
                for y, v in gy.items():
                    vec_axpy(acc, s * u * v, a.mul(x, y), ring)
        return acc

    return GradedMap(c, a, f.degree + g.degree, func, f"({f.name} u {g.name})")


def complex_homology(c: ChainComplex, ring: Optional[CoefficientRing] = None, top: Optional[int] = None) -> List[ModuleSummary]:
    """Homology of ``c`` in degrees ``0..top`` (default: the cutoff)."""
    ring = ring or c.ring
    top = c.cutoff if top is None else top
    out = []
    prev = SparseMatrix(0, 0)
    for n in range(top + 1):
        d_in = c.differential_block(n - 1) if n > 0 else SparseMatrix(len(c.basis(0)), 0)
        d_out = c.differential_block(n)
        out.append(homology_at(d_in, d_out, ring))
    return out


def check_d_squared(c: ChainComplex, top: Optional[int] = None):
    """First basis key with ``d(d(key)) != 0`` in degrees ``0..top``, or ``None``."""
    top = c.cutoff if top is None else top
    for n in range(top + 1):
        for k in c.basis(n):
            if c.d_elem(c.d(k)):
                return k
    return None
