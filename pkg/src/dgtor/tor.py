"""Differential Tor via the two-sided bar construction.

``B(X, A, Y)`` has basis words ``x (x) [a1|...|ap] (x) y``.  Its differential is

    d(x w y) = dx w y + (-1)^{|x|} x (Dw) y + (-1)^{|x|+|w|} x w dy
               + (-1)^{|x|} x phi_X(a1) [a2|...|ap] y
               - (-1)^{|x|+|w'|} x [a1|...|a_{p-1}] phi_Y(ap) y,      w' = [a1|...|a_{p-1}]

which is the twisted tensor product ``X (x)_t BA (x)_t Y`` for the
tautological twisting cochain.  With zero differentials everywhere the
differential lowers the word length ``p`` and preserves the internal degree
``q``, so homology splits by ``(p, q)``; total degree is ``q - p``.

A :class:`TorSpace` wraps any such complex (or the Koszul complex oracle) and
exposes homology classes per total degree together with coordinates;
:class:`TorMap` is the map induced on those coordinates by a chain map.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (
    AlgebraMorphism,
    DgAlgebra,
    DgaHomotopy,
    FreeGca,
    TensorAlgebra,
    check_homotopy,
    identity_morphism,
    multiplication_morphism,
    tensor_morphism,
)
from .barcobar import BarConstruction, shuffle_words
from .exceptions import (
    CutoffMismatch,
    InvalidHomotopy,
    NotAChainMap,
    NotCommutative,
    NotOneConnected,
    OddGeneratorInBase,
    ResourceGuardExceeded,
    SquaresDoNotCommute,
)
from .graded import ChainComplex, Element, GradedMap, Key, max_cells, sign
from .homotopy import PathAlgebra, right_homotopy, path_object
from .linalg import (
    ZZ,
    CoefficientRing,
    ModuleSummary,
    SparseMatrix,
    homology_at,
    rank,
    smith_normal_form,
    solve,
    vec_axpy,
)


class BigradedComplex(ChainComplex):
    """A complex that may split by ``(p, q)`` with ``d`` lowering ``p``."""

    bigraded: bool = False

    def bidegree(self, key) -> Tuple[int, int]:
        raise NotImplementedError

    def max_length(self, n: int) -> int:
        return n

    def basis_pq(self, p: int, q: int) -> List[Key]:
        raise NotImplementedError

    def index_pq(self, p: int, q: int) -> Dict[Key, int]:
        cache = self.__dict__.setdefault("_pq_index", {})
        got = cache.get((p, q))
        if got is None:
            got = {k: i for i, k in enumerate(self.basis_pq(p, q))}
            cache[(p, q)] = got
        return got

    def block_pq(self, p: int, q: int) -> SparseMatrix:
        """Matrix of ``d: C^{p,q} -> C^{p-1,q}``."""
        cache = self.__dict__.setdefault("_pq_block", {})
        got = cache.get((p, q))
        if got is None:
            src = self.basis_pq(p, q)
            if p == 0:
                got = SparseMatrix(0, len(src))
            else:
                tgt = self.index_pq(p - 1, q)
                ent = {}
                for j, k in enumerate(src):
                    for t, c in self.d(k).items():
                        ent[(tgt[t], j)] = c
                got = SparseMatrix(len(tgt), len(src), ent)
            cache[(p, q)] = got
        return got

    def key_product(self, k1: Key, k2: Key) -> Element:
        raise NotImplementedError


class TwoSidedBar(BigradedComplex):
    """``B(X, A, Y)`` for algebra maps ``phi_X: A -> X`` and ``phi_Y: A -> Y``."""

    def __init__(self, x: DgAlgebra, a: DgAlgebra, y: DgAlgebra, phi_x: AlgebraMorphism, phi_y: AlgebraMorphism,
                 cutoff: Optional[int] = None, check: bool = True):
        a.require_one_connected()
        for name, m in (("left", x), ("right", y)):
            if not m.is_connected():
                raise NotOneConnected(f"{name} algebra is not connected")
        if x.ring != a.ring or y.ring != a.ring:
            raise ValueError("algebras over different rings")
        self.x, self.a, self.y = x, a, y
        self.phi_x, self.phi_y = phi_x, phi_y
        self.ring = a.ring
        self.cutoff = min(x.cutoff, a.cutoff, y.cutoff) if cutoff is None else cutoff
        self.limit = None
        self.bar = BarConstruction(a, self.cutoff)
        self.zero_differential = all(not _has_differential(alg) for alg in (x, a, y))
        self.bigraded = self.zero_differential
        self.unit_key = (x.unit_key, (), y.unit_key)
        self._words: Dict[Tuple[int, int], List[Tuple]] = {}
        if check:
            top = min(self.cutoff + 2, a.cutoff + 2)
            for phi, tgt in ((phi_x, "left"), (phi_y, "right")):
                bad = phi.failure(min(top, phi.source.cutoff))
                if bad is not None:
                    raise NotAChainMap(f"{tgt} structure map fails {bad[0]} at {bad[1]}")

    # enumeration -----------------------------------------------------------

    def words(self, p: int, internal: int) -> List[Tuple]:
        """Bar words of length ``p`` whose letters have degrees summing to ``internal``.

        Generated already sorted by letter (degree, index), lexicographically.
        """
        got = self._words.get((p, internal))
        if got is not None:
            return got
        if p == 0:
            got = [()] if internal == 0 else []
        else:
            got = []
            for m in range(2, internal - 2 * (p - 1) + 1):
                letters = self.a.reduced_basis(m)
                if not letters:
                    continue
                rest = self.words(p - 1, internal - m)
                if not rest:
                    continue
                for l in letters:
                    for r in rest:
                        got.append((l,) + r)
        self._words[(p, internal)] = got
        return got

    def basis_pq(self, p, q):
        cache = self.__dict__.setdefault("_pq_basis", {})
        got = cache.get((p, q))
        if got is not None:
            return got
        out = []
        for i in range(q + 1):
            xs = self.x.basis(i)
            if not xs:
                continue
            for internal in range(2 * p, q - i + 1):
                ws = self.words(p, internal)
                if not ws:
                    continue
                ys = self.y.basis(q - i - internal)
                if not ys:
                    continue
                for xk in xs:
                    for w in ws:
                        for yk in ys:
                            out.append((xk, w, yk))
        total = self.__dict__.get("_pq_cells", 0) + len(out)
        if total > max_cells():
            raise ResourceGuardExceeded(f"two-sided bar would enumerate more than {max_cells()} words")
        self.__dict__["_pq_cells"] = total
        cache[(p, q)] = out
        return out

    def _enumerate(self, n):
        out = []
        for p in range(n + 1):
            out.extend(self.basis_pq(p, n + p))
        return out

    def degree(self, key):
        x, w, y = key
        return self.x.degree(x) + self.bar.degree(w) + self.y.degree(y)

    def bidegree(self, key):
        x, w, y = key
        q = self.x.degree(x) + sum(self.a.degree(l) for l in w) + self.y.degree(y)
        return (len(w), q)

    def key_name(self, key):
        x, w, y = key
        return f"{self.x.key_name(x)}{self.bar.key_name(w)}{self.y.key_name(y)}"

    # differential ----------------------------------------------------------

    def d(self, key):
        x, w, y = key
        X, Y = self.x, self.y
        norm = self.ring.norm
        out: Element = {}

        def add(k, c):
            v = norm(out.get(k, 0) + c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)

        for x2, c in X.d(x).items():
            add((x2, w, y), c)
        degx = X.degree(x)
        sx = -1 if degx & 1 else 1
        for w2, c in self.bar.d(w).items():
            add((x, w2, y), sx * c)
        dy = Y.d(y)
        if dy:
            s = sign(degx + self.bar.degree(w))
            for y2, c in dy.items():
                add((x, w, y2), s * c)
        if w:
            img = self.phi_x.on_basis(w[0])
            if img:
                rest = w[1:]
                for m, c in img.items():
                    for x2, e in X.mul(x, m).items():
                        add((x2, rest, y), sx * c * e)
            img = self.phi_y.on_basis(w[-1])
            if img:
                head = w[:-1]
                s = -sign(degx + self.bar.degree(head))
                for m, c in img.items():
                    for y2, e in Y.mul(m, y).items():
                        add((x, head, y2), s * c * e)
        return out

    # products ----------------------------------------------------------------

    def key_product(self, k1, k2):
        """Shuffle product, defined when ``X``, ``A``, ``Y`` are commutative."""
        (x1, w1, y1), (x2, w2, y2) = k1, k2
        X, A, Y = self.x, self.a, self.y
        px = X.mul(x1, x2)
        if not px:
            return {}
        py = Y.mul(y1, y2)
        if not py:
            return {}
        dw1, dw2 = self.bar.degree(w1), self.bar.degree(w2)
        s0 = sign(X.degree(x2) * (dw1 + Y.degree(y1)) + dw2 * Y.degree(y1))
        d1 = [A.degree(l) - 1 for l in w1]
        d2 = [A.degree(l) - 1 for l in w2]
        ring = self.ring
        out: Element = {}
        shuffles = list(shuffle_words(w1, d1, w2, d2, lambda l: l, lambda l: l))
        for xk, c in px.items():
            for yk, e in py.items():
                for w, s in shuffles:
                    vec_axpy(out, s0 * s * c * e, {(xk, w, yk): 1}, ring)
        return out


def _has_differential(alg) -> bool:
    if isinstance(alg, FreeGca):
        return alg.has_differential
    if isinstance(alg, TensorAlgebra):
        return _has_differential(alg.a) or _has_differential(alg.b)
    # lazy algebras of unknown shape are treated as differential
    return True


def two_sided_bar(x, a, y, phi_x, phi_y, cutoff: Optional[int] = None) -> TwoSidedBar:
    return TwoSidedBar(x, a, y, phi_x, phi_y, cutoff)


# ---------------------------------------------------------------------------
# Koszul complex oracle


class KoszulComplex(FreeGca, BigradedComplex):
    """``X (x) Lambda[u_g] (x) Y`` with ``d u_g = phi_X(g) (x) 1 - 1 (x) phi_Y(g)``."""

    def __init__(self, a: FreeGca, x: FreeGca, y: FreeGca, phi_x: AlgebraMorphism, phi_y: AlgebraMorphism, cutoff: Optional[int] = None):
        ring = a.ring
        for n, d in a.generators:
            if d % 2 == 1 and not (ring.characteristic == 2 and n in a.polynomial):
                raise OddGeneratorInBase(f"base generator {n} has odd degree {d}")
        for m in (x, y):
            if m.has_differential:
                raise ValueError("the Koszul oracle needs zero differentials on both sides")
        self.base, self.left, self.right = a, x, y
        self.phi_x, self.phi_y = phi_x, phi_y
        cutoff = min(a.cutoff, x.cutoff, y.cutoff) if cutoff is None else cutoff
        gens = [(f"L{i}", d) for i, (_, d) in enumerate(x.generators)]
        gens += [(f"U{i}", d - 1) for i, (_, d) in enumerate(a.generators)]
        gens += [(f"R{i}", d) for i, (_, d) in enumerate(y.generators)]
        poly, ext = [], []
        if ring.characteristic == 2:
            poly += [f"L{i}" for i, n in enumerate(x.names) if n in x.polynomial]
            poly += [f"R{i}" for i, n in enumerate(y.names) if n in y.polynomial]
            ext += [f"L{i}" for i, n in enumerate(x.names) if n in x.exterior]
            ext += [f"R{i}" for i, n in enumerate(y.names) if n in y.exterior]
            ext += [f"U{i}" for i, (_, d) in enumerate(a.generators) if (d - 1) % 2 == 0]
        nx, na, ny = x.ngens, a.ngens, y.ngens
        self._slices = (nx, na, ny)
        zeros_a, zeros_y = (0,) * na, (0,) * ny
        diff = {}
        for i, (g, _) in enumerate(a.generators):
            val: Element = {}
            for k, c in phi_x.on_basis(a.gen(g)).items():
                vec_axpy(val, c, {k + zeros_a + zeros_y: 1}, ring)
            for k, c in phi_y.on_basis(a.gen(g)).items():
                vec_axpy(val, -c, {(0,) * nx + zeros_a + k: 1}, ring)
            diff[f"U{i}"] = val
        # generator names are internal; display names come from key_name
        FreeGca.__init__(self, gens, ring, max(cutoff, max((d for _, d in gens), default=0)), poly, ext, diff)
        self.cutoff = cutoff
        self.bigraded = True
        self._labels = [f"{n}" for n in x.names] + [f"u_{n}" for n in a.names] + [f"{n}'" if n in x.names else n for n in y.names]

    def bidegree(self, key):
        nx, na, _ = self._slices
        p = sum(key[nx:nx + na])
        return (p, self.degree(key) + p)

    def basis_pq(self, p, q):
        cache = self.__dict__.setdefault("_pq_basis", {})
        got = cache.get((p, q))
        if got is None:
            nx, na, _ = self._slices
            got = [k for k in self.basis(q - p) if sum(k[nx:nx + na]) == p]
            cache[(p, q)] = got
        return got

    def max_length(self, n):
        return self._slices[1]

    def key_product(self, k1, k2):
        return self.mul(k1, k2)

    def key_name(self, key):
        parts = []
        for n, e in zip(self._labels, key):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) if parts else "1"


def koszul_complex(a, x, y, phi_x, phi_y, cutoff=None) -> KoszulComplex:
    return KoszulComplex(a, x, y, phi_x, phi_y, cutoff)


# ---------------------------------------------------------------------------
# homology of a bigraded complex


@dataclass
class TorClass:
    degree: int
    index: int
    order: int  # 0 means infinite order
    cycle: Element
    bidegree: Optional[Tuple[int, int]] = None


def combined_invariants(torsion_lists: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Invariant factors of a direct sum of cyclic groups."""
    orders = [d for ts in torsion_lists for d in ts if d > 1]
    if not orders:
        return ()
    m = SparseMatrix(len(orders), len(orders), {(i, i): d for i, d in enumerate(orders)})
    _, divisors, _ = smith_normal_form(m)
    return tuple(d for d in divisors if d > 1)


class TorSpace:
    """Homology of a bigraded complex through ``top``.

    Bigraded complexes are split by ``(p, q)``; otherwise homology is taken by
    total degree only and ``bigraded`` is ``False``.
    """

    def __init__(self, complex: BigradedComplex, top: Optional[int] = None, bigraded: Optional[bool] = None):
        self.complex = complex
        self.ring: CoefficientRing = complex.ring
        self.top = complex.cutoff if top is None else top
        self.bigraded = complex.bigraded if bigraded is None else bigraded
        self._blocks: Dict[Tuple[int, int], ModuleSummary] = {}
        self._total: Dict[int, ModuleSummary] = {}
        self._classes: Dict[int, List[TorClass]] = {}

    # raw homology --------------------------------------------------------

    def block(self, p: int, q: int) -> ModuleSummary:
        got = self._blocks.get((p, q))
        if got is None:
            c = self.complex
            d_out = c.block_pq(p, q)
            d_in = c.block_pq(p + 1, q)
            got = homology_at(d_in, d_out, self.ring, check=False)
            self._blocks[(p, q)] = got
        return got

    def total(self, n: int) -> ModuleSummary:
        got = self._total.get(n)
        if got is None:
            c = self.complex
            d_in = c.differential_block(n - 1) if n > 0 else SparseMatrix(len(c.basis(0)), 0)
            got = homology_at(d_in, c.differential_block(n), self.ring, check=False)
            self._total[n] = got
        return got

    def bidegrees(self, n: int) -> List[Tuple[int, int]]:
        return [(p, n + p) for p in range(self.complex.max_length(n) + 1) if n + p >= 0]

    def classes(self, n: int) -> List[TorClass]:
        got = self._classes.get(n)
        if got is not None:
            return got
        c = self.complex
        out: List[TorClass] = []
        if self.bigraded:
            for p, q in self.bidegrees(n):
                if not c.basis_pq(p, q):
                    continue
                s = self.block(p, q)
                basis = c.basis_pq(p, q)
                for order, gen in zip(s.orders, s.generators):
                    out.append(TorClass(n, len(out), order, {basis[i]: v for i, v in gen.items()}, (p, q)))
        else:
            s = self.total(n)
            basis = c.basis(n)
            for order, gen in zip(s.orders, s.generators):
                out.append(TorClass(n, len(out), order, {basis[i]: v for i, v in gen.items()}))
        self._classes[n] = out
        return out

    def orders(self, n: int) -> List[int]:
        return [c.order for c in self.classes(n)]

    def coordinates(self, n: int, elem: Mapping) -> List:
        """Coordinates of a cycle of total degree ``n`` over :meth:`classes`."""
        c = self.complex
        ring = self.ring
        if not self.bigraded:
            idx = c.index(n)
            vec = {idx[k]: v for k, v in elem.items()}
            return self.total(n).coordinates(vec)
        parts: Dict[Tuple[int, int], Dict[int, object]] = {}
        for k, v in elem.items():
            pq = c.bidegree(k)
            parts.setdefault(pq, {})[c.index_pq(*pq)[k]] = v
        out = []
        for p, q in self.bidegrees(n):
            if not c.basis_pq(p, q):
                continue
            s = self.block(p, q)
            vec = parts.pop((p, q), None)
            if s.dimension == 0:
                if vec:
                    s.coordinates(vec)  # raises if not a cycle
                continue
            out.extend(s.coordinates(vec) if vec else [0] * s.dimension)
        if parts:
            raise ValueError(f"element has components in unexpected bidegrees {sorted(parts)}")
        return out

    # summaries -----------------------------------------------------------

    def _rank_pq(self, p: int, q: int) -> int:
        cache = self.__dict__.setdefault("_ranks", {})
        got = cache.get((p, q))
        if got is None:
            got = cache[(p, q)] = rank(self.complex.block_pq(p, q), self.ring)
        return got

    def block_group(self, p: int, q: int) -> Tuple[int, Tuple[int, ...]]:
        """Group at ``(p, q)``; over a field only ranks are computed unless classes exist."""
        if (p, q) in self._blocks or not self.ring.is_field:
            s = self.block(p, q)
            return (s.free_rank, tuple(s.torsion))
        dim = len(self.complex.basis_pq(p, q))
        return (dim - self._rank_pq(p, q) - self._rank_pq(p + 1, q), ())

    def group(self, n: int) -> Tuple[int, Tuple[int, ...]]:
        """``(free rank, invariant factors)`` in total degree ``n``."""
        if not self.bigraded:
            s = self.total(n)
            return (s.free_rank, tuple(s.torsion))
        free = 0
        tors = []
        for p, q in self.bidegrees(n):
            if not self.complex.basis_pq(p, q):
                continue
            f, t = self.block_group(p, q)
            free += f
            tors.append(t)
        return (free, combined_invariants(tors))

    def dimension(self, n: int) -> int:
        free, tors = self.group(n)
        return free + len(tors)

    def poincare(self) -> List[int]:
        return [self.group(n)[0] if self.ring.kind == "Integers" else self.dimension(n) for n in range(self.top + 1)]

    def bigraded_table(self) -> Dict[Tuple[int, int], Tuple[int, Tuple[int, ...]]]:
        if not self.bigraded:
            raise ValueError("homology is only total-degree graded for these inputs")
        out = {}
        for n in range(self.top + 1):
            for p, q in self.bidegrees(n):
                if not self.complex.basis_pq(p, q):
                    continue
                g = self.block_group(p, q)
                if g != (0, ()):
                    out[(p, q)] = g
        return out

    def unit_coordinates(self) -> List:
        c = self.complex
        return self.coordinates(0, {c.unit_key: 1})


@dataclass
class BigradedTor:
    """Snapshot of the groups of a :class:`TorSpace`."""

    ring: CoefficientRing
    top: int
    bigraded: bool
    totals: List[Tuple[int, Tuple[int, ...]]]
    table: Dict[Tuple[int, int], Tuple[int, Tuple[int, ...]]] = field(default_factory=dict)
    space: Optional[TorSpace] = field(default=None, repr=False, compare=False)

    def dims(self) -> List[int]:
        return [f + len(t) for f, t in self.totals]


def tor_bigraded(tsb: BigradedComplex, top: Optional[int] = None) -> BigradedTor:
    space = tsb if isinstance(tsb, TorSpace) else TorSpace(tsb, top)
    totals = [space.group(n) for n in range(space.top + 1)]
    table = space.bigraded_table() if space.bigraded else {}
    return BigradedTor(space.ring, space.top, space.bigraded, totals, table, space)


def koszul_oracle(a, x, y, phi_x, phi_y, top: Optional[int] = None) -> BigradedTor:
    return tor_bigraded(KoszulComplex(a, x, y, phi_x, phi_y, top), top)


# ---------------------------------------------------------------------------
# maps on Tor


def solve_on_homology(columns: Sequence[Sequence], src_orders: Sequence[int], tgt_orders: Sequence[int], rhs: Sequence, ring: CoefficientRing):
    """Source coordinates mapping to ``rhs`` under the homology map with the given columns."""
    nrows, ncols = len(tgt_orders), len(src_orders)
    ent = {}
    for j, col in enumerate(columns):
        for i, v in enumerate(col):
            if v:
                ent[(i, j)] = v
    extra = 0
    if ring.kind == "Integers":
        for i, d in enumerate(tgt_orders):
            if d:
                ent[(i, ncols + extra)] = d
                extra += 1
    m = SparseMatrix(nrows, ncols + extra, ent)
    sol = solve(m, {i: v for i, v in enumerate(rhs) if v}, ring)
    if sol is None:
        return None
    out = [sol.get(j, 0) for j in range(ncols)]
    if ring.kind == "Integers":
        out = [v % d if d else v for v, d in zip(out, src_orders)]
    return out


class TorMap:
    """Linear map between homology coordinates, one matrix per total degree.

    ``column(n, j)`` is the image of class ``j`` of degree ``n``.
    """

    def __init__(self, source: TorSpace, target: TorSpace, column: Callable[[int, int], List], name: str = ""):
        self.source = source
        self.target = target
        self._column = column
        self._cols: Dict[Tuple[int, int], List] = {}
        self.name = name

    def column(self, n: int, j: int) -> List:
        got = self._cols.get((n, j))
        if got is None:
            got = self._normalize(n, self._column(n, j))
            self._cols[(n, j)] = got
        return got

    def _normalize(self, n, vec):
        ring = self.target.ring
        orders = self.target.orders(n)
        if ring.kind == "Integers":
            return [v % d if d else v for v, d in zip(vec, orders)]
        return [ring.norm(v) for v in vec]

    def matrix(self, n: int) -> List[List]:
        """Rows indexed by target classes, columns by source classes."""
        cols = [self.column(n, j) for j in range(len(self.source.classes(n)))]
        rows = len(self.target.classes(n))
        return [[cols[j][i] for j in range(len(cols))] for i in range(rows)]

    def apply(self, n: int, coords: Sequence) -> List:
        ring = self.target.ring
        out = [0] * len(self.target.classes(n))
        for j, c in enumerate(coords):
            if c:
                col = self.column(n, j)
                for i, v in enumerate(col):
                    out[i] += c * v
        return self._normalize(n, out)

    def compose(self, inner: "TorMap") -> "TorMap":
        return TorMap(inner.source, self.target, lambda n, j: self.apply(n, inner.column(n, j)), f"{self.name}.{inner.name}")

    def __matmul__(self, inner):
        return self.compose(inner)

    def inverse(self) -> "TorMap":
        """Inverse of an isomorphism, found by solving in homology coordinates."""
        fwd = self

        def column(n, j):
            cols = [fwd.column(n, k) for k in range(len(fwd.source.classes(n)))]
            rhs = [1 if i == j else 0 for i in range(len(fwd.target.classes(n)))]
            sol = solve_on_homology(cols, fwd.source.orders(n), fwd.target.orders(n), rhs, fwd.target.ring)
            if sol is None:
                raise ValueError(f"{fwd.name} is not surjective in degree {n}")
            return sol

        return TorMap(self.target, self.source, column, f"{self.name}^-1")

    def is_isomorphism(self, n: int) -> bool:
        s, t = self.source, self.target
        if sorted(s.orders(n)) != sorted(t.orders(n)) and s.group(n) != t.group(n):
            return False
        cols = [self.column(n, k) for k in range(len(s.classes(n)))]
        for j in range(len(t.classes(n))):
            rhs = [1 if i == j else 0 for i in range(len(t.classes(n)))]
            if solve_on_homology(cols, s.orders(n), t.orders(n), rhs, t.ring) is None:
                return False
        return True

    def equals(self, other: "TorMap", top: Optional[int] = None) -> bool:
        top = self.source.top if top is None else top
        for n in range(top + 1):
            for j in range(len(self.source.classes(n))):
                if self.column(n, j) != other.column(n, j):
                    return False
        return True


def induced_map(chain: GradedMap, source: TorSpace, target: TorSpace, name: str = "") -> TorMap:
    """Map on homology induced by a degree-0 chain map between the complexes."""

    def column(n, j):
        cyc = source.classes(n)[j].cycle
        return target.coordinates(n, chain(cyc))

    return TorMap(source, target, column, name or chain.name)


def identity_tor_map(space: TorSpace) -> TorMap:
    return TorMap(space, space, lambda n, j: [1 if i == j else 0 for i in range(len(space.classes(n)))], "id")


def wordwise_map(f: AlgebraMorphism, u: AlgebraMorphism, v: AlgebraMorphism, source: TwoSidedBar, target: TwoSidedBar) -> GradedMap:
    """``u (x) Bf (x) v`` on two-sided bar words."""
    ring = target.ring

    def func(key):
        x, w, y = key
        ux = u.on_basis(x)
        if not ux:
            return {}
        vy = v.on_basis(y)
        if not vy:
            return {}
        words: Dict[Tuple, object] = {(): 1}
        for l in w:
            img = f.on_basis(l)
            nxt: Dict[Tuple, object] = {}
            for pre, c in words.items():
                for m, e in img.items():
                    vec_axpy(nxt, c * e, {pre + (m,): 1}, ring)
            words = nxt
            if not words:
                return {}
        out: Element = {}
        for xk, c in ux.items():
            for wk, e in words.items():
                for yk, g in vy.items():
                    vec_axpy(out, c * e * g, {(xk, wk, yk): 1}, ring)
        return out

    return GradedMap(source, target, 0, func, f"Tor({f.name},{u.name},{v.name})")


def _first_disagreement(m1: GradedMap, m2: GradedMap, top: int):
    for n in range(top + 1):
        for k in m1.source.basis(n):
            if m1.on_basis(k) != m2.on_basis(k):
                return k
    return None


def tor_map(f: AlgebraMorphism, u: AlgebraMorphism, v: AlgebraMorphism, source: TwoSidedBar, target: TwoSidedBar,
            source_space: Optional[TorSpace] = None, target_space: Optional[TorSpace] = None, check: bool = True) -> TorMap:
    """``Tor_f(u, v)`` for strictly commuting squares."""
    if check:
        top = source.cutoff + 2
        bad = _first_disagreement(u.compose(source.phi_x), target.phi_x.compose(f), top)
        if bad is not None:
            raise SquaresDoNotCommute(f"left square fails on {source.a.key_name(bad)}")
        bad = _first_disagreement(v.compose(source.phi_y), target.phi_y.compose(f), top)
        if bad is not None:
            raise SquaresDoNotCommute(f"right square fails on {source.a.key_name(bad)}")
    ss = source_space or TorSpace(source)
    ts = target_space or TorSpace(target)
    chain = wordwise_map(f, u, v, source, target)
    return induced_map(chain, ss, ts, chain.name)


@dataclass
class HomotopyZigzag:
    """The spaces and maps of the path-object zigzag, kept for inspection."""

    middle: TwoSidedBar
    through_strict: TorMap  # Tor_id(u, v)
    back: TorMap  # Tor_id(pi0, pi0)
    forward: TorMap  # Tor_f(pi1, pi1)
    result: TorMap


def tor_map_with_homotopy(f: AlgebraMorphism, u: AlgebraMorphism, v: AlgebraMorphism,
                          h_x: DgaHomotopy, h_y: DgaHomotopy, source: TwoSidedBar, target: TwoSidedBar,
                          source_space: Optional[TorSpace] = None, target_space: Optional[TorSpace] = None,
                          details: bool = False):
    """``Tor_f(u, v)`` when the squares commute up to the given homotopies.

    ``h_x`` runs from ``u phi_X'`` to ``phi_X f`` and ``h_y`` likewise.  The
    result is ``Tor_f(pi1, pi1) o Tor_id(pi0, pi0)^{-1} o Tor_id(u, v)``
    through the path objects of the targets.
    """
    for name, h in (("left", h_x), ("right", h_y)):
        rep = check_homotopy(h, min(h.source.cutoff, source.cutoff + 2))
        if not rep.valid:
            raise InvalidHomotopy(f"{name} homotopy fails {rep.failed_axioms}")
    a1 = source.a
    top = source.cutoff + 2
    for h, strict, end in ((h_x, u.compose(source.phi_x), target.phi_x.compose(f)), (h_y, v.compose(source.phi_y), target.phi_y.compose(f))):
        if _first_disagreement(h.f0, strict, top) is not None or _first_disagreement(h.f1, end, top) is not None:
            raise InvalidHomotopy("homotopy endpoints do not match the squares")
    ss = source_space or TorSpace(source)
    ts = target_space or TorSpace(target)
    cut = source.cutoff
    ida = identity_morphism(a1)
    # Tor_{A'}(X', Y') -> Tor_{A'}(X, Y) along u, v
    mid0 = TwoSidedBar(target.x, a1, target.y, h_x.f0, h_y.f0, cut, check=False)
    mid0_space = TorSpace(mid0, bigraded=False)
    ss_total = ss if not ss.bigraded else TorSpace(source, bigraded=False)
    first = tor_map(ida, u, v, source, mid0, ss_total, mid0_space, check=False)
    px, py = path_object(target.x), path_object(target.y)
    hpx = right_homotopy(h_x, px, check=False)
    hpy = right_homotopy(h_y, py, check=False)
    mid = TwoSidedBar(px.carrier, a1, py.carrier, hpx, hpy, cut, check=False)
    mid_space = TorSpace(mid, bigraded=False)
    back = tor_map(ida, px.pi0, py.pi0, mid, mid0, mid_space, mid0_space, check=False)
    ts_total = ts if not ts.bigraded else TorSpace(target, bigraded=False)
    forward = tor_map(f, px.pi1, py.pi1, mid, target, mid_space, ts_total, check=False)
    total = forward.compose(back.inverse()).compose(first)
    # re-express in the caller's coordinates when those are bigraded
    result = _recoordinate(total, ss, ts, ss_total, ts_total)
    if details:
        return HomotopyZigzag(mid, first, back, forward, result)
    return result


def _recoordinate(m: TorMap, ss: TorSpace, ts: TorSpace, ss_total: TorSpace, ts_total: TorSpace) -> TorMap:
    if ss is ss_total and ts is ts_total:
        return m

    def column(n, j):
        cyc = ss.classes(n)[j].cycle
        coords = ss_total.coordinates(n, cyc)
        img = m.apply(n, coords)
        chain: Element = {}
        for c, cls in zip(img, ts_total.classes(n)):
            if c:
                vec_axpy(chain, c, cls.cycle, ts.ring)
        return ts.coordinates(n, chain)

    return TorMap(ss, ts, column, m.name)


# ---------------------------------------------------------------------------
# products


class RingStructure:
    """Products of homology classes via a chain-level product on the complex."""

    def __init__(self, space: TorSpace, chain_product: Optional[Callable[[Key, Key], Element]] = None, top: Optional[int] = None):
        self.space = space
        self.ring = space.ring
        self.top = space.top if top is None else top
        self._prod = chain_product or space.complex.key_product
        self._table: Dict[Tuple[int, int, int, int], List] = {}

    def chain_multiply(self, e1: Mapping, e2: Mapping) -> Element:
        ring = self.ring
        out: Element = {}
        for k1, c in e1.items():
            for k2, e in e2.items():
                vec_axpy(out, c * e, self._prod(k1, k2), ring)
        return out

    def constant(self, n1: int, i: int, n2: int, j: int) -> List:
        """Coordinates of ``class(n1, i) * class(n2, j)`` in degree ``n1 + n2``."""
        key = (n1, i, n2, j)
        got = self._table.get(key)
        if got is None:
            sp = self.space
            cyc = self.chain_multiply(sp.classes(n1)[i].cycle, sp.classes(n2)[j].cycle)
            got = self._normalize(n1 + n2, sp.coordinates(n1 + n2, cyc))
            self._table[key] = got
        return got

    def _normalize(self, n, vec):
        orders = self.space.orders(n)
        if self.ring.kind == "Integers":
            return [v % d if d else v for v, d in zip(vec, orders)]
        return [self.ring.norm(v) for v in vec]

    def multiply(self, n1: int, a: Sequence, n2: int, b: Sequence) -> List:
        n = n1 + n2
        out = [0] * len(self.space.classes(n))
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                for k, v in enumerate(self.constant(n1, i, n2, j)):
                    if v:
                        out[k] += x * y * v
        return self._normalize(n, out)

    def power(self, n: int, a: Sequence, k: int) -> Tuple[int, List]:
        deg, cur = 0, self.space.unit_coordinates()
        for _ in range(k):
            cur = self.multiply(deg, cur, n, a)
            deg += n
        return deg, cur

    def unit(self) -> List:
        return self.space.unit_coordinates()

    def basis_vector(self, n: int, i: int) -> List:
        return [1 if k == i else 0 for k in range(len(self.space.classes(n)))]

    def _pairs(self):
        sp = self.space
        for n1 in range(self.top + 1):
            for n2 in range(self.top + 1 - n1):
                for i in range(len(sp.classes(n1))):
                    for j in range(len(sp.classes(n2))):
                        yield n1, i, n2, j

    def table(self) -> Dict[Tuple[int, int, int, int], List]:
        for key in self._pairs():
            self.constant(*key)
        return dict(self._table)

    # axioms ----------------------------------------------------------------

    def unital_failure(self):
        u = self.unit()
        for n in range(self.top + 1):
            for i in range(len(self.space.classes(n))):
                e = self.basis_vector(n, i)
                if self.multiply(0, u, n, e) != e or self.multiply(n, e, 0, u) != e:
                    return (n, i)
        return None

    def commutative_failure(self):
        for n1, i, n2, j in self._pairs():
            ab = self.constant(n1, i, n2, j)
            ba = self.constant(n2, j, n1, i)
            s = sign(n1 * n2)
            if ab != self._normalize(n1 + n2, [s * v for v in ba]):
                return ((n1, i), (n2, j))
        return None

    def associative_failure(self):
        sp = self.space
        for n1, i, n2, j in self._pairs():
            ab = self.constant(n1, i, n2, j)
            for n3 in range(self.top + 1 - n1 - n2):
                for k in range(len(sp.classes(n3))):
                    c = self.basis_vector(n3, k)
                    left = self.multiply(n1 + n2, ab, n3, c)
                    bc = self.constant(n2, j, n3, k)
                    right = self.multiply(n1, self.basis_vector(n1, i), n2 + n3, bc)
                    if left != right:
                        return ((n1, i), (n2, j), (n3, k))
        return None

    def same_as(self, other: "RingStructure") -> bool:
        for key in self._pairs():
            if self.constant(*key) != other.constant(*key):
                return False
        return True


def _require_commutative(*algs, top=None):
    for alg in algs:
        bad = alg.commutativity_failure(top)
        if bad is not None:
            raise NotCommutative(f"{alg.key_name(bad[0])} and {alg.key_name(bad[1])} do not graded-commute")


def shuffle_product(space: TorSpace) -> RingStructure:
    """Product computed directly by shuffles on ``B(X, A, Y)``."""
    c = space.complex
    if isinstance(c, TwoSidedBar):
        _require_commutative(c.x, c.a, c.y, top=min(space.top, 6))
    return RingStructure(space)


def exterior_bar(b1: TwoSidedBar, b2: TwoSidedBar, cutoff: Optional[int] = None) -> TwoSidedBar:
    """``B(X1 (x) X2, A1 (x) A2, Y1 (x) Y2)``."""
    if b1.cutoff != b2.cutoff and cutoff is None:
        raise CutoffMismatch(f"cutoffs differ: {b1.cutoff} vs {b2.cutoff}")
    cut = b1.cutoff if cutoff is None else cutoff
    xx = TensorAlgebra(b1.x, b2.x, False)
    aa = TensorAlgebra(b1.a, b2.a, False)
    yy = TensorAlgebra(b1.y, b2.y, False)
    fx = tensor_morphism(b1.phi_x, b2.phi_x, aa, xx)
    fy = tensor_morphism(b1.phi_y, b2.phi_y, aa, yy)
    out = TwoSidedBar(xx, aa, yy, fx, fy, cut, check=False)
    return out


def exterior_chain(b1: TwoSidedBar, b2: TwoSidedBar, target: TwoSidedBar) -> Callable[[Key, Key], Element]:
    """Chain-level exterior product of a word of ``b1`` with a word of ``b2``."""
    a1, a2 = b1.a, b2.a
    u1, u2 = a1.unit_key, a2.unit_key
    ring = target.ring

    def product(k1, k2):
        (x1, w1, y1), (x2, w2, y2) = k1, k2
        dw1, dw2 = b1.bar.degree(w1), b2.bar.degree(w2)
        s0 = sign(b2.x.degree(x2) * (dw1 + b1.y.degree(y1)) + dw2 * b1.y.degree(y1))
        d1 = [a1.degree(l) - 1 for l in w1]
        d2 = [a2.degree(l) - 1 for l in w2]
        out: Element = {}
        for w, s in shuffle_words(w1, d1, w2, d2, lambda l: (l, u2), lambda l: (u1, l)):
            vec_axpy(out, s0 * s, {((x1, x2), w, (y1, y2)): 1}, ring)
        return out

    return product


def exterior_product(t1: TorSpace, t2: TorSpace, target: Optional[TwoSidedBar] = None, target_space: Optional[TorSpace] = None):
    """Bilinear map ``(class, class) -> coordinates`` in Tor over ``A1 (x) A2``.

    Returns ``(target_space, multiply)`` where ``multiply(n1, i, n2, j)`` gives
    the coordinates of the exterior product of the two classes.
    """
    b1, b2 = t1.complex, t2.complex
    if t1.top != t2.top:
        raise CutoffMismatch("Tor spaces tracked to different degrees")
    target = target or exterior_bar(b1, b2)
    ts = target_space or TorSpace(target)
    chain = exterior_chain(b1, b2, target)
    ring = ts.ring

    def multiply(n1, i, n2, j):
        e1 = t1.classes(n1)[i].cycle
        e2 = t2.classes(n2)[j].cycle
        out: Element = {}
        for k1, c in e1.items():
            for k2, e in e2.items():
                vec_axpy(out, c * e, chain(k1, k2), ring)
        return ts.coordinates(n1 + n2, out)

    return ts, multiply, chain


def classical_product(space: TorSpace) -> RingStructure:
    """Exterior product followed by the word-wise map ``Tor_mu(mu, mu)``."""
    b = space.complex
    if not isinstance(b, TwoSidedBar):
        raise TypeError("classical product needs a two-sided bar construction")
    _require_commutative(b.x, b.a, b.y, top=min(space.top, 6))
    big = exterior_bar(b, b)
    mu_x = multiplication_morphism(b.x, big.x)
    mu_a = multiplication_morphism(b.a, big.a)
    mu_y = multiplication_morphism(b.y, big.y)
    chain = exterior_chain(b, b, big)
    down = wordwise_map(mu_a, mu_x, mu_y, big, b)

    def product(k1, k2):
        return down(chain(k1, k2))

    return RingStructure(space, product)
