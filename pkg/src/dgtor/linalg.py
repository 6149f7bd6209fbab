"""Exact sparse linear algebra over the integers, prime fields and the rationals.

Vectors are plain dicts ``{index: nonzero coefficient}``.  Integer homology goes
through Smith normal form; over a field a persistence-style column reduction is
used instead, since there is no torsion to find.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exceptions import CompositionNotZero, NotACycle

Vector = Dict[int, object]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class CoefficientRing:
    """The base ring: ``Integers``, ``Rationals`` or ``PrimeField`` with prime ``p``."""

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Integers", "Rationals", "PrimeField"):
            raise ValueError(f"unknown coefficient ring kind {self.kind!r}")
        if self.kind == "PrimeField":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"PrimeField needs a prime, got {self.p!r}")
        elif self.p is not None:
            raise ValueError("only PrimeField takes a modulus")

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        """Parse ``Z``, ``Q``, ``F<p>`` or ``Fp<p>`` (case-insensitive)."""
        t = text.strip()
        u = t.upper()
        if u in ("Z", "ZZ", "INTEGERS"):
            return ZZ
        if u in ("Q", "QQ", "RATIONALS"):
            return QQ
        if u.startswith("FP") and u[2:].isdigit():
            return GF(int(u[2:]))
        if u.startswith("F") and u[1:].isdigit():
            return GF(int(u[1:]))
        raise ValueError(f"cannot parse coefficient ring {text!r}")

    def __str__(self):
        if self.kind == "Integers":
            return "Z"
        if self.kind == "Rationals":
            return "Q"
        return f"F{self.p}"

    @property
    def is_field(self) -> bool:
        return self.kind != "Integers"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "PrimeField" else 0

    def __call__(self, x):
        """Coerce an int or Fraction into the ring."""
        if self.kind == "PrimeField":
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        if self.kind == "Rationals":
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def norm(self, x):
        """Reduce the result of ordinary Python arithmetic back into the ring."""
        if self.p is not None:
            return x % self.p
        return x

    def div(self, a, b):
        if self.kind == "PrimeField":
            return (a * pow(b, -1, self.p)) % self.p
        if self.kind == "Rationals":
            q = Fraction(a) / b
            return q.numerator if q.denominator == 1 else q
        if a % b:
            raise ArithmeticError(f"{a} is not divisible by {b} in Z")
        return a // b

    def is_unit(self, a) -> bool:
        if self.kind == "Integers":
            return a in (1, -1)
        return self.norm(a) != 0


ZZ = CoefficientRing("Integers")
QQ = CoefficientRing("Rationals")


def GF(p: int) -> CoefficientRing:
    return CoefficientRing("PrimeField", p)


# ---------------------------------------------------------------------------
# sparse vectors


def vec_axpy(v: Vector, c, w: Mapping, ring: CoefficientRing) -> Vector:
    """In place ``v += c * w``; returns ``v``."""
    if not c:
        return v
    norm = ring.norm
    for k, x in w.items():
        y = norm(v.get(k, 0) + c * x)
        if y:
            v[k] = y
        else:
            v.pop(k, None)
    return v


def vec_scale(v: Mapping, c, ring: CoefficientRing) -> Vector:
    if not c:
        return {}
    norm = ring.norm
    out = {}
    for k, x in v.items():
        y = norm(c * x)
        if y:
            out[k] = y
    return out


def vec_clean(v: Mapping, ring: CoefficientRing) -> Vector:
    out = {}
    for k, x in v.items():
        y = ring.norm(ring(x))
        if y:
            out[k] = y
    return out


# ---------------------------------------------------------------------------
# sparse matrices


@dataclass
class SparseMatrix:
    """A ``rows x cols`` matrix stored as ``{(row, col): value}`` with no zeros."""

    rows: int
    cols: int
    entries: Dict[Tuple[int, int], object] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.entries, dict):
            ent = {}
            for r, c, v in self.entries:
                if (r, c) in ent:
                    raise ValueError(f"duplicate entry at {(r, c)}")
                ent[(r, c)] = v
            self.entries = ent
        for (r, c), v in list(self.entries.items()):
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry {(r, c)} outside {self.rows}x{self.cols}")
            if not v:
                del self.entries[(r, c)]

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "SparseMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        ent = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    ent[(i, j)] = v
        return cls(nrows, ncols, ent)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]]) -> "SparseMatrix":
        ent = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    ent[(i, j)] = v
        return cls(nrows, len(columns), ent)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    def to_dense(self) -> List[List]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def columns(self) -> List[Vector]:
        cols: List[Vector] = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def row_dicts(self) -> List[Vector]:
        rows: List[Vector] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def apply(self, v: Mapping[int, object], ring: CoefficientRing) -> Vector:
        cols = self.columns()
        out: Vector = {}
        for j, x in v.items():
            vec_axpy(out, x, cols[j], ring)
        return out

    def matmul(self, other: "SparseMatrix", ring: CoefficientRing) -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        mine = self.columns()
        out = []
        for col in other.columns():
            acc: Vector = {}
            for k, x in col.items():
                vec_axpy(acc, x, mine[k], ring)
            out.append(acc)
        return SparseMatrix.from_columns(self.rows, out)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)


def determinant(m: SparseMatrix) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = m.to_dense()
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


class _IntegerReducer:
    """Unimodular row/column reduction of an integer matrix to Smith form.

    The pivot is the active entry of least absolute value (ties: lowest row,
    then lowest column).  Transforms are accumulated as sparse vectors in the
    orientation each operation touches whole vectors: ``left`` by rows,
    ``left_inv`` by columns, ``right`` by columns, ``right_inv`` by rows.
    """

    def __init__(self, m: SparseMatrix, track: bool = True):
        self.nrows, self.ncols = m.rows, m.cols
        self.rows: Dict[int, Dict[int, int]] = defaultdict(dict)
        self.colsup: Dict[int, set] = defaultdict(set)
        for (r, c), v in m.entries.items():
            self.rows[r][c] = int(v)
            self.colsup[c].add(r)
        self.track = track
        if track:
            self.left = {i: {i: 1} for i in range(m.rows)}
            self.left_inv = {i: {i: 1} for i in range(m.rows)}
            self.right = {j: {j: 1} for j in range(m.cols)}
            self.right_inv = {j: {j: 1} for j in range(m.cols)}
        self.pivots: List[Tuple[int, int, int]] = []

    # elementary operations -------------------------------------------------

    @staticmethod
    def _axpy(v, q, w):
        for k, x in w.items():
            y = v.get(k, 0) + q * x
            if y:
                v[k] = y
            else:
                v.pop(k, None)

    def add_row(self, r: int, q: int, i: int):
        """row_r += q * row_i"""
        row_r = self.rows[r]
        for c, x in self.rows[i].items():
            y = row_r.get(c, 0) + q * x
            if y:
                if c not in row_r:
                    self.colsup[c].add(r)
                row_r[c] = y
            else:
                row_r.pop(c, None)
                self.colsup[c].discard(r)
        if self.track:
            self._axpy(self.left[r], q, self.left[i])
            self._axpy(self.left_inv[i], -q, self.left_inv[r])

    def add_col(self, c: int, q: int, j: int):
        """col_c += q * col_j"""
        for r in list(self.colsup[j]):
            row = self.rows[r]
            y = row.get(c, 0) + q * row[j]
            if y:
                if c not in row:
                    self.colsup[c].add(r)
                row[c] = y
            else:
                row.pop(c, None)
                self.colsup[c].discard(r)
        if self.track:
            self._axpy(self.right[c], q, self.right[j])
            self._axpy(self.right_inv[j], -q, self.right_inv[c])

    def negate_row(self, r: int):
        row = self.rows[r]
        for c in row:
            row[c] = -row[c]
        if self.track:
            for k in self.left[r]:
                self.left[r][k] = -self.left[r][k]
            for k in self.left_inv[r]:
                self.left_inv[r][k] = -self.left_inv[r][k]

    # main loop -------------------------------------------------------------

    def _min_entry(self, order: List[int], start: int):
        """Least ``(abs, row, col)`` over live rows; a unit in the lowest row ends the scan."""
        best = None
        rows = self.rows
        for idx in range(start, len(order)):
            row = rows.get(order[idx])
            if not row:
                continue
            r = order[idx]
            for c, v in row.items():
                key = (abs(v), r, c)
                if best is None or key < best:
                    best = key
            if best[0] == 1:
                break
        return best

    def run(self):
        order = sorted(r for r, row in self.rows.items() if row)
        start = 0
        while True:
            # rows never regain entries once empty, so a prefix can be skipped for good
            while start < len(order) and not self.rows.get(order[start]):
                start += 1
            best = self._min_entry(order, start)
            if best is None:
                break
            _, i, j = best
            while True:
                p = self.rows[i][j]
                changed = False
                for r in sorted(self.colsup[j] - {i}):
                    q = self.rows[r][j] // p
                    if q:
                        self.add_row(r, -q, i)
                for c in sorted(set(self.rows[i]) - {j}):
                    q = self.rows[i][c] // p
                    if q:
                        self.add_col(c, -q, j)
                # remainders left in the pivot row/column give a smaller pivot
                rest = [(abs(self.rows[r][j]), r, j) for r in self.colsup[j] if r != i]
                rest += [(abs(v), i, c) for c, v in self.rows[i].items() if c != j]
                if rest:
                    _, i, j = min(rest)
                    continue
                if p in (1, -1):
                    break
                # pivot must divide the remaining active block
                bad = None
                for idx in range(start, len(order)):
                    r = order[idx]
                    if r == i:
                        continue
                    row = self.rows.get(r)
                    if row and any(v % p for v in row.values()):
                        bad = r
                        break
                if bad is not None:
                    self.add_row(i, 1, bad)
                    changed = True
                if not changed:
                    break
            if self.rows[i][j] < 0:
                self.negate_row(i)
            self.pivots.append((i, j, self.rows[i][j]))
            # retire the pivot row and column from the active block
            del self.rows[i]
            self.colsup[j].discard(i)
        return self


def _permutation_matrices(n: int, pivot_idx: List[int]) -> List[int]:
    rest = [k for k in range(n) if k not in set(pivot_idx)]
    return list(pivot_idx) + rest


def smith_normal_form(m: SparseMatrix) -> Tuple[SparseMatrix, Tuple[int, ...], SparseMatrix]:
    """Return ``(left, divisors, right)`` with ``left @ m @ right`` diagonal.

    ``left`` and ``right`` are unimodular and the divisors form a divisibility
    chain of positive integers.
    """
    red = _IntegerReducer(m, track=True).run()
    row_order = _permutation_matrices(m.rows, [i for i, _, _ in red.pivots])
    col_order = _permutation_matrices(m.cols, [j for _, j, _ in red.pivots])
    left_ent = {}
    for new, old in enumerate(row_order):
        for c, v in red.left[old].items():
            left_ent[(new, c)] = v
    right_ent = {}
    for new, old in enumerate(col_order):
        for r, v in red.right[old].items():
            right_ent[(r, new)] = v
    divisors = tuple(d for _, _, d in red.pivots)
    return (
        SparseMatrix(m.rows, m.rows, left_ent),
        divisors,
        SparseMatrix(m.cols, m.cols, right_ent),
    )


def rank(m: SparseMatrix, ring: CoefficientRing) -> int:
    if ring.kind == "Integers":
        return len(_IntegerReducer(m, track=False).run().pivots)
    return len(_FieldColumnReducer([vec_clean(c, ring) for c in m.columns()], ring).run().pivot_of)


# ---------------------------------------------------------------------------
# homology


class _FieldColumnReducer:
    """Left-to-right column reduction where each column's pivot is its largest index."""

    def __init__(self, columns: Sequence[Mapping], ring: CoefficientRing, track: bool = False, skip=()):
        self.columns = columns
        self.ring = ring
        self.track = track
        self.skip = set(skip)
        self.pivot_of: Dict[int, int] = {}  # low index -> column
        self.reduced: Dict[int, Vector] = {}
        self.combos: Dict[int, Vector] = {}
        self.zero_columns: List[int] = []

    def run(self):
        ring = self.ring
        for j, col in enumerate(self.columns):
            if j in self.skip:
                continue
            v = dict(col)
            combo = {j: 1} if self.track else None
            while v:
                low = max(v)
                k = self.pivot_of.get(low)
                if k is None:
                    break
                w = self.reduced[k]
                c = ring.norm(-ring.div(v[low], w[low]))
                vec_axpy(v, c, w, ring)
                if self.track:
                    vec_axpy(combo, c, self.combos[k], ring)
            if v:
                self.pivot_of[max(v)] = j
                self.reduced[j] = v
                if self.track:
                    self.combos[j] = combo
            else:
                self.zero_columns.append(j)
                if self.track:
                    self.combos[j] = combo
        return self


@dataclass
class ModuleSummary:
    """A finitely generated module ``Z^free_rank + sum Z/d_i`` with chosen cycles.

    ``generators`` lists representative cycles, torsion generators first (in
    the order of ``torsion``) and then the free ones; :meth:`coordinates`
    expresses any cycle in that basis.
    """

    free_rank: int
    torsion: Tuple[int, ...] = ()
    generators: List[Vector] = field(default_factory=list)
    ring: CoefficientRing = ZZ
    _coords: Optional[Callable[[Mapping], List]] = field(default=None, repr=False, compare=False)

    @property
    def orders(self) -> Tuple[int, ...]:
        """Order of each generator, 0 meaning infinite."""
        return tuple(self.torsion) + (0,) * self.free_rank

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def dimension(self) -> int:
        return self.free_rank + len(self.torsion)

    def coordinates(self, cycle: Mapping) -> List:
        if self._coords is None:
            raise ValueError("this summary carries no coordinate data")
        return self._coords(cycle)

    def group_label(self) -> str:
        parts = []
        if self.free_rank:
            base = str(self.ring) if self.ring.kind != "Integers" else "Z"
            parts.append(base if self.free_rank == 1 else f"{base}^{self.free_rank}")
        for d in self.torsion:
            parts.append(f"Z/{d}")
        return " + ".join(parts) if parts else "0"


def _check_composition(d_in: SparseMatrix, d_out: SparseMatrix, ring: CoefficientRing):
    if d_in.rows != d_out.cols:
        raise ValueError(f"incompatible shapes: d_in {d_in.rows}x{d_in.cols}, d_out {d_out.rows}x{d_out.cols}")
    if not d_out.matmul(d_in, ring).is_zero():
        raise CompositionNotZero("d_out . d_in != 0")


def homology_at(d_in: SparseMatrix, d_out: SparseMatrix, ring: CoefficientRing, check: bool = True) -> ModuleSummary:
    """``ker(d_out) / im(d_in)`` as free rank, invariant factors and representative cycles."""
    if check:
        _check_composition(d_in, d_out, ring)
    elif d_in.rows != d_out.cols:
        raise ValueError("incompatible shapes")
    if ring.kind == "Integers":
        return _integer_homology(d_in, d_out)
    return _field_homology(d_in.columns(), d_out.columns(), d_in.rows, ring, d_out)


def _field_homology(cols_in, cols_out, n, ring, d_out: Optional[SparseMatrix] = None) -> ModuleSummary:
    img = _FieldColumnReducer([vec_clean(c, ring) for c in cols_in], ring).run()
    image_lows = set(img.pivot_of)
    ker = _FieldColumnReducer([vec_clean(c, ring) for c in cols_out], ring, track=True, skip=image_lows).run()
    gens = [ker.combos[j] for j in ker.zero_columns]
    gen_low = {j: k for k, j in enumerate(ker.zero_columns)}
    image_by_low = {low: img.reduced[col] for low, col in img.pivot_of.items()}

    def coords(cycle):
        v = vec_clean(cycle, ring)
        if d_out is not None and v and d_out.apply(v, ring):
            raise NotACycle("vector is not a cycle")
        out = [0] * len(gens)
        while v:
            low = max(v)
            if low in image_by_low:
                w = image_by_low[low]
            elif low in gen_low:
                k = gen_low[low]
                w = gens[k]
                out[k] = ring.div(v[low], w[low])
            else:
                raise NotACycle(f"vector has leading index {low} outside the cycle space")
            vec_axpy(v, ring.norm(-ring.div(v[low], w[low])), w, ring)
        return out

    return ModuleSummary(len(gens), (), gens, ring, coords)


def _integer_homology(d_in: SparseMatrix, d_out: SparseMatrix) -> ModuleSummary:
    n = d_in.rows
    red = _IntegerReducer(d_out, track=True).run()
    pivot_cols = {j for _, j, _ in red.pivots}
    kernel_idx = [j for j in range(n) if j not in pivot_cols]
    kpos = {j: k for k, j in enumerate(kernel_idx)}
    rinv_rows = red.right_inv  # row j of R^{-1}

    # R^{-1} as columns for applying to vectors
    rinv_cols: Dict[int, Dict[int, int]] = defaultdict(dict)
    for j, row in rinv_rows.items():
        if j in kpos:
            for c, v in row.items():
                rinv_cols[c][kpos[j]] = v

    def kernel_coords(vec: Mapping) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for c, x in vec.items():
            col = rinv_cols.get(c)
            if col:
                vec_axpy(out, x, col, ZZ)
        return out

    image = [kernel_coords(col) for col in d_in.columns()]
    m = SparseMatrix.from_columns(len(kernel_idx), image)
    red2 = _IntegerReducer(m, track=True).run()
    units = [(i, d) for i, _, d in red2.pivots]
    pivot_rows = {i for i, _ in units}
    torsion_rows = [(i, d) for i, d in units if d > 1]
    free_rows = [i for i in range(len(kernel_idx)) if i not in pivot_rows]
    order = [i for i, _ in torsion_rows] + free_rows
    mods = [d for _, d in torsion_rows] + [0] * len(free_rows)

    def to_chain(kv: Mapping[int, int]) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for k, x in kv.items():
            vec_axpy(out, x, red.right[kernel_idx[k]], ZZ)
        return out

    gens = [to_chain(red2.left_inv[i]) for i in order]

    def coords(cycle):
        v = vec_clean(cycle, ZZ)
        if v and d_out.apply(v, ZZ):
            raise NotACycle("vector is not a cycle")
        kc = kernel_coords(v)
        out = []
        for i, d in zip(order, mods):
            x = sum(red2.left[i].get(k, 0) * y for k, y in kc.items())
            out.append(x % d if d else x)
        return out

    return ModuleSummary(len(free_rows), tuple(d for _, d in torsion_rows), gens, ZZ, coords)


def coordinates_in_homology(cycle: Mapping, d_in: SparseMatrix, d_out: SparseMatrix, ring: CoefficientRing) -> List:
    """Coordinates of ``cycle`` over the generators chosen by :func:`homology_at`."""
    summary = homology_at(d_in, d_out, ring)
    return summary.coordinates(cycle)


def kernel_basis(m: SparseMatrix, ring: CoefficientRing) -> List[Vector]:
    """A basis of the kernel (saturated over Z)."""
    if ring.kind == "Integers":
        red = _IntegerReducer(m, track=True).run()
        pivot_cols = {j for _, j, _ in red.pivots}
        return [dict(red.right[j]) for j in range(m.cols) if j not in pivot_cols]
    red = _FieldColumnReducer([vec_clean(c, ring) for c in m.columns()], ring, track=True).run()
    return [red.combos[j] for j in red.zero_columns]


def solve(m: SparseMatrix, b: Mapping, ring: CoefficientRing) -> Optional[Vector]:
    """Some ``x`` with ``m x = b``, or ``None`` when there is no solution in the ring."""
    b = vec_clean(b, ring)
    if ring.kind == "Integers":
        left, divisors, right = smith_normal_form(m)
        lb = left.apply(b, ZZ)
        y = {}
        for k, x in lb.items():
            if k >= len(divisors):
                return None
            if x % divisors[k]:
                return None
            y[k] = x // divisors[k]
        return right.apply(y, ZZ)
    cols = [vec_clean(c, ring) for c in m.columns()]
    red = _FieldColumnReducer(cols, ring, track=True).run()
    v = dict(b)
    x: Vector = {}
    while v:
        low = max(v)
        k = red.pivot_of.get(low)
        if k is None:
            return None
        w = red.reduced[k]
        c = ring.div(v[low], w[low])
        vec_axpy(v, ring.norm(-c), w, ring)
        vec_axpy(x, c, red.combos[k], ring)
    return x
