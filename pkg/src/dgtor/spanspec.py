"""Span specifications, named fixtures and report generation.

A span ``X <- A -> Y`` of free graded-commutative algebras is written as a
TOML document::

    name = "su4_u1"
    coefficients = "Z"            # Z, Q, F2, F3, ...
    max_degree = 16
    outputs = ["poincare", "bigraded", "torsion", "products"]
    char2_hypotheses = false      # user assertion, recorded but not checked

    [base]
    generators = { c2 = 4, c3 = 6, c4 = 8 }
    polynomial = []               # characteristic 2 only: odd generators with free squares
    exterior = []                 # characteristic 2 only: even generators that square to zero

    [left]
    generators = {}

    [right]
    generators = { s = 2 }

    [left_map]                    # base generator -> polynomial in the left generators
    [right_map]
    c2 = "-6*s^2"

Omitted map entries send a generator to zero.  Generator order is the order
written in the document.
"""
from __future__ import annotations

import json
import random
import re
import time
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import tomli
import tomli_w

from .algebra import (
    FreeGca,
    AlgebraMorphism,
    homogeneous_degree,
    morphism_from_images,
    parse_polynomial,
)
from .exceptions import DgTorError, ParseError, ValidationError
from .linalg import CoefficientRing
from .tor import (
    KoszulComplex,
    RingStructure,
    TorSpace,
    TwoSidedBar,
    shuffle_product,
)

OUTPUTS = ("poincare", "bigraded", "torsion", "products", "oracle_check")
DEFAULT_OUTPUTS = ("poincare", "bigraded", "torsion", "products")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Diagnostic:
    line: Optional[int]
    message: str

    def __str__(self):
        return f"line {self.line}: {self.message}" if self.line else self.message


@dataclass(frozen=True)
class AlgebraSpec:
    generators: Tuple[Tuple[str, int], ...] = ()
    polynomial: Tuple[str, ...] = ()
    exterior: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        out: dict = {"generators": {n: d for n, d in self.generators}}
        if self.polynomial:
            out["polynomial"] = list(self.polynomial)
        if self.exterior:
            out["exterior"] = list(self.exterior)
        return out


@dataclass(frozen=True)
class SpanSpec:
    coefficients: str
    base: AlgebraSpec
    left: AlgebraSpec
    right: AlgebraSpec
    left_map: Tuple[Tuple[str, str], ...] = ()
    right_map: Tuple[Tuple[str, str], ...] = ()
    max_degree: int = 12
    outputs: Tuple[str, ...] = DEFAULT_OUTPUTS
    char2_hypotheses: bool = False
    name: str = ""
    description: str = ""

    @property
    def ring(self) -> CoefficientRing:
        return CoefficientRing.parse(self.coefficients)

    def with_overrides(self, max_degree: Optional[int] = None, ring: Optional[str] = None, oracle: bool = False) -> "SpanSpec":
        spec = self
        if max_degree is not None:
            spec = replace(spec, max_degree=max_degree)
        if ring is not None:
            spec = replace(spec, coefficients=str(CoefficientRing.parse(ring)))
            if spec.ring.characteristic != 2:
                # square overrides only make sense in characteristic 2
                spec = replace(spec, base=replace(spec.base, polynomial=(), exterior=()),
                               left=replace(spec.left, polynomial=(), exterior=()),
                               right=replace(spec.right, polynomial=(), exterior=()))
        if oracle and "oracle_check" not in spec.outputs:
            spec = replace(spec, outputs=spec.outputs + ("oracle_check",))
        validate(spec)
        return spec

    def to_dict(self) -> dict:
        out: dict = {}
        if self.name:
            out["name"] = self.name
        if self.description:
            out["description"] = self.description
        out["coefficients"] = self.coefficients
        out["max_degree"] = self.max_degree
        out["outputs"] = list(self.outputs)
        out["char2_hypotheses"] = self.char2_hypotheses
        out["base"] = self.base.to_dict()
        out["left"] = self.left.to_dict()
        out["right"] = self.right.to_dict()
        out["left_map"] = dict(self.left_map)
        out["right_map"] = dict(self.right_map)
        return out


# ---------------------------------------------------------------------------
# parsing


def _key_lines(text: str) -> Dict[Tuple[str, str], int]:
    """Best-effort ``(table, key) -> line`` map used to place diagnostics."""
    out: Dict[Tuple[str, str], int] = {}
    table = ""
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        m = re.match(r"\[\s*([A-Za-z0-9_.]+)\s*\]$", line)
        if m:
            table = m.group(1)
            out.setdefault((table, ""), i)
            continue
        m = re.match(r"([A-Za-z0-9_\"]+)\s*=", line)
        if m:
            key = m.group(1).strip('"')
            out.setdefault((table, key), i)
            # inline tables: record the keys they mention
            for k in re.findall(r"([A-Za-z_][A-Za-z0-9_]*)\s*=", line[m.end():]):
                out.setdefault((f"{table}.{key}" if table else key, k), i)
    return out


def parse_spec(text: str) -> SpanSpec:
    """Parse and validate a span document."""
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        line = int(m.group(1)) if m else None
        raise ParseError(f"malformed span document: {exc}", [Diagnostic(line, str(exc))]) from None
    lines = _key_lines(text)
    diags: List[Diagnostic] = []

    def where(table, key=""):
        return lines.get((table, key)) or lines.get((table, ""))

    known = {"name", "description", "coefficients", "max_degree", "outputs", "char2_hypotheses",
             "base", "left", "right", "left_map", "right_map"}
    for k in data:
        if k not in known:
            diags.append(Diagnostic(where("", k), f"unknown key {k!r}"))

    def algebra(table) -> AlgebraSpec:
        raw = data.get(table, {})
        if not isinstance(raw, dict):
            diags.append(Diagnostic(where("", table), f"{table} must be a table"))
            return AlgebraSpec()
        gens = raw.get("generators", {})
        if not isinstance(gens, dict):
            diags.append(Diagnostic(where(table, "generators"), "generators must be a table of name = degree"))
            gens = {}
        out = []
        for n, d in gens.items():
            if not isinstance(d, int) or isinstance(d, bool):
                diags.append(Diagnostic(where(f"{table}.generators", n) or where(table, "generators"), f"degree of {n} must be an integer"))
                continue
            out.append((n, d))
        for k in raw:
            if k not in ("generators", "polynomial", "exterior"):
                diags.append(Diagnostic(where(table, k), f"unknown key {k!r} in [{table}]"))
        lists = []
        for k in ("polynomial", "exterior"):
            v = raw.get(k, [])
            if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
                diags.append(Diagnostic(where(table, k), f"{k} must be a list of generator names"))
                v = []
            lists.append(tuple(v))
        return AlgebraSpec(tuple(out), lists[0], lists[1])

    def mapping(table) -> Tuple[Tuple[str, str], ...]:
        raw = data.get(table, {})
        if not isinstance(raw, dict):
            diags.append(Diagnostic(where("", table), f"{table} must be a table"))
            return ()
        out = []
        for k, v in raw.items():
            if isinstance(v, int) and not isinstance(v, bool):
                v = str(v)
            if not isinstance(v, str):
                diags.append(Diagnostic(where(table, k), f"image of {k} must be a polynomial string"))
                continue
            out.append((k, v))
        return tuple(out)

    coeff = data.get("coefficients", "Z")
    max_degree = data.get("max_degree", 12)
    outputs = data.get("outputs", list(DEFAULT_OUTPUTS))
    if not isinstance(coeff, str):
        diags.append(Diagnostic(where("", "coefficients"), "coefficients must be a string such as Z, Q or F2"))
        coeff = "Z"
    if not isinstance(max_degree, int) or isinstance(max_degree, bool):
        diags.append(Diagnostic(where("", "max_degree"), "max_degree must be an integer"))
        max_degree = 12
    if not isinstance(outputs, list) or not all(isinstance(o, str) for o in outputs):
        diags.append(Diagnostic(where("", "outputs"), "outputs must be a list of strings"))
        outputs = list(DEFAULT_OUTPUTS)
    hyp = data.get("char2_hypotheses", False)
    if not isinstance(hyp, bool):
        diags.append(Diagnostic(where("", "char2_hypotheses"), "char2_hypotheses must be true or false"))
        hyp = False
    spec = SpanSpec(
        coefficients=coeff,
        base=algebra("base"),
        left=algebra("left"),
        right=algebra("right"),
        left_map=mapping("left_map"),
        right_map=mapping("right_map"),
        max_degree=max_degree,
        outputs=tuple(outputs),
        char2_hypotheses=hyp,
        name=str(data.get("name", "")),
        description=str(data.get("description", "")),
    )
    if diags:
        raise ValidationError("invalid span document", diags)
    validate(spec, lines)
    return spec


def validate(spec: SpanSpec, lines: Optional[Dict[Tuple[str, str], int]] = None) -> None:
    """Raise :class:`ValidationError` listing every problem found."""
    lines = lines or {}
    diags: List[Diagnostic] = []

    def where(table, key=""):
        return lines.get((table, key)) or lines.get((table, ""))

    try:
        ring = CoefficientRing.parse(spec.coefficients)
    except ValueError as exc:
        raise ValidationError("invalid coefficients", [Diagnostic(where("", "coefficients"), str(exc))]) from None
    if spec.max_degree < 0:
        diags.append(Diagnostic(where("", "max_degree"), "max_degree must be non-negative"))
    for o in spec.outputs:
        if o not in OUTPUTS:
            diags.append(Diagnostic(where("", "outputs"), f"unknown output {o!r}; choose from {', '.join(OUTPUTS)}"))
    for table in ("base", "left", "right"):
        alg: AlgebraSpec = getattr(spec, table)
        names = [n for n, _ in alg.generators]
        if len(set(names)) != len(names):
            diags.append(Diagnostic(where(table, "generators"), f"repeated generator name in [{table}]"))
        for n, d in alg.generators:
            pos = where(f"{table}.generators", n) or where(table, "generators")
            if not _NAME.match(n):
                diags.append(Diagnostic(pos, f"bad generator name {n!r}"))
            if d < 1:
                diags.append(Diagnostic(pos, f"generator {n} must have positive degree"))
            if table == "base" and d == 1:
                diags.append(Diagnostic(pos, f"base generator {n} has degree 1; the base must be 1-connected"))
            if table == "base" and d % 2 == 1 and d > 1:
                if not (ring.characteristic == 2 and n in alg.polynomial):
                    diags.append(Diagnostic(pos, f"base generator {n} has odd degree {d}; only even generators "
                                                 "(or, in characteristic 2, odd ones listed under polynomial) are allowed"))
        for k in ("polynomial", "exterior"):
            flagged = getattr(alg, k)
            if flagged and ring.characteristic != 2:
                diags.append(Diagnostic(where(table, k), f"{k} overrides need characteristic 2"))
            for n in flagged:
                if n not in names:
                    diags.append(Diagnostic(where(table, k), f"{k} names unknown generator {n!r}"))
    if diags:
        raise ValidationError("invalid span document", diags)
    # maps: parse and check degrees against the built algebras
    a, x, y = _algebras(spec, ring)
    base_deg = dict(spec.base.generators)
    for table, target in (("left_map", x), ("right_map", y)):
        for g, expr in getattr(spec, table):
            pos = where(table, g)
            if g not in base_deg:
                diags.append(Diagnostic(pos, f"{table} mentions unknown base generator {g!r}"))
                continue
            try:
                elem = parse_polynomial(expr, target)
            except ParseError as exc:
                diags.append(Diagnostic(pos, f"cannot parse image of {g}: {exc}"))
                continue
            except DgTorError as exc:
                diags.append(Diagnostic(pos, f"image of {g}: {exc}"))
                continue
            try:
                deg = homogeneous_degree(elem, target)
            except DgTorError:
                diags.append(Diagnostic(pos, f"image of {g} is not homogeneous"))
                continue
            if elem and deg != base_deg[g]:
                diags.append(Diagnostic(pos, f"image of {g} has degree {deg}, expected {base_deg[g]}"))
    if diags:
        raise ValidationError("invalid span document", diags)
    try:
        build(spec)
    except DgTorError as exc:
        raise ValidationError("invalid span document", [Diagnostic(where("right_map") or where("left_map"), str(exc))]) from None


def emit_spec(spec: SpanSpec) -> str:
    return tomli_w.dumps(spec.to_dict())


# ---------------------------------------------------------------------------
# building the algebraic data


def _cutoff(spec: SpanSpec) -> int:
    degs = [d for alg in (spec.base, spec.left, spec.right) for _, d in alg.generators]
    return max([spec.max_degree + 2] + degs)


def _algebras(spec: SpanSpec, ring: CoefficientRing):
    cut = _cutoff(spec)
    out = []
    for alg in (spec.base, spec.left, spec.right):
        out.append(FreeGca(list(alg.generators), ring, cut, alg.polynomial, alg.exterior))
    return tuple(out)


@dataclass
class SpanData:
    spec: SpanSpec
    ring: CoefficientRing
    base: FreeGca
    left: FreeGca
    right: FreeGca
    phi_left: AlgebraMorphism
    phi_right: AlgebraMorphism

    def bar(self) -> TwoSidedBar:
        return TwoSidedBar(self.left, self.base, self.right, self.phi_left, self.phi_right, self.spec.max_degree)

    def koszul(self) -> KoszulComplex:
        return KoszulComplex(self.base, self.left, self.right, self.phi_left, self.phi_right, self.spec.max_degree)


def build(spec: SpanSpec) -> SpanData:
    ring = spec.ring
    a, x, y = _algebras(spec, ring)
    maps = []
    for images, target, name in ((spec.left_map, x, "phi_X"), (spec.right_map, y, "phi_Y")):
        parsed = {g: parse_polynomial(e, target) for g, e in images}
        maps.append(morphism_from_images(a, target, parsed, name))
    return SpanData(spec, ring, a, x, y, maps[0], maps[1])


# ---------------------------------------------------------------------------
# reports


def _group_label(free: int, torsion: Sequence[int], ring: CoefficientRing) -> str:
    parts = []
    base = "Z" if ring.kind == "Integers" else str(ring)
    if free:
        parts.append(base if free == 1 else f"{base}^{free}")
    parts += [f"Z/{d}" for d in torsion]
    return " + ".join(parts) if parts else "0"


@dataclass
class ReportDocument:
    spec: SpanSpec
    ring: str
    totals: List[dict]
    bigraded: List[dict] = field(default_factory=list)
    classes: List[dict] = field(default_factory=list)
    products: List[dict] = field(default_factory=list)
    relations: List[str] = field(default_factory=list)
    oracle: Optional[dict] = None
    meta: dict = field(default_factory=dict)

    def to_json_dict(self, timing: bool = False) -> dict:
        out = {
            "spec": self.spec.to_dict(),
            "ring": self.ring,
            "totals": self.totals,
            "bigraded": self.bigraded,
            "classes": self.classes,
            "products": self.products,
            "relations": self.relations,
            "oracle": self.oracle,
        }
        meta = {k: v for k, v in self.meta.items() if timing or k != "wall_clock_seconds"}
        out["meta"] = meta
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_json_dict(timing), indent=2, sort_keys=False) + "\n"

    def to_text(self, timing: bool = False) -> str:
        spec = self.spec
        lines = []
        title = spec.name or "span"
        lines.append(f"{title} over {self.ring}, through degree {spec.max_degree}")
        if spec.description:
            lines.append(spec.description)
        if spec.ring.characteristic == 2:
            lines.append(f"char-2 hypotheses asserted by user: {'yes' if spec.char2_hypotheses else 'no'}")
        lines.append("")
        outs = spec.outputs
        if "poincare" in outs or "torsion" in outs:
            lines.append(f"{'deg':>4}  {'rank':>5}  group")
            for row in self.totals:
                lines.append(f"{row['degree']:>4}  {row['rank']:>5}  {row['group']}")
            lines.append("")
        if "bigraded" in outs and self.bigraded:
            lines.append(f"{'p':>3} {'q':>4}  group")
            for row in self.bigraded:
                lines.append(f"{row['p']:>3} {row['q']:>4}  {row['group']}")
            lines.append("")
        if "products" in outs and self.classes:
            lines.append("classes")
            for c in self.classes:
                bi = f" (p,q)=({c['p']},{c['q']})" if c.get("p") is not None else ""
                order = "inf" if c["order"] == 0 else str(c["order"])
                lines.append(f"  {c['label']:<8} deg {c['degree']:>2}  order {order:>3}{bi}")
            lines.append("relations (read off the structure constants)")
            for r in self.relations:
                lines.append(f"  {r}")
            lines.append("")
        if self.oracle is not None:
            verdict = "agree" if self.oracle["agrees"] else "DISAGREE"
            lines.append(f"Koszul oracle: {verdict} on {self.oracle['bidegrees']} bidegrees")
            for m in self.oracle.get("mismatches", []):
                lines.append(f"  mismatch at {m}")
            lines.append("")
        if timing and "wall_clock_seconds" in self.meta:
            lines.append(f"wall clock: {self.meta['wall_clock_seconds']:.3f} s")
        return "\n".join(lines).rstrip() + "\n"


def _label(n: int, i: int) -> str:
    return f"g{n}_{i}"


def _format_coords(coords: Sequence, n: int) -> str:
    terms = []
    for i, c in enumerate(coords):
        if not c:
            continue
        lab = _label(n, i)
        terms.append(lab if c == 1 else f"{c}*{lab}")
    return " + ".join(terms) if terms else "0"


def _ring_report(space: TorSpace, ring_structure: RingStructure, top: int):
    classes = []
    for n in range(top + 1):
        for c in space.classes(n):
            row = {"label": _label(n, c.index), "degree": n, "index": c.index, "order": c.order,
                   "p": c.bidegree[0] if c.bidegree else None, "q": c.bidegree[1] if c.bidegree else None}
            classes.append(row)
    products = []
    relations = []
    for n in range(top + 1):
        for c in space.classes(n):
            if c.order:
                relations.append(f"{c.order}*{_label(n, c.index)} = 0")
    for n1 in range(1, top + 1):
        for n2 in range(n1, top + 1 - n1):
            for i in range(len(space.classes(n1))):
                for j in range(len(space.classes(n2))):
                    if n1 == n2 and j < i:
                        continue
                    coords = ring_structure.constant(n1, i, n2, j)
                    products.append({"left": [n1, i], "right": [n2, j], "product": [int(v) for v in coords]})
                    relations.append(f"{_label(n1, i)}*{_label(n2, j)} = {_format_coords(coords, n1 + n2)}")
    return classes, products, relations


def oracle_compare(data: SpanData, bar_space: Optional[TorSpace] = None) -> dict:
    top = data.spec.max_degree
    bar_space = bar_space or TorSpace(data.bar(), top)
    kos = TorSpace(data.koszul(), top)
    b_table, k_table = bar_space.bigraded_table(), kos.bigraded_table()
    keys = sorted(set(b_table) | set(k_table))
    mismatches = [f"(p,q)={k}: bar {b_table.get(k)} vs Koszul {k_table.get(k)}" for k in keys if b_table.get(k) != k_table.get(k)]
    return {"agrees": not mismatches, "bidegrees": len(keys), "mismatches": mismatches}


def run(spec: SpanSpec) -> ReportDocument:
    """Compute the report requested by ``spec``; deterministic apart from ``meta``."""
    start = time.perf_counter()
    data = build(spec)
    ring = data.ring
    top = spec.max_degree
    bar = data.bar()
    space = TorSpace(bar, top)
    totals = []
    for n in range(top + 1):
        free, tors = space.group(n)
        totals.append({"degree": n, "rank": free, "torsion": list(tors), "group": _group_label(free, tors, ring)})
    report = ReportDocument(spec, str(ring), totals)
    if "bigraded" in spec.outputs and space.bigraded:
        for (p, q), (free, tors) in sorted(space.bigraded_table().items(), key=lambda kv: (kv[0][1] - kv[0][0], kv[0][0])):
            report.bigraded.append({"p": p, "q": q, "rank": free, "torsion": list(tors), "group": _group_label(free, tors, ring)})
    if "products" in spec.outputs:
        rs = shuffle_product(space)
        report.classes, report.products, report.relations = _ring_report(space, rs, top)
    if "oracle_check" in spec.outputs:
        report.oracle = oracle_compare(data, space)
    report.meta = {"engine": "two-sided bar", "wall_clock_seconds": time.perf_counter() - start}
    return report


# ---------------------------------------------------------------------------
# fixtures


def _spec(name, description, coefficients, base, left, right, left_map=(), right_map=(), max_degree=12, **kw) -> SpanSpec:
    def alg(a):
        if isinstance(a, AlgebraSpec):
            return a
        return AlgebraSpec(tuple(a))

    spec = SpanSpec(coefficients, alg(base), alg(left), alg(right), tuple(left_map), tuple(right_map),
                    max_degree, name=name, description=description, **kw)
    validate(spec)
    return spec


def loop_cp_infty() -> SpanSpec:
    return _spec("loop_cp_infty", "k <- k[x2] -> k: based loops on CP^infinity", "Z",
                 [("x", 2)], [], [])


def free_loop_cp_infty() -> SpanSpec:
    return _spec("free_loop_cp_infty", "k[x] <- k[x] (x) k[x] -> k[x] along the diagonal: free loops on CP^infinity", "Q",
                 [("a", 2), ("b", 2)], [("x", 2)], [("x", 2)],
                 [("a", "x"), ("b", "x")], [("a", "x"), ("b", "x")])


def su4_u1(coefficients: str = "Z") -> SpanSpec:
    # Chern classes of SU(4) restricted to the circle with weights (-3, 1, 1, 1)
    name = "su4_u1" if CoefficientRing.parse(coefficients).kind == "Integers" else f"su4_u1_{coefficients.lower()}"
    return _spec(name, "H(BSU(4)) acting on Z and H(BU(1)) through diag(z^-3, z, z, z)", coefficients,
                 [("c2", 4), ("c3", 6), ("c4", 8)], [], [("s", 2)],
                 (), [("c2", "-6*s^2"), ("c3", "-8*s^3"), ("c4", "-3*s^4")], max_degree=16)


def cyclic_group(n: int = 2) -> SpanSpec:
    if n < 1:
        raise ValueError("cyclic_group needs n >= 1")
    return _spec(f"cyclic_group_{n}", f"Z <- Z[u2] -> Z[v2], u -> {n}v: classifying space of Z/{n}", "Z",
                 [("u", 2)], [], [("v", 2)], (), [("u", f"{n}*v")])


def rp_infinity_f2() -> SpanSpec:
    base = AlgebraSpec((("i", 2), ("x3", 3), ("x5", 5), ("x9", 9)), polynomial=("x3", "x5", "x9"))
    return _spec("rp_infinity_f2", "F2 <- F2[i2, x3, x5, x9] -> F2: polynomial base failing the cup-1 hypothesis",
                 "F2", base, [], [], max_degree=12)


def random_poly_span(seed: int = 0, max_degree: int = 10) -> SpanSpec:
    """A random span over F2, F3 or F5 with even generators of degree 2 or 4."""
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5])
    degs = (2, 4)
    nb = rng.randint(1, 3)
    base = [(f"a{i}", rng.choice(degs)) for i in range(nb)]
    left = [(f"x{i}", rng.choice(degs)) for i in range(rng.randint(0, 2))]
    right = [(f"y{i}", rng.choice(degs)) for i in range(rng.randint(0, 2))]

    def image(d, gens):
        # all monomials of degree d in the target generators, with random coefficients
        mons = []

        def rec(i, rem, exps):
            if i == len(gens):
                if rem == 0:
                    mons.append(exps)
                return
            g, gd = gens[i]
            for e in range(rem // gd + 1):
                rec(i + 1, rem - e * gd, exps + [(g, e)])

        rec(0, d, [])
        terms = []
        for exps in mons:
            c = rng.randrange(p)
            if not c:
                continue
            body = "*".join(f"{g}^{e}" if e > 1 else g for g, e in exps if e)
            terms.append(f"{c}*{body}")
        return " + ".join(terms)

    lmap = [(g, image(d, left)) for g, d in base]
    rmap = [(g, image(d, right)) for g, d in base]
    lmap = [(g, e) for g, e in lmap if e]
    rmap = [(g, e) for g, e in rmap if e]
    return _spec(f"random_poly_span_{seed}", f"random polynomial span (seed {seed})", f"F{p}",
                 base, left, right, lmap, rmap, max_degree=max_degree)


FIXTURES = {
    "loop_cp_infty": (loop_cp_infty, "k <- k[x2] -> k; Tor is an exterior algebra on a degree-1 class"),
    "free_loop_cp_infty": (free_loop_cp_infty, "diagonal span of k[x2]; Tor is k[x] (x) Lambda[u1]"),
    "su4_u1": (lambda: su4_u1("Z"), "SU(4)/U(1), weights (-3,1,1,1), integer coefficients"),
    "su4_u1_f2": (lambda: su4_u1("F2"), "SU(4)/U(1), weights (-3,1,1,1), mod 2"),
    "cyclic_group": (cyclic_group, "cyclic_group:N, Z <- Z[u] -> Z[v] with u -> N v; H(BZ/N) (default N=2)"),
    "rp_infinity_f2": (rp_infinity_f2, "F2 over F2[i2,x3,x5,x9]; additively F2[i1], ring exterior"),
    "random_poly_span": (random_poly_span, "random_poly_span:SEED, random even span over F2/F3/F5 (default seed 0)"),
}


def list_fixtures() -> List[Tuple[str, str]]:
    return [(name, desc) for name, (_, desc) in FIXTURES.items()]


def fixture(name: str) -> SpanSpec:
    """Look up a fixture; parameterized ones take ``name:arg`` or ``name(arg)``."""
    m = re.fullmatch(r"([a-z0-9_]+?)(?:[:(](-?\d+)\)?)?", name.strip())
    if not m or m.group(1) not in FIXTURES:
        # allow the expanded names such as cyclic_group_3
        m2 = re.fullmatch(r"(cyclic_group|random_poly_span)_(\d+)", name.strip())
        if not m2:
            raise KeyError(f"unknown fixture {name!r}")
        base, arg = m2.group(1), m2.group(2)
    else:
        base, arg = m.group(1), m.group(2)
    factory = FIXTURES[base][0]
    if arg is None:
        return factory()
    if base not in ("cyclic_group", "random_poly_span"):
        raise KeyError(f"fixture {base} takes no argument")
    return factory(int(arg))
