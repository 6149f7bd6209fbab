"""Quick invariant checks run by ``dgtor selftest``.

These are small versions of the test suite: enough to catch a broken install
or a sign regression without needing pytest.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, List

from .barcobar import BarConstruction, CobarConstruction
from .graded import check_d_squared
from .homotopy import path_object
from .spanspec import build, fixture, oracle_compare
from .tor import TorSpace, classical_product, shuffle_product


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0


def _d_squared() -> str:
    bad = []
    for name in ("loop_cp_infty", "free_loop_cp_infty", "su4_u1", "cyclic_group:2", "rp_infinity_f2"):
        data = build(fixture(name).with_overrides(max_degree=6))
        tsb = data.bar()
        if check_d_squared(tsb, 6) is not None:
            bad.append(f"{name}: two-sided bar")
        b = BarConstruction(data.base, 6)
        if check_d_squared(b, 6) is not None:
            bad.append(f"{name}: bar")
        if check_d_squared(CobarConstruction(b, 6), 6) is not None:
            bad.append(f"{name}: cobar")
        if check_d_squared(path_object(data.base).carrier, 6) is not None:
            bad.append(f"{name}: path object")
    return "; ".join(bad)


def _oracle() -> str:
    bad = []
    names = ["loop_cp_infty", "su4_u1", "su4_u1_f2", "cyclic_group:6", "rp_infinity_f2"]
    names += [f"random_poly_span:{s}" for s in range(5)]
    for name in names:
        spec = fixture(name).with_overrides(max_degree=min(fixture(name).max_degree, 10))
        verdict = oracle_compare(build(spec))
        if not verdict["agrees"]:
            bad.append(f"{name}: {verdict['mismatches'][0]}")
    return "; ".join(bad)


def _products() -> str:
    bad = []
    for name in ("loop_cp_infty", "free_loop_cp_infty", "su4_u1", "cyclic_group:3"):
        data = build(fixture(name).with_overrides(max_degree=6))
        space = TorSpace(data.bar(), 6)
        for label, rs in (("shuffle", shuffle_product(space)), ("classical", classical_product(space))):
            for axiom in ("unital", "commutative", "associative"):
                fail = getattr(rs, f"{axiom}_failure")()
                if fail is not None:
                    bad.append(f"{name}: {label} product not {axiom} at {fail}")
            if not rs.same_as(shuffle_product(space)):
                bad.append(f"{name}: {label} differs from shuffle")
    return "; ".join(bad)


CHECKS: List[tuple] = [
    ("d^2 = 0 on bar, cobar, two-sided bar and path objects", _d_squared),
    ("bar route agrees with the Koszul oracle", _oracle),
    ("products are unital, commutative and associative", _products),
]


def run_selftest(echo: Callable[[str], None] = print) -> bool:
    ok = True
    for name, fn in CHECKS:
        start = time.perf_counter()
        try:
            detail = fn()
        except Exception as exc:  # report and keep going
            detail = f"{type(exc).__name__}: {exc}"
        res = CheckResult(name, not detail, detail, time.perf_counter() - start)
        ok &= res.ok
        echo(f"{'PASS' if res.ok else 'FAIL'}  {res.name}" + (f"  ({res.detail})" if res.detail else ""))
    return ok
