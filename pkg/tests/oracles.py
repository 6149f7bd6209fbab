"""Independent reference computations used by the tests.

Nothing here goes through bar constructions or the package's homology code;
integer matrices are diagonalized with sympy-free, textbook elimination.
"""
from __future__ import annotations

from itertools import product
from math import gcd
from typing import Dict, List, Tuple


def integer_invariants(rows: List[List[int]], ncols: int) -> Tuple[int, List[int]]:
    """Rank and nontrivial invariant factors of an integer matrix, by elementary operations."""
    m = [list(r) for r in rows]
    nrows = len(m)
    diag = []
    t = 0
    while t < min(nrows, ncols):
        piv = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if m[i][j] and (piv is None or abs(m[i][j]) < abs(m[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        m[t], m[i] = m[i], m[t]
        for r in m:
            r[t], r[j] = r[j], r[t]
        done = False
        while not done:
            done = True
            p = m[t][t]
            for i in range(t + 1, nrows):
                q = m[i][t] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                if m[i][t]:
                    done = False
            for j in range(t + 1, ncols):
                q = m[t][j] // p
                if q:
                    for r in m:
                        r[j] -= q * r[t]
                if m[t][j]:
                    done = False
            if not done:
                # move the smallest remaining entry of row/column t to the pivot
                best = (abs(p), t, t)
                for i in range(t + 1, nrows):
                    if m[i][t] and abs(m[i][t]) < best[0]:
                        best = (abs(m[i][t]), i, t)
                for j in range(t + 1, ncols):
                    if m[t][j] and abs(m[t][j]) < best[0]:
                        best = (abs(m[t][j]), t, j)
                _, i, j = best
                m[t], m[i] = m[i], m[t]
                for r in m:
                    r[t], r[j] = r[j], r[t]
        diag.append(abs(m[t][t]))
        t += 1
    # make a divisibility chain
    changed = True
    while changed:
        changed = False
        for a in range(len(diag)):
            for b in range(a + 1, len(diag)):
                g = gcd(diag[a], diag[b])
                if g != diag[a]:
                    diag[a], diag[b] = g, diag[a] * diag[b] // g
                    changed = True
    return len(diag), [d for d in diag if d != 1]


def quotient_groups(gens: Dict[str, Tuple[int, bool]], relations: List[Dict[Tuple[int, ...], int]], top: int):
    """Degreewise groups of Z[gens]/(relations) by monomial enumeration.

    ``gens`` maps name -> (degree, exterior).  Relations are dicts from
    exponent tuples (in the order of ``gens``) to integer coefficients and must
    be homogeneous; since the only odd generators here are exterior and the
    relations are monomial times scalars, sign conventions never enter.
    """
    names = list(gens)
    degs = [gens[n][0] for n in names]
    ext = [gens[n][1] for n in names]

    def monomials(d):
        out = []
        ranges = [range(2) if e else range(d // g + 1) for g, e in zip(degs, ext)]
        for exps in product(*ranges):
            if sum(a * g for a, g in zip(exps, degs)) == d:
                out.append(exps)
        return out

    def mdeg(exps):
        return sum(a * g for a, g in zip(exps, degs))

    groups = []
    for d in range(top + 1):
        basis = monomials(d)
        index = {m: i for i, m in enumerate(basis)}
        rows = []
        for rel in relations:
            rd = mdeg(next(iter(rel)))
            if rd > d:
                continue
            for mult in monomials(d - rd):
                row = [0] * len(basis)
                for m, c in rel.items():
                    e = tuple(a + b for a, b in zip(m, mult))
                    if any(x > 1 for x, is_ext in zip(e, ext) if is_ext):
                        continue
                    row[index[e]] += c
                if any(row):
                    rows.append(row)
        r, tors = integer_invariants(rows, len(basis)) if rows else (0, [])
        groups.append((len(basis) - r, sorted(tors)))
    return groups


def su4_expected(top: int = 16):
    """Z[s2] (x) Lambda[y5, z7] / (6s^2, 2s^3, s^4, 2s^2 y, 3s^2 z)."""
    gens = {"s": (2, False), "y": (5, True), "z": (7, True)}
    rels = [{(2, 0, 0): 6}, {(3, 0, 0): 2}, {(4, 0, 0): 1}, {(2, 1, 0): 2}, {(2, 0, 1): 3}]
    return quotient_groups(gens, rels, top)


def exterior_on_poly_dims(gen_degree: int, top: int) -> List[int]:
    """Dimensions of k[x] (x) Lambda[u1] with |x| = gen_degree."""
    return [1 if (d % gen_degree in (0, 1)) else 0 for d in range(top + 1)]
