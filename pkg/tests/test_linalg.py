from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dgtor.linalg import (
    GF,
    QQ,
    ZZ,
    CoefficientRing,
    SparseMatrix,
    homology_at,
    kernel_basis,
    rank,
    smith_normal_form,
)
from oracles import integer_invariants

small = st.integers(min_value=-6, max_value=6)


@st.composite
def int_matrices(draw, max_dim=5):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return SparseMatrix.from_dense(rows, c)


def test_ring_parsing():
    assert CoefficientRing.parse("zz") is ZZ
    assert CoefficientRing.parse("Q") == QQ
    assert CoefficientRing.parse("Fp5") == GF(5)
    assert str(CoefficientRing.parse("F2")) == "F2"
    with pytest.raises(ValueError):
        CoefficientRing.parse("F4")
    with pytest.raises(ValueError):
        CoefficientRing.parse("R")


def test_ring_arithmetic():
    assert GF(7).div(3, 5) == 2
    assert QQ.div(1, 2) == Fraction(1, 2)
    assert ZZ.div(6, 3) == 2
    with pytest.raises(ArithmeticError):
        ZZ.div(5, 2)
    assert GF(3)(Fraction(1, 2)) == 2


def test_snf_example():
    m = SparseMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    left, divs, right = smith_normal_form(m)
    assert divs == (2, 6, 12)
    d = left.matmul(m, ZZ).matmul(right, ZZ)
    assert d == SparseMatrix(3, 3, {(0, 0): 2, (1, 1): 6, (2, 2): 12})


@given(int_matrices())
def test_snf_diagonalizes(m):
    left, divs, right = smith_normal_form(m)
    d = left.matmul(m, ZZ).matmul(right, ZZ)
    assert d == SparseMatrix(m.rows, m.cols, {(i, i): v for i, v in enumerate(divs)})
    assert all(v > 0 for v in divs)
    assert all(divs[i + 1] % divs[i] == 0 for i in range(len(divs) - 1))


@given(int_matrices())
def test_snf_matches_reference(m):
    _, divs, _ = smith_normal_form(m)
    r, tors = integer_invariants(m.to_dense(), m.cols) if m.rows else (0, [])
    assert len(divs) == r == rank(m, ZZ)
    assert [d for d in divs if d != 1] == tors


@given(int_matrices(), st.sampled_from([2, 3, 5]))
def test_field_rank_bounded_by_integer_rank(m, p):
    assert rank(m, GF(p)) <= rank(m, ZZ) == rank(m, QQ)


@given(int_matrices(), st.sampled_from([ZZ, QQ, GF(3)]))
def test_kernel_basis_is_killed(m, ring):
    ker = kernel_basis(m, ring)
    assert len(ker) == m.cols - rank(m, ring)
    for v in ker:
        assert not m.apply(v, ring)


def test_homology_of_multiplication_by_n():
    # Z --n--> Z in degrees 0 -> 1
    d_in = SparseMatrix.from_dense([[4]])
    zero = SparseMatrix(0, 1)
    h = homology_at(d_in, zero, ZZ)
    assert (h.free_rank, h.torsion) == (0, (4,))
    assert h.group_label() == "Z/4"
    assert h.coordinates({0: 5}) == [1]
    assert homology_at(d_in, zero, GF(2)).dimension == 1
    assert homology_at(d_in, zero, QQ).is_zero


def test_homology_rejects_noncomplex():
    d_in = SparseMatrix.from_dense([[1]])
    d_out = SparseMatrix.from_dense([[1]])
    with pytest.raises(Exception):
        homology_at(d_in, d_out, ZZ)
