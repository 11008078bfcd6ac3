import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from latkit import exact_linalg as la

small = st.integers(-9, 9)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def square(max_n=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=150, deadline=None)
@given(square())
def test_det_matches_sympy(m):
    assert la.det(m) == sympy.Matrix(m).det()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_smith_form_against_sympy(m):
    u, d, v = la.smith_normal_form(m)
    assert la.matmul(la.matmul(u, m), v) == d
    assert abs(la.det(u)) == 1 and abs(la.det(v)) == 1
    r, c = len(m), len(m[0])
    ours = [d[i][i] for i in range(min(r, c))]
    theirs = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    theirs = [abs(int(theirs[i, i])) for i in range(min(r, c))]
    key = lambda x: (x == 0, x)
    assert sorted(ours, key=key) == sorted(theirs, key=key)
    nz = [x for x in ours if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_integer_kernel(m):
    k = la.integer_kernel(m)
    assert all(not any(la.matvec(m, v)) for v in k)
    assert len(k) == len(m[0]) - sympy.Matrix(m).rank()
    if k:
        # a primitive kernel basis: its saturation is itself
        assert la.same_span(la.saturation(k, len(m[0])), k)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_hnf_has_same_span(m):
    rows = [r for r in m]
    h = la.span_basis(rows, len(m[0]))
    assert la.same_span(h, rows) if any(any(r) for r in rows) else not h
    assert all(la.contains(h, r) for r in rows)


def test_quotient_invariants_examples():
    assert la.quotient_invariants(la.unit_vectors(2), [[2, 0], [0, 3]]) == [6]
    assert la.quotient_invariants(la.unit_vectors(3), la.unit_vectors(3, 4)) == [4, 4, 4]
    assert la.quotient_invariants(la.unit_vectors(2), [[1, 1]]) == [0]


def test_intersect_and_preimage():
    a = [[2, 0], [0, 1]]
    b = [[1, 0], [0, 3]]
    assert la.same_span(la.intersect(a, b, 2), [[2, 0], [0, 3]])
    # preimage of 2Z^2 under multiplication by diag(1, 2)
    pre = la.preimage([[1, 0], [0, 2]], [[2, 0], [0, 2]], 2)
    assert la.same_span(pre, [[2, 0], [0, 1]])


def test_inverse_mod_and_kernel_mod():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 4)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        if la.det(m) % 5 == 0:
            continue
        inv = la.inverse_mod(m, 25)
        assert la.mod_matrix(la.matmul(m, inv), 25) == la.identity(n)
    ker = la.kernel_lattice_mod([[2]], 4, 1)
    assert la.same_span(ker, [[2]])


def test_valuation_and_xgcd():
    assert la.valuation(48, 2) == 4
    assert la.valuation(7, 3) == 0
    g, s, t = la.xgcd(240, 46)
    assert g == 2 and 240 * s + 46 * t == 2
    with pytest.raises(ValueError):
        la.valuation(0, 2)
