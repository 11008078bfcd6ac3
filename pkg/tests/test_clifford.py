import random
from itertools import product

import pytest
import sympy

from latkit import clifford as cl
from latkit import lattices as lat
from latkit.suites import PINNED_SYMPLECTIC, pinned_clifford_lattices, random_gram
from oracles import clifford_diag_basis, clifford_diag_left_matrix, clifford_diag_mul


@pytest.mark.parametrize("q", [(1,), (-2,), (1, 1), (2, 5), (1, -1, 2), (3, -1, 2, 1)])
def test_table_matches_sign_rule(q):
    c = cl.CliffordAlgebra(lat.diagonal(*q))
    assert c.basis == clifford_diag_basis(len(q))
    for s, t in product(c.basis, repeat=2):
        coef, u = clifford_diag_mul(q, s, t)
        assert c.mul({s: 1}, {t: 1}) == ({u: coef} if coef else {})


@pytest.mark.parametrize("name,l", pinned_clifford_lattices())
def test_defining_relation_and_associativity(name, l):
    c = cl.build(l)
    r = l.rank
    for i in range(r):
        for j in range(r):
            vw = c.mul({(i,): 1}, {(j,): 1})
            wv = c.mul({(j,): 1}, {(i,): 1})
            total = dict(vw)
            for k, v in wv.items():
                total[k] = total.get(k, 0) + v
            total = {k: v for k, v in total.items() if v}
            assert total == ({(): 2 * l.gram[i][j]} if l.gram[i][j] else {})
    if r <= 3:
        assert c.check_associativity()


def test_even_part_closed_and_reversal_antiautomorphism():
    rng = random.Random(2)
    c = cl.build(lat.Lattice([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]))

    def rand_elem(even=False):
        return {s: rng.randint(-3, 3) for s in c.basis if not even or len(s) % 2 == 0}

    for _ in range(30):
        x, y = rand_elem(), rand_elem()
        lhs = c.reversal(c.mul(x, y))
        rhs = c.mul(c.reversal(y), c.reversal(x))
        assert lhs == rhs
        assert c.is_even(c.mul(rand_elem(True), rand_elem(True)))


def test_traces_against_oracle():
    for q in [(1,), (1, 1), (2, -3), (1, 2, 3), (1, -1, 1, 2)]:
        n = len(q)
        c = cl.CliffordAlgebra(lat.diagonal(*q))
        for i in range(n):
            for j in range(n):
                want = (clifford_diag_left_matrix(q, {(i,): 1}) * clifford_diag_left_matrix(q, {(j,): 1})).trace()
                assert c.trace(c.mul({(i,): 1}, {(j,): 1})) == want


def test_trace_restriction_pinned_and_random():
    rng = random.Random(0)
    cases = [l for _, l in pinned_clifford_lattices()] + [random_gram(rng) for _ in range(20)]
    for l in cases:
        r = cl.trace_restriction_check(l)
        assert r["holds"] and r["scalar"] == 2 ** l.rank


@pytest.mark.parametrize("name,diag,f1,f2", PINNED_SYMPLECTIC)
def test_symplectic_against_oracle(name, diag, f1, f2):
    c = cl.build(lat.diagonal(*diag))
    r = cl.symplectic_form(c, f1, f2)
    q = tuple(diag)
    basis = clifford_diag_basis(len(q))
    vec = lambda f: {(i,): x for i, x in enumerate(f) if x}
    pre = clifford_diag_left_matrix(q, vec(f1)) * clifford_diag_left_matrix(q, vec(f2))

    def rev(s):
        return {s: -1 if (len(s) * (len(s) - 1) // 2) % 2 else 1}

    gram = sympy.Matrix(len(basis), len(basis), lambda i, j: (
        pre * clifford_diag_left_matrix(q, rev(basis[i])) * clifford_diag_left_matrix(q, {basis[j]: 1})).trace())
    assert gram == sympy.Matrix(r["gram"])
    assert r["skew"] and gram + gram.T == sympy.zeros(len(basis))
    assert r["det"] == gram.det() != 0


def test_symplectic_determinant_goldens():
    dets = {name: cl.symplectic_form(cl.build(lat.diagonal(*d)), f1, f2)["det"]
            for name, d, f1, f2 in PINNED_SYMPLECTIC}
    assert dets == {"<1>+<1>": 256, "<2>+<2>": 65536, "<1>+<3>": 20736, "<2>+<5>": 2560000,
                    "<1>+<1> rotated": 4096}


def test_symplectic_precondition():
    c = cl.build(lat.diagonal(1, 1))
    with pytest.raises(ValueError):
        cl.symplectic_form(c, [1, 0], [1, 1])


def test_complement_index():
    assert cl.complement_index(lat.diagonal(1))["invariant_factors"] == [2]
    for l, inv in [(lat.diagonal(1, 1), [4, 4]), (lat.hyperbolic_plane(), [4, 4]), (lat.diagonal(2, 2), [8, 8])]:
        r = cl.complement_index(l)
        assert r["invariant_factors"] == inv and r["holds"]
    with pytest.raises(cl.RankCapError):
        cl.complement_index(lat.diagonal(1, 1, 1, 1, 1))


def test_rank_cap():
    with pytest.raises(cl.RankCapError):
        cl.CliffordAlgebra(lat.diagonal(*([1] * 7)))


def test_left_multiplication_squares_to_norm():
    rng = random.Random(4)
    for _, l in pinned_clifford_lattices():
        c = cl.build(l)
        v = [rng.randint(-3, 3) for _ in range(l.rank)]
        m = sympy.Matrix(cl.left_mult_matrix(c, c.vector(v)))
        assert m * m == l.inner(v, v) * sympy.eye(c.dim)
