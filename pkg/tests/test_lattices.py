import random
from functools import reduce
from itertools import combinations
from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from latkit import exact_linalg as la
from latkit import lattices as lat


def minors_gcd(vectors):
    """gcd of maximal minors; equals 1 exactly for a primitive set of vectors."""
    m = sympy.Matrix(vectors)
    k, n = m.shape
    return reduce(gcd, (int(m[:, list(c)].det()) for c in combinations(range(n), k)), 0)


def test_named_goldens_against_sympy():
    for l, want in [(lat.e8(-1), 1), (lat.hyperbolic_plane(), -1), (lat.k3_lattice(), -1),
                    (lat.lambda_sharp(), -1)]:
        assert lat.discriminant(l) == want == sympy.Matrix(l.gram).det()
    assert lat.lambda_sharp().rank == 25 and lat.k3_lattice().rank == 22
    for d in (1, 2, 7, 100):
        assert lat.discriminant(lat.lambda_2d(d)) == -2 * d


def test_named_lookup():
    assert lat.named_lattice("<3>").gram == ((3,),)
    assert lat.named_lattice("<n>", n=-5).gram == ((-5,),)
    assert lat.named_lattice("diag", entries=[1, 2]).rank == 2
    assert lat.named_lattice("u", twist=2).gram == ((0, 2), (2, 0))
    with pytest.raises(KeyError):
        lat.named_lattice("leech")


def test_rejects_bad_gram():
    with pytest.raises(ValueError):
        lat.Lattice([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        lat.Lattice([[1, 1], [1, 1]])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_discriminant_group_order(b):
    n = len(b)
    gram = [[b[i][j] + b[j][i] for j in range(n)] for i in range(n)]
    if sympy.Matrix(gram).det() == 0:
        return
    l = lat.Lattice(gram)
    inv = lat.discriminant_group(l)
    assert reduce(lambda x, y: x * y, inv, 1) == abs(lat.discriminant(l))
    snf = sympy_snf(sympy.Matrix(gram), domain=sympy.ZZ)
    assert sorted(inv) == sorted(abs(int(snf[i, i])) for i in range(n) if abs(int(snf[i, i])) > 1)


def test_orthogonal_complement_properties():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(2, 5)
        l = lat.diagonal(*[rng.choice([-3, -1, 1, 2, 5]) for _ in range(n)])
        gens = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(1, n - 1))]
        if sympy.Matrix(gens).rank() != len(gens):
            continue
        s = lat.Sublattice.spanned_by(l, gens)
        c = lat.orthogonal_complement(s)
        assert c.rank == n - s.rank
        assert all(l.inner(x, y) == 0 for x in c.basis for y in s.basis)
        assert minors_gcd(c.basis) == 1
        sat = lat.saturate(s)
        assert minors_gcd(sat.basis) == 1 and sat.contains(s)
        assert lat.is_primitive(s) == (minors_gcd(s.basis) == 1)


def test_fixed_sublattice_brute_force():
    from latkit.suites import random_lattice_with_group
    rng = random.Random(11)
    for _ in range(40):
        l, group = random_lattice_with_group(rng)
        fixed, rep = lat.fixed_sublattice(l, group)
        elems = group.closure()
        assert all(la.matvec(g, v) == list(v) for g in elems for v in fixed.basis)
        ns = sympy.Matrix.vstack(*[sympy.Matrix(g) - sympy.eye(l.rank) for g in elems]).nullspace()
        assert fixed.rank == len(ns)
        if fixed.rank:
            assert minors_gcd(fixed.basis) == 1
            assert (abs(lat.discriminant(l)) * len(elems)) ** fixed.rank % fixed.discriminant() == 0


def test_fixed_sublattice_examples():
    swap = lat.IsometryGroup([[[0, 1], [1, 0]]])
    fixed, rep = lat.fixed_sublattice(lat.diagonal(1, 1), swap)
    assert la.same_span(fixed.basis, [[1, 1]]) and rep.discriminant == 2 and rep.divides
    with pytest.raises(ValueError):
        lat.fixed_sublattice(lat.diagonal(1, 2), swap)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 7))
def test_four_squares(n):
    xs = lat.four_squares(n)
    assert sum(x * x for x in xs) == n
    assert list(xs) == sorted(xs, reverse=True)


def test_embedding_full_check_small_d():
    for d in (1, 2, 3, 17, 50):
        e = lat.embed_polarization(d)
        assert e.certificate["checked"] == "full"
        assert e.certificate["isometric"] and e.certificate["primitive"]
        m = sympy.Matrix(e.matrix)
        pulled = m.T * sympy.Matrix(lat.lambda_sharp().gram) * m
        assert pulled == sympy.Matrix(lat.lambda_2d(d).gram)
