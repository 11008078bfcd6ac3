import random

import pytest

from latkit import fp_algebra as fa
from oracles import radical_by_elements, radical_by_ideal_search, rref


def generated_matrix_algebra(p, size, ngens, rng):
    """Basis of the F_p-algebra generated by random matrices, as matrices."""
    gens = [[[rng.randrange(p) for _ in range(size)] for _ in range(size)] for _ in range(ngens)]

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(size)) % p for j in range(size)] for i in range(size)]

    one = [[int(i == j) for j in range(size)] for i in range(size)]
    basis = rref([sum(one, [])], p)
    while True:
        mats = [[b[i * size:(i + 1) * size] for i in range(size)] for b in basis]
        new = rref(basis + [sum(mul(m, g), []) for m in mats for g in gens], p)
        if len(new) == len(basis):
            return mats
        basis = new


def random_cases(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = rng.choice([2, 3])
        mats = generated_matrix_algebra(p, rng.choice([2, 3]), rng.choice([1, 2]), rng)
        if len(mats) <= 4:
            out.append(fa.FpAlgebra.from_matrices(p, mats))
    return out


@pytest.mark.parametrize("alg", random_cases(120, 0), ids=lambda a: f"p{a.p}d{a.dim}")
def test_radical_matches_ideal_search(alg):
    assert fa.radical(alg) == radical_by_ideal_search(alg.sc, alg.p)


@pytest.mark.parametrize("alg", random_cases(40, 1), ids=lambda a: f"p{a.p}d{a.dim}")
def test_radical_matches_element_oracle(alg):
    assert fa.radical(alg) == radical_by_elements(alg.sc, alg.p)


@pytest.mark.parametrize("p,n,rad_dim", [(2, 2, 1), (2, 4, 3), (3, 3, 2), (2, 3, 0), (3, 2, 0), (5, 5, 4)])
def test_group_algebra_radicals(p, n, rad_dim):
    # F_p[C_n]: radical dimension is n - n' where n' is the p-free part of n
    alg = fa.group_algebra(p, n)
    assert len(fa.radical(alg)) == rad_dim


def test_polynomial_quotients():
    assert fa.is_semisimple(fa.polynomial_quotient(2, [1, 1]))      # x^2 + x + 1 irreducible
    assert not fa.is_semisimple(fa.polynomial_quotient(3, [0, 0]))  # x^2
    assert fa.is_semisimple(fa.polynomial_quotient(7, [-1, 0]))     # (x - 1)(x + 1)
    assert len(fa.radical(fa.polynomial_quotient(2, [1, 0]))) == 1   # (x + 1)^2


def test_matrix_algebra_and_center():
    m = fa.matrix_algebra(3, 2)
    assert fa.is_semisimple(m)
    assert fa.center(m) == [list(m.unit)]
    assert len(fa.center(fa.group_algebra(2, 2))) == 2


def test_quotient_by_radical_is_semisimple():
    a = fa.group_algebra(2, 4)
    q = fa.quotient(a, fa.radical(a))
    assert q.dim == 1 and fa.is_semisimple(q)
    a = fa.product_algebra(fa.polynomial_quotient(3, [0, 0]), fa.matrix_algebra(3, 2))
    rad = fa.radical(a)
    assert fa.is_two_sided_ideal(a, rad) and len(rad) == 1
    assert fa.is_semisimple(fa.quotient(a, rad))


def test_validation():
    sc = [[[0, 1], [1, 0]], [[1, 0], [0, 0]]]  # e0 is not a two-sided unit
    with pytest.raises(ValueError):
        fa.FpAlgebra(2, sc, [1, 0])
    with pytest.raises(ValueError):
        fa.FpAlgebra(4, [[[1]]], [1])
    with pytest.raises(ValueError):
        fa.FpAlgebra.from_matrices(2, [[[0, 1], [0, 0]]])


def test_json_roundtrip():
    a = fa.group_algebra(3, 3)
    assert fa.FpAlgebra.from_json(a.to_json()) == a
