import pytest
import sympy

from latkit import av_forms as av
from latkit import exact_linalg as la
from latkit import orders
from oracles import count_invertible


def test_standard_values():
    data = av.standard_end_data()
    want = {"Z": (1, 2), "Z[i]": (-4, -4), "Mat2(Z)": (-16, -16)}
    for name, (delta_big, delta_small) in want.items():
        e = data[name]
        assert av.intrinsic_discriminant(e) == delta_big
        assert av.degree_discriminant(e) == delta_small
        rec = av.recompute(e)
        assert all(v["match"] for v in rec.values()), rec


def test_direct_determinants_with_sympy():
    # recompute degree forms without the library: trace of products of the representation
    for name, e in av.standard_end_data().items():
        rep = [sympy.Matrix(m) for m in e.order.representation]
        gram = sympy.Matrix(len(rep), len(rep), lambda i, j: (rep[i] * rep[j]).trace())
        assert gram.det() == av.degree_discriminant(e)


def test_formula_is_multiplicative_over_factors():
    f1, f2 = av.IsotypicDatum(1, 1, 1, 2), av.IsotypicDatum(2, 1, 1, 1)
    assert av.intrinsic_ratio([f1, f2]) == av.intrinsic_ratio([f1]) * av.intrinsic_ratio([f2])
    assert av.degree_ratio([f1, f2]) == av.degree_ratio([f1]) * av.degree_ratio([f2])


def test_isotypic_validation():
    with pytest.raises(ValueError):
        av.IsotypicDatum(3, 1, 1, 1)  # 3 does not divide 2
    with pytest.raises(ValueError):
        av.IsotypicDatum(0, 1, 1, 1)
    with pytest.raises(ValueError):
        av.EndData((), 0)


def test_end_data_json():
    e = av.EndData.from_json({"factors": [{"e": 1, "d": 1, "g": 1, "m": 2}], "base_discr": -1,
                              "order": orders.mat2().to_json()})
    assert av.intrinsic_discriminant(e) == -16
    assert all(v["match"] for v in av.recompute(e).values())


@pytest.mark.parametrize("g", range(1, 8))
def test_q_of_g_against_sympy(g):
    x = 2 * g * sympy.exp(sympy.Rational(2 * g) / sympy.E)
    assert av.q_of_g(g) == int(sympy.floor(x.evalf(60)))


def test_q_small_values():
    assert [av.q_of_g(g) for g in (1, 2, 3)] == [4, 17, 54]


@pytest.mark.parametrize("n,q", [(2, 3), (4, 3), (2, 4), (4, 4)])
def test_group_orders_by_counting(n, q):
    want = count_invertible(n, q)
    got = av.gl_order(n, q) if q == 3 else av.gl_order_z4(n)
    assert got == want


def test_d_p_of_g():
    assert av.d_p_of_g(0, 1) == 48 and av.d_p_of_g(2, 1) == 48
    assert av.d_p_of_g(3, 1) == 96
    assert av.d_p_of_g(3, 2) == count_invertible(4, 4)
    with pytest.raises(ValueError):
        av.d_p_of_g(4, 1)
