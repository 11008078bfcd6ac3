from fractions import Fraction

import pytest
import sympy

from latkit import exact_linalg as la
from latkit import orders
from oracles import quat_mul, semisimple_oracle

CURATED = orders.curated_orders()
GOLDEN_DISCR = {"Z": 1, "Z[i]": -4, "Z[3i]": -36, "Z[x]/(x^2-x-1)": 5, "Mat2(Z)": -1,
                "Lipschitz(-1,-1)": -16, "O(-1,-3)": -9}
QUATERNIONS = {"Lipschitz(-1,-1)": (-1, -1), "O(-1,-3)": (-1, -3)}


def oracle_quaternion_gram(block):
    """Reduced-trace Gram 2*Re(b_i b_j) computed with an independent product."""
    b = [list(map(Fraction, v)) for v in block.basis]
    return sympy.Matrix(4, 4, lambda i, j: 2 * quat_mul(b[i], b[j], block.a, block.b)[0])


@pytest.mark.parametrize("name", list(CURATED))
def test_discriminant_goldens(name):
    assert orders.reduced_trace_discriminant(CURATED[name]) == GOLDEN_DISCR[name]


@pytest.mark.parametrize("name", list(QUATERNIONS))
def test_quaternion_structure_against_oracle(name):
    o = CURATED[name]
    blk = o.blocks[0]
    b = [list(map(Fraction, v)) for v in blk.basis]
    coords = sympy.Matrix(b).T
    for i in range(4):
        for j in range(4):
            prod = sympy.Matrix(quat_mul(b[i], b[j], blk.a, blk.b))
            c = coords.solve(prod)
            assert all(x.is_integer for x in c)
            assert [int(x) for x in c] == o.sc[i][j]
    assert oracle_quaternion_gram(blk).det() == GOLDEN_DISCR[name]


def test_hurwitz_and_index_law():
    h = orders.hurwitz()
    assert orders.reduced_trace_discriminant(h) == -4
    assert oracle_quaternion_gram(h.blocks[0]).det() == -4
    # Lipschitz basis 1, i, j, k in Hurwitz coordinates: 1 = 2 h0 - i - j - k
    r = orders.index_squared_check(h, [[2, -1, -1, -1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert r["index"] == 2 and r["sub_discriminant"] == -16 and r["holds"]
    r = orders.index_squared_check(CURATED["Z[i]"], [[1, 0], [0, 3]])
    assert r["sub_discriminant"] == -36 and r["holds"]


@pytest.mark.parametrize("name", list(CURATED))
def test_trace_relation(name):
    assert orders.check_trace_relation(CURATED[name])


def test_intrinsic_forms_by_hand():
    # Z[i]: left multiplication by i is [[0,-1],[1,0]], trace 0; by 1 trace 2
    assert orders.intrinsic_trace_form(CURATED["Z[i]"]) == [[2, 0], [0, -2]]
    # Mat2(Z) on itself: Tr_B = 2 tr
    g = orders.intrinsic_trace_form(CURATED["Mat2(Z)"])
    assert la.det(g) == 16 * la.det(orders.reduced_trace_gram(CURATED["Mat2(Z)"]))


@pytest.mark.parametrize("name", list(CURATED))
@pytest.mark.parametrize("ell", [2, 3, 5, 7])
def test_semisimplicity_against_oracle(name, ell):
    o = CURATED[name]
    r = orders.verify_prop_b1(o, ell)
    assert r["semisimple"] == semisimple_oracle(o.sc, ell)
    assert r["holds"]


def test_form_identity():
    for blk in (orders.quadratic_ring(-1, 0), orders.quadratic_ring(1, 1),
                orders.NumberRingBlock(orders.quadratic_ring(-1, 0).mult, 2)):
        assert orders.check_form_identity(blk)["holds"]


def test_json_roundtrip_and_errors():
    for o in CURATED.values():
        back = orders.Order.from_json(o.to_json())
        assert back.sc == o.sc and back.trace_vector == o.trace_vector
    with pytest.raises(ValueError):
        orders.NumberRingBlock([[[0, 1], [1, 0]], [[1, 0], [0, 1]]])
    with pytest.raises(ValueError):
        orders.Order.from_json({"blocks": [{"kind": "octonion"}]})
    with pytest.raises(orders.DegenerateFormError):
        # Z[eps]/(eps^2): nilpotent element makes the trace form degenerate
        orders.reduced_trace_discriminant(orders.Order([orders.quadratic_ring(0, 0)]))
