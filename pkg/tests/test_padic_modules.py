from math import prod

import pytest

from latkit import exact_linalg as la
from latkit import padic_modules as pm
from oracles import apply, commuting_matrices, fixed_vectors, residue_span


def small_16may_instances():
    out = []
    seed = 0
    while len(out) < 12:
        m, sub, a, n = pm.random_16may_instance(seed, max_rank=3, max_level=2, primes=(2, 3))
        seed += 1
        if (m.prime ** n) ** m.rank <= 20_000:
            out.append((m, sub, a, n))
    return out


@pytest.mark.parametrize("inst", small_16may_instances(), ids=lambda i: f"l{i[0].prime}k{i[0].rank}n{i[3]}")
def test_16may_by_enumeration(inst):
    m, sub, a, n = inst
    k, mod = m.rank, m.prime ** n
    r = pm.check_lemma_16may(m, sub, a, n)
    L = residue_span(sub, mod, k)  # L + l^n M, mod l^n
    elems = fixed_vectors([], mod, k)

    def in_L(v):
        return tuple(x % mod for x in v) in L

    quotient_fixed = [v for v in elems if all(in_L([x - y for x, y in zip(apply(g, v, mod), v)])
                                              for g in a.generators)]
    image = residue_span(fixed_vectors(a.generators, mod, k) + list(L), mod, k)
    d = r["discriminant"]
    assert r["holds"] == all(tuple(d * x % mod for x in v) in image for v in quotient_fixed)
    assert r["holds"]
    # orders of the two finite groups agree with the reported invariant factors
    assert len({tuple(v) for v in quotient_fixed}) // len(L) == prod(r["quotient_invariants"])
    assert len(image) // len(L) == prod(r["image_invariants"])


@pytest.mark.parametrize("name,ell,gens", [c for c in pm.PINNED_13AUG if len(c[2][0]) == 2])
def test_centralizer_mod_by_enumeration(name, ell, gens):
    a = pm.ActionData(ell, 12, tuple(gens))
    for n in (1, 2):
        mod = ell ** n
        if mod ** 4 > 50_000:
            continue
        brute = commuting_matrices(gens, mod, 2)
        assert prod(g.order for g in pm.centralizer_mod(a, n)) == len(brute)


@pytest.mark.parametrize("name,ell,gens", [c for c in pm.PINNED_13AUG if len(c[2][0]) == 2])
def test_13aug_r_by_enumeration(name, ell, gens):
    a = pm.ActionData(ell, 12, tuple(gens))
    rep = pm.check_lemma_13aug(a, 4)
    assert rep["holds"]
    cent = pm.centralizer_lattice(a.generators, 2, None)
    for level in rep["levels"][:2]:
        n = level["n"]
        mod = ell ** n
        if mod ** 4 > 50_000:
            continue
        c_n = commuting_matrices(gens, mod, 2)
        l_n = residue_span(cent, mod, 4)
        assert l_n <= set(c_n)
        e = next(e for e in range(n + 1)
                 if all(tuple(ell ** e * x % mod for x in v) in l_n for v in c_n))
        assert level["r"] == e


def test_13aug_pinned_suite():
    for name, a in pm.pinned_13aug():
        r = pm.check_lemma_13aug(a, 6)
        assert r["holds"], (name, r)


def test_13aug_degenerate_trace_form():
    a = pm.ActionData(2, 12, (((1, 1), (0, 1)),))
    with pytest.raises(ValueError):
        pm.check_lemma_13aug(a, 3)


def test_invariants_mod_counts():
    a = pm.ActionData(3, 6, (((0, 1), (1, 0)),))
    m = pm.PadicModule(3, 6, 2, ((1, 0), (0, 1)))
    gens = pm.invariants_mod(m, a, 2)
    assert prod(g.order for g in gens) == len(fixed_vectors(a.generators, 9, 2))


def test_precision_guard():
    m = pm.PadicModule(2, 5, 1, ((8,),))
    a = pm.ActionData(2, 5, (((1,),),))
    with pytest.raises(pm.PrecisionError):
        pm.check_lemma_16may(m, [[1]], a, 2)  # needs 2 + 3 + slack 2 > 5
    with pytest.raises(pm.PrecisionError):
        pm.centralizer_mod(pm.ActionData(2, 3, (((1, 0), (0, 1)),)), 4)


def test_double_centralizer():
    r = pm.double_centralizer_check(pm.ActionData(5, 8, (((0, -1), (1, 0)),)), 2)
    assert r["holds"] is True
    r = pm.double_centralizer_check(pm.ActionData(2, 8, (((1, 1), (0, 1)),)), 2)
    assert r["skipped"]


def test_action_json_roundtrip():
    a = pm.ActionData(3, 7, (((1, 1), (0, -1)),))
    assert pm.ActionData.from_json(a.to_json()) == a
    with pytest.raises(ValueError):
        pm.ActionData(3, 7, (((1, 1), (0, -1)), ((1,),)))
