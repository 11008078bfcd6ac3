"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a plain dict with a ``name``, a one-line ``statement`` of
what is checked, the number of ``cases``, a list of ``failures`` and
suite-specific details.  Reports contain no timings so that JSON output is
byte-stable for a fixed seed.
"""

from __future__ import annotations

import random

from . import av_forms, clifford, exact_linalg as la, lattices as lat, orders, padic_modules as pm
from . import torsion_brauer as tb


def _report(name, statement, cases, failures, **details):
    out = {"name": name, "statement": statement, "cases": cases, "failures": failures,
           "passed": not failures}
    out.update(details)
    return out


# ---------------------------------------------------------------------------
# lattices


def named_lattices(dmax: int = 100) -> dict:
    checks = [
        ("E8(-1)", lat.discriminant(lat.e8(-1)), 1),
        ("U", lat.discriminant(lat.hyperbolic_plane()), -1),
        ("K3", lat.discriminant(lat.k3_lattice()), -1),
        ("Lambda#", lat.discriminant(lat.lambda_sharp()), -1),
        ("rank Lambda#", lat.lambda_sharp().rank, 25),
    ]
    checks += [(f"Lambda_2d d={d}", lat.discriminant(lat.lambda_2d(d)), -2 * d) for d in range(1, dmax + 1)]
    failures = [{"case": n, "got": got, "want": want} for n, got, want in checks if got != want]
    return _report("named-lattices", "discriminants and ranks of the named lattices", len(checks), failures)


def _signed_permutation(rng, k):
    perm = list(range(k))
    rng.shuffle(perm)
    m = la.zeros(k, k)
    for i, j in enumerate(perm):
        m[i][j] = rng.choice((1, -1))
    return m


def random_lattice_with_group(rng: random.Random, max_rank: int = 6, max_group: int = 8):
    """A nondegenerate lattice and a finite isometry group of order <= max_group."""
    while True:
        k = rng.randint(1, max_rank)
        gens = [_signed_permutation(rng, k) for _ in range(rng.randint(1, 2))]
        group = lat.IsometryGroup(gens)
        try:
            elems = group.closure(cap=max_group)
        except lat.GroupTooLarge:
            continue
        base = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(k)]
        base = [[base[i][j] + base[j][i] for j in range(k)] for i in range(k)]
        gram = la.zeros(k, k)
        for g in elems:
            gram = la.matadd(gram, la.matmul(la.transpose(g), la.matmul(base, g)))
        if la.det(gram) == 0:
            continue
        return lat.Lattice(gram), group


def lemma21(trials: int = 200, seed: int = 0) -> dict:
    rng = random.Random(seed)
    failures, nonzero = [], 0
    for t in range(trials):
        l, group = random_lattice_with_group(rng)
        _, rep = lat.fixed_sublattice(l, group)
        if rep.rank:
            nonzero += 1
            if not rep.divides:
                failures.append({"trial": t, "gram": l.gram, **rep.to_json()})
    return _report("lemma2.1", "discr(L^G) divides (discr(L) |G|)^rank(L^G)", trials, failures,
                   seed=seed, nonzero_fixed=nonzero)


def four_squares(dmax: int = 100_000, full_sample: int = 50) -> dict:
    failures = []
    for d in range(1, dmax + 1):
        emb = lat.embed_polarization(d, full_check=d <= full_sample)
        c = emb.certificate
        if not (c["isometric"] and c["primitive"] and c["norm"] == -2 * d):
            failures.append({"d": d, **c})
    return _report("four-squares", "Lambda_2d embeds primitively and isometrically in Lambda#",
                   dmax, failures, full_checks=min(full_sample, dmax))


# ---------------------------------------------------------------------------
# orders and forms


def prop_b1(lmax: int = 50) -> dict:
    failures, rows = [], []
    primes = orders.primes_up_to(lmax)
    for name, o in orders.curated_orders().items():
        for p in primes:
            r = orders.verify_prop_b1(o, p)
            if r["valuation"] or not r["semisimple"]:
                rows.append({"order": name, **r})
            if not r["holds"]:
                failures.append({"order": name, **r})
    return _report("prop-b1", "l divides discr(order) iff the order mod l is not semisimple",
                   len(primes) * len(orders.curated_orders()), failures, ramified=rows)


def lemma22() -> dict:
    failures, rows = [], []
    for name, e in av_forms.standard_end_data().items():
        rec = av_forms.recompute(e)
        rows.append({"end": name, **{k: v["formula"] for k, v in rec.items()}})
        for k, v in rec.items():
            if not v["match"]:
                failures.append({"end": name, "form": k, **v})
    return _report("lemma2.2", "closed formulas for Delta and delta equal Gram determinants",
                   len(rows), failures, values=rows)


def constants() -> dict:
    checks = [("Q(1)", av_forms.q_of_g(1), 4), ("Q(2)", av_forms.q_of_g(2), 17),
              ("d(1)", av_forms.d_p_of_g(0, 1), 48), ("d_3(1)", av_forms.d_p_of_g(3, 1), 96),
              ("d_2(1)", av_forms.d_p_of_g(2, 1), 48)]
    failures = [{"case": n, "got": g, "want": w} for n, g, w in checks if g != w]
    return _report("constants", "Q(g) and d_p(g) values", len(checks), failures,
                   values={n: g for n, g, _ in checks})


# ---------------------------------------------------------------------------
# Clifford


def pinned_clifford_lattices() -> list[tuple[str, lat.Lattice]]:
    return [
        ("<1>", lat.diagonal(1)),
        ("<-2>", lat.diagonal(-2)),
        ("<1>+<1>", lat.diagonal(1, 1)),
        ("<2>+<2>", lat.diagonal(2, 2)),
        ("U", lat.hyperbolic_plane()),
        ("A2", lat.Lattice([[2, -1], [-1, 2]])),
        ("<1>+<-1>+<2>", lat.diagonal(1, -1, 2)),
        ("A3", lat.Lattice([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])),
        ("U+U", lat.orthogonal_sum(lat.hyperbolic_plane(), lat.hyperbolic_plane())),
        ("D4", lat.Lattice([[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]])),
        ("<1>^4", lat.diagonal(1, 1, 1, 1)),
    ]


def random_gram(rng: random.Random, max_rank: int = 4) -> lat.Lattice:
    while True:
        k = rng.randint(1, max_rank)
        m = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                m[i][j] = m[j][i] = rng.randint(-3, 3)
        if la.det(m):
            return lat.Lattice(m)


def clifford_trace(random_count: int = 50, seed: int = 0) -> dict:
    rng = random.Random(seed)
    cases = pinned_clifford_lattices() + [(f"random-{i}", random_gram(rng)) for i in range(random_count)]
    failures = []
    for name, l in cases:
        r = clifford.trace_restriction_check(l)
        if not r["holds"]:
            failures.append({"case": name, "gram": l.gram, "traces": r["traces"]})
    return _report("clifford-trace", "Tr(L_v L_w) = 2^rank (v.w)", len(cases), failures, seed=seed)


PINNED_SYMPLECTIC = [
    ("<1>+<1>", [1, 1], [1, 0], [0, 1]),
    ("<2>+<2>", [2, 2], [1, 0], [0, 1]),
    ("<1>+<3>", [1, 3], [1, 0], [0, 1]),
    ("<2>+<5>", [2, 5], [1, 0], [0, 1]),
    ("<1>+<1> rotated", [1, 1], [1, 1], [1, -1]),
]


def symplectic() -> dict:
    failures, dets = [], {}
    for name, diag, f1, f2 in PINNED_SYMPLECTIC:
        c = clifford.build(lat.diagonal(*diag))
        r = clifford.symplectic_form(c, f1, f2)
        dets[name] = r["det"]
        if not r["skew"] or r["det"] == 0:
            failures.append({"case": name, "skew": r["skew"], "det": r["det"]})
    return _report("symplectic", "Tr(f1 f2 v* w) is skew and nondegenerate", len(PINNED_SYMPLECTIC),
                   failures, determinants=dets)


# ---------------------------------------------------------------------------
# l-adic lemmas


def lemma16may(trials: int = 50, seed: int = 0) -> dict:
    failures = []
    for t in range(trials):
        m, sub, a, n = pm.random_16may_instance(seed * 1_000_003 + t)
        r = pm.check_lemma_16may(m, sub, a, n)
        if not r["holds"]:
            failures.append({"trial": t, **r})
    return _report("lemma16may", "d ((M/L)/l^n)^Gamma lies in the image of (M/l^n)^Gamma",
                   trials, failures, seed=seed)


def lemma13aug(n_max: int = 6, precision: int = 12) -> dict:
    failures, rows = [], []
    for name, a in pm.pinned_13aug(precision):
        r = pm.check_lemma_13aug(a, n_max)
        rows.append({"case": name, "prime": r["prime"], "a": r["a"], "b": r["b"], "r": r["r"],
                     "stabilized": r["stabilized"]})
        if not r["holds"]:
            failures.append(rows[-1])
    return _report("lemma13aug", "End_Lambda(N)/l^n sits in End_Lambda(N/l^n) with index exponent <= a + b",
                   len(rows), failures, instances=rows)


# ---------------------------------------------------------------------------
# torsion modules

IRREDUCIBLE_SIMILITUDE_G2_L3 = [[2, 2, 1, 0], [2, 0, 2, 2], [2, 2, 1, 1], [0, 0, 1, 2]]


def torsion() -> dict:
    failures, values = [], {}
    for p in (3, 5, 7):
        for g in (1, 2):
            h = tb.hom_decompose(tb.TorsionPairingModule(p, 1, g))
            key = f"alt=sym l={p} g={g}"
            values[key] = h["index"]
            if h["index"] != 1 or len(h["alt_invariants"]) != g * (2 * g - 1):
                failures.append({"case": key, "index": h["index"]})
    for g in (1, 2, 3):
        h = tb.hom_decompose(tb.TorsionPairingModule(2, 1, g))
        key = f"index l=2 g={g}"
        values[key] = h["index"]
        if h["index"] != 4 ** g:
            failures.append({"case": key, "index": h["index"]})
    for g in (1, 2, 3):
        r = tb.brauer_quotient_invariants(tb.TorsionPairingModule(3, 1, g), tb.polarization(g))
        key = f"brauer count g={g}"
        values[key] = r["count"]
        if r["count"] != g * (2 * g - 1) - 1:
            failures.append({"case": key, "count": r["count"]})
    t = tb.TorsionPairingModule(3, 1, 2, action=((IRREDUCIBLE_SIMILITUDE_G2_L3, -1),))
    r = tb.brauer_quotient_invariants(t, tb.polarization(2))
    values["brauer count g=2 irreducible similitude"] = r["count"]
    if r["count"] >= 5:
        failures.append({"case": "irreducible similitude", "count": r["count"]})
    return _report("torsion", "alternating versus skew forms and Brauer-quotient ranks", len(values),
                   failures, values=values)


def pinned_ker2() -> list[tuple[str, tb.TorsionPairingModule, tb.EndomorphismDatum]]:
    full1 = tb.EndomorphismDatum(tuple(la.unflatten(v, 2) for v in la.unit_vectors(4)))
    swap = tb.EndomorphismDatum((((0, 1), (1, 0)),))
    g2_extra = tb.EndomorphismDatum((((0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 0, 0), (0, 0, 0, 0)),
                                     ((0, 0, 0, 0), (0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0))))
    rot = (((0, -1), (1, 0)), 1)
    return [
        ("full l=3", tb.TorsionPairingModule(3, 1, 1), full1),
        ("full l=2", tb.TorsionPairingModule(2, 1, 1), full1),
        ("J l=3", tb.TorsionPairingModule(3, 1, 1), tb.polarization(1)),
        ("J l=5 n=2", tb.TorsionPairingModule(5, 2, 1), tb.polarization(1)),
        ("J l=2", tb.TorsionPairingModule(2, 1, 1), tb.polarization(1)),
        ("J l=2 g=2", tb.TorsionPairingModule(2, 1, 2), tb.polarization(2)),
        ("J l=3 g=2", tb.TorsionPairingModule(3, 1, 2), tb.polarization(2)),
        ("swap l=2", tb.TorsionPairingModule(2, 1, 1), swap),
        ("swap l=2 n=3", tb.TorsionPairingModule(2, 3, 1), swap),
        ("swap l=3", tb.TorsionPairingModule(3, 2, 1), swap),
        ("scalars l=2", tb.TorsionPairingModule(2, 1, 1), tb.scalars(1)),
        ("off-diagonal l=2 g=2 n=2", tb.TorsionPairingModule(2, 2, 2), g2_extra),
        ("J l=3 rotation", tb.TorsionPairingModule(3, 1, 1, action=(rot,)), tb.polarization(1)),
    ]


def ker2() -> dict:
    failures, rows = [], []
    for name, t, r in pinned_ker2():
        rep = tb.ker2_exponent_check(t, r)
        rows.append({"case": name, "kernel": rep["kernel"], "alt_equals_sym": rep["alt_equals_sym"]})
        if not rep["holds"]:
            failures.append(rows[-1])
    return _report("ker2", "2 kills the kernel of the Brauer analog -> H_A analog", len(rows), failures,
                   instances=rows)


# ---------------------------------------------------------------------------

SUITES = {
    "named-lattices": lambda seed, trials: named_lattices(),
    "lemma2.1": lambda seed, trials: lemma21(trials or 200, seed),
    "prop-b1": lambda seed, trials: prop_b1(),
    "lemma2.2": lambda seed, trials: lemma22(),
    "clifford-trace": lambda seed, trials: clifford_trace(trials or 50, seed),
    "symplectic": lambda seed, trials: symplectic(),
    "four-squares": lambda seed, trials: four_squares(),
    "lemma16may": lambda seed, trials: lemma16may(trials or 50, seed),
    "lemma13aug": lambda seed, trials: lemma13aug(),
    "torsion": lambda seed, trials: torsion(),
    "ker2": lambda seed, trials: ker2(),
    "constants": lambda seed, trials: constants(),
}


def run_suite(name: str, seed: int = 0, trials: int | None = None) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](seed, trials)
