"""Finite-precision l-adic module computations.

Modules are Z_l^k.  Action matrices and Gram matrices are supplied as integer
lifts and interpreted in Z_l; objects "at full precision" (centralizers,
orthogonal complements, discriminants) are computed over Z from those lifts,
which is exact because kernels commute with the flat extension Z -> Z_l.
Everything "mod l^n" is represented as a lattice in Z^k containing l^n Z^k,
so submodule containment and equality are decided by HNF membership.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import exact_linalg as la
from .fp_algebra import FpAlgebra, is_semisimple, span_mod_p
from .lattices import GroupTooLarge, IsometryGroup

SLACK = 2


class PrecisionError(ValueError):
    """The requested level is too close to the working precision."""


@dataclass(frozen=True)
class PadicModule:
    prime: int
    precision: int
    rank: int
    gram: tuple | None = None

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError("precision must be at least 1")
        if self.gram is not None:
            g = tuple(tuple(int(x) for x in row) for row in self.gram)
            if len(g) != self.rank or not la.is_symmetric(g):
                raise ValueError("Gram matrix must be square of size rank and symmetric")
            object.__setattr__(self, "gram", g)

    @property
    def modulus(self) -> int:
        return self.prime ** self.precision


@dataclass(frozen=True)
class ActionData:
    prime: int
    precision: int
    generators: tuple = field(default=())

    def __post_init__(self):
        gens = tuple(tuple(tuple(int(x) for x in row) for row in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if gens:
            k = len(gens[0])
            if any(len(g) != k or any(len(r) != k for r in g) for g in gens):
                raise ValueError("generators must be square matrices of one size")

    @property
    def dim(self) -> int:
        return len(self.generators[0]) if self.generators else 0

    def residues(self, n: int) -> list[la.ResidueMatrix]:
        return [la.ResidueMatrix(self.prime ** n, g) for g in self.generators]

    def check_invertible(self) -> bool:
        return all(la.det(g) % self.prime for g in self.generators)

    def preserves(self, gram) -> bool:
        mod = self.prime ** self.precision
        return all(la.mod_matrix(la.matsub(la.matmul(la.transpose(g), la.matmul(gram, g)), gram), mod)
                   == la.zeros(len(gram), len(gram)) for g in self.generators)

    def to_json(self) -> dict:
        return {"prime": self.prime, "precision": self.precision,
                "generators": [[list(r) for r in g] for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "ActionData":
        return cls(int(data["prime"]), int(data["precision"]), tuple(data["generators"]))


def _check_level(n: int, precision: int, valuation: int = 0):
    if n < 1:
        raise ValueError("level must be positive")
    if n > precision:
        raise PrecisionError(f"level {n} exceeds precision {precision}")
    if valuation and precision < n + valuation + SLACK:
        raise PrecisionError(
            f"precision {precision} is below level {n} + valuation {valuation} + slack {SLACK}")


def _scaled(basis, c):
    return [[c * x for x in v] for v in basis]


def min_exponent(a_basis, b_basis, prime: int, cap: int) -> int | None:
    """Least e <= cap with prime^e * span(a) inside span(b), or None."""
    for e in range(cap + 1):
        if la.submodule_contains(b_basis, _scaled(a_basis, prime ** e)):
            return e
    return None


def _stacked_minus_one(gens, dim):
    rows = []
    for g in gens:
        for i in range(dim):
            rows.append([g[i][j] - int(i == j) for j in range(dim)])
    return rows


# ---------------------------------------------------------------------------
# invariants and the image-containment check


def invariants_lattice(a: ActionData, dim: int, n: int, modulus_lattice=None) -> list[la.Vector]:
    """HNF basis of {x in Z^dim : (g - 1) x in X for all g}, X = modulus_lattice or l^n Z^dim."""
    mod = a.prime ** n
    target = modulus_lattice if modulus_lattice is not None else la.unit_vectors(dim, mod)
    rows = _stacked_minus_one(a.generators, dim)
    if not rows:
        return la.span_basis(la.unit_vectors(dim), dim)
    # (g - 1) x must lie in the target for every g: stack the target once per generator
    k = len(a.generators)
    stacked_target = []
    for gi in range(k):
        for t in target:
            v = [0] * (k * dim)
            v[gi * dim:(gi + 1) * dim] = t
            stacked_target.append(v)
    return la.preimage(rows, stacked_target, dim)


def invariants_mod(m: PadicModule, a: ActionData, n: int) -> list[la.Generator]:
    """Smith-form generators of (M / l^n)^Gamma."""
    _check_level(n, m.precision)
    if not a.generators:
        return la.smith_generators(la.unit_vectors(m.rank), m.prime ** n, m.rank)
    rows = _stacked_minus_one(a.generators, m.rank)
    return la.kernel_basis_mod(la.ResidueMatrix(m.prime ** n, rows))


def check_lemma_16may(m: PadicModule, sub, a: ActionData, n: int) -> dict:
    """Check d * ((M/L)/l^n)^Gamma lies in the image of (M/l^n)^Gamma."""
    if m.gram is None:
        raise ValueError("module needs a Gram matrix")
    k, ell = m.rank, m.prime
    sub = [list(v) for v in sub]
    if sub:
        b = la.from_columns(sub, k)
        d = la.det(la.matmul(la.transpose(b), la.matmul(m.gram, b)))
    else:
        d = 1
    if d == 0:
        raise ValueError("restricted form is degenerate")
    v = la.valuation(d, ell)
    _check_level(n, m.precision, v)
    mod = ell ** n
    lat_l = la.mod_span(sub, mod, k)  # L + l^n M
    for g in a.generators:
        if not la.submodule_contains(la.mod_span(sub, ell ** m.precision, k),
                                     [la.matvec(g, x) for x in sub]):
            raise ValueError("submodule is not stable under the action")
    quotient_inv = invariants_lattice(a, k, n, lat_l)  # preimage of ((M/L)/l^n)^Gamma
    image = la.span_basis(invariants_lattice(a, k, n) + lat_l, k)
    ell_part = ell ** v
    holds = la.submodule_contains(image, _scaled(quotient_inv, d))
    return {
        "prime": ell, "level": n, "discriminant": d, "valuation": v,
        "quotient_invariants": la.quotient_invariants(quotient_inv, lat_l),
        "image_invariants": la.quotient_invariants(image, lat_l),
        "min_exponent": min_exponent(quotient_inv, image, ell, n),
        "holds": holds and la.submodule_contains(image, _scaled(quotient_inv, ell_part)),
    }


# ---------------------------------------------------------------------------
# algebras and centralizers (matrices flattened row-major into Z^(k^2))


def _commutator_rows(gens, k):
    """Rows of the linear map X -> (X g - g X)_g on flattened X."""
    rows = []
    for g in gens:
        for i in range(k):
            for j in range(k):
                row = [0] * (k * k)
                # (X g)_{ij} = sum_t X_{it} g_{tj};  (g X)_{ij} = sum_t g_{it} X_{tj}
                for t in range(k):
                    row[i * k + t] += g[t][j]
                    row[t * k + j] -= g[i][t]
                rows.append(row)
    return rows


def _lattice_mod(basis, modulus, dim):
    return la.mod_span(basis, modulus, dim)


def generated_algebra_lattice(a: ActionData, n: int | None) -> list[la.Vector]:
    """Z-span (n=None) or span mod l^n of all words in the generators, as a lattice basis."""
    k = a.dim
    dim = k * k
    modulus = a.prime ** n if n is not None else None

    def close(vectors):
        return _lattice_mod(vectors, modulus, dim) if modulus else la.span_basis(vectors, dim)

    current = close([la.flatten(la.identity(k))])
    while True:
        new = list(current)
        for v in current:
            x = la.unflatten(v, k)
            for g in a.generators:
                new.append(la.flatten(la.matmul(g, x)))
        nxt = close(new)
        if nxt == current:
            return current
        current = nxt


def generated_algebra(a: ActionData, n: int) -> list[la.Generator]:
    _check_level(n, a.precision)
    mod = a.prime ** n
    return la.smith_generators(generated_algebra_lattice(a, n), mod, a.dim ** 2)


def centralizer_lattice(gens, k: int, modulus: int | None) -> list[la.Vector]:
    rows = _commutator_rows(gens, k)
    if not rows:
        return la.unit_vectors(k * k) if modulus is None else la.span_basis(la.unit_vectors(k * k), k * k)
    if modulus is None:
        return la.integer_kernel(rows, k * k)
    return la.kernel_lattice_mod(rows, modulus, k * k)


def centralizer_mod(a: ActionData, n: int) -> list[la.Generator]:
    """Smith-form generators of End_Lambda(N / l^n)."""
    _check_level(n, a.precision)
    k = a.dim
    mod = a.prime ** n
    rows = _commutator_rows(a.generators, k)
    gens = la.kernel_basis_mod(la.ResidueMatrix(mod, rows))
    for gen in gens:
        x = la.unflatten(gen.vector, k)
        for g in a.generators:
            if la.mod_matrix(la.matsub(la.matmul(x, g), la.matmul(g, x)), mod) != la.zeros(k, k):
                raise ArithmeticError("centralizer generator fails to commute")
    return gens


def trace_gram(basis, k: int) -> la.Matrix:
    mats = [la.unflatten(v, k) for v in basis]
    return [[sum(la.matmul(x, y)[i][i] for i in range(k)) for y in mats] for x in mats]


def check_lemma_13aug(a: ActionData, n_max: int) -> dict:
    """Find r(n) for n <= n_max and compare max r(n) with a + b."""
    ell, k = a.prime, a.dim
    dim = k * k
    cent = centralizer_lattice(a.generators, k, None)  # End_Lambda(N) over Z, saturated
    gram = trace_gram(cent, k)
    d = la.det(gram)
    if d == 0:
        raise ValueError("trace form on the centralizer is degenerate; the lemma does not apply")
    a_val = la.valuation(d, ell)
    _check_level(n_max, a.precision, a_val)
    # Tr(X C) = flatten(X) . flatten(C^T)
    perp = la.integer_kernel([la.flatten(la.transpose(la.unflatten(c, k))) for c in cent], dim)
    levels = []
    b_failures = []
    for n in range(1, n_max + 1):
        mod = ell ** n
        c_n = centralizer_lattice(a.generators, k, mod)  # End_Lambda(N/l^n)
        l_n = _lattice_mod(cent, mod, dim)
        lower_ok = la.submodule_contains(c_n, l_n)
        r_n = min_exponent(c_n, l_n, ell, n)
        x_n = la.intersect(_lattice_mod(perp, mod, dim), c_n, dim)
        inside = la.submodule_contains(_lattice_mod(_scaled(perp, ell), mod, dim), x_n)
        if not inside:
            b_failures.append(n)
        levels.append({"n": n, "contained": lower_ok, "r": r_n,
                       "perp_part": la.quotient_invariants(x_n, la.unit_vectors(dim, mod)),
                       "perp_in_l_perp": inside})
    b = max(b_failures) if b_failures else 0
    stabilized = b < n_max
    r = max(lv["r"] for lv in levels)
    return {
        "prime": ell, "n_max": n_max, "discriminant": d, "a": a_val, "b": b,
        "stabilized": stabilized, "r": r, "levels": levels,
        "holds": stabilized and all(lv["contained"] for lv in levels) and r <= a_val + b,
    }


# ---------------------------------------------------------------------------
# double centralizer


def _algebra_mod_p(a: ActionData) -> FpAlgebra:
    """Image of the generated algebra in Mat_k(F_l) as a structure-constant algebra."""
    p, k = a.prime, a.dim
    basis = span_mod_p([la.flatten(la.identity(k))], p)
    while True:
        grown = basis + [la.flatten(la.mod_matrix(la.matmul(g, la.unflatten(v, k)), p))
                         for v in basis for g in a.generators]
        nxt = span_mod_p(grown, p)
        if len(nxt) == len(basis):
            break
        basis = nxt
    mats = [la.unflatten(v, k) for v in basis]
    return FpAlgebra.from_matrices(p, mats)


def double_centralizer_check(a: ActionData, n: int) -> dict:
    _check_level(n, a.precision)
    alg = _algebra_mod_p(a)
    if not is_semisimple(alg):
        return {"skipped": True, "reason": "algebra mod l is not semisimple", "holds": None}
    k, mod = a.dim, a.prime ** n
    lam = generated_algebra_lattice(a, n)
    cent = centralizer_lattice(a.generators, k, mod)
    cc = centralizer_lattice([la.unflatten(v, k) for v in cent], k, mod)
    return {"skipped": False, "rank_mod_l": alg.dim, "holds": cc == lam}


# ---------------------------------------------------------------------------
# random instances for the image-containment check


def _signed_permutation(rng: random.Random, k: int) -> la.Matrix:
    perm = list(range(k))
    rng.shuffle(perm)
    m = la.zeros(k, k)
    for i, j in enumerate(perm):
        m[i][j] = rng.choice((1, -1))
    return m


def random_16may_instance(seed: int, max_rank: int = 6, max_group: int = 8, primes=(2, 3, 5),
                          precision: int = 10, max_level: int = 4):
    """(module, submodule basis, action, level) with a form-preserving action of order <= max_group."""
    rng = random.Random(seed)
    ell = rng.choice(primes)
    while True:
        k = rng.randint(1, max_rank)
        gens = [_signed_permutation(rng, k) for _ in range(rng.randint(1, 2))]
        try:
            elems = IsometryGroup(gens).closure(cap=max_group)
        except GroupTooLarge:
            continue
        base = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(k)]
        base = [[base[i][j] + base[j][i] for j in range(k)] for i in range(k)]
        for i in range(k):
            base[i][i] += rng.randint(0, 3)
        gram = la.zeros(k, k)
        for g in elems:
            gram = la.matadd(gram, la.matmul(la.transpose(g), la.matmul(base, g)))
        if la.det(gram) == 0:
            continue
        seeds = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(rng.randint(1, k))]
        sub = la.span_basis([la.matvec(g, s) for g in elems for s in seeds], k)
        if not sub:
            continue
        b = la.from_columns(sub, k)
        d = la.det(la.matmul(la.transpose(b), la.matmul(gram, b)))
        if d == 0:
            continue
        n = rng.randint(1, max_level)
        if la.valuation(d, ell) + n + SLACK > precision:
            continue
        module = PadicModule(ell, precision, k, tuple(map(tuple, gram)))
        return module, sub, ActionData(ell, precision, tuple(gens)), n


# pinned centralizer instances: (name, prime, generators)
PINNED_13AUG = [
    ("scalars-2", 2, [[[1, 0], [0, 1]]]),
    ("scalars-3", 3, [[[2, 0], [0, 2]]]),
    ("full-gl2-2", 2, [[[1, 1], [0, 1]], [[0, 1], [1, 0]]]),
    ("full-gl2-3", 3, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]),
    ("full-gl2-5", 5, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]),
    ("diag-3", 3, [[[1, 0], [0, -1]]]),
    ("diag-5", 5, [[[1, 0], [0, -1]]]),
    ("diag-2", 2, [[[1, 0], [0, -1]]]),
    ("reflection-2", 2, [[[1, 1], [0, -1]]]),
    ("reflection-3", 3, [[[1, 1], [0, -1]]]),
    ("fibonacci-5", 5, [[[1, 1], [1, 0]]]),
    ("fibonacci-2", 2, [[[1, 1], [1, 0]]]),
    ("rotation-2", 2, [[[0, -1], [1, 0]]]),
    ("rotation-5", 5, [[[0, -1], [1, 0]]]),
    ("order3-3", 3, [[[0, -1], [1, -1]]]),
    ("diag3-2", 2, [[[1, 0, 0], [0, 1, 0], [0, 0, -1]]]),
    ("diag3-3", 3, [[[1, 0, 0], [0, 2, 0], [0, 0, 4]]]),
    ("block-2", 2, [[[0, -1, 0], [1, 0, 0], [0, 0, 1]]]),
    ("perm3-3", 3, [[[0, 1, 0], [0, 0, 1], [1, 0, 0]]]),
    ("scaled-diag-2", 2, [[[1, 0], [0, 3]]]),
]


def pinned_13aug(precision: int = 12) -> list[tuple[str, ActionData]]:
    return [(name, ActionData(p, precision, tuple(gens))) for name, p, gens in PINNED_13AUG]
