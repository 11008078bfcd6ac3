"""Torsion modules T = (Z/l^n)^(2g) with a perfect alternating pairing J.

The dual module T^dual = Hom(T, mu) is kept literal: a homomorphism
u: T -> T^dual is a 2g x 2g matrix U with e(x, u y) = x^T U y.  Then

* the dual of u is U -> -U^T, so u is symmetric exactly when U is skew;
* u is in the image of Hom(wedge^2 T, mu) when U is alternating
  (skew with zero diagonal);
* a similitude gamma with gamma^T J gamma = chi J acts on U by
  U -> chi * gamma^-T U gamma^-1 and on End(T) by conjugation.

Subgroups of Hom(T, T^dual) or End(T) are lattices in Z^(4g^2) (row-major
flattening) that contain l^n Z^(4g^2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd

from . import exact_linalg as la


def standard_pairing(g: int) -> la.Matrix:
    """[[0, I], [-I, 0]]."""
    k = 2 * g
    j = la.zeros(k, k)
    for i in range(g):
        j[i][g + i] = 1
        j[g + i][i] = -1
    return j


@dataclass(frozen=True)
class TorsionPairingModule:
    prime: int
    level: int
    g: int
    pairing: tuple = None
    action: tuple = field(default=())  # ((matrix, multiplier), ...)

    def __post_init__(self):
        k = 2 * self.g
        j = self.pairing if self.pairing is not None else standard_pairing(self.g)
        j = tuple(tuple(int(x) for x in row) for row in j)
        object.__setattr__(self, "pairing", j)
        if len(j) != k or any(len(r) != k for r in j):
            raise ValueError("pairing must be a 2g x 2g matrix")
        if any(j[i][i] % self.modulus for i in range(k)) or any(
                (j[a][b] + j[b][a]) % self.modulus for a in range(k) for b in range(k)):
            raise ValueError("pairing is not alternating")
        if la.det(j) % self.prime == 0:
            raise ValueError("pairing is not perfect")
        acts = []
        for mat, chi in self.action:
            mat = tuple(tuple(int(x) for x in row) for row in mat)
            chi = int(chi) % self.modulus
            if gcd(chi, self.prime) != 1:
                raise ValueError("multiplier must be a unit")
            lhs = la.mod_matrix(la.matmul(la.transpose(mat), la.matmul(j, mat)), self.modulus)
            if lhs != la.mod_matrix(la.scalar_mul(chi, j), self.modulus):
                raise ValueError("action matrix is not a similitude with the given multiplier")
            acts.append((mat, chi))
        object.__setattr__(self, "action", tuple(acts))

    @property
    def modulus(self) -> int:
        return self.prime ** self.level

    @property
    def rank(self) -> int:
        return 2 * self.g

    @property
    def hom_dim(self) -> int:
        return self.rank ** 2

    def hom_action_matrices(self) -> list[la.Matrix]:
        """Matrices of U -> chi gamma^-T U gamma^-1 on flattened U."""
        k, mod = self.rank, self.modulus
        out = []
        for mat, chi in self.action:
            inv = la.inverse_mod(mat, mod)
            a = la.zeros(k * k, k * k)
            for i in range(k):
                for j in range(k):
                    for p in range(k):
                        for q in range(k):
                            a[i * k + j][p * k + q] = chi * inv[p][i] * inv[q][j] % mod
            out.append(a)
        return out

    def end_action_matrices(self) -> list[la.Matrix]:
        """Matrices of X -> gamma X gamma^-1 on flattened X."""
        k, mod = self.rank, self.modulus
        out = []
        for mat, _ in self.action:
            inv = la.inverse_mod(mat, mod)
            a = la.zeros(k * k, k * k)
            for i in range(k):
                for j in range(k):
                    for p in range(k):
                        for q in range(k):
                            a[i * k + j][p * k + q] = mat[i][p] * inv[q][j] % mod
            out.append(a)
        return out

    def to_json(self) -> dict:
        return {"prime": self.prime, "level": self.level, "g": self.g,
                "pairing": [list(r) for r in self.pairing],
                "action": [{"matrix": [list(r) for r in m], "multiplier": c} for m, c in self.action]}

    @classmethod
    def from_json(cls, data: dict) -> "TorsionPairingModule":
        action = tuple((a["matrix"], a["multiplier"]) for a in data.get("action", []))
        return cls(int(data["prime"]), int(data["level"]), int(data["g"]), data.get("pairing"), action)


def dagger(u) -> la.Matrix:
    return [[-x for x in row] for row in la.transpose(u)]


@dataclass(frozen=True)
class EndomorphismDatum:
    """Integral generators of a sublattice R of Hom(T, T^dual) (or of End(T))."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in self.generators)
        object.__setattr__(self, "generators", gens)

    def flat(self) -> list[la.Vector]:
        return [la.flatten(m) for m in self.generators]

    def span(self, dim: int) -> list[la.Vector]:
        return la.span_basis(self.flat(), dim)

    def is_dagger_stable(self, dim: int) -> bool:
        basis = self.span(dim)
        return all(la.contains(basis, la.flatten(dagger(m))) for m in self.generators)

    def symmetric_part(self, dim: int) -> list[la.Vector]:
        """R_sym = {U in R : U = -U^T} as a basis of vectors."""
        basis = self.span(dim)
        if not basis:
            return []
        k = int(round(dim ** 0.5))
        # coefficient vectors c with sum c_i (B_i + B_i^T) = 0
        rows = []
        mats = [la.unflatten(b, k) for b in basis]
        for i in range(k):
            for j in range(k):
                rows.append([m[i][j] + m[j][i] for m in mats])
        ker = la.integer_kernel(rows, len(basis))
        return la.span_basis([[sum(c[t] * basis[t][x] for t in range(len(basis))) for x in range(dim)]
                              for c in ker], dim)

    def to_json(self) -> dict:
        return {"generators": [[list(r) for r in m] for m in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "EndomorphismDatum":
        return cls(tuple(data["generators"]))


# ---------------------------------------------------------------------------
# lattice helpers (everything contains l^n Z^dim)


def _mod_span(vectors, t: TorsionPairingModule) -> list[la.Vector]:
    return la.mod_span(vectors, t.modulus, t.hom_dim)


def skew_lattice(t: TorsionPairingModule) -> list[la.Vector]:
    """Symmetric homomorphisms: U + U^T = 0 mod l^n."""
    k = t.rank
    rows = []
    for i in range(k):
        for j in range(i, k):
            row = [0] * (k * k)
            row[i * k + j] += 1
            row[j * k + i] += 1
            rows.append(row)
    return la.kernel_lattice_mod(rows, t.modulus, k * k)


def alternating_lattice(t: TorsionPairingModule) -> list[la.Vector]:
    k = t.rank
    gens = []
    for i in range(k):
        for j in range(i + 1, k):
            v = [0] * (k * k)
            v[i * k + j], v[j * k + i] = 1, -1
            gens.append(v)
    return _mod_span(gens, t)


def _invariant_preimage(maps, big, small, dim) -> list[la.Vector]:
    """{x in big : (A - 1) x in small for all A}; small must contain the modulus lattice."""
    current = big
    for a in maps:
        shifted = [[a[i][j] - int(i == j) for j in range(dim)] for i in range(dim)]
        current = la.intersect(current, la.preimage(shifted, small, dim), dim)
    return current


def _check_stable(maps, basis, t: TorsionPairingModule, what: str):
    for a in maps:
        for v in basis:
            if not la.contains(basis, la.matvec(a, v)):
                raise ValueError(f"{what} is not stable under the group action")


# ---------------------------------------------------------------------------
# operations


def hom_decompose(t: TorsionPairingModule) -> dict:
    full = la.unit_vectors(t.hom_dim)
    modlat = la.unit_vectors(t.hom_dim, t.modulus)
    sym = skew_lattice(t)
    alt = alternating_lattice(t)
    if not la.submodule_contains(sym, alt):
        raise ArithmeticError("alternating forms are not skew")
    return {
        "sym": la.smith_generators(sym, t.modulus, t.hom_dim),
        "alt": la.smith_generators(alt, t.modulus, t.hom_dim),
        "sym_invariants": la.quotient_invariants(sym, modlat),
        "alt_invariants": la.quotient_invariants(alt, modlat),
        "index": _index(sym, alt),
        "hom_invariants": la.quotient_invariants(full, modlat),
    }


def _index(big, small) -> int:
    out = 1
    for f in la.quotient_invariants(big, small):
        if f == 0:
            raise ValueError("infinite index")
        out *= f
    return out


def ns_image(t: TorsionPairingModule, ns: EndomorphismDatum) -> list[la.Vector]:
    """Image of NS in Hom(wedge^2 T, mu) under the cycle map: the negatives of the ns matrices."""
    for m in ns.generators:
        if la.matadd(m, la.transpose(m)) != la.zeros(t.rank, t.rank):
            raise ValueError("ns generator is not symmetric (U must equal -U^T)")
    return _mod_span([[-x for x in v] for v in ns.flat()], t)


def brauer_quotient_invariants(t: TorsionPairingModule, ns: EndomorphismDatum) -> dict:
    """Invariant factors of (Hom(wedge^2 T, mu) / image NS)^Gamma."""
    dim = t.hom_dim
    alt = alternating_lattice(t)
    img = ns_image(t, ns)
    maps = t.hom_action_matrices()
    _check_stable(maps, img, t, "image of ns")
    inv = _invariant_preimage(maps, alt, img, dim)
    quotient = la.quotient_invariants(alt, img)
    invariants = la.quotient_invariants(inv, img)
    return {"quotient": quotient, "invariants": invariants, "count": len(invariants)}


def ker2_exponent_check(t: TorsionPairingModule, r: EndomorphismDatum) -> dict:
    """Kernel of Br-analog -> H_A-analog, i.e. (Alt ∩ (R + l^n Hom)) / (R_sym + l^n Hom)."""
    dim = t.hom_dim
    if not r.is_dagger_stable(dim):
        raise ValueError("R is not stable under the dagger involution")
    r_basis = r.span(dim)
    if r_basis and la.saturation(r_basis, dim) != r_basis:
        raise ValueError("R is not saturated in Hom(T, T^dual)")
    r_mod = _mod_span(r_basis, t)
    _check_stable(t.hom_action_matrices(), r_mod, t, "R")
    alt = alternating_lattice(t)
    sym = skew_lattice(t)
    ns = _mod_span([[-x for x in v] for v in r.symmetric_part(dim)], t)
    num = la.intersect(alt, r_mod, dim)
    kernel = la.quotient_invariants(num, ns)
    two_kills = la.submodule_contains(ns, [[2 * x for x in v] for v in num])
    return {
        "kernel": kernel,
        "exponent": max(kernel, default=1),
        "two_kills_kernel": two_kills,
        "alt_equals_sym": la.same_span(alt, sym),
        "brauer": la.quotient_invariants(alt, ns),
        "h_a": la.quotient_invariants(la.unit_vectors(dim), r_mod),
        "holds": two_kills,
    }


def third_summand_invariants(t: TorsionPairingModule, endos: EndomorphismDatum) -> dict:
    """Invariant factors of (End(T) / span(endos))^Gamma with Gamma acting by conjugation."""
    k, dim, mod = t.rank, t.hom_dim, t.modulus
    e = _mod_span(endos.flat(), t)
    for a, b in product(endos.generators, repeat=2):
        if not la.contains(e, la.flatten(la.matmul(a, b))):
            raise ValueError("endomorphism span is not closed under multiplication")
    maps = t.end_action_matrices()
    _check_stable(maps, e, t, "endomorphism span")
    inv = _invariant_preimage(maps, la.unit_vectors(dim), e, dim)
    invariants = la.quotient_invariants(inv, e)
    return {"quotient": la.quotient_invariants(la.unit_vectors(dim), e), "invariants": invariants,
            "count": len(invariants)}


def annihilates(invariants, multiplier: int) -> bool:
    """True when multiplier kills a finite abelian group with these invariant factors."""
    return all(f and multiplier % f == 0 for f in invariants)


def scalars(g: int) -> EndomorphismDatum:
    return EndomorphismDatum((la.identity(2 * g),))


def polarization(g: int) -> EndomorphismDatum:
    return EndomorphismDatum((standard_pairing(g),))
