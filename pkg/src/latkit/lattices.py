"""Integral lattices: discriminants, discriminant groups, complements,
saturation, fixed sublattices under finite isometry groups, named lattices
and the four-squares embedding of the degree-2d polarisation lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Sequence

from . import exact_linalg as la

# Bourbaki labelling of the E8 Dynkin diagram: chain 1-3-4-5-6-7-8, node 2 on 4.
_E8_EDGES = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]


def _e8_gram() -> la.Matrix:
    g = [[2 * int(i == j) for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        g[i][j] = g[j][i] = -1
    return g


E8_GRAM: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in _e8_gram())
U_GRAM = ((0, 1), (1, 0))


@dataclass(frozen=True)
class Lattice:
    """Free Z-module with a nondegenerate symmetric integral Gram matrix."""

    gram: tuple[tuple[int, ...], ...]

    def __init__(self, gram: Sequence[Sequence[int]]):
        g = tuple(tuple(int(x) for x in row) for row in gram)
        if not g or any(len(row) != len(g) for row in g):
            raise ValueError("Gram matrix must be square and nonempty")
        if not la.is_symmetric(g):
            raise ValueError("Gram matrix is not symmetric")
        if la.det(g) == 0:
            raise ValueError("Gram matrix is degenerate")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def inner(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(xi * gij * yj for xi, row in zip(x, self.gram) if xi for gij, yj in zip(row, y))

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice(la.direct_sum(self.gram, other.gram))

    def twist(self, n: int) -> "Lattice":
        """L(n): same module, form multiplied by n."""
        return Lattice(la.scalar_mul(n, self.gram))

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [list(r) for r in self.gram]}

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        gram = [[int(x) for x in row] for row in data["gram"]]
        if "rank" in data and int(data["rank"]) != len(gram):
            raise ValueError("rank field disagrees with the Gram matrix")
        return cls(gram)


def orthogonal_sum(*lats: Lattice) -> Lattice:
    return Lattice(la.direct_sum(*(l.gram for l in lats)))


@dataclass(frozen=True)
class Sublattice:
    """Submodule of an ambient lattice spanned by `basis` (ambient coordinates)."""

    ambient: Lattice
    basis: tuple[tuple[int, ...], ...] = field(default=())

    def __init__(self, ambient: Lattice, basis: Sequence[Sequence[int]] = ()):
        b = tuple(tuple(int(x) for x in v) for v in basis)
        if any(len(v) != ambient.rank for v in b):
            raise ValueError("basis vectors must live in the ambient lattice")
        if b and la.rank(la.from_columns(b, ambient.rank)) != len(b):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", b)

    @classmethod
    def spanned_by(cls, ambient: Lattice, gens: Sequence[Sequence[int]]) -> "Sublattice":
        return cls(ambient, la.span_basis(gens, ambient.rank))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram(self) -> la.Matrix:
        return [[self.ambient.inner(x, y) for y in self.basis] for x in self.basis]

    def discriminant(self) -> int:
        return la.det(self.gram()) if self.basis else 1

    def lattice(self) -> Lattice:
        return Lattice(self.gram())

    def canonical(self) -> "Sublattice":
        return Sublattice(self.ambient, la.span_basis(self.basis, self.ambient.rank))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Sublattice):
            return NotImplemented
        return (self.ambient == other.ambient
                and la.span_basis(self.basis, self.ambient.rank) == la.span_basis(other.basis, other.ambient.rank))

    def __hash__(self) -> int:
        return hash((self.ambient, tuple(map(tuple, la.span_basis(self.basis, self.ambient.rank)))))

    def contains(self, other: "Sublattice") -> bool:
        b = la.span_basis(self.basis, self.ambient.rank)
        return la.submodule_contains(b, other.basis)


def discriminant(l: Lattice) -> int:
    """Signed determinant of the Gram matrix."""
    return la.det(l.gram)


def discriminant_group(l: Lattice) -> list[int]:
    """Invariant factors (> 1) of L*/L, in divisibility order."""
    return [d for d in la.elementary_divisors(l.gram) if d > 1]


def orthogonal_complement(s: Sublattice) -> Sublattice:
    """All x in the ambient lattice with (x.y) = 0 for every y in s."""
    amb = s.ambient
    if not s.basis:
        return Sublattice(amb, la.unit_vectors(amb.rank))
    rows = la.matmul(s.basis, amb.gram)
    return Sublattice(amb, la.integer_kernel(rows, amb.rank))


def saturate(s: Sublattice) -> Sublattice:
    """Smallest primitive sublattice containing s."""
    return Sublattice(s.ambient, la.saturation(s.basis, s.ambient.rank))


def is_primitive(s: Sublattice) -> bool:
    return saturate(s) == s


# ---------------------------------------------------------------------------
# finite isometry groups


class GroupTooLarge(ValueError):
    pass


@dataclass
class IsometryGroup:
    generators: list[la.Matrix]
    elements: list[la.Matrix] | None = None

    def check(self, l: Lattice) -> None:
        for g in self.generators:
            if la.matmul(la.matmul(la.transpose(g), l.gram), g) != [list(r) for r in l.gram]:
                raise ValueError("generator does not preserve the bilinear form")

    def closure(self, cap: int = 10_000) -> list[la.Matrix]:
        """Enumerate the generated group by breadth-first multiplication."""
        if self.elements is not None:
            return self.elements
        n = len(self.generators[0]) if self.generators else 0
        if not self.generators:
            raise ValueError("group needs at least one generator (use the identity)")
        one = la.identity(n)
        seen = {_key(one): one}
        frontier = [one]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = la.matmul(g, x)
                    k = _key(y)
                    if k not in seen:
                        seen[k] = y
                        nxt.append(y)
                        if len(seen) > cap:
                            raise GroupTooLarge(f"group closure exceeds cap of {cap} elements")
            frontier = nxt
        self.elements = sorted(seen.values())
        return self.elements

    def order(self, cap: int = 10_000) -> int:
        return len(self.closure(cap))


def _key(m) -> tuple:
    return tuple(tuple(r) for r in m)


@dataclass
class FixedReport:
    rank: int
    discriminant: int
    group_order: int
    ambient_discriminant: int
    bound: int
    divides: bool

    def to_json(self) -> dict:
        return dict(rank=self.rank, discriminant=self.discriminant, group_order=self.group_order,
                    ambient_discriminant=self.ambient_discriminant, bound=self.bound, divides=self.divides)


def fixed_sublattice(l: Lattice, group: IsometryGroup, cap: int = 10_000) -> tuple[Sublattice, FixedReport]:
    """L^G together with the divisibility check discr(L^G) | (|discr L| |G|)^r."""
    group.check(l)
    order = group.order(cap)
    n = l.rank
    rows = []
    for g in group.generators:
        rows.extend(la.matsub(g, la.identity(n)))
    fixed = Sublattice(l, la.integer_kernel(rows, n))
    d = discriminant(l)
    r = fixed.rank
    if r == 0:
        return fixed, FixedReport(0, 1, order, d, 1, True)
    dg = fixed.discriminant()
    bound = (abs(d) * order) ** r
    return fixed, FixedReport(r, dg, order, d, bound, dg != 0 and bound % dg == 0)


# ---------------------------------------------------------------------------
# named lattices


def e8(sign: int = 1) -> Lattice:
    return Lattice(la.scalar_mul(sign, E8_GRAM))


def hyperbolic_plane() -> Lattice:
    return Lattice(U_GRAM)


def diagonal(*entries: int) -> Lattice:
    return Lattice([[int(i == j) * int(e) for j in range(len(entries))] for i, e in enumerate(entries)])


def k3_lattice() -> Lattice:
    u = hyperbolic_plane()
    return orthogonal_sum(e8(-1), e8(-1), u, u, u)


def lambda_2d(d: int) -> Lattice:
    """E8(-1)^2 + U^2 + <-2d>."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    u = hyperbolic_plane()
    return orthogonal_sum(e8(-1), e8(-1), u, u, diagonal(-2 * d))


def lambda_sharp() -> Lattice:
    """E8(-1)^2 + U^2 + <-1>^5: unimodular of signature (2, 23)."""
    u = hyperbolic_plane()
    return orthogonal_sum(e8(-1), e8(-1), u, u, diagonal(*([-1] * 5)))


def named_lattice(name: str, **params) -> Lattice:
    """Look up a lattice by name.

    Names: e8, e8(-1), u, diag (entries=[...]), <n> (n=...), k3,
    lambda-2d (d=...), lambda-sharp.  `twist=n` rescales the result.
    """
    key = name.strip().lower().replace("_", "-")
    if key in ("e8", "e8(1)", "e8(+1)"):
        lat = e8(1)
    elif key in ("e8(-1)", "e8-neg", "e8m"):
        lat = e8(-1)
    elif key in ("u", "hyperbolic"):
        lat = hyperbolic_plane()
    elif key == "diag":
        lat = diagonal(*params["entries"])
    elif key in ("<n>", "n", "rank1"):
        lat = diagonal(int(params["n"]))
    elif key.startswith("<") and key.endswith(">"):
        lat = diagonal(int(key[1:-1]))
    elif key in ("k3", "k3-lattice"):
        lat = k3_lattice()
    elif key in ("lambda-2d", "lambda2d"):
        lat = lambda_2d(int(params["d"]))
    elif key in ("lambda-sharp", "lambda#", "lambdasharp"):
        lat = lambda_sharp()
    else:
        raise KeyError(f"unknown lattice name {name!r}")
    if params.get("twist") not in (None, 1):
        lat = lat.twist(int(params["twist"]))
    return lat


# ---------------------------------------------------------------------------
# four-squares embedding Lambda_2d -> Lambda_#


def four_squares(n: int) -> tuple[int, int, int, int]:
    """Deterministic (x1 >= x2 >= x3 >= x4 >= 0) with sum of squares n.

    Descending greedy search: x1 runs down from isqrt(n); the remainder is
    split the same way with three and then two squares.  Lagrange guarantees
    termination.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")

    def two(m, cap):
        for a in range(min(isqrt(m), cap), -1, -1):
            b2 = m - a * a
            b = isqrt(b2)
            if b * b == b2 and b <= a:
                return a, b
            if 2 * a * a < m:
                break
        return None

    def three(m, cap):
        for a in range(min(isqrt(m), cap), -1, -1):
            if 3 * a * a < m:
                break
            r = two(m - a * a, a)
            if r:
                return (a,) + r
        return None

    for a in range(isqrt(n), -1, -1):
        if 4 * a * a < n:
            break
        r = three(n - a * a, a)
        if r:
            return (a,) + r
    raise AssertionError(f"no four-squares representation found for {n}")


@dataclass
class PolarizationEmbedding:
    d: int
    vector: list[int]
    certificate: dict

    @property
    def matrix(self) -> la.Matrix:
        """25 x 21 matrix whose columns are the images of the basis of Lambda_2d."""
        return embedding_matrix(self.vector)

    def to_json(self) -> dict:
        return {"d": self.d, "vector": self.vector, "certificate": self.certificate,
                "embedding": self.matrix}


_SHARED = 20  # rank of E8(-1)^2 + U^2


def embedding_matrix(v: Sequence[int]) -> la.Matrix:
    m = la.zeros(25, 21)
    for i in range(_SHARED):
        m[i][i] = 1
    for k, x in enumerate(v):
        m[_SHARED + k][_SHARED] = x
    return m


def embed_polarization(d: int, full_check: bool = True) -> PolarizationEmbedding:
    """Primitive isometric embedding of Lambda_2d into Lambda_#.

    The generator of <-2d> goes to v = (x1, x2, x3, x4, 1) in <-1>^5 where
    x1^2 + ... + x4^2 = 2d - 1, so (v.v) = -2d and v is primitive.  With
    full_check the Gram pull-back and primitivity are verified on the whole
    25 x 21 embedding; otherwise on the <-1>^5 block, the rest of the map
    being the identity.
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    xs = four_squares(2 * d - 1)
    v = list(xs) + [1]
    norm = -sum(x * x for x in v)
    if full_check:
        m = embedding_matrix(v)
        src, dst = lambda_2d(d), lambda_sharp()
        pulled = la.matmul(la.matmul(la.transpose(m), dst.gram), m)
        isometric = pulled == [list(r) for r in src.gram]
        primitive = is_primitive(Sublattice(dst, la.columns(m)))
    else:
        isometric = norm == -2 * d
        primitive = la.saturation([v], 5) == la.span_basis([v], 5)
    cert = {"norm": norm, "isometric": isometric, "primitive": primitive,
            "checked": "full" if full_check else "block"}
    return PolarizationEmbedding(d, v, cert)
