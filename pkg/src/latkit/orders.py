"""Orders in semisimple Q-algebras assembled from blocks.

Two block kinds are supported:

* ``matrix_over_number_ring`` -- Mat_r(O) for an order O in a number field
  K of degree e, given by its multiplication table on an integral basis
  whose first element is 1.  Reduced trace of E_ij * w is delta_ij Tr_K(w).
* ``quaternion`` -- an order in the quaternion algebra (a, b / Q) given by
  rational coordinates of its basis in 1, i, j, k.  Reduced trace is 2*x0.

The reduced trace is carried per block by construction.  The intrinsic
trace (trace of left multiplication on the order) is computed from the
structure constants, so the relation Tr_B = sum d_i r_i tr_i is an actual
check rather than a definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exact_linalg as la
from .fp_algebra import FpAlgebra, is_semisimple, radical


class DegenerateFormError(ValueError):
    pass


@dataclass
class NumberRingBlock:
    mult: list  # mult[k][m][s]: w_k w_m = sum_s mult[k][m][s] w_s
    size: int = 1
    name: str = ""

    kind = "matrix_over_number_ring"

    def __post_init__(self):
        e = len(self.mult)
        self.mult = [[[int(x) for x in self.mult[k][m]] for m in range(e)] for k in range(e)]
        if any(self.mult[0][m] != [int(s == m) for s in range(e)] for m in range(e)):
            raise ValueError("first ring basis element must be 1")
        for i in range(e):
            for j in range(e):
                for k in range(e):
                    left = _combine(self.mult, self.mult[i][j], k, right=True)
                    right = _combine(self.mult, self.mult[j][k], i, right=False)
                    if left != right:
                        raise ValueError("ring multiplication table is not associative")

    @property
    def degree(self) -> int:
        return len(self.mult)

    @property
    def local_d(self) -> int:
        return 1

    def field_trace(self, k: int) -> int:
        return sum(self.mult[k][m][m] for m in range(self.degree))

    def ring_discriminant(self) -> int:
        e = self.degree
        gram = [[sum(self.mult[i][j][s] * self.field_trace(s) for s in range(e)) for j in range(e)]
                for i in range(e)]
        return la.det(gram)

    def dimension(self) -> int:
        return self.size * self.size * self.degree

    def structure(self):
        r, e = self.size, self.degree
        n = r * r * e

        def idx(i, j, k):
            return (i * r + j) * e + k

        sc = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i in range(r):
            for j in range(r):
                for k in range(e):
                    for l in range(r):
                        for m in range(e):
                            for s, c in enumerate(self.mult[k][m]):
                                if c:
                                    sc[idx(i, j, k)][idx(j, l, m)][idx(i, l, s)] = c
        trace = [0] * n
        for i in range(r):
            for k in range(e):
                trace[idx(i, i, k)] = self.field_trace(k)
        unit = [0] * n
        for i in range(r):
            unit[idx(i, i, 0)] = 1
        labels = [f"{self.name or 'O'}:E{i}{j}*w{k}" for i in range(r) for j in range(r) for k in range(e)]
        return sc, trace, unit, labels

    def to_json(self) -> dict:
        return {"kind": self.kind, "ring": self.mult, "size": self.size, "name": self.name}


def _combine(mult, vec, k, right):
    # (sum vec_s w_s) * w_k  or  w_k * (sum vec_s w_s)
    e = len(mult)
    out = [0] * e
    for s, c in enumerate(vec):
        if c:
            prod = mult[s][k] if right else mult[k][s]
            for t in range(e):
                out[t] += c * prod[t]
    return out


def quaternion_product(x, y, a, b):
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    return (
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
        x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
        x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    )


@dataclass
class QuaternionBlock:
    a: int
    b: int
    basis: list  # four rational 4-vectors in the basis 1, i, j, k
    name: str = ""

    kind = "quaternion"

    def __post_init__(self):
        self.basis = [tuple(Fraction(x) for x in v) for v in self.basis]
        if len(self.basis) != 4:
            raise ValueError("a quaternion order needs four basis elements")
        if self._solve((1, 0, 0, 0)) is None:
            raise ValueError("quaternion basis does not contain 1 integrally")

    @property
    def degree(self) -> int:
        return 1

    @property
    def local_d(self) -> int:
        return 2

    size = 1

    def _solve(self, q):
        # coordinates of q in self.basis (must be integral)
        m = [[self.basis[c][r] for c in range(4)] + [Fraction(q[r])] for r in range(4)]
        for c in range(4):
            piv = next((r for r in range(c, 4) if m[r][c] != 0), None)
            if piv is None:
                raise ValueError("quaternion basis is not linearly independent")
            m[c], m[piv] = m[piv], m[c]
            inv = 1 / m[c][c]
            m[c] = [x * inv for x in m[c]]
            for r in range(4):
                if r != c and m[r][c] != 0:
                    f = m[r][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        coords = [m[r][4] for r in range(4)]
        if any(x.denominator != 1 for x in coords):
            return None
        return [int(x) for x in coords]

    def dimension(self) -> int:
        return 4

    def structure(self):
        sc = []
        for x in self.basis:
            row = []
            for y in self.basis:
                c = self._solve(quaternion_product(x, y, self.a, self.b))
                if c is None:
                    raise ValueError("quaternion basis is not closed under multiplication")
                row.append(c)
            sc.append(row)
        trace = []
        for v in self.basis:
            t = 2 * v[0]
            if t.denominator != 1:
                raise ValueError("reduced trace is not integral on the basis")
            trace.append(int(t))
        unit = self._solve((1, 0, 0, 0))
        labels = [f"{self.name or 'Q'}:b{k}" for k in range(4)]
        return sc, trace, unit, labels

    def to_json(self) -> dict:
        return {"kind": self.kind, "a": self.a, "b": self.b, "name": self.name,
                "basis": [[str(x) for x in v] for v in self.basis]}


@dataclass
class Order:
    """Direct sum of blocks with integer structure constants on its basis."""

    blocks: list
    representation: list | None = None
    sc: list = field(init=False)
    trace_vector: list = field(init=False)
    unit: list = field(init=False)
    labels: list = field(init=False)
    scales: list = field(init=False)  # d_i * r_i of the block containing each basis element

    def __post_init__(self):
        n = sum(b.dimension() for b in self.blocks)
        self.sc = [[[0] * n for _ in range(n)] for _ in range(n)]
        self.trace_vector, self.unit, self.labels, self.scales = [], [], [], []
        off = 0
        for blk in self.blocks:
            sc, tr, unit, labels = blk.structure()
            m = len(tr)
            for i in range(m):
                for j in range(m):
                    for k in range(m):
                        self.sc[off + i][off + j][off + k] = sc[i][j][k]
            self.trace_vector += tr
            self.unit += unit
            self.labels += labels
            self.scales += [blk.local_d * blk.size] * m
            off += m
        if self.representation is not None:
            self._check_representation()

    @property
    def rank(self) -> int:
        return len(self.trace_vector)

    def basis_vector(self, i: int) -> list[int]:
        return [int(k == i) for k in range(self.rank)]

    def mul(self, x, y) -> list[int]:
        n = self.rank
        out = [0] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, c in enumerate(self.sc[i][j]):
                    if c:
                        out[k] += xi * yj * c
        return out

    def reduced_trace(self, x) -> int:
        return sum(a * t for a, t in zip(x, self.trace_vector))

    def left_matrix(self, x) -> la.Matrix:
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.rank)]
        return la.transpose(cols)

    def intrinsic_trace(self, x) -> int:
        m = self.left_matrix(x)
        return sum(m[i][i] for i in range(self.rank))

    def _check_representation(self):
        rep = self.representation
        if len(rep) != self.rank:
            raise ValueError("representation needs one matrix per basis element")
        for i in range(self.rank):
            for j in range(self.rank):
                lhs = la.matmul(rep[i], rep[j])
                prod = self.sc[i][j]
                rhs = la.zeros(len(lhs), len(lhs))
                for k, c in enumerate(prod):
                    if c:
                        rhs = la.matadd(rhs, la.scalar_mul(c, rep[k]))
                if lhs != rhs:
                    raise ValueError("representation is not multiplicative")

    def to_json(self) -> dict:
        out = {"blocks": [b.to_json() for b in self.blocks]}
        if self.representation is not None:
            out["representation"] = self.representation
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Order":
        blocks = []
        for b in data["blocks"]:
            kind = b["kind"]
            if kind == "matrix_over_number_ring":
                blocks.append(NumberRingBlock(b["ring"], int(b.get("size", 1)), b.get("name", "")))
            elif kind == "quaternion":
                blocks.append(QuaternionBlock(int(b["a"]), int(b["b"]), b["basis"], b.get("name", "")))
            else:
                raise ValueError(f"unknown block kind {kind!r}")
        rep = data.get("representation")
        if rep is not None:
            rep = [[[int(x) for x in row] for row in m] for m in rep]
        return cls(blocks, rep)


# ---------------------------------------------------------------------------
# trace forms and discriminants


def reduced_trace_gram(o: Order) -> la.Matrix:
    e = [o.basis_vector(i) for i in range(o.rank)]
    return [[o.reduced_trace(o.mul(e[i], e[j])) for j in range(o.rank)] for i in range(o.rank)]


def reduced_trace_discriminant(o: Order) -> int:
    d = la.det(reduced_trace_gram(o))
    if d == 0:
        raise DegenerateFormError("reduced trace form is degenerate: invalid order data")
    return d


def intrinsic_trace_form(o: Order) -> la.Matrix:
    e = [o.basis_vector(i) for i in range(o.rank)]
    return [[o.intrinsic_trace(o.mul(e[i], e[j])) for j in range(o.rank)] for i in range(o.rank)]


def check_trace_relation(o: Order) -> bool:
    """Tr_B(b) == d_i r_i * tr(b) for every basis element b."""
    return all(o.intrinsic_trace(o.basis_vector(i)) == o.scales[i] * o.trace_vector[i]
               for i in range(o.rank))


def reduce_mod(o: Order, ell: int) -> FpAlgebra:
    return FpAlgebra(ell, o.sc, o.unit)


def verify_prop_b1(o: Order, ell: int) -> dict:
    """ell does not divide discr(o)  <=>  o/ell is semisimple."""
    d = reduced_trace_discriminant(o)
    v = la.valuation(d, ell)
    alg = reduce_mod(o, ell)
    rad = radical(alg)
    semisimple = not rad
    return {"prime": ell, "discriminant": d, "valuation": v, "semisimple": semisimple,
            "radical_dim": len(rad), "holds": (v == 0) == semisimple}


def check_form_identity(block: NumberRingBlock) -> dict:
    """|discr Mat_r(O)| == |discr(O/Z)|^(r^2) for a maximal-type number-ring block.

    With D = K the relative discriminant of Mat_r(O) over O is a unit, so the
    norm factor has absolute value 1.
    """
    lhs = reduced_trace_discriminant(Order([block]))
    rel = Order([NumberRingBlock([[[1]]], block.size)])
    norm_factor = reduced_trace_discriminant(rel) ** block.degree
    rhs = norm_factor * block.ring_discriminant() ** (block.size ** 2)
    return {"lhs": lhs, "rhs": rhs, "holds": abs(lhs) == abs(rhs)}


# ---------------------------------------------------------------------------
# curated orders


def integers() -> Order:
    return Order([NumberRingBlock([[[1]]], 1, "Z")], representation=[la.identity(2)])


def quadratic_ring(c0: int, c1: int, name: str = "") -> NumberRingBlock:
    """Z[x]/(x^2 - c1 x - c0) on the basis 1, x."""
    return NumberRingBlock([[[1, 0], [0, 1]], [[0, 1], [c0, c1]]], 1, name)


def gaussian_integers() -> Order:
    rep = [la.identity(2), [[0, -1], [1, 0]]]
    return Order([quadratic_ring(-1, 0, "Z[i]")], representation=rep)


def z_3i() -> Order:
    """Z[3i], the index-3 suborder of Z[i]."""
    return Order([quadratic_ring(-9, 0, "Z[3i]")], representation=[la.identity(2), [[0, -9], [1, 0]]])


def golden_ring() -> Order:
    """Z[x]/(x^2 - x - 1)."""
    return Order([quadratic_ring(1, 1, "Z[phi]")], representation=[la.identity(2), [[0, 1], [1, 1]]])


def mat2() -> Order:
    blk = NumberRingBlock([[[1]]], 2, "Mat2(Z)")
    rep = []
    for i in range(2):
        for j in range(2):
            e = la.zeros(2, 2)
            e[i][j] = 1
            rep.append(la.direct_sum(e, e))
    return Order([blk], representation=rep)


def lipschitz() -> Order:
    basis = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    return Order([QuaternionBlock(-1, -1, basis, "Lipschitz")])


def maximal_order_m1_m3() -> Order:
    """Maximal order Z<1, i, (1+j)/2, (i+k)/2> in (-1, -3 / Q)."""
    h = Fraction(1, 2)
    basis = [(1, 0, 0, 0), (0, 1, 0, 0), (h, 0, h, 0), (0, h, 0, h)]
    return Order([QuaternionBlock(-1, -3, basis, "O(-1,-3)")])


def curated_orders() -> dict[str, Order]:
    return {
        "Z": integers(),
        "Z[i]": gaussian_integers(),
        "Z[3i]": z_3i(),
        "Z[x]/(x^2-x-1)": golden_ring(),
        "Mat2(Z)": mat2(),
        "Lipschitz(-1,-1)": lipschitz(),
        "O(-1,-3)": maximal_order_m1_m3(),
    }


def primes_up_to(n: int) -> list[int]:
    sieve = [True] * (n + 1)
    out = []
    for k in range(2, n + 1):
        if sieve[k]:
            out.append(k)
            for m in range(k * k, n + 1, k):
                sieve[m] = False
    return out


def hurwitz() -> Order:
    """Hurwitz order in (-1, -1 / Q); contains the Lipschitz order with index 2."""
    h = Fraction(1, 2)
    basis = [(h, h, h, h), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    return Order([QuaternionBlock(-1, -1, basis, "Hurwitz")])


def index_squared_check(big: Order, sub_basis: Sequence[Sequence[int]]) -> dict:
    """discr(sub) == [big : sub]^2 * discr(big) for a full-rank sublattice given in big's coordinates."""
    m = la.transpose([list(v) for v in sub_basis])
    index = abs(la.det(m))
    if index == 0:
        raise ValueError("sublattice is not of full rank")
    gram = reduced_trace_gram(big)
    sub = la.det(la.matmul(la.transpose(m), la.matmul(gram, m)))
    full = reduced_trace_discriminant(big)
    return {"index": index, "sub_discriminant": sub, "discriminant": full,
            "holds": sub == index * index * full}
