"""Bilinear forms on endomorphism data and the named constants Q(g), d_p(g).

Three forms live on an order B of endomorphisms:

* the reduced-trace form, with determinant ``base_discr``;
* the intrinsic form Tr_B(xy) (trace of left multiplication), whose
  discriminant is ``intrinsic_discriminant``;
* the degree form Tr_A(xy) (trace on the rank-2g lattice), whose
  discriminant is ``degree_discriminant``.

The two closed formulas are products over isotypic factors (e, d, g, m):

    Delta = discr * prod (d m)^(e d^2 m^2)
    delta = discr * prod (2g / (e d))^(e d^2 m^2)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from . import exact_linalg as la
from .orders import Order, intrinsic_trace_form, reduced_trace_discriminant


@dataclass(frozen=True)
class IsotypicDatum:
    e: int
    d: int
    g: int
    m: int

    def __post_init__(self):
        if min(self.e, self.d, self.g, self.m) < 1:
            raise ValueError("isotypic data must be positive integers")
        if (2 * self.g) % (self.e * self.d):
            raise ValueError(f"e*d = {self.e * self.d} does not divide 2g = {2 * self.g}")

    @property
    def exponent(self) -> int:
        return self.e * self.d ** 2 * self.m ** 2


@dataclass(frozen=True)
class EndData:
    factors: tuple
    base_discr: int
    order: Order | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.base_discr == 0:
            raise ValueError("base discriminant must be nonzero")
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def g(self) -> int:
        return sum(f.g * f.m for f in self.factors)

    def to_json(self) -> dict:
        return {"factors": [{"e": f.e, "d": f.d, "g": f.g, "m": f.m} for f in self.factors],
                "base_discr": self.base_discr}

    @classmethod
    def from_json(cls, data: dict) -> "EndData":
        factors = [IsotypicDatum(int(f["e"]), int(f["d"]), int(f["g"]), int(f["m"]))
                   for f in data["factors"]]
        order = Order.from_json(data["order"]) if "order" in data else None
        return cls(tuple(factors), int(data["base_discr"]), order)


def intrinsic_ratio(factors) -> int:
    out = 1
    for f in factors:
        out *= (f.d * f.m) ** f.exponent
    return out


def degree_ratio(factors) -> int:
    out = 1
    for f in factors:
        out *= (2 * f.g // (f.e * f.d)) ** f.exponent
    return out


def intrinsic_discriminant(e: EndData) -> int:
    return e.base_discr * intrinsic_ratio(e.factors)


def degree_discriminant(e: EndData) -> int:
    return e.base_discr * degree_ratio(e.factors)


def degree_form_from_representation(o: Order) -> la.Matrix:
    """Gram matrix of (x, y) -> trace of xy acting on the representation lattice."""
    if o.representation is None:
        raise ValueError("order carries no representation")
    rep = o.representation
    n = len(rep)
    out = la.zeros(n, n)
    for i in range(n):
        for j in range(i, n):
            prod = la.matmul(rep[i], rep[j])
            out[i][j] = out[j][i] = sum(prod[k][k] for k in range(len(prod)))
    return out


def recompute(e: EndData) -> dict:
    """Compare both formulas with the determinants of the forms on the attached order."""
    if e.order is None:
        raise ValueError("end data carries no order")
    o = e.order
    rows = {
        "base_discr": (e.base_discr, reduced_trace_discriminant(o)),
        "intrinsic": (intrinsic_discriminant(e), la.det(intrinsic_trace_form(o))),
    }
    if o.representation is not None:
        rows["degree"] = (degree_discriminant(e), la.det(degree_form_from_representation(o)))
    return {k: {"formula": f, "direct": d, "match": f == d} for k, (f, d) in rows.items()}


# ---------------------------------------------------------------------------
# constants


def q_of_g(g: int, start_prec: int = 64, max_prec: int = 1 << 16) -> int:
    """floor(2g * exp(2g/e)) by interval evaluation at increasing precision."""
    if g < 1:
        raise ValueError("g must be positive")
    prec = start_prec
    while prec <= max_prec:
        ctx = mpmath.iv
        saved = ctx.prec
        try:
            ctx.prec = prec
            val = 2 * g * ctx.exp(ctx.mpf(2 * g) / ctx.e)
            lo, hi = int(mpmath.floor(val.a)), int(mpmath.floor(val.b))
        finally:
            ctx.prec = saved
        if lo == hi:
            return lo
        prec *= 2
    raise ArithmeticError(f"could not certify the floor for g={g} within {max_prec} bits")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def gl_order(n: int, q: int) -> int:
    """|GL(n, F_q)|."""
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def gl_order_z4(n: int) -> int:
    """|GL(n, Z/4)|: reduction to F_2 is onto with kernel I + 2 Mat_n."""
    return gl_order(n, 2) * 2 ** (n * n)


def d_p_of_g(p: int, g: int) -> int:
    if g < 1:
        raise ValueError("g must be positive")
    if p != 0 and not _is_prime(p):
        raise ValueError("p must be 0 or a prime")
    if p == 3:
        return gl_order_z4(2 * g)
    return gl_order(2 * g, 3)


def standard_end_data() -> dict[str, EndData]:
    """End data of E (End = Z), E with CM by Z[i], and E^2 (End = Mat2(Z))."""
    from .orders import gaussian_integers, integers, mat2

    out = {}
    for name, order, factors in (
        ("Z", integers(), [IsotypicDatum(1, 1, 1, 1)]),
        ("Z[i]", gaussian_integers(), [IsotypicDatum(2, 1, 1, 1)]),
        ("Mat2(Z)", mat2(), [IsotypicDatum(1, 1, 1, 2)]),
    ):
        out[name] = EndData(tuple(factors), reduced_trace_discriminant(order), order)
    return out
