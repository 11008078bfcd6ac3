"""Finite-dimensional associative unital algebras over a prime field F_p,
given by structure constants: e_i * e_j = sum_k sc[i][j][k] e_k.

The Jacobson radical is computed with Dickson's trace-form criterion when
p > dim, and otherwise with Ronyai's iterated p-power trace functionals.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Sequence


class NonAssociativeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# linear algebra over F_p


def rref_mod_p(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    a = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {x in F_p^ncols : rows * x = 0}."""
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref_mod_p(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def span_mod_p(vectors: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Reduced row echelon basis of the span."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    red, _ = rref_mod_p(vectors, p)
    return red


def solve_mod_p(basis: Sequence[Sequence[int]], v: Sequence[int], p: int) -> list[int] | None:
    """Coefficients c with sum c_k basis[k] == v, or None."""
    if not basis:
        return [] if not any(x % p for x in v) else None
    n = len(basis)
    # columns = basis vectors, augmented with v
    rows = [[b[i] for b in basis] + [v[i]] for i in range(len(v))]
    red, pivots = rref_mod_p(rows, p)
    if n in pivots:
        return None
    c = [0] * n
    for row, pc in zip(red, pivots):
        c[pc] = row[n]
    return c


def _matmul_mod(a, b, m):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) % m for c in bt] for r in a]


def _matpow_mod(a, e, m):
    n = len(a)
    result = [[int(i == j) for j in range(n)] for i in range(n)]
    base = [[x % m for x in r] for r in a]
    while e:
        if e & 1:
            result = _matmul_mod(result, base, m)
        base = _matmul_mod(base, base, m)
        e >>= 1
    return result


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FpAlgebra:
    p: int
    dim: int
    sc: tuple  # sc[i][j][k]
    unit: tuple

    def __init__(self, p: int, sc: Sequence, unit: Sequence[int], check: bool = True):
        if p < 2 or any(p % q == 0 for q in range(2, isqrt(p) + 1)):
            raise ValueError(f"{p} is not prime")
        dim = len(sc)
        table = tuple(tuple(tuple(int(x) % p for x in sc[i][j]) for j in range(dim)) for i in range(dim))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "sc", table)
        object.__setattr__(self, "unit", tuple(int(x) % p for x in unit))
        if check:
            self.validate()

    # -- arithmetic ------------------------------------------------------

    def mul(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        p, n, sc = self.p, self.dim, self.sc
        out = [0] * n
        for i in range(n):
            xi = x[i]
            if not xi:
                continue
            for j in range(n):
                yj = y[j]
                if not yj:
                    continue
                c = xi * yj
                for k, s in enumerate(sc[i][j]):
                    if s:
                        out[k] += c * s
        return [v % p for v in out]

    def basis_vector(self, i: int) -> list[int]:
        return [int(k == i) for k in range(self.dim)]

    def left_matrix(self, x: Sequence[int]) -> list[list[int]]:
        """Matrix of y -> x*y in the structure basis."""
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.dim)]
        return [list(r) for r in zip(*cols)] if cols else []

    def trace(self, x: Sequence[int]) -> int:
        m = self.left_matrix(x)
        return sum(m[i][i] for i in range(self.dim)) % self.p

    def is_nilpotent(self, x: Sequence[int]) -> bool:
        y = list(x)
        for _ in range(self.dim + 1):
            if not any(y):
                return True
            y = self.mul(y, x)
        return not any(y)

    def validate(self) -> None:
        n, p = self.dim, self.p
        e = [self.basis_vector(i) for i in range(n)]
        prods = [[list(self.sc[i][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = self.mul(prods[i][j], e[k])
                    right = self.mul(e[i], prods[j][k])
                    if left != right:
                        raise NonAssociativeError(f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})")
        u = list(self.unit)
        for i in range(n):
            if self.mul(u, e[i]) != e[i] or self.mul(e[i], u) != e[i]:
                raise ValueError("unit is not a two-sided identity")

    # -- serialisation ----------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "dim": self.dim, "sc": [[list(c) for c in row] for row in self.sc],
                "unit": list(self.unit)}

    @classmethod
    def from_json(cls, data: dict) -> "FpAlgebra":
        alg = cls(int(data["p"]), data["sc"], data["unit"])
        if "dim" in data and int(data["dim"]) != alg.dim:
            raise ValueError("dim field disagrees with the structure constants")
        return alg

    @classmethod
    def from_matrices(cls, p: int, basis: Sequence[Sequence[Sequence[int]]]) -> "FpAlgebra":
        """Algebra spanned by linearly independent square matrices over F_p."""
        flat = [[x % p for row in b for x in row] for b in basis]
        n = len(flat)
        size = len(basis[0])
        sc = []
        for i in range(n):
            row = []
            for j in range(n):
                prod = _matmul_mod(basis[i], basis[j], p)
                c = solve_mod_p(flat, [x for r in prod for x in r], p)
                if c is None:
                    raise ValueError("matrices do not span a subalgebra")
                row.append(c)
            sc.append(row)
        one = [int(i == j) for i in range(size) for j in range(size)]
        unit = solve_mod_p(flat, one, p)
        if unit is None:
            raise ValueError("span does not contain the identity")
        return cls(p, sc, unit)


# ---------------------------------------------------------------------------
# radical, semisimplicity, centre


def _trace_form_kernel(a: FpAlgebra) -> list[list[int]]:
    n = a.dim
    e = [a.basis_vector(i) for i in range(n)]
    gram = [[a.trace(a.mul(e[i], e[j])) for j in range(n)] for i in range(n)]
    return nullspace_mod_p(gram, n, a.p)


def _ronyai_radical(a: FpAlgebra) -> list[list[int]]:
    p, n = a.p, a.dim
    e = [a.basis_vector(i) for i in range(n)]
    levels = 0
    while p ** (levels + 1) <= n:
        levels += 1
    current = [list(v) for v in e]  # I_{-1} = A
    for i in range(levels + 1):
        if not current:
            break
        q = p ** i
        mod = p ** (i + 1)
        # g_i(x) = Tr(lift(L_x)^(p^i)) / p^i mod p, linear on I_{i-1}
        cond = []
        for ej in e:
            row = []
            for b in current:
                m = _matpow_mod(a.left_matrix(a.mul(b, ej)), q, mod)
                t = sum(m[k][k] for k in range(n)) % mod
                if t % q:
                    raise ArithmeticError("p-power trace not divisible as expected")
                row.append((t // q) % p)
            cond.append(row)
        coeffs = nullspace_mod_p(cond, len(current), p)
        current = [[sum(c[k] * current[k][t] for k in range(len(current))) % p for t in range(n)]
                   for c in coeffs]
    return span_mod_p(current, p)


def radical(a: FpAlgebra) -> list[list[int]]:
    """Basis (reduced echelon) of the Jacobson radical."""
    if a.p > a.dim:
        return span_mod_p(_trace_form_kernel(a), a.p)
    return _ronyai_radical(a)


def is_semisimple(a: FpAlgebra) -> bool:
    return not radical(a)


def center(a: FpAlgebra) -> list[list[int]]:
    n = a.dim
    rows = []
    for j in range(n):
        # coefficient of e_k in (x e_j - e_j x) as a linear form in x
        for k in range(n):
            rows.append([(a.sc[i][j][k] - a.sc[j][i][k]) % a.p for i in range(n)])
    return span_mod_p(nullspace_mod_p(rows, n, a.p), a.p)


def is_two_sided_ideal(a: FpAlgebra, basis: Sequence[Sequence[int]]) -> bool:
    for v in basis:
        for j in range(a.dim):
            ej = a.basis_vector(j)
            if solve_mod_p(basis, a.mul(v, ej), a.p) is None:
                return False
            if solve_mod_p(basis, a.mul(ej, v), a.p) is None:
                return False
    return True


def quotient(a: FpAlgebra, ideal: Sequence[Sequence[int]]) -> FpAlgebra:
    """A / I for a two-sided ideal I given by a basis."""
    p, n = a.p, a.dim
    ideal = span_mod_p(ideal, p)
    if not ideal:
        return a
    _, pivots = rref_mod_p(ideal, p)
    comp = [a.basis_vector(i) for i in range(n) if i not in pivots]
    full = comp + ideal
    q = len(comp)

    def coords(v):
        c = solve_mod_p(full, v, p)
        return c[:q]

    sc = [[coords(a.mul(comp[i], comp[j])) for j in range(q)] for i in range(q)]
    unit = coords(list(a.unit))
    return FpAlgebra(p, sc, unit)


# ---------------------------------------------------------------------------
# standard examples


def matrix_algebra(p: int, r: int) -> FpAlgebra:
    """Mat_r(F_p) on the matrix units E_ij (index i*r + j)."""
    n = r * r
    sc = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(r):
        for j in range(r):
            for k in range(r):
                sc[i * r + j][j * r + k][i * r + k] = 1
    unit = [int(i == j) for i in range(r) for j in range(r)]
    return FpAlgebra(p, sc, unit)


def polynomial_quotient(p: int, coeffs: Sequence[int]) -> FpAlgebra:
    """F_p[x]/(f) for monic f = x^n + coeffs[n-1] x^(n-1) + ... + coeffs[0]."""
    n = len(coeffs)

    def reduce(poly):
        poly = list(poly)
        for d in range(len(poly) - 1, n - 1, -1):
            c = poly[d]
            if c:
                poly[d] = 0
                for k in range(n):
                    poly[d - n + k] -= c * coeffs[k]
        return [x % p for x in poly[:n]] + [0] * max(0, n - len(poly))

    sc = []
    for i in range(n):
        row = []
        for j in range(n):
            mono = [0] * (i + j + 1)
            mono[i + j] = 1
            row.append(reduce(mono))
        sc.append(row)
    return FpAlgebra(p, sc, [1] + [0] * (n - 1))


def product_algebra(*algs: FpAlgebra) -> FpAlgebra:
    p = algs[0].p
    n = sum(x.dim for x in algs)
    sc = [[[0] * n for _ in range(n)] for _ in range(n)]
    unit = []
    off = 0
    for alg in algs:
        for i in range(alg.dim):
            for j in range(alg.dim):
                for k in range(alg.dim):
                    sc[off + i][off + j][off + k] = alg.sc[i][j][k]
        unit += list(alg.unit)
        off += alg.dim
    return FpAlgebra(p, sc, unit)


def group_algebra(p: int, n: int) -> FpAlgebra:
    """F_p[C_n] on the basis 1, g, ..., g^(n-1)."""
    sc = [[[int(k == (i + j) % n) for k in range(n)] for j in range(n)] for i in range(n)]
    return FpAlgebra(p, sc, [1] + [0] * (n - 1))
