"""Exact linear algebra over the integers and over residue rings Z/N.

Matrices are plain lists of lists of Python ints (row-major).  Vectors are
lists of ints.  Nothing here ever rounds: determinants use fraction-free
elimination and every normal form is computed with unimodular integer
operations.

Besides the classical normal forms the module carries a small toolkit for
submodules of Z^k given by generators (`span_basis`, `preimage`,
`intersect`, `quotient_invariants`, ...).  A submodule of (Z/N)^k is always
handled through its full preimage in Z^k, i.e. a lattice containing N*Z^k,
which keeps every computation over Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Sequence

Matrix = list[list[int]]
Vector = list[int]


# ---------------------------------------------------------------------------
# basic helpers


def shape(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return rows, cols


def copy_matrix(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, row)) for row in m]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col) if x) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return [sum(x * y for x, y in zip(row, v) if x) for row in a]


def matadd(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matsub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scalar_mul(c: int, m) -> Matrix:
    return [[c * x for x in row] for row in m]


def mod_matrix(m, modulus: int) -> Matrix:
    return [[x % modulus for x in row] for row in m]


def columns(m) -> list[Vector]:
    return transpose(m)


def from_columns(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    if not cols:
        return [[] for _ in range(nrows)]
    return transpose(cols)


def direct_sum(*blocks: Sequence[Sequence[int]]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = int(x)
        k += len(b)
    return out


def is_symmetric(m) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i))


def flatten(m) -> Vector:
    return [x for row in m for x in row]


def unflatten(v: Sequence[int], n: int) -> Matrix:
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


def valuation(x: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# determinant


def det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    rows, cols = shape(m)
    if rows != cols:
        raise ValueError(f"determinant of a non-square {rows}x{cols} matrix")
    n = rows
    if n == 0:
        return 1
    a = copy_matrix(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


class SmithForm(NamedTuple):
    U: Matrix
    D: Matrix
    V: Matrix


def _smith(m: Sequence[Sequence[int]], track: bool, track_inverse: bool = False):
    a = copy_matrix(m)
    rows, cols = shape(a)
    U = identity(rows) if track else None
    Uinv = identity(rows) if track_inverse else None
    V = identity(cols) if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
        if Uinv is not None:
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        rs, rd = a[src], a[dst]
        for j in range(cols):
            if rs[j]:
                rd[j] += q * rs[j]
        if U is not None:
            us, ud = U[src], U[dst]
            for j in range(rows):
                if us[j]:
                    ud[j] += q * us[j]
        if Uinv is not None:
            # inverse operation on columns: col_src -= q * col_dst
            for row in Uinv:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    t = 0
    while t < min(rows, cols):
        while True:
            # smallest |entry|, leftmost column first, then topmost row
            best = None
            for j in range(t, cols):
                for i in range(t, rows):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if t >= rows or t >= cols or a[t][t] == 0:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
            if Uinv is not None:
                for row in Uinv:
                    row[t] = -row[t]
        t += 1
    return U, a, V, Uinv


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithForm:
    """Return (U, D, V) with U*m*V == D, U and V unimodular.

    D is diagonal with nonnegative entries d1 | d2 | ... .  The pivot is the
    entry of smallest absolute value (leftmost column, then topmost row), so
    the output is a deterministic function of the input.
    """
    U, D, V, _ = _smith(m, track=True)
    return SmithForm(U, D, V)


def elementary_divisors(m: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith form (length min(rows, cols), zeros included)."""
    _, D, _, _ = _smith(m, track=False)
    rows, cols = shape(D)
    return [D[i][i] for i in range(min(rows, cols))]


# ---------------------------------------------------------------------------
# Hermite normal form, kernels, ranks


def _column_echelon(m: Sequence[Sequence[int]], track: bool):
    """Column-style HNF of m; optionally the unimodular V with m*V = H."""
    h = copy_matrix(m)
    rows, cols = shape(h)
    V = identity(cols) if track else None

    def colop2(j, k, a, b, c, d):
        # (col_j, col_k) <- (a*col_j + b*col_k, c*col_j + d*col_k)
        for row in h:
            x, y = row[j], row[k]
            if x or y:
                row[j], row[k] = a * x + b * y, c * x + d * y
        if V is not None:
            for row in V:
                x, y = row[j], row[k]
                if x or y:
                    row[j], row[k] = a * x + b * y, c * x + d * y

    def addcol(dst, src, q):
        for row in h:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    def swapcol(j, k):
        for row in h:
            row[j], row[k] = row[k], row[j]
        if V is not None:
            for row in V:
                row[j], row[k] = row[k], row[j]

    pc = 0
    pivots = []
    for i in range(rows):
        if pc >= cols:
            break
        r = h[i]
        for k in range(pc + 1, cols):
            if r[k] == 0:
                continue
            if r[pc] == 0:
                swapcol(pc, k)
                continue
            a, b = r[pc], r[k]
            if b % a == 0:
                addcol(k, pc, -(b // a))
                continue
            g, x, y = xgcd(a, b)
            colop2(pc, k, x, y, -b // g, a // g)
        if r[pc] == 0:
            continue
        if r[pc] < 0:
            for row in h:
                row[pc] = -row[pc]
            if V is not None:
                for row in V:
                    row[pc] = -row[pc]
        p = r[pc]
        for j in range(pc):
            if r[j] < 0 or r[j] >= p:
                addcol(j, pc, -(r[j] // p))
        pivots.append(i)
        pc += 1
    return h, V, pivots


def hermite_normal_form(m: Sequence[Sequence[int]]) -> Matrix:
    """Canonical column-style HNF with the same column span over Z.

    Column k has its positive pivot in row pivots[k] (strictly increasing),
    zeros above it, and the entries of the pivot row left of the pivot lie in
    [0, pivot).  Zero columns are moved to the right.
    """
    h, _, _ = _column_echelon(m, track=False)
    return h


def rank(m: Sequence[Sequence[int]]) -> int:
    _, _, pivots = _column_echelon(m, track=False)
    return len(pivots)


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    """Z-basis (list of vectors) of {x in Z^n : m x = 0}; always saturated."""
    rows, cols = shape(m)
    if rows == 0:
        cols = ncols if ncols is not None else cols
        return [[int(i == j) for i in range(cols)] for j in range(cols)]
    _, V, pivots = _column_echelon(m, track=True)
    r = len(pivots)
    basis = [[V[i][j] for i in range(cols)] for j in range(r, cols)]
    return span_basis(basis, cols)


def span_basis(gens: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Canonical (HNF) Z-basis of the span of the given vectors in Z^dim."""
    gens = [list(g) for g in gens if any(g)]
    if not gens:
        return []
    h = hermite_normal_form(from_columns(gens, dim))
    out = []
    for c in columns(h):
        if any(c):
            out.append(c)
    return out


def solve_in_basis(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Vector | None:
    """Coordinates of v in an HNF basis (as produced by span_basis), or None."""
    v = list(v)
    coeffs = []
    for b in basis:
        p = next(i for i, x in enumerate(b) if x)
        if v[p] % b[p]:
            return None
        q = v[p] // b[p]
        coeffs.append(q)
        if q:
            for i in range(p, len(v)):
                v[i] -= q * b[i]
    if any(v):
        return None
    return coeffs


def contains(basis, v) -> bool:
    return solve_in_basis(basis, v) is not None


def submodule_contains(big, small) -> bool:
    return all(contains(big, v) for v in small)


def same_span(a, b) -> bool:
    """Equality of the Z-spans of two generating sets."""
    a, b = [list(x) for x in a], [list(x) for x in b]
    dim = len((a or b or [[]])[0])
    return span_basis(a, dim) == span_basis(b, dim)


def preimage(a: Sequence[Sequence[int]], target: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Basis of {x in Z^dim : a x in span(target)} (a is m x dim)."""
    m = len(a)
    if m == 0:
        return [[int(i == j) for i in range(dim)] for j in range(dim)]
    block = [list(a[i]) + [-t[i] for t in target] for i in range(m)]
    ker = integer_kernel(block, dim + len(target))
    return span_basis([k[:dim] for k in ker], dim)


def intersect(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Basis of span(a) ∩ span(b) in Z^dim."""
    if not a or not b:
        return []
    block = [[v[i] for v in a] + [-w[i] for w in b] for i in range(dim)]
    ker = integer_kernel(block, len(a) + len(b))
    return span_basis([[sum(k[j] * a[j][i] for j in range(len(a))) for i in range(dim)] for k in ker], dim)


def saturation(gens: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Basis of (Q-span of gens) ∩ Z^dim.

    If B = U^-1 D V^-1 is the Smith decomposition of the generator matrix, the
    first rank(B) columns of the unimodular U^-1 span the saturation.
    """
    gens = [list(g) for g in gens if any(g)]
    if not gens:
        return []
    _, D, _, Uinv = _smith(from_columns(gens, dim), track=False, track_inverse=True)
    r = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    return span_basis([[Uinv[row][i] for row in range(dim)] for i in range(r)], dim)


def quotient_invariants(big: Sequence[Sequence[int]], small: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors (> 1) of span(big)/span(small); small must lie in big.

    Free summands, if any, are reported as 0 at the end of the list.
    """
    coords = []
    for v in small:
        c = solve_in_basis(big, v)
        if c is None:
            raise ValueError("submodule is not contained in the ambient module")
        coords.append(c)
    k = len(big)
    if k == 0:
        return []
    if not coords:
        return [0] * k
    divs = elementary_divisors(from_columns(coords, k))
    divs += [0] * (k - len(divs))
    finite = sorted(d for d in divs if d > 1)
    return finite + [0] * divs.count(0)


def unit_vectors(dim: int, scale: int = 1) -> list[Vector]:
    return [[scale * int(i == j) for i in range(dim)] for j in range(dim)]


# ---------------------------------------------------------------------------
# residue rings


@dataclass(frozen=True)
class ResidueMatrix:
    """Matrix over Z/modulus with entries stored as canonical residues."""

    modulus: int
    entries: tuple[tuple[int, ...], ...]

    def __init__(self, modulus: int, rows: Sequence[Sequence[int]]):
        if modulus < 1:
            raise ValueError("modulus must be a positive integer")
        object.__setattr__(self, "modulus", int(modulus))
        object.__setattr__(self, "entries", tuple(tuple(int(x) % modulus for x in r) for r in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def tolist(self) -> Matrix:
        return [list(r) for r in self.entries]

    def lift(self, balanced: bool = False) -> Matrix:
        """Integer lift; balanced=True uses representatives in (-N/2, N/2]."""
        if not balanced:
            return self.tolist()
        n = self.modulus
        return [[x - n if 2 * x > n else x for x in r] for r in self.entries]

    def reduce(self, modulus: int) -> "ResidueMatrix":
        if self.modulus % modulus:
            raise ValueError(f"cannot reduce modulo {modulus}: it does not divide {self.modulus}")
        return ResidueMatrix(modulus, self.entries)

    def __matmul__(self, other: "ResidueMatrix") -> "ResidueMatrix":
        if other.modulus != self.modulus:
            raise ValueError("mixed moduli")
        return ResidueMatrix(self.modulus, matmul(self.entries, other.entries))


class Generator(NamedTuple):
    vector: Vector
    order: int


def smith_generators(basis: Sequence[Sequence[int]], modulus: int, dim: int) -> list[Generator]:
    """Smith-form generating set of span(basis)/modulus*Z^dim.

    `basis` must span a lattice containing modulus*Z^dim.  Generators are
    reduced mod `modulus`, nontrivial, and their orders form a divisibility
    chain (ascending).
    """
    if dim == 0:
        return []
    B = from_columns(basis, dim)
    U, D, V, Uinv = _smith(B, track=True, track_inverse=True)
    # B = Uinv * D * Vinv, so span(B) = span(Uinv * D)
    gens = []
    for i in range(dim):
        d = D[i][i] if i < len(D[0]) else 0
        if d == 0:
            raise ValueError("lattice does not contain modulus * Z^dim")
        order = modulus // gcd(d, modulus)
        if modulus % d:
            raise ValueError("lattice does not contain modulus * Z^dim")
        if order == 1:
            continue
        gens.append(Generator([(d * Uinv[r][i]) % modulus for r in range(dim)], order))
    gens.sort(key=lambda g: g.order)
    return gens


def mod_span(gens: Sequence[Sequence[int]], modulus: int, dim: int) -> list[Vector]:
    """HNF basis of span(gens) + modulus*Z^dim."""
    return span_basis([list(g) for g in gens] + unit_vectors(dim, modulus), dim)


def kernel_basis_mod(m: ResidueMatrix) -> list[Generator]:
    """Smith-form generators of {x : m x = 0 mod modulus}.

    Orders of the returned generators form an ascending divisibility chain.
    """
    n = m.modulus
    rows, cols = m.rows, m.cols
    if cols == 0:
        return []
    if rows == 0:
        return [Generator([int(i == j) for i in range(cols)], n) for j in range(cols)] if n > 1 else []
    U, D, V = smith_normal_form(m.tolist())
    gens = []
    for i in range(cols):
        d = D[i][i] if i < rows else 0
        g = gcd(d, n)
        if g == 1:
            continue
        scale = n // g
        gens.append(Generator([(scale * V[r][i]) % n for r in range(cols)], g))
    gens.sort(key=lambda g: g.order)
    return gens


def kernel_lattice_mod(a: Sequence[Sequence[int]], modulus: int, dim: int) -> list[Vector]:
    """HNF basis of {x in Z^dim : a x = 0 mod modulus} (contains modulus*Z^dim)."""
    return preimage(a, unit_vectors(len(a), modulus), dim) if a else unit_vectors(dim)


def inverse_mod(m: Sequence[Sequence[int]], modulus: int) -> Matrix:
    """Inverse of an integer matrix modulo `modulus` (det must be a unit)."""
    n = len(m)
    d = det(m) % modulus
    if gcd(d, modulus) != 1:
        raise ValueError("matrix is not invertible modulo %d" % modulus)
    # Gauss-Jordan over Z/modulus using unit pivots
    a = [[x % modulus for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if gcd(a[r][c], modulus) == 1), None)
        if piv is None:
            # combine rows until a unit pivot appears (local ring case: always some row works)
            for r in range(c + 1, n):
                cand = [(x + y) % modulus for x, y in zip(a[c], a[r])]
                if gcd(cand[c], modulus) == 1:
                    a[c] = cand
                    piv = c
                    break
            if piv is None:
                raise ValueError("no unit pivot found; modulus is not a prime power?")
        a[c], a[piv] = a[piv], a[c]
        inv = pow(a[c][c], -1, modulus)
        a[c] = [(x * inv) % modulus for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [(x - f * y) % modulus for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]
