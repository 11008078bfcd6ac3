"""Integral Clifford algebra of a lattice.

Basis elements are increasing index tuples (subsets of range(rank)).  The
relations are e_i e_i = (e_i.e_i) and e_j e_i = 2 (e_i.e_j) - e_i e_j, so
vw + wv = 2 (v.w) for v, w in L.  Elements are dicts {subset: coefficient}
with zero coefficients dropped.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations

from . import exact_linalg as la
from .lattices import Lattice

DEFAULT_CAP = 6
INDEX_CAP = 4


class RankCapError(ValueError):
    pass


def _add_into(out: dict, elem: dict, scale: int = 1):
    for k, c in elem.items():
        v = out.get(k, 0) + scale * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)


class CliffordAlgebra:
    def __init__(self, base: Lattice, cap: int = DEFAULT_CAP):
        if base.rank > cap:
            raise RankCapError(f"rank {base.rank} exceeds the cap {cap}")
        self.base = base
        self.rank = base.rank
        self.basis = [s for k in range(self.rank + 1) for s in combinations(range(self.rank), k)]
        self.index = {s: i for i, s in enumerate(self.basis)}
        gram = base.gram

        @lru_cache(maxsize=None)
        def normal(word: tuple) -> tuple:
            # reduce a word in generators to sorted monomials, returned as ((subset, coeff), ...)
            for k in range(len(word) - 1):
                a, b = word[k], word[k + 1]
                if a < b:
                    continue
                out: dict = {}
                rest = word[:k] + word[k + 2:]
                if a == b:
                    if gram[a][a]:
                        _add_into(out, dict(normal(rest)), gram[a][a])
                else:
                    if gram[a][b]:
                        _add_into(out, dict(normal(rest)), 2 * gram[a][b])
                    _add_into(out, dict(normal(word[:k] + (b, a) + word[k + 2:])), -1)
                return tuple(sorted(out.items()))
            return ((word, 1),)

        self._normal = normal
        n = self.dim
        self.table = [[dict(normal(self.basis[i] + self.basis[j])) for j in range(n)] for i in range(n)]
        self._trace = None

    @property
    def dim(self) -> int:
        return 1 << self.rank

    # elements ---------------------------------------------------------------

    def one(self) -> dict:
        return {(): 1}

    def vector(self, v) -> dict:
        return {(i,): c for i, c in enumerate(v) if c}

    def from_coords(self, coords) -> dict:
        return {self.basis[i]: c for i, c in enumerate(coords) if c}

    def coords(self, x: dict) -> list[int]:
        out = [0] * self.dim
        for s, c in x.items():
            out[self.index[s]] = c
        return out

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for s, a in x.items():
            row = self.table[self.index[s]]
            for t, b in y.items():
                _add_into(out, row[self.index[t]], a * b)
        return out

    def reversal(self, x: dict) -> dict:
        out: dict = {}
        for s, c in x.items():
            _add_into(out, dict(self._normal(tuple(reversed(s)))), c)
        return out

    def left_mult_matrix(self, x: dict) -> la.Matrix:
        n = self.dim
        m = la.zeros(n, n)
        for j, t in enumerate(self.basis):
            for s, c in self.mul(x, {t: 1}).items():
                m[self.index[s]][j] = c
        return m

    def trace_vector(self) -> list[int]:
        if self._trace is None:
            tv = []
            for i in range(self.dim):
                tv.append(sum(self.table[i][j].get(t, 0) for j, t in enumerate(self.basis)))
            self._trace = tv
        return self._trace

    def trace(self, x: dict) -> int:
        tv = self.trace_vector()
        return sum(c * tv[self.index[s]] for s, c in x.items())

    def is_even(self, x: dict) -> bool:
        return all(len(s) % 2 == 0 for s in x)

    def check_associativity(self, triples=None, samples: int = 1000, seed: int = 0) -> bool:
        n = self.dim
        if triples is None:
            if self.rank <= 3:
                triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
            else:
                rng = random.Random(seed)
                triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples)]
        for i, j, k in triples:
            a, b, c = ({self.basis[t]: 1} for t in (i, j, k))
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                return False
        return True


def build(l: Lattice, cap: int = DEFAULT_CAP, spot_checks: int = 200, seed: int = 0) -> CliffordAlgebra:
    c = CliffordAlgebra(l, cap)
    if not c.check_associativity(samples=spot_checks, seed=seed):
        raise ArithmeticError("multiplication table is not associative")
    return c


def reversal(c: CliffordAlgebra, x: dict) -> dict:
    return c.reversal(x)


def left_mult_matrix(c: CliffordAlgebra, x: dict) -> la.Matrix:
    return c.left_mult_matrix(x)


def trace_restriction_check(l: Lattice, cap: int = DEFAULT_CAP) -> dict:
    """Check Tr(L_v L_w) == 2^rank (v.w) on basis pairs."""
    c = CliffordAlgebra(l, cap)
    r = l.rank
    scalar = 1 << r
    traces = [[c.trace(c.mul({(i,): 1}, {(j,): 1})) for j in range(r)] for i in range(r)]
    ok = all(traces[i][j] == scalar * l.gram[i][j] for i in range(r) for j in range(r))
    return {"rank": r, "scalar": scalar, "traces": traces, "holds": ok}


def symplectic_form(c: CliffordAlgebra, f1, f2) -> dict:
    """Gram of (v, w) -> Tr(f1 f2 v* w) on the monomial basis, with its determinant."""
    g = c.base
    if g.inner(f1, f2) != 0 or g.inner(f1, f1) <= 0 or g.inner(f2, f2) <= 0:
        raise ValueError("need orthogonal f1, f2 with positive norms")
    pre = c.mul(c.vector(f1), c.vector(f2))
    rev = [c.reversal({s: 1}) for s in c.basis]
    n = c.dim
    tv = c.trace_vector()
    # Tr(pre * v* * w) is linear in w; compute the row functional once per v
    gram = la.zeros(n, n)
    for i in range(n):
        left = c.mul(pre, rev[i])
        for j, t in enumerate(c.basis):
            gram[i][j] = sum(coef * tv[c.index[s]] for s, coef in c.mul(left, {t: 1}).items())
    skew = all(gram[i][j] == -gram[j][i] for i in range(n) for j in range(n))
    return {"gram": gram, "skew": skew, "det": la.det(gram)}


def complement_index(l: Lattice, cap: int = INDEX_CAP) -> dict:
    """Invariant factors of F = End(C(L)) / (L + L^perp) for the trace form Tr(xy).

    The map End -> Z^r, X -> (Tr(X L_{e_i}))_i has kernel L^perp, so F is the
    cokernel of L inside the image of that map.
    """
    if l.rank > cap:
        raise RankCapError(f"rank {l.rank} exceeds the cap {cap}")
    c = CliffordAlgebra(l, cap)
    r, n = l.rank, c.dim
    mats = [c.left_mult_matrix({(i,): 1}) for i in range(r)]
    # Tr(X M) = sum_{a,b} X[a][b] M[b][a]
    phi = [la.flatten(la.transpose(m)) for m in mats]
    image = la.span_basis(la.columns(phi), r)
    restricted = [[sum(x * y for x, y in zip(phi[i], la.flatten(mats[j]))) for j in range(r)]
                  for i in range(r)]
    factors = la.quotient_invariants(image, la.columns(restricted))
    order = 1
    for f in factors:
        order *= f
    perp_rank = n * n - la.rank(phi)
    expected = abs(la.det(la.scalar_mul(1 << r, l.gram)))
    return {"invariant_factors": factors, "index": order, "restricted_gram": restricted,
            "perp_rank": perp_rank, "expected": expected, "holds": order == expected}
