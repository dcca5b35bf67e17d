"""Sparse bivariate polynomials and two independent Tutte engines.

Engine one is the exhaustive corank-nullity subset sum; engine two is
memoized deletion-contraction.  They must agree coefficient for
coefficient, which the test suite enforces on randomized inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .fields import EXHAUSTIVE_CAP, ExactArithError, ExactMatrix, rref
from .matroid import VectorMatroid


class BivarPoly:
    """Sparse polynomial in x, y with arbitrary-precision int coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for (i, j), c in dict(terms).items():
                if c:
                    self.terms[(i, j)] = int(c)

    @classmethod
    def monomial(cls, i: int, j: int, coeff: int = 1) -> "BivarPoly":
        return cls({(i, j): coeff})

    @classmethod
    def zero(cls) -> "BivarPoly":
        return cls()

    @classmethod
    def one(cls) -> "BivarPoly":
        return cls({(0, 0): 1})

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            new = out.get(key, 0) + c
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return BivarPoly(out)

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivarPoly(out)

    def scale(self, c: int) -> "BivarPoly":
        return BivarPoly({key: c * v for key, v in self.terms.items()})

    def shift_degrees(self, dx: int, dy: int) -> "BivarPoly":
        return BivarPoly({(i + dx, j + dy): c
                          for (i, j), c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, BivarPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, x: int, y: int) -> int:
        return sum(c * x**i * y**j for (i, j), c in self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        def mono(i, j):
            parts = []
            if i:
                parts.append("x" if i == 1 else f"x^{i}")
            if j:
                parts.append("y" if j == 1 else f"y^{j}")
            return "*".join(parts)
        pieces = []
        for (i, j) in sorted(self.terms, key=lambda t: (-(t[0] + t[1]), -t[0])):
            c = self.terms[(i, j)]
            m = mono(i, j)
            if not m:
                pieces.append((c, str(abs(c))))
            elif abs(c) == 1:
                pieces.append((c, m))
            else:
                pieces.append((c, f"{abs(c)}*{m}"))
        out = pieces[0][1] if pieces[0][0] > 0 else "-" + pieces[0][1]
        for c, text in pieces[1:]:
            out += (" + " if c > 0 else " - ") + text
        return out

    __repr__ = __str__

    def to_json(self) -> dict:
        terms = [{"x": i, "y": j, "coeff": str(c)}
                 for (i, j), c in sorted(self.terms.items())]
        return {"terms": terms}

    @classmethod
    def from_json(cls, doc: dict) -> "BivarPoly":
        return cls({(t["x"], t["y"]): int(t["coeff"])
                    for t in doc["terms"]})


def _expand_shifted(a: int, b: int) -> BivarPoly:
    """(x-1)^a (y-1)^b, expanded with exact binomials."""
    out = {}
    for i in range(a + 1):
        ci = comb(a, i) * (-1) ** (a - i)
        for j in range(b + 1):
            out[(i, j)] = ci * comb(b, j) * (-1) ** (b - j)
    return BivarPoly(out)


def tutte_subset_sum(m: VectorMatroid, cap: int = EXHAUSTIVE_CAP,
                     threads: int = 1) -> BivarPoly:
    """Exhaustive corank-nullity sum over all 2^n subsets."""
    if m.n > cap:
        raise ExactArithError(
            f"ground set of size {m.n} exceeds exhaustive cap {cap}")
    counts = _corank_nullity_counts(m, 0, 1 << m.n, threads)
    poly = BivarPoly.zero()
    for (a, b), mult in counts.items():
        poly = poly + _expand_shifted(a, b).scale(mult)
    return poly


def _corank_nullity_counts(m: VectorMatroid, lo: int, hi: int,
                           threads: int) -> dict:
    if threads > 1 and hi - lo >= 1 << 10:
        from concurrent.futures import ThreadPoolExecutor
        step = (hi - lo + threads - 1) // threads
        chunks = [(lo + i * step, min(hi, lo + (i + 1) * step))
                  for i in range(threads)]
        chunks = [c for c in chunks if c[0] < c[1]]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(
                lambda c: _count_chunk(m, c[0], c[1]), chunks))
        total = {}
        for part in parts:
            for key, v in part.items():
                total[key] = total.get(key, 0) + v
        return total
    return _count_chunk(m, lo, hi)


def _count_chunk(m: VectorMatroid, lo: int, hi: int) -> dict:
    counts = {}
    rank = m.rank
    for mask in range(lo, hi):
        r = rank(mask)
        key = (m.full_rank - r, bin(mask).count("1") - r)
        counts[key] = counts.get(key, 0) + 1
    return counts


def canonical_matrix_key(matrix: ExactMatrix) -> tuple:
    """Canonical key identifying a matrix up to row ops, column scaling
    and column order; equal keys imply equal Tutte polynomials.

    Built from the RREF with each nonzero column scaled so its first
    nonzero entry is one, columns sorted with multiplicity.
    """
    reduced, rank, _ = rref(matrix)
    spec = matrix.spec
    zero = spec.zero
    cols = []
    for j in range(reduced.cols):
        col = reduced.column(j)
        lead = next((x for x in col if x != zero), None)
        if lead is not None and lead != spec.one:
            inv = spec.inv(lead)
            col = tuple(spec.mul(inv, x) for x in col)
        cols.append(tuple(spec.to_str(x) for x in col))
    cols.sort()
    kind = matrix.spec.kind
    mod = matrix.spec.modulus
    return (kind, mod, matrix.rows, matrix.cols, tuple(cols))


def canonical_key_string(matrix: ExactMatrix) -> str:
    return json.dumps(canonical_matrix_key(matrix))


def tutte_deletion_contraction(m: VectorMatroid, memo: dict | None = None,
                               cache=None) -> BivarPoly:
    """Deletion-contraction recursion with memoization on canonical minors.

    Loops contribute a factor y and coloops a factor x; otherwise the
    lowest-index ordinary element e gives T = T(M \\ e) + T(M / e).  An
    optional external cache (get/put of key string -> poly) persists
    results across runs.
    """
    if memo is None:
        memo = {}
    return _dc(m, memo, cache)


def _dc(m: VectorMatroid, memo: dict, cache) -> BivarPoly:
    if m.n == 0:
        return BivarPoly.one()
    key = canonical_matrix_key(m.matrix)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if cache is not None:
        stored = cache.get(json.dumps(key))
        if stored is not None:
            poly = BivarPoly.from_json(stored)
            memo[key] = poly
            return poly
    loops = sum(1 for i in range(m.n) if m.is_loop(i))
    ordinary = next((i for i in range(m.n)
                     if not m.is_loop(i) and not m.is_coloop(i)), None)
    if ordinary is None:
        coloops = m.n - loops
        poly = BivarPoly.monomial(coloops, loops)
    else:
        poly = (_dc(m.delete(ordinary), memo, cache)
                + _dc(m.contract(ordinary), memo, cache))
    memo[key] = poly
    if cache is not None:
        cache.put(json.dumps(key), poly.to_json())
    return poly


@dataclass(frozen=True)
class ShiftedCoeffs:
    """Coefficients c[(r, j)] of T(x+1, y) plus p[r] = max{j : c[r,j] != 0}.

    p[r] is defined for every r in [0, k]: the y-degree-summed coefficient
    at x^r counts independent sets of rank k - r, which always exist.
    """

    c: dict
    p: tuple
    k: int

    def coeff(self, r: int, j: int) -> int:
        return self.c.get((r, j), 0)

    def to_json(self) -> dict:
        return {
            "c": [{"x": r, "y": j, "coeff": str(v)}
                  for (r, j), v in sorted(self.c.items())],
            "p": list(self.p),
            "k": self.k,
        }


def whitney_shift(t: BivarPoly, k: int | None = None) -> ShiftedCoeffs:
    """Substitute x -> x + 1 by exact binomial expansion and read off p_r."""
    c = {}
    for (i, j), coeff in t.terms.items():
        for r in range(i + 1):
            key = (r, j)
            new = c.get(key, 0) + coeff * comb(i, r)
            if new:
                c[key] = new
            else:
                c.pop(key, None)
    if k is None:
        k = max((r for r, _ in c), default=0)
    p = []
    for r in range(k + 1):
        js = [j for (rr, j) in c if rr == r]
        if not js:
            raise ExactArithError(f"no nonzero shifted coefficient at x^{r}")
        p.append(max(js))
    return ShiftedCoeffs(c, tuple(p), k)
