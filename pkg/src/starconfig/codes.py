"""Linear codes, generalized Hamming weights and the flats/subcodes dictionary.

The weight hierarchy is computed by three independent routes (exhaustive
subset search, shifted Tutte coefficients, dual-matroid rank) which must
always agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import (ExactArithError, ExactMatrix, FieldSpec,
                     left_kernel_basis, rref)
from .matroid import Flat, VectorMatroid, bits_of
from .tutte import ShiftedCoeffs


class CodeError(ExactArithError):
    pass


def form_label(spec: FieldSpec, col, names=None) -> str:
    """Human label of the linear form dual to a matrix column."""
    k = len(col)
    names = names or [f"x{i + 1}" for i in range(k)]
    zero = spec.zero
    parts = []
    for i, c in enumerate(col):
        if c == zero:
            continue
        txt = names[i] if c == spec.one else f"{spec.to_str(c)}*{names[i]}"
        parts.append(txt)
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class WeightHierarchy:
    """d_0 .. d_k with d_0 = 0 and, for loopless codes, d_k = n."""

    d: tuple

    @property
    def k(self) -> int:
        return len(self.d) - 1

    def interval_index(self, a: int) -> int:
        """The unique r with d_r < a <= d_{r+1}."""
        for r in range(self.k):
            if self.d[r] < a <= self.d[r + 1]:
                return r
        raise ExactArithError(f"a={a} outside (d_0, d_k]")

    def validate(self, n: int, k: int):
        d = self.d
        if d[0] != 0:
            raise ExactArithError("d_0 must be 0")
        for r in range(1, k):
            if not d[r] < d[r + 1]:
                raise ExactArithError("hierarchy must increase strictly")
        for r in range(1, k + 1):
            if d[r] > n - k + r:
                raise ExactArithError("Singleton-type bound violated")
        if k >= 1 and d[k] != n:
            raise ExactArithError("d_k must equal n for loopless codes")

    def to_json(self) -> list:
        return list(self.d)


class LinearCode:
    """A k x n full-rank generator matrix with no zero columns."""

    def __init__(self, matrix: ExactMatrix, labels=None):
        zero = matrix.spec.zero
        for j in range(matrix.cols):
            if all(x == zero for x in matrix.column(j)):
                raise CodeError(
                    f"column {j + 1} is zero: zero columns (matroid loops) "
                    "are not allowed in a generator matrix")
        self.matrix = matrix
        self.spec = matrix.spec
        self.n = matrix.cols
        self.k = matrix.rows
        self.matroid = VectorMatroid(matrix)
        if self.matroid.full_rank != self.k:
            raise CodeError(
                f"generator matrix must have full row rank {self.k}, "
                f"got {self.matroid.full_rank}")
        if labels is not None and len(labels) != self.n:
            raise CodeError("need one label per column")
        self.labels = (tuple(labels) if labels is not None else
                       tuple(form_label(self.spec, matrix.column(j))
                             for j in range(self.n)))


# -- the three GHW routes ----------------------------------------------------

def _ghw_bruteforce_matroid(m: VectorMatroid, r: int) -> int:
    """d_r = n - max{|J| : rank(J) = k - r}, by exhaustive subset scan."""
    target = m.full_rank - r
    best = -1
    for mask in range(1 << m.n):
        size = bin(mask).count("1")
        if size > best and m.rank(mask) == target:
            best = size
    if best < 0:
        raise ExactArithError(f"no subset of rank {target}")
    return m.n - best


def ghw_bruteforce(code: LinearCode, r: int) -> int:
    if not 0 <= r <= code.k:
        raise ExactArithError(f"r={r} out of range")
    return _ghw_bruteforce_matroid(code.matroid, r)


def ghw_from_tutte(coeffs: ShiftedCoeffs, code: LinearCode, r: int) -> int:
    if not 0 <= r <= code.k:
        raise ExactArithError(f"r={r} out of range")
    return code.n - coeffs.p[r] - code.k + r


def ghw_from_dual_rank(code: LinearCode, r: int) -> int:
    """d_r = min{|I| : |I| - r*(I) = r}."""
    if not 0 <= r <= code.k:
        raise ExactArithError(f"r={r} out of range")
    m = code.matroid
    best = None
    for mask in range(1 << m.n):
        size = bin(mask).count("1")
        if (best is None or size < best) and size - m.dual_rank(mask) == r:
            best = size
    if best is None:
        raise ExactArithError(f"no witness subset for r={r}")
    return best


def weight_hierarchy(code: LinearCode) -> WeightHierarchy:
    """Brute-force hierarchy d_0..d_k, validated against the standard bounds."""
    h = WeightHierarchy(tuple(ghw_bruteforce(code, r)
                              for r in range(code.k + 1)))
    h.validate(code.n, code.k)
    return h


# -- Wei duality -------------------------------------------------------------

def dual_generator_matrix(code: LinearCode) -> ExactMatrix:
    """Generator of the dual code, via systematic form with the column
    permutation tracked and undone.

    If RREF(G) restricted to its pivots is the identity with remainder A,
    the dual generator is (-A^T | I) pushed back through the permutation.
    """
    spec = code.spec
    reduced, rank, pivots = rref(code.matrix)
    n, k = code.n, code.k
    nonpivots = [j for j in range(n) if j not in set(pivots)]
    rows = []
    for t, q in enumerate(nonpivots):
        v = [spec.zero] * n
        v[q] = spec.one
        for i, p in enumerate(pivots):
            v[p] = spec.neg(reduced.entries[i][q])
        rows.append(tuple(v))
    return ExactMatrix.from_rows(spec, rows, cols=n)


def wei_duality_check(code: LinearCode):
    """Check {d_r(C)} = {1..n} minus {n+1-d_s(dual)}; returns
    (holds, primal_set, dual_complement_set, dual_hierarchy)."""
    n, k = code.n, code.k
    primal = {ghw_bruteforce(code, r) for r in range(1, k + 1)}
    if n == k:
        dual_d = []
    else:
        h = dual_generator_matrix(code)
        dual_m = VectorMatroid(h)
        dual_d = [_ghw_bruteforce_matroid(dual_m, s)
                  for s in range(1, n - k + 1)]
    removed = {n + 1 - ds for ds in dual_d}
    rhs = set(range(1, n + 1)) - removed
    return primal == rhs, sorted(primal), sorted(rhs), dual_d


# -- flats <-> subcodes ------------------------------------------------------

@dataclass(frozen=True)
class Subcode:
    """Subcode spanned by v_i G for a left-kernel basis {v_i} of G_I."""

    basis: tuple  # codewords, length-n tuples
    support: int  # bitmask
    source_flat: Flat

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def support_size(self) -> int:
        return bin(self.support).count("1")


def subcode_from_flat(code: LinearCode, f: Flat) -> Subcode:
    m = code.matroid
    if m.closure(f.members).members != f.members:
        raise ExactArithError("subset is not a flat")
    if f.rank >= code.k:
        raise ExactArithError("flat of full rank yields the zero subcode")
    spec = code.spec
    kernel = left_kernel_basis(code.matrix, bits_of(f.members))
    words = []
    support = 0
    for v in kernel:
        w = []
        for j in range(code.n):
            col = code.matrix.column(j)
            acc = spec.zero
            for vi, gij in zip(v, col):
                acc = spec.add(acc, spec.mul(vi, gij))
            w.append(acc)
            if acc != spec.zero:
                support |= 1 << j
        words.append(tuple(w))
    return Subcode(tuple(words), support, f)


def minimal_support_subcode_count(code: LinearCode, coeffs: ShiftedCoeffs,
                                  r: int) -> int:
    """c_{r, p_r}: the number of r-dimensional subcodes of minimal support."""
    if not 1 <= r <= code.k:
        raise ExactArithError(f"r={r} out of range")
    return coeffs.coeff(r, coeffs.p[r])
