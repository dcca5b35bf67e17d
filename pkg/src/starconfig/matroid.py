"""Column matroid of an exact matrix: rank, closure, flats, minors, duals.

Subsets of the ground set [n] are bitmasks (element i occupies bit i).
Ranks are memoized; an eager precompute pass over all 2^n subsets is
available for small n so downstream subset sums run cache-hot.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .fields import (EXHAUSTIVE_CAP, MAX_GROUND_SET, ExactArithError,
                     ExactMatrix, column_rank)

PRECOMPUTE_CAP = 20


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(mask: int) -> list:
    return list(iter_bits(mask))


@dataclass(frozen=True)
class Flat:
    """A closed subset together with its rank."""

    members: int  # bitmask
    rank: int

    def indices(self) -> list:
        return bits_of(self.members)

    @property
    def size(self) -> int:
        return bin(self.members).count("1")


class VectorMatroid:
    """Matroid of the columns of a k x n matrix, with a lazy rank cache."""

    def __init__(self, matrix: ExactMatrix):
        if matrix.cols > MAX_GROUND_SET:
            raise ExactArithError(
                f"ground set of size {matrix.cols} exceeds bitmask cap "
                f"{MAX_GROUND_SET}")
        self.matrix = matrix
        self.spec = matrix.spec
        self.n = matrix.cols
        self.k = matrix.rows
        self._columns = matrix.columns()
        self._rank_cache = {0: 0}
        self.full_rank = self.rank((1 << self.n) - 1)

    # -- rank ----------------------------------------------------------------

    def rank(self, mask: int) -> int:
        """r(I) for the subset encoded by mask."""
        if not 0 <= mask < (1 << self.n):
            raise ExactArithError(f"subset mask {mask:#x} out of range")
        cached = self._rank_cache.get(mask)
        if cached is not None:
            return cached
        r = self._rank_by_elimination(mask)
        self._rank_cache[mask] = r
        return r

    def _rank_by_elimination(self, mask: int) -> int:
        spec = self.spec
        zero = spec.zero
        basis = []  # rows of a reduced basis, paired with pivot positions
        for j in iter_bits(mask):
            v = list(self._columns[j])
            for piv, row in basis:
                c = v[piv]
                if c != zero:
                    v = [spec.sub(x, spec.mul(c, y)) for x, y in zip(v, row)]
            piv = next((i for i, x in enumerate(v) if x != zero), None)
            if piv is not None:
                inv = spec.inv(v[piv])
                basis.append((piv, [spec.mul(inv, x) for x in v]))
                if len(basis) == self.k:
                    # remaining columns cannot raise the rank
                    break
        return len(basis)

    def precompute_all(self):
        """Eagerly cache the rank of every subset (n <= 20 only)."""
        if self.n > PRECOMPUTE_CAP:
            raise ExactArithError(
                f"precompute over 2^{self.n} subsets exceeds cap "
                f"{PRECOMPUTE_CAP}")
        for mask in range(1 << self.n):
            self.rank(mask)

    # -- closure and flats ---------------------------------------------------

    def closure(self, mask: int) -> Flat:
        """cl(I) = {j : r(I + j) = r(I)}; same rank as I."""
        base = self.rank(mask)
        members = mask
        for j in range(self.n):
            bit = 1 << j
            if not mask & bit and self.rank(mask | bit) == base:
                members |= bit
        return Flat(members, base)

    def is_flat(self, mask: int) -> bool:
        return self.closure(mask).members == mask

    def flats_of_rank(self, s: int) -> list:
        """All flats of rank exactly s, sorted by bitmask.

        Every rank-s flat is the closure of an independent s-subset, so
        closing all s-subsets of full rank is exhaustive.
        """
        if not 0 <= s <= self.k:
            raise ExactArithError(f"flat rank {s} out of range")
        seen = set()
        for combo in combinations(range(self.n), s):
            mask = 0
            for j in combo:
                mask |= 1 << j
            if self.rank(mask) == s:
                seen.add(self.closure(mask).members)
        if s == 0:
            seen.add(self.closure(0).members)
        return [Flat(m, s) for m in sorted(seen)]

    # -- loops, coloops, duality ---------------------------------------------

    def is_loop(self, i: int) -> bool:
        zero = self.spec.zero
        return all(x == zero for x in self._columns[i])

    def is_coloop(self, i: int) -> bool:
        full = (1 << self.n) - 1
        return self.rank(full ^ (1 << i)) == self.full_rank - 1

    def dual_rank(self, mask: int) -> int:
        """r*(I) = r([n] \\ I) + |I| - r(M)."""
        full = (1 << self.n) - 1
        return (self.rank(full ^ mask) + bin(mask).count("1")
                - self.full_rank)

    # -- minors --------------------------------------------------------------

    def delete(self, i: int) -> "VectorMatroid":
        cols = [j for j in range(self.n) if j != i]
        return VectorMatroid(self.matrix.submatrix_cols(cols))

    def contract(self, i: int) -> "VectorMatroid":
        """Contract element i; loops are contracted as deletions.

        Realized on the matrix: a change of basis sends column i to a
        standard vector, then that row and column are removed.  Zero
        columns created this way are legitimate loops and are kept.
        """
        if self.is_loop(i):
            return self.delete(i)
        spec = self.spec
        zero = spec.zero
        rows = [list(r) for r in self.matrix.entries]
        piv = next(r for r in range(self.k) if rows[r][i] != zero)
        inv = spec.inv(rows[piv][i])
        rows[piv] = [spec.mul(inv, x) for x in rows[piv]]
        for r in range(self.k):
            if r != piv and rows[r][i] != zero:
                f = rows[r][i]
                rows[r] = [spec.sub(x, spec.mul(f, y))
                           for x, y in zip(rows[r], rows[piv])]
        minor = tuple(tuple(x for j, x in enumerate(row) if j != i)
                      for r, row in enumerate(rows) if r != piv)
        return VectorMatroid(
            ExactMatrix.from_rows(spec, minor, cols=self.n - 1))


def matroid_column_rank(matrix: ExactMatrix, mask: int) -> int:
    """One-shot rank of a column subset without building a matroid."""
    return column_rank(matrix, bits_of(mask))
