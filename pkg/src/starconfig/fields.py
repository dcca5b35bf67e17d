"""Exact scalar and matrix arithmetic over GF(p) and the rationals.

Elements of GF(p) are canonical residues (plain ints in [0, p)); rational
elements are `fractions.Fraction` values, which are always reduced with a
positive denominator.  There is no floating point anywhere and no rounding,
ever.  All matrices are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

# Ground sets are encoded as bitmasks; exhaustive subset scans are only
# advertised up to this many elements.
MAX_GROUND_SET = 63
EXHAUSTIVE_CAP = 24


class ExactArithError(ValueError):
    pass


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, valid for all p < 2^64."""
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d = p - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either GF(p) for a prime p < 2^64, or the rationals."""

    kind: str  # "gf" or "q"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "gf":
            if self.modulus is None or self.modulus < 2:
                raise ExactArithError("prime field needs a modulus >= 2")
            if self.modulus >= 1 << 64:
                raise ExactArithError("modulus must fit in 64 bits")
            if not is_prime(self.modulus):
                raise ExactArithError(f"modulus {self.modulus} is not prime")
        elif self.kind == "q":
            if self.modulus is not None:
                raise ExactArithError("the rationals take no modulus")
        else:
            raise ExactArithError(f"unknown field kind {self.kind!r}")

    # -- element constructors ------------------------------------------------

    @property
    def zero(self):
        return 0 if self.kind == "gf" else Fraction(0)

    @property
    def one(self):
        return 1 if self.kind == "gf" else Fraction(1)

    def coerce(self, x):
        """Map an int / Fraction / element into canonical form."""
        if self.kind == "gf":
            if isinstance(x, Fraction):
                if x.denominator == 1:
                    return x.numerator % self.modulus
                return self.div(x.numerator % self.modulus,
                                x.denominator % self.modulus)
            return int(x) % self.modulus
        return Fraction(x)

    def parse(self, token: str):
        """Parse an integer or 'a/b' token."""
        token = token.strip()
        try:
            if "/" in token:
                num, den = token.split("/")
                val = Fraction(int(num), int(den))
            else:
                val = Fraction(int(token))
        except (ValueError, ZeroDivisionError) as exc:
            raise ExactArithError(f"bad scalar token {token!r}") from exc
        return self.coerce(val)

    def to_str(self, x) -> str:
        return str(x)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        return (a + b) % self.modulus if self.kind == "gf" else a + b

    def sub(self, a, b):
        return (a - b) % self.modulus if self.kind == "gf" else a - b

    def mul(self, a, b):
        return (a * b) % self.modulus if self.kind == "gf" else a * b

    def neg(self, a):
        return (-a) % self.modulus if self.kind == "gf" else -a

    def inv(self, a):
        if self.kind == "gf":
            if a % self.modulus == 0:
                raise ZeroDivisionError("inverse of zero in GF(p)")
            cached = self._inv_cache.get(a)
            if cached is None:
                cached = pow(a, self.modulus - 2, self.modulus)
                self._inv_cache[a] = cached
            return cached
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    @property
    def _inv_cache(self) -> dict:
        # lazily attached; FieldSpec is frozen so go through __dict__
        cache = self.__dict__.get("_inv_cache_dict")
        if cache is None:
            object.__setattr__(self, "_inv_cache_dict", {})
            cache = self.__dict__["_inv_cache_dict"]
        return cache


QQ = FieldSpec("q")


def GF(p: int) -> FieldSpec:
    return FieldSpec("gf", p)


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable row-major matrix with entries in a single FieldSpec.

    Zero-row / zero-column shapes are allowed so that matroid minors can
    degenerate all the way down to the empty matroid.
    """

    spec: FieldSpec
    entries: tuple = field(default=())  # tuple of row tuples
    empty_cols: int = 0  # column count when there are no rows

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows, cols: int | None = None) -> "ExactMatrix":
        coerced = tuple(tuple(spec.coerce(x) for x in row) for row in rows)
        widths = {len(r) for r in coerced}
        if len(widths) > 1:
            raise ExactArithError("ragged rows")
        if not coerced:
            return cls(spec, coerced, cols or 0)
        return cls(spec, coerced)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else self.empty_cols

    def column(self, j: int) -> tuple:
        if not 0 <= j < self.cols:
            raise ExactArithError(f"column index {j} out of range")
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def submatrix_cols(self, cols) -> "ExactMatrix":
        cols = list(cols)
        for j in cols:
            if not 0 <= j < self.cols:
                raise ExactArithError(f"column index {j} out of range")
        rows = tuple(tuple(row[j] for j in cols) for row in self.entries)
        return ExactMatrix(self.spec, rows, len(cols) if not rows else 0)


def _eliminate(rows: list, spec: FieldSpec):
    """In-place forward + backward elimination; returns pivot column list."""
    zero = spec.zero
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    piv_cols = []
    r = 0
    for c in range(n_cols):
        # first nonzero entry in column order, no magnitude pivoting
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = spec.inv(rows[r][c])
        rows[r] = [spec.mul(inv, x) for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [spec.sub(x, spec.mul(f, y))
                           for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == n_rows:
            break
    return piv_cols


def rref(m: ExactMatrix):
    """Reduced row echelon form.

    Returns (reduced, rank, pivot_cols); the row space is preserved and the
    result is the unique RREF of the input.
    """
    rows = [list(row) for row in m.entries]
    piv_cols = _eliminate(rows, m.spec)
    reduced = ExactMatrix(m.spec, tuple(tuple(r) for r in rows))
    return reduced, len(piv_cols), tuple(piv_cols)


def column_rank(m: ExactMatrix, cols) -> int:
    """Rank of the submatrix on the selected columns; 0 for the empty set."""
    cols = list(cols)
    if not cols:
        return 0
    sub = m.submatrix_cols(cols)
    rows = [list(row) for row in sub.entries]
    if not rows:
        return 0
    return len(_eliminate(rows, m.spec))


def left_kernel_basis(m: ExactMatrix, cols) -> list:
    """Basis of {v in K^k : v . G_cols = 0}, as length-k tuples.

    Always has size k - column_rank(m, cols); for cols = [] this is the
    standard basis of K^k.
    """
    spec = m.spec
    k = m.rows
    cols = list(cols)
    if not cols:
        basis = []
        for i in range(k):
            v = [spec.zero] * k
            v[i] = spec.one
            basis.append(tuple(v))
        return basis
    sub = m.submatrix_cols(cols)
    # v . G_cols = 0  <=>  (G_cols)^T v = 0
    t_rows = [[sub.entries[i][j] for i in range(k)] for j in range(len(cols))]
    piv = _eliminate(t_rows, spec)
    piv_set = set(piv)
    free = [c for c in range(k) if c not in piv_set]
    basis = []
    for f in free:
        v = [spec.zero] * k
        v[f] = spec.one
        for r, c in enumerate(piv):
            v[c] = spec.neg(t_rows[r][f])
        basis.append(tuple(v))
    return basis


def rank_of_vectors(vectors, spec: FieldSpec) -> int:
    """Rank of a list of equal-length vectors."""
    rows = [list(v) for v in vectors]
    if not rows or not rows[0]:
        return 0
    return len(_eliminate(rows, spec))
