"""Exact dense linear algebra over prime fields and the rationals.

No floating point anywhere: prime field elements are canonical ints in
[0, p), rational scalars are Fractions in lowest terms.  Every question the
rest of the package asks eventually becomes a rank / kernel computation
here, so kernels come out in a fixed reduced-echelon canonical form (each
basis vector carries a leading 1 in a distinct non-pivot coordinate) and
identical inputs always produce identical output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadPrime, FieldMismatch, NonPrimeModulus, ShapeMismatch

_MAX_MODULUS = 1 << 31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin; bases 2,3,5,7 decide primality below
    # 3,215,031,751 which covers the whole supported range
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """F_p with canonical representatives 0 <= x < p."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise NonPrimeModulus(f"modulus must be an int, got {p!r}")
        if not 2 <= p < _MAX_MODULUS or not _is_prime(p):
            raise NonPrimeModulus(f"modulus {p} is not a prime below 2**31")
        self.p = p

    characteristic = property(lambda self: self.p)
    zero = property(lambda self: 0)
    one = property(lambda self: 1)

    def normalize(self, x):
        if isinstance(x, int) and not isinstance(x, bool):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise BadPrime(
                    f"denominator of {x} is divisible by {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        raise FieldMismatch(f"cannot coerce {x!r} into GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 is not invertible in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField:
    """Exact rationals via Fraction; canonical form is built in."""

    __slots__ = ()

    characteristic = property(lambda self: 0)
    zero = property(lambda self: Fraction(0))
    one = property(lambda self: Fraction(1))

    def normalize(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
        raise FieldMismatch(f"cannot coerce {x!r} into QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 is not invertible in QQ")
        return 1 / a

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    fld = _gf_cache.get(p)
    if fld is None:
        fld = _gf_cache[p] = PrimeField(p)
    return fld


def make_field(kind: str, p: int | None = None):
    if kind == "prime":
        if p is None:
            raise NonPrimeModulus("prime field needs a modulus")
        return GF(p)
    if kind == "rationals":
        return RationalField()
    raise FieldMismatch(f"unknown field kind {kind!r}")


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix; entries is a tuple of row tuples."""

    field: object
    nrows: int
    ncols: int
    entries: tuple

    def __post_init__(self):
        fld = self.field
        if len(self.entries) != self.nrows:
            raise ShapeMismatch(
                f"expected {self.nrows} rows, got {len(self.entries)}")
        norm = []
        for row in self.entries:
            if len(row) != self.ncols:
                raise ShapeMismatch(
                    f"expected {self.ncols} cols, got {len(row)}")
            norm.append(tuple(fld.normalize(x) for x in row))
        object.__setattr__(self, "entries", tuple(norm))

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rows(field, rows):
        rows = [tuple(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return Matrix(field, len(rows), ncols, tuple(rows))

    @staticmethod
    def from_cols(field, cols, nrows=None):
        cols = [tuple(c) for c in cols]
        if nrows is None:
            if not cols:
                raise ShapeMismatch("from_cols with no columns needs nrows")
            nrows = len(cols[0])
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return Matrix(field, nrows, len(cols), rows)

    @staticmethod
    def zero(field, nrows, ncols):
        z = field.zero
        return Matrix(field, nrows, ncols, tuple((z,) * ncols
                                                 for _ in range(nrows)))

    @staticmethod
    def identity(field, n):
        z, o = field.zero, field.one
        return Matrix(field, n, n, tuple(
            tuple(o if i == j else z for j in range(n)) for i in range(n)))

    # -- basic operations ---------------------------------------------

    def _check_field(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def transpose(self):
        return Matrix(self.field, self.ncols, self.nrows,
                      tuple(zip(*self.entries)) if self.nrows else
                      tuple(() for _ in range(self.ncols)))

    def mul(self, other):
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} "
                f"by {other.nrows}x{other.ncols}")
        fld = self.field
        cols = list(zip(*other.entries)) if other.nrows else \
            [()] * other.ncols
        zero = fld.zero
        out = []
        for row in self.entries:
            out_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    acc = fld.add(acc, fld.mul(a, b))
                out_row.append(acc)
            out.append(tuple(out_row))
        return Matrix(fld, self.nrows, other.ncols, tuple(out))

    def mul_vec(self, vec):
        if len(vec) != self.ncols:
            raise ShapeMismatch(f"vector length {len(vec)} != {self.ncols}")
        fld = self.field
        vec = [fld.normalize(x) for x in vec]
        out = []
        for row in self.entries:
            acc = fld.zero
            for a, b in zip(row, vec):
                acc = fld.add(acc, fld.mul(a, b))
            out.append(acc)
        return tuple(out)

    def hstack(self, other):
        self._check_field(other)
        if self.nrows != other.nrows:
            raise ShapeMismatch("hstack needs equal row counts")
        return Matrix(self.field, self.nrows, self.ncols + other.ncols,
                      tuple(a + b for a, b in
                            zip(self.entries, other.entries)))

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def map_to(self, field):
        """Re-normalize entries into another field (e.g. QQ -> GF(p))."""
        return Matrix(field, self.nrows, self.ncols, self.entries)

    def is_zero(self):
        z = self.field.zero
        return all(x == z for row in self.entries for x in row)


# -- reduction -----------------------------------------------------------


@dataclass(frozen=True)
class Echelon:
    """Reduced row echelon data: `rows` are the rank many nonzero rows."""

    rows: tuple
    pivots: tuple

    @property
    def rank(self):
        return len(self.pivots)


def _rref_prime(entries, nrows, ncols, p):
    work = [list(row) for row in entries]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if work[i][c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        row = work[r]
        inv = pow(row[c], p - 2, p)
        for j in range(c, ncols):
            row[j] = row[j] * inv % p
        for i in range(nrows):
            if i != r and work[i][c]:
                f = work[i][c]
                tgt = work[i]
                for j in range(c, ncols):
                    tgt[j] = (tgt[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Echelon(tuple(tuple(work[i]) for i in range(r)), tuple(pivots))


def _rref_generic(entries, nrows, ncols, fld):
    work = [list(row) for row in entries]
    zero = fld.zero
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if work[i][c] != zero:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        row = work[r]
        inv = fld.inv(row[c])
        for j in range(c, ncols):
            row[j] = fld.mul(row[j], inv)
        for i in range(nrows):
            if i != r and work[i][c] != zero:
                f = work[i][c]
                tgt = work[i]
                for j in range(c, ncols):
                    tgt[j] = fld.sub(tgt[j], fld.mul(f, row[j]))
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Echelon(tuple(tuple(work[i]) for i in range(r)), tuple(pivots))


def rref(m: Matrix) -> Echelon:
    if isinstance(m.field, PrimeField):
        return _rref_prime(m.entries, m.nrows, m.ncols, m.field.p)
    return _rref_generic(m.entries, m.nrows, m.ncols, m.field)


def rank(m: Matrix) -> int:
    return rref(m).rank


@dataclass(frozen=True)
class KernelData:
    rank: int
    kernel: tuple       # tuple of canonical kernel vectors (length ncols)
    pivots: tuple

    @property
    def nullity(self):
        return len(self.kernel)


def rank_kernel(m: Matrix) -> KernelData:
    """Rank and a canonical kernel basis of M acting on column vectors.

    Each kernel vector has entry 1 at its own free coordinate and 0 at
    every other free coordinate, so coordinates of any kernel element in
    this basis can be read off at the free positions.
    """
    ech = rref(m)
    fld = m.field
    pivotset = set(ech.pivots)
    free = [j for j in range(m.ncols) if j not in pivotset]
    zero, one = fld.zero, fld.one
    basis = []
    for f in free:
        v = [zero] * m.ncols
        v[f] = one
        for i, pc in enumerate(ech.pivots):
            v[pc] = fld.neg(ech.rows[i][f])
        basis.append(tuple(v))
    return KernelData(ech.rank, tuple(basis), ech.pivots)


def left_kernel(m: Matrix) -> KernelData:
    return rank_kernel(m.transpose())


@dataclass(frozen=True)
class SpanReduction:
    """Quotient of an ambient coordinate space by the row span of a matrix.

    `complement` lists the non-pivot ambient coordinates, which represent a
    basis of the quotient; `reduce` maps ambient coordinates to quotient
    coordinates.  A vector lies in the span iff reduce sends it to zero.
    """

    ambient: int
    pivots: tuple
    complement: tuple
    reduce: Matrix
    echelon: Echelon

    @property
    def dim(self):
        return len(self.complement)


def span_reduction(rows: Matrix) -> SpanReduction:
    ech = rref(rows)
    fld = rows.field
    pivotset = set(ech.pivots)
    complement = tuple(j for j in range(rows.ncols) if j not in pivotset)
    zero, one = fld.zero, fld.one
    red_rows = []
    for c in complement:
        row = [zero] * rows.ncols
        row[c] = one
        for i, pc in enumerate(ech.pivots):
            row[pc] = fld.neg(ech.rows[i][c])
        red_rows.append(tuple(row))
    reduce = Matrix(fld, len(complement), rows.ncols, tuple(red_rows))
    return SpanReduction(rows.ncols, ech.pivots, complement, reduce, ech)


# -- projective enumeration ----------------------------------------------


def projective_count(p: int, m: int) -> int:
    return (p ** m - 1) // (p - 1)


def projective_reps(p: int, m: int):
    """Canonical representatives of P(F_p^m): first nonzero coordinate 1,
    listed in ascending lexicographic order."""
    for lead in range(m - 1, -1, -1):
        for tail in itertools.product(range(p), repeat=m - 1 - lead):
            yield (0,) * lead + (1,) + tail


def normalize_projective(field, vec):
    """Scale so the first nonzero coordinate is 1.  None for the zero
    vector."""
    vec = [field.normalize(x) for x in vec]
    zero = field.zero
    for x in vec:
        if x != zero:
            inv = field.inv(x)
            return tuple(field.mul(inv, y) for y in vec)
    return None
