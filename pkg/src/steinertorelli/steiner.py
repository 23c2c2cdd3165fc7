"""Steiner presentations and the unstable-hyperplane calculus.

A presentation is a tensor mu: U1 (x) V -> U0 stored as a b x (a*m)
matrix over a field, with column t = i*m + j holding mu(u1_i (x) v_j).
It presents a vector bundle of rank b - a on the projective space of V
exactly when mu(u1 (x) v) != 0 for every pair of nonzero vectors, which
over a finite field is checked by scanning fibers: for each point [v] of
P(V) the b x a matrix u |-> mu(u (x) v) must have rank a.

A functional lam on V is *unstable* for mu when the restriction of mu to
U1 (x) ker(lam) fails to surject onto U0; the cokernel dimension is the
basic numerical output and the left kernel of the restricted matrix
carries the recovery data.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (FieldMismatch, NonUniqueQuotient, ShapeMismatch,
                     ZeroPoint)
from .exactfield import (GF, Matrix, PrimeField, left_kernel,
                         normalize_projective, projective_count,
                         projective_reps, rank_kernel, rref)


@dataclass
class ValidityState:
    status: str = "assumed"          # assumed | verified | invalid
    primes: tuple = ()
    witness: object = None


class SteinerPresentation:
    """mu: U1 (x) V -> U0 with dims (a, m, b) and left-major columns."""

    def __init__(self, field, dim_u1, dim_v, dim_u0, tensor: Matrix,
                 name=""):
        if tensor.field != field:
            raise FieldMismatch(f"tensor over {tensor.field}, "
                                f"presentation over {field}")
        if tensor.nrows != dim_u0 or tensor.ncols != dim_u1 * dim_v:
            raise ShapeMismatch(
                f"tensor is {tensor.nrows}x{tensor.ncols}, expected "
                f"{dim_u0}x{dim_u1 * dim_v}")
        self.field = field
        self.dim_u1 = dim_u1
        self.dim_v = dim_v
        self.dim_u0 = dim_u0
        self.tensor = tensor
        self.name = name
        self.validity = ValidityState()

    @property
    def bundle_rank(self):
        return self.dim_u0 - self.dim_u1

    def column(self, i, j):
        return self.tensor.column(i * self.dim_v + j)

    def fiber_matrix(self, v):
        """b x a matrix of u |-> mu(u (x) v)."""
        fld = self.field
        v = [fld.normalize(x) for x in v]
        a, m = self.dim_u1, self.dim_v
        rows = []
        for row in self.tensor.entries:
            rows.append(tuple(
                _dot(fld, row, i * m, v) for i in range(a)))
        return Matrix(fld, self.dim_u0, a, tuple(rows))

    def apply(self, u, v):
        """mu(u (x) v) as a U0-coordinate vector."""
        fld = self.field
        u = [fld.normalize(x) for x in u]
        v = [fld.normalize(x) for x in v]
        m = self.dim_v
        out = []
        for row in self.tensor.entries:
            acc = fld.zero
            for i, uc in enumerate(u):
                if uc != fld.zero:
                    acc = fld.add(acc, fld.mul(uc, _dot(fld, row, i * m,
                                                        v)))
            out.append(acc)
        return tuple(out)

    def restricted_rows(self, lam):
        """Rows of the b x (a*(m-1)) restriction of mu to U1 (x) ker(lam).

        ker(lam) gets its canonical basis e_j - lam_j e_c0 (j != c0, c0
        the first nonzero position of the normalized functional), so each
        restricted column is a two-column combination of tensor columns.
        """
        fld = self.field
        lam = normalize_projective(fld, lam)
        if lam is None:
            raise ZeroPoint("the zero functional defines no hyperplane")
        c0 = next(j for j, x in enumerate(lam) if x != fld.zero)
        free = [j for j in range(self.dim_v) if j != c0]
        a, m = self.dim_u1, self.dim_v
        rows = []
        for row in self.tensor.entries:
            out = []
            for i in range(a):
                base = i * m
                pivot = row[base + c0]
                for j in free:
                    out.append(fld.sub(row[base + j],
                                       fld.mul(lam[j], pivot)))
            rows.append(tuple(out))
        return rows

    def restricted_matrix(self, lam):
        rows = self.restricted_rows(lam)
        return Matrix(self.field, self.dim_u0,
                      self.dim_u1 * (self.dim_v - 1), tuple(rows))

    def map_to(self, field):
        """The same tensor over another field (e.g. QQ data mod p)."""
        other = SteinerPresentation(field, self.dim_u1, self.dim_v,
                                    self.dim_u0,
                                    self.tensor.map_to(field), self.name)
        return other

    def __repr__(self):
        return (f"SteinerPresentation(a={self.dim_u1}, m={self.dim_v}, "
                f"b={self.dim_u0}, field={self.field}, "
                f"validity={self.validity.status})")


def _dot(fld, row, base, v):
    acc = fld.zero
    for j, vc in enumerate(v):
        if vc != fld.zero:
            acc = fld.add(acc, fld.mul(row[base + j], vc))
    return acc


def make_presentation(tensor: Matrix, a, m, b, name="") -> \
        SteinerPresentation:
    return SteinerPresentation(tensor.field, a, m, b, tensor, name)


def direct_sum(first: SteinerPresentation, second: SteinerPresentation) \
        -> SteinerPresentation:
    """Block sum acting on the same V: (U1+U1') (x) V -> U0+U0'."""
    if first.field != second.field:
        raise FieldMismatch("direct sum needs a common field")
    if first.dim_v != second.dim_v:
        raise ShapeMismatch("direct sum needs a common V")
    fld = first.field
    m = first.dim_v
    b = first.dim_u0 + second.dim_u0
    a = first.dim_u1 + second.dim_u1
    zero = fld.zero
    rows = []
    for row in first.tensor.entries:
        rows.append(tuple(row) + (zero,) * (second.dim_u1 * m))
    for row in second.tensor.entries:
        rows.append((zero,) * (first.dim_u1 * m) + tuple(row))
    return SteinerPresentation(
        fld, a, m, b, Matrix(fld, b, a * m, tuple(rows)),
        name=f"{first.name}+{second.name}")


# ---- validity --------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    prime: int
    valid: bool
    fibers_scanned: int
    witness: object        # (u, v) pair of coordinate tuples when invalid

    def to_json_dict(self):
        out = {"prime": self.prime, "valid": self.valid,
               "fibers_scanned": self.fibers_scanned}
        out["witness"] = None if self.witness is None else {
            "u1": list(self.witness[0]), "v": list(self.witness[1])}
        return out


def validate_presentation(pres: SteinerPresentation, p: int) -> \
        ValidationReport:
    """Scan all fibers over P(V)(F_p); valid iff every fiber map has full
    rank a.  A rank drop yields a witness pair (u, v) with mu(u(x)v) = 0.
    Records the outcome on the presentation's validity state."""
    work = pres if pres.field == GF(p) else pres.map_to(GF(p))
    fld = work.field
    scanned = 0
    witness = None
    for v in projective_reps(p, work.dim_v):
        scanned += 1
        fib = work.fiber_matrix(v)
        kd = rank_kernel(fib)
        if kd.rank != work.dim_u1:
            witness = (kd.kernel[0], v)
            break
    valid = witness is None
    if valid:
        if pres.validity.status != "invalid":
            pres.validity.status = "verified"
            if p not in pres.validity.primes:
                pres.validity.primes = pres.validity.primes + (p,)
    else:
        pres.validity.status = "invalid"
        pres.validity.witness = witness
    total = projective_count(p, work.dim_v)
    return ValidationReport(p, valid, scanned if not valid else total,
                            witness)


# ---- instability -----------------------------------------------------------


def unstable_test(pres: SteinerPresentation, lam):
    """(is_unstable, coker_dim) for the hyperplane ker(lam)."""
    rows = pres.restricted_rows(lam)
    m = Matrix(pres.field, pres.dim_u0, pres.dim_u1 * (pres.dim_v - 1),
               tuple(rows))
    coker = pres.dim_u0 - rref(m).rank
    return coker > 0, coker


def unstable_test_dual(pres: SteinerPresentation, lam):
    """(is_unstable, witness) where the witness is a nonzero functional
    psi on U0 annihilating the image of the restriction, i.e. a trivial
    quotient of the restricted bundle data."""
    kd = left_kernel(pres.restricted_matrix(lam))
    if kd.nullity == 0:
        return False, None
    psi = normalize_projective(pres.field, kd.kernel[0])
    return True, psi


def recover_section_point(pres: SteinerPresentation, lam):
    """The unique trivial quotient at an unstable hyperplane with
    one-dimensional cokernel, as a normalized functional on U0."""
    kd = left_kernel(pres.restricted_matrix(lam))
    if kd.nullity != 1:
        raise NonUniqueQuotient(
            f"cokernel dimension is {kd.nullity}, recovery needs exactly 1")
    return normalize_projective(pres.field, kd.kernel[0])


# ---- the Valles locus -------------------------------------------------------


@dataclass(frozen=True)
class VallesReport:
    prime: int
    scanned: int
    unstable: tuple     # ordered pairs (lambda tuple, coker_dim)

    def unstable_set(self):
        return {lam for lam, _ in self.unstable}

    def to_json_dict(self):
        return {"prime": self.prime, "scanned": self.scanned,
                "unstable": [{"lambda": list(lam), "coker": coker}
                             for lam, coker in self.unstable]}


def valles_locus(pres: SteinerPresentation, p: int) -> VallesReport:
    """Apply unstable_test to every canonical point of P(V)(F_p), in
    enumeration order."""
    work = pres if pres.field == GF(p) else pres.map_to(GF(p))
    b = work.dim_u0
    ncols = work.dim_u1 * (work.dim_v - 1)
    found = []
    scanned = 0
    for lam in projective_reps(p, work.dim_v):
        scanned += 1
        rows = work.restricted_rows(lam)
        r = _rank_rows(rows, b, ncols, p)
        if r < b:
            found.append((lam, b - r))
    return VallesReport(p, scanned, tuple(found))


def _rank_rows(rows, nrows, ncols, p):
    """Row rank mod p without Matrix packaging; the scan's hot loop."""
    work = [list(r) for r in rows]
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
        for i in range(r + 1, nrows):
            if work[i][c]:
                f = work[i][c]
                tgt = work[i]
                for j in range(c, ncols):
                    tgt[j] = (tgt[j] - f * row[j]) % p
        r += 1
        if r == nrows:
            break
    return r
