"""Graded pieces of polynomial rings and their quotients.

Monomial bases are ordered lexicographically descending with x0 most
significant, so x0^2 > x0*x1 > x0*x2 > x1^2 > ...  A quotient by a
homogeneous ideal is handled degree by degree: the degree-k piece of the
ideal is spanned by monomial shifts of the generators and a row reduction
picks out representative monomials for the quotient.  No Groebner bases;
everything is linear algebra over an exact field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ShapeMismatch, ZeroSection
from .exactfield import Matrix, SpanReduction, span_reduction


@lru_cache(maxsize=None)
def monomial_basis(num_vars: int, degree: int) -> tuple:
    """Exponent tuples of all degree-d monomials in num_vars variables."""
    if num_vars < 1:
        raise ShapeMismatch("need at least one variable")
    if degree < 0:
        return ()
    if num_vars == 1:
        return ((degree,),)
    out = []
    for e0 in range(degree, -1, -1):
        for rest in monomial_basis(num_vars - 1, degree - e0):
            out.append((e0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, degree: int) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(num_vars, degree))}


def space_dim(num_vars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return math.comb(num_vars - 1 + degree, degree)


def monomial_product(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def free_multiplication(field, num_vars: int, d1: int, d2: int) -> Matrix:
    """Multiplication S_d1 (x) S_d2 -> S_{d1+d2} in monomial coordinates.

    Columns run over pairs (i, j) with the left factor major: column
    index t = i * dim(S_d2) + j.
    """
    b1 = monomial_basis(num_vars, d1)
    b2 = monomial_basis(num_vars, d2)
    idx = monomial_index(num_vars, d1 + d2)
    nrows = len(idx)
    zero, one = field.zero, field.one
    cols = []
    for m1 in b1:
        for m2 in b2:
            col = [zero] * nrows
            col[idx[monomial_product(m1, m2)]] = one
            cols.append(col)
    return Matrix.from_cols(field, cols, nrows)


@dataclass(frozen=True)
class QuotientPiece:
    """Degree-k piece of S/I: representative monomials plus the reduction
    matrix from ambient S_k coordinates to quotient coordinates."""

    degree: int
    monomials: tuple          # representative exponent tuples
    reduction: SpanReduction  # quotient of S_k by the ideal piece

    @property
    def dim(self):
        return len(self.monomials)

    @property
    def ambient_dim(self):
        return self.reduction.ambient


class GradedQuotientRing:
    """S/I for S = field[x0..x_{n-1}] and I generated by the given
    homogeneous forms, realized one degree at a time."""

    def __init__(self, field, num_vars, generators):
        """generators: iterable of (degree, coefficient tuple) pairs, the
        coefficients running over monomial_basis(num_vars, degree)."""
        self.field = field
        self.num_vars = num_vars
        gens = []
        for degree, coeffs in generators:
            basis = monomial_basis(num_vars, degree)
            if len(coeffs) != len(basis):
                raise ShapeMismatch(
                    f"degree {degree} form needs {len(basis)} coefficients, "
                    f"got {len(coeffs)}")
            coeffs = tuple(field.normalize(c) for c in coeffs)
            if all(c == field.zero for c in coeffs):
                raise ZeroSection(f"degree {degree} generator is zero")
            terms = tuple((m, c) for m, c in zip(basis, coeffs)
                          if c != field.zero)
            gens.append((degree, coeffs, terms))
        self.generators = tuple(gens)
        self._pieces: dict[int, QuotientPiece] = {}
        self._mults: dict[tuple, Matrix] = {}

    def ideal_rows(self, k: int) -> Matrix:
        """Spanning set of I_k: all monomial shifts of the generators."""
        fld = self.field
        amb = monomial_basis(self.num_vars, k)
        idx = monomial_index(self.num_vars, k)
        rows = []
        for degree, _, terms in self.generators:
            if degree > k:
                continue
            for shift in monomial_basis(self.num_vars, k - degree):
                row = [fld.zero] * len(amb)
                for mono, c in terms:
                    row[idx[monomial_product(shift, mono)]] = c
                rows.append(tuple(row))
        return Matrix(fld, len(rows), len(amb), tuple(rows))

    def piece(self, k: int) -> QuotientPiece:
        got = self._pieces.get(k)
        if got is not None:
            return got
        if k < 0:
            red = span_reduction(Matrix(self.field, 0, 0, ()))
            piece = QuotientPiece(k, (), red)
        else:
            amb = monomial_basis(self.num_vars, k)
            red = span_reduction(self.ideal_rows(k))
            piece = QuotientPiece(
                k, tuple(amb[c] for c in red.complement), red)
        self._pieces[k] = piece
        return piece

    def dim(self, k: int) -> int:
        return self.piece(k).dim

    def multiplication(self, k: int, l: int) -> Matrix:
        """(S/I)_k (x) (S/I)_l -> (S/I)_{k+l} on representative monomials,
        left factor major."""
        got = self._mults.get((k, l))
        if got is not None:
            return got
        pk, pl, pkl = self.piece(k), self.piece(l), self.piece(k + l)
        idx = monomial_index(self.num_vars, k + l)
        cols = []
        for m1 in pk.monomials:
            for m2 in pl.monomials:
                cols.append(
                    pkl.reduction.reduce.column(idx[monomial_product(m1, m2)]))
        out = Matrix.from_cols(self.field, cols, pkl.dim)
        self._mults[(k, l)] = out
        return out


def free_ring(field, num_vars: int) -> GradedQuotientRing:
    """The polynomial ring itself, as a quotient by the zero ideal."""
    return GradedQuotientRing(field, num_vars, ())
