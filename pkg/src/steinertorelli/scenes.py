"""Geometric scenes: explicit polarized varieties at desk scale.

A scene bundles a variety X, an ample series V inside H0(X, A), and
recipes for section spaces, multiplication maps, sheaf cohomology
dimensions and point enumeration over prime fields.  Five kinds:

* P1Series        -- X = P^1, A = O(a), V a subspace of the binary forms
* CompleteIntersection -- X in P^N cut by c forms, O_X(k) twists
* MonomialVariety -- image of P^m under a set of degree-a monomials
* ScrollCurve     -- a curve in |dH + eF| on the scroll P(O(a)+O(b))
* PointSet        -- d labelled points in P^r with fixed representatives

Bundle labels are plain integers k (meaning O_X(k) against the hyperplane
class, or O(k) on P^1) except for scrolls, where a label is a pair
(alpha, beta) meaning (alpha H + beta F) restricted to the curve.

Scene data is stored exactly over the rationals; every computation takes
the working field as an argument and reduces on demand.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (BadClass, BadPrime, DependentBasis, DuplicatePoints,
                     BasepointedSeries, SchemaError, ShapeMismatch,
                     UnsupportedLabel, UnsupportedScene, ZeroEvaluation,
                     ZeroPoint, ZeroSection)
from .exactfield import (GF, QQ, Matrix, normalize_projective,
                         projective_reps, rank, span_reduction)
from .polyalg import (GradedQuotientRing, monomial_basis, monomial_index,
                      monomial_product, space_dim)


# ---- shared small types --------------------------------------------------


@dataclass(frozen=True)
class SectionSpace:
    """A concrete model of H0 of a line bundle: an ordered basis of labels
    (monomial exponent tuples, or (i, exponents) pairs on a scroll)."""

    label: object
    dim: int
    basis: tuple


@dataclass(frozen=True)
class PointRecord:
    """One enumerated F_p point: parameter coordinates upstairs and the
    normalized evaluation vector of the series at the point."""

    prime: int
    params: tuple
    phi: tuple
    smooth_ok: object = None   # True/False when a smoothness check ran


@dataclass(frozen=True)
class PointEnumeration:
    prime: int
    records: tuple
    smooth_checked: bool

    @property
    def all_smooth(self):
        return (not self.smooth_checked) or \
            all(r.smooth_ok for r in self.records)

    def phi_set(self):
        return {r.phi for r in self.records}


def evaluate_monomial(field, expts, params):
    acc = field.one
    for x, e in zip(params, expts):
        for _ in range(e):
            acc = field.mul(acc, x)
    return acc


def _normalized_phi(field, values, what):
    phi = normalize_projective(field, values)
    if phi is None:
        raise ZeroEvaluation(f"series vanishes identically at {what}")
    return phi


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise SchemaError(f"expected an exact scalar, got {x!r}")


# ---- P^1 with a series of binary forms -----------------------------------


def _strip_poly(cs):
    cs = list(cs)
    while cs and cs[0] == 0:
        cs.pop(0)
    return cs


def _poly_mod(a, b):
    """Remainder of a by b; both lists of Fractions, leading coeff first."""
    a = _strip_poly(a)
    b = _strip_poly(b)
    while len(a) >= len(b):
        f = a[0] / b[0]
        a = [x - f * y for x, y in zip(a, b + [Fraction(0)] * len(a))][1:]
        a = _strip_poly(a)
        if not a:
            break
    return a


def _binary_forms_have_basepoint(vectors):
    """Common projective zero (over the algebraic closure) of binary forms
    given by coefficient vectors in descending s powers."""
    if all(v[0] == 0 for v in vectors):
        return True           # all divisible by t: common zero at [1:0]
    g = None
    for v in vectors:
        cs = _strip_poly(v)   # f(s, 1) with highest s power first
        if not cs:
            continue
        g = cs if g is None else _poly_gcd(g, cs)
        if len(g) == 1:
            return False
    return g is not None and len(g) > 1


def _poly_gcd(a, b):
    while b:
        a, b = b, _poly_mod(a, b)
    return a


class P1Series:
    """P^1 polarized by O(a) with V spanned by given binary forms
    (V = all of H0(O(a)) when no basis is supplied)."""

    kind = "p1_series"
    supports_cohomology = True
    dimension = 1

    def __init__(self, a, basis=None, name=None):
        if not isinstance(a, int) or a < 1:
            raise BadClass(f"series degree must be a positive int, got {a}")
        self.a = a
        if basis is not None:
            basis = tuple(tuple(_as_fraction(c) for c in row)
                          for row in basis)
            for row in basis:
                if len(row) != a + 1:
                    raise ShapeMismatch(
                        f"binary form of degree {a} has {a + 1} coefficients")
            if len(basis) < 2:
                raise BadClass("a series needs dimension at least 2")
            if rank(Matrix.from_rows(QQ, basis)) != len(basis):
                raise DependentBasis("series basis is linearly dependent")
            if _binary_forms_have_basepoint(basis):
                raise BasepointedSeries("series has a common zero")
        self.basis = basis
        self.name = name or f"p1_series(a={a})"

    # -- labels --

    def label_A(self):
        return self.a

    def canonical_label(self):
        return -2

    def label_add(self, l1, l2):
        return l1 + l2

    def label_scale(self, l, c):
        return l * c

    def label_str(self, label):
        return f"O({label})"

    def degree_A(self):
        return self.a

    def series_complete(self):
        return self.basis is None

    # -- linear data --

    def series_dim(self, field=QQ):
        return (self.a + 1) if self.basis is None else len(self.basis)

    def series_matrix(self, field):
        """Rows are the series basis in monomial coordinates of O(a)."""
        if self.basis is None:
            return Matrix.identity(field, self.a + 1)
        m = Matrix.from_rows(field, self.basis)
        if rank(m) != m.nrows:
            raise BadPrime(
                f"series basis degenerates over {field}")
        return m

    def section_space(self, label, field=QQ):
        if not isinstance(label, int):
            raise UnsupportedLabel(f"P1 labels are integers, got {label!r}")
        return SectionSpace(label, max(0, label + 1),
                            monomial_basis(2, label) if label >= 0 else ())

    def multiplication_map(self, l1, l2, field=QQ):
        """H0(O(l1)) (x) H0(O(l2)) -> H0(O(l1+l2)), left factor major.
        When l2 is the series degree and V is proper, the right factor
        runs over the series basis."""
        b1 = monomial_basis(2, l1) if l1 >= 0 else ()
        out_idx = monomial_index(2, l1 + l2) if l1 + l2 >= 0 else {}
        nrows = max(0, l1 + l2 + 1)
        cols = []
        if l2 == self.a and self.basis is not None:
            right = self.series_matrix(field).entries
            b2 = monomial_basis(2, l2)
            for m1 in b1:
                for form in right:
                    col = [field.zero] * nrows
                    for m2, c in zip(b2, form):
                        if c != field.zero:
                            j = out_idx[monomial_product(m1, m2)]
                            col[j] = field.add(col[j], c)
                    cols.append(col)
        else:
            b2 = monomial_basis(2, l2) if l2 >= 0 else ()
            for m1 in b1:
                for m2 in b2:
                    col = [field.zero] * nrows
                    col[out_idx[monomial_product(m1, m2)]] = field.one
                    cols.append(col)
        return Matrix.from_cols(field, cols, nrows)

    def cohomology_dim(self, label, i, field=QQ):
        if i == 0:
            return max(0, label + 1)
        if i == 1:
            return max(0, -label - 1)
        return 0

    # -- points --

    def enumerate_points(self, p):
        field = GF(p)
        series = self.series_matrix(field)
        records = []
        for params in projective_reps(p, 2):
            values = tuple(
                evaluate_monomial(field, m, params)
                for m in monomial_basis(2, self.a))
            phi = _normalized_phi(field, series.mul_vec(values), params)
            records.append(PointRecord(p, params, phi))
        return PointEnumeration(p, tuple(records), False)

    def evaluation_functional(self, params, label, field):
        values = tuple(evaluate_monomial(field, m, params)
                       for m in monomial_basis(2, label))
        return _normalized_phi(field, values, params)

    def to_json_dict(self):
        d = {"kind": self.kind, "name": self.name, "a": self.a}
        d["basis"] = None if self.basis is None else \
            [[_scalar_json(c) for c in row] for row in self.basis]
        return d


# ---- complete intersections ----------------------------------------------


class CompleteIntersection:
    """X in P^N cut out by c < N homogeneous forms, polarized by O_X(1),
    with V = H0(O_X(1)).  Arithmetically Cohen-Macaulay recipes: twists of
    the structure sheaf have cohomology only at the ends."""

    kind = "complete_intersection"
    supports_cohomology = True

    def __init__(self, N, generators, name=None):
        if not isinstance(N, int) or N < 2:
            raise BadClass(f"ambient dimension must be >= 2, got {N}")
        gens = []
        for degree, coeffs in generators:
            if not isinstance(degree, int) or degree < 1:
                raise BadClass(f"generator degree must be >= 1, got {degree}")
            gens.append((degree, tuple(_as_fraction(c) for c in coeffs)))
        c = len(gens)
        if not 1 <= c <= N - 1:
            raise BadClass(
                f"need between 1 and N-1 = {N - 1} generators, got {c}")
        self.N = N
        self.generators = tuple(gens)
        self.codim = c
        self.n = N - c
        self.dimension = self.n
        self.sigma = sum(d for d, _ in gens) - N - 1
        self.name = name or (
            f"ci(N={N}, degrees={tuple(d for d, _ in gens)})")
        self._rings = {}
        # construct once to validate shapes and nonzeroness
        self.ring(QQ)

    def ring(self, field) -> GradedQuotientRing:
        got = self._rings.get(field)
        if got is None:
            got = self._rings[field] = GradedQuotientRing(
                field, self.N + 1, self.generators)
        return got

    # -- labels --

    def label_A(self):
        return 1

    def canonical_label(self):
        return self.sigma

    def label_add(self, l1, l2):
        return l1 + l2

    def label_scale(self, l, c):
        return l * c

    def label_str(self, label):
        return f"O({label})"

    def degree_A(self):
        out = 1
        for d, _ in self.generators:
            out *= d
        return out

    def series_complete(self):
        return True

    def series_dim(self, field=QQ):
        return self.ring(field).dim(1)

    def section_space(self, label, field=QQ):
        if not isinstance(label, int):
            raise UnsupportedLabel(f"CI labels are integers, got {label!r}")
        piece = self.ring(field).piece(label)
        return SectionSpace(label, piece.dim, piece.monomials)

    def multiplication_map(self, l1, l2, field=QQ):
        return self.ring(field).multiplication(l1, l2)

    def cohomology_dim(self, label, i, field=QQ):
        if i == 0:
            return self.ring(field).dim(label)
        if i == self.n:
            return self.ring(field).dim(self.sigma - label)
        return 0

    # -- points --

    def _gen_terms(self, field):
        out = []
        for degree, coeffs in self.generators:
            basis = monomial_basis(self.N + 1, degree)
            out.append(tuple(
                (m, field.normalize(c)) for m, c in zip(basis, coeffs)
                if field.normalize(c) != field.zero))
        return out

    def _jacobian_terms(self, field):
        """Partial derivative term lists, one row of terms per generator."""
        rows = []
        for terms in self._gen_terms(field):
            row = []
            for j in range(self.N + 1):
                parts = []
                for m, c in terms:
                    if m[j]:
                        dm = list(m)
                        dm[j] -= 1
                        cc = field.mul(c, field.normalize(m[j]))
                        if cc != field.zero:
                            parts.append((tuple(dm), cc))
                row.append(tuple(parts))
            rows.append(tuple(row))
        return rows

    def enumerate_points(self, p):
        field = GF(p)
        gen_terms = self._gen_terms(field)
        jac = self._jacobian_terms(field)
        piece1 = self.ring(field).piece(1)
        records = []
        for params in projective_reps(p, self.N + 1):
            ok = True
            for terms in gen_terms:
                acc = 0
                for m, c in terms:
                    acc = (acc + c * evaluate_monomial(field, m, params)) % p
                if acc:
                    ok = False
                    break
            if not ok:
                continue
            jrows = []
            for row in jac:
                jrows.append(tuple(
                    sum(c * evaluate_monomial(field, m, params)
                        for m, c in parts) % p if parts else 0
                    for parts in row))
            smooth = rank(Matrix.from_rows(field, jrows)) == self.codim
            values = tuple(evaluate_monomial(field, m, params)
                           for m in piece1.monomials)
            phi = _normalized_phi(field, values, params)
            records.append(PointRecord(p, params, phi, smooth))
        return PointEnumeration(p, tuple(records), True)

    def evaluation_functional(self, params, label, field):
        piece = self.ring(field).piece(label)
        values = tuple(evaluate_monomial(field, m, params)
                       for m in piece.monomials)
        return _normalized_phi(field, values, params)

    def to_json_dict(self):
        return {
            "kind": self.kind, "name": self.name, "N": self.N,
            "generators": [
                {"degree": d, "coefficients": [_scalar_json(c)
                                               for c in coeffs]}
                for d, coeffs in self.generators]}


# ---- monomial varieties ---------------------------------------------------


class MonomialVariety:
    """Image of P^m under distinct degree-a monomials.  Section spaces are
    the full monomial spaces upstairs, so label k stands for all degree
    k*a forms on the source; cohomology is deliberately unsupported."""

    kind = "monomial_variety"
    supports_cohomology = False

    @property
    def dimension(self):
        return self.source_vars - 1

    def __init__(self, source_vars, degree, monomials, name=None):
        if not isinstance(source_vars, int) or source_vars < 2:
            raise BadClass("need at least two source variables")
        if not isinstance(degree, int) or degree < 1:
            raise BadClass(f"degree must be >= 1, got {degree}")
        monos = []
        for m in monomials:
            m = tuple(int(x) for x in m)
            if len(m) != source_vars or any(x < 0 for x in m) or \
                    sum(m) != degree:
                raise ShapeMismatch(
                    f"{m} is not a degree {degree} exponent tuple in "
                    f"{source_vars} variables")
            monos.append(m)
        if len(set(monos)) != len(monos):
            raise DependentBasis("monomial list has repeats")
        if len(monos) < 2:
            raise BadClass("a series needs dimension at least 2")
        self.source_vars = source_vars
        self.degree = degree
        self.monomials = tuple(monos)
        self.name = name or (
            f"monomial(m={source_vars - 1}, a={degree}, "
            f"len={len(monos)})")

    def label_A(self):
        return 1

    def canonical_label(self):
        raise UnsupportedScene(
            "monomial scenes do not carry a canonical bundle recipe")

    def label_add(self, l1, l2):
        return l1 + l2

    def label_scale(self, l, c):
        return l * c

    def label_str(self, label):
        return f"O({label})"

    def degree_A(self):
        raise UnsupportedScene(
            "monomial scenes do not certify an image degree")

    def series_complete(self):
        return len(self.monomials) == space_dim(self.source_vars,
                                                self.degree)

    def series_dim(self, field=QQ):
        return len(self.monomials)

    def section_space(self, label, field=QQ):
        if not isinstance(label, int):
            raise UnsupportedLabel(f"labels are integers, got {label!r}")
        d = label * self.degree
        basis = monomial_basis(self.source_vars, d) if d >= 0 else ()
        return SectionSpace(label, len(basis), basis)

    def multiplication_map(self, l1, l2, field=QQ):
        d1, d2 = l1 * self.degree, l2 * self.degree
        b1 = monomial_basis(self.source_vars, d1) if d1 >= 0 else ()
        b2 = self.monomials if l2 == 1 else (
            monomial_basis(self.source_vars, d2) if d2 >= 0 else ())
        idx = monomial_index(self.source_vars, d1 + d2)
        nrows = space_dim(self.source_vars, d1 + d2)
        cols = []
        for m1 in b1:
            for m2 in b2:
                col = [field.zero] * nrows
                col[idx[monomial_product(m1, m2)]] = field.one
                cols.append(col)
        return Matrix.from_cols(field, cols, nrows)

    def cohomology_dim(self, label, i, field=QQ):
        raise UnsupportedScene(
            "cohomology is not modelled for monomial scenes")

    def enumerate_points(self, p):
        """Image points of P^m(F_p), deduplicated by evaluation vector."""
        field = GF(p)
        seen = {}
        order = []
        for params in projective_reps(p, self.source_vars):
            values = tuple(evaluate_monomial(field, m, params)
                           for m in self.monomials)
            phi = _normalized_phi(field, values, params)
            if phi not in seen:
                seen[phi] = PointRecord(p, params, phi)
                order.append(phi)
        return PointEnumeration(p, tuple(seen[k] for k in order), False)

    def evaluation_functional(self, params, label, field):
        values = tuple(evaluate_monomial(field, m, params)
                       for m in monomial_basis(self.source_vars,
                                               label * self.degree))
        return _normalized_phi(field, values, params)

    def to_json_dict(self):
        return {"kind": self.kind, "name": self.name,
                "source_vars": self.source_vars, "degree": self.degree,
                "monomials": [list(m) for m in self.monomials]}


# ---- curves on rational normal scrolls ------------------------------------


@lru_cache(maxsize=None)
def scroll_basis(a, b, alpha, beta):
    """Ordered basis of H0(Y, alpha H + beta F) on Y = P(O(a) + O(b)):
    pairs (i, exponents) meaning u^i v^(alpha-i) times the binary monomial,
    with the left index i major and i = 0 first."""
    if alpha < 0:
        return ()
    out = []
    for i in range(alpha + 1):
        deg = a * i + b * (alpha - i) + beta
        for m in monomial_basis(2, deg) if deg >= 0 else ():
            out.append((i, m))
    return tuple(out)


class ScrollCurve:
    """A curve X in |dH + eF| on the two dimensional scroll
    Y = P(O(a) + O(b)) over P^1, polarized by A = H|_X.

    Labels are pairs (alpha, beta).  Section spaces are modelled as
    H0(Y, L) / section * H0(Y, L - X), which is H0(X, L|_X) whenever
    H1(Y, L - X) = 0; labels outside that range are refused.  h^1 on the
    curve goes through Serre duality against the canonical label."""

    kind = "scroll_curve"
    supports_cohomology = True
    dimension = 1

    def __init__(self, a, b, d, e, section, name=None):
        if not (isinstance(a, int) and isinstance(b, int) and a >= b >= 1):
            raise BadClass(f"splitting degrees need a >= b >= 1, got "
                           f"({a}, {b})")
        if not (isinstance(d, int) and isinstance(e, int) and d >= 2):
            raise BadClass(f"curve class needs d >= 2, got ({d}, {e})")
        self.a, self.b, self.d, self.e = a, b, d, e
        self.q = a + b
        basis = scroll_basis(a, b, d, e)
        section = tuple(_as_fraction(c) for c in section)
        if len(section) != len(basis):
            raise ShapeMismatch(
                f"class ({d},{e}) sections have {len(basis)} coefficients, "
                f"got {len(section)}")
        if all(c == 0 for c in section):
            raise ZeroSection("curve section is identically zero")
        self.section = section
        self.name = name or f"scroll(S({a},{b}), X in |{d}H+{e}F|)"
        self._spaces = {}
        self._mults = {}

    # -- labels --

    def label_A(self):
        return (1, 0)

    def canonical_label(self):
        return (self.d - 2, self.e + self.q - 2)

    def label_add(self, l1, l2):
        return (l1[0] + l2[0], l1[1] + l2[1])

    def label_scale(self, l, c):
        return (l[0] * c, l[1] * c)

    def label_str(self, label):
        return f"({label[0]},{label[1]})"

    def _check_label(self, label):
        if not (isinstance(label, tuple) and len(label) == 2 and
                all(isinstance(x, int) for x in label)):
            raise UnsupportedLabel(
                f"scroll labels are integer pairs, got {label!r}")
        return label

    # -- cohomology on the scroll surface --

    def h0_Y(self, label):
        return len(scroll_basis(self.a, self.b, *label))

    def h1_Y(self, label):
        alpha, beta = label
        if alpha == -1:
            return 0
        if alpha < -1:
            alpha, beta = -2 - alpha, self.q - 2 - beta   # Serre duality
        return sum(max(0, -(self.a * i + self.b * (alpha - i) + beta) - 1)
                   for i in range(alpha + 1))

    def h2_Y(self, label):
        return self.h0_Y((-2 - label[0], self.q - 2 - label[1]))

    def _mult_Y(self, l1, l2, field):
        """Multiplication of scroll section spaces on Y, left major."""
        b1 = scroll_basis(self.a, self.b, *l1)
        b2 = scroll_basis(self.a, self.b, *l2)
        out = scroll_basis(self.a, self.b, l1[0] + l2[0], l1[1] + l2[1])
        idx = {lab: i for i, lab in enumerate(out)}
        cols = []
        for i1, m1 in b1:
            for i2, m2 in b2:
                col = [field.zero] * len(out)
                col[idx[(i1 + i2, monomial_product(m1, m2))]] = field.one
                cols.append(col)
        return Matrix.from_cols(field, cols, len(out))

    # -- section spaces on the curve --

    def _piece(self, label, field):
        label = self._check_label(label)
        got = self._spaces.get((label, field))
        if got is not None:
            return got
        down = (label[0] - self.d, label[1] - self.e)
        if self.h1_Y(down) != 0:
            raise UnsupportedLabel(
                f"label {label}: restriction model needs "
                f"H1(Y, L - X) = 0, but h1{down} = {self.h1_Y(down)}")
        amb = scroll_basis(self.a, self.b, *label)
        sub = scroll_basis(self.a, self.b, *down)
        sec = [field.normalize(c) for c in self.section]
        mult = self._mult_Y(down, (self.d, self.e), field)
        nsec = len(self.section)
        rows = []
        for j in range(len(sub)):
            # row = section * (j-th basis element of H0(Y, L - X))
            acc = [field.zero] * len(amb)
            for t, c in enumerate(sec):
                if c != field.zero:
                    col = mult.column(j * nsec + t)
                    acc = [field.add(x, field.mul(c, y))
                           for x, y in zip(acc, col)]
            rows.append(tuple(acc))
        red = span_reduction(Matrix(field, len(rows), len(amb),
                                    tuple(rows)))
        piece = (tuple(amb[c] for c in red.complement), red)
        self._spaces[(label, field)] = piece
        return piece

    def section_space(self, label, field=QQ):
        basis, _ = self._piece(label, field)
        return SectionSpace(label, len(basis), basis)

    def series_dim(self, field=QQ):
        return self.section_space((1, 0), field).dim

    def multiplication_map(self, l1, l2, field=QQ):
        l1, l2 = self._check_label(l1), self._check_label(l2)
        got = self._mults.get((l1, l2, field))
        if got is not None:
            return got
        b1, _ = self._piece(l1, field)
        b2, _ = self._piece(l2, field)
        out_label = self.label_add(l1, l2)
        _, red = self._piece(out_label, field)
        idx = {lab: i for i, lab in
               enumerate(scroll_basis(self.a, self.b, *out_label))}
        cols = []
        for i1, m1 in b1:
            for i2, m2 in b2:
                cols.append(red.reduce.column(
                    idx[(i1 + i2, monomial_product(m1, m2))]))
        out = Matrix.from_cols(field, cols, red.dim)
        self._mults[(l1, l2, field)] = out
        return out

    def genus(self):
        d, e, q = self.d, self.e, self.q
        two_g = d * (d - 2) * q + d * (e + q - 2) + e * (d - 2) + 2
        return two_g // 2

    def degree(self, label=(1, 0)):
        alpha, beta = label
        return alpha * self.d * self.q + alpha * self.e + beta * self.d

    def degree_A(self):
        return self.degree((1, 0))

    def series_complete(self):
        return True

    def cohomology_dim(self, label, i, field=QQ):
        label = self._check_label(label)
        if i == 0:
            return self.section_space(label, field).dim
        if i == 1:
            dual = self.label_add(self.canonical_label(),
                                  self.label_scale(label, -1))
            return self.section_space(dual, field).dim
        return 0

    # -- points --

    def _section_terms(self, field):
        basis = scroll_basis(self.a, self.b, self.d, self.e)
        return tuple(((i, m), field.normalize(c))
                     for (i, m), c in zip(basis, self.section)
                     if field.normalize(c) != field.zero)

    def _eval_label_elt(self, field, alpha, elt, params):
        """Value of u^i v^(alpha-i) * monomial at (s, t, u, v)."""
        s, t, u, v = params
        i, m = elt
        val = evaluate_monomial(field, m, (s, t))
        for _ in range(i):
            val = field.mul(val, u)
        for _ in range(alpha - i):
            val = field.mul(val, v)
        return val

    def enumerate_points(self, p):
        field = GF(p)
        terms = self._section_terms(field)
        series, _ = self._piece((1, 0), field)
        records = []
        for st in projective_reps(p, 2):
            for uv in projective_reps(p, 2):
                params = st + uv
                val = 0
                for elt, c in terms:
                    val = (val + c * self._eval_label_elt(
                        field, self.d, elt, params)) % p
                if val:
                    continue
                smooth = self._smooth_at(field, params)
                values = tuple(self._eval_label_elt(field, 1, elt, params)
                               for elt in series)
                phi = _normalized_phi(field, values, params)
                records.append(PointRecord(p, params, phi, smooth))
        return PointEnumeration(p, tuple(records), True)

    def _smooth_at(self, field, params):
        """The curve is singular at the point iff all four partial
        derivatives of the defining form vanish at the lift."""
        p = field.p
        for var in range(4):
            acc = 0
            for (i, m), c in self._section_terms(field):
                exps = [m[0], m[1], i, self.d - i]
                if not exps[var]:
                    continue
                k = exps[var]
                exps[var] -= 1
                term = c * k % p
                for x, e in zip(params, exps):
                    term = term * pow(x, e, p) % p
                acc = (acc + term) % p
            if acc:
                return True
        return False

    def evaluation_functional(self, params, label, field):
        basis, _ = self._piece(label, field)
        values = tuple(self._eval_label_elt(field, label[0], elt, params)
                       for elt in basis)
        return _normalized_phi(field, values, params)

    def to_json_dict(self):
        return {"kind": self.kind, "name": self.name, "a": self.a,
                "b": self.b, "d": self.d, "e": self.e,
                "section": [_scalar_json(c) for c in self.section]}


# ---- labelled point sets ---------------------------------------------------


class PointSet:
    """d labelled points in P^r with fixed coordinate representatives."""

    kind = "point_set"
    supports_cohomology = True
    dimension = 0

    def __init__(self, r, points, name=None):
        if not isinstance(r, int) or r < 1:
            raise BadClass(f"ambient dimension must be >= 1, got {r}")
        pts = []
        for row in points:
            row = tuple(_as_fraction(c) for c in row)
            if len(row) != r + 1:
                raise ShapeMismatch(
                    f"points in P^{r} have {r + 1} coordinates")
            pts.append(row)
        self.r = r
        self.points = tuple(pts)
        norm = []
        for row in pts:
            nv = normalize_projective(QQ, row)
            if nv is None:
                raise ZeroPoint("a point representative is the zero vector")
            norm.append(nv)
        if len(set(norm)) != len(norm):
            raise DuplicatePoints("two points are projectively equal")
        self.name = name or f"points(d={len(pts)}, r={r})"

    @property
    def count(self):
        return len(self.points)

    def label_A(self):
        return 1

    def label_add(self, l1, l2):
        return l1 + l2

    def label_scale(self, l, c):
        return l * c

    def label_str(self, label):
        return f"O({label})"

    def canonical_label(self):
        raise UnsupportedScene("point sets have no canonical bundle recipe")

    def section_space(self, label, field=QQ):
        raise UnsupportedScene(
            "point sets use evaluation matrices, not section spaces")

    def multiplication_map(self, l1, l2, field=QQ):
        raise UnsupportedScene(
            "point sets use evaluation matrices, not multiplication maps")

    def cohomology_dim(self, label, i, field=QQ):
        return self.count if i == 0 else 0

    def reduced_points(self, field):
        """Normalized representatives over the working field; refuses a
        prime where points collide or degenerate."""
        out = []
        for row in self.points:
            nv = normalize_projective(field, row)
            if nv is None:
                raise BadPrime(f"a point reduces to zero over {field}")
            out.append(nv)
        if len(set(out)) != len(out):
            raise BadPrime(f"two points collide over {field}")
        return tuple(out)

    def evaluation_matrix(self, k, field):
        """d x dim S_k matrix of degree-k monomial values at the points."""
        pts = self.reduced_points(field)
        basis = monomial_basis(self.r + 1, k)
        rows = tuple(
            tuple(evaluate_monomial(field, m, pt) for m in basis)
            for pt in pts)
        return Matrix(field, len(pts), len(basis), rows)

    def in_general_position(self, field=QQ):
        """Every subset of min(r+1, d) points spans."""
        pts = self.reduced_points(field)
        k = min(self.r + 1, len(pts))
        for sub in itertools.combinations(pts, k):
            if rank(Matrix.from_rows(field, sub)) != k:
                return False
        return True

    def enumerate_points(self, p):
        field = GF(p)
        pts = self.reduced_points(field)
        records = tuple(
            PointRecord(p, (i,), pt) for i, pt in enumerate(pts))
        return PointEnumeration(p, records, False)

    def evaluation_functional(self, params, label, field):
        raise UnsupportedScene("point sets have no section bases")

    def to_json_dict(self):
        return {"kind": self.kind, "name": self.name, "r": self.r,
                "points": [[_scalar_json(c) for c in row]
                           for row in self.points]}


# ---- construction and serialization ---------------------------------------


def build_scene(kind, **fields):
    if kind == "p1_series":
        return P1Series(fields["a"], fields.get("basis"),
                        fields.get("name"))
    if kind == "complete_intersection":
        return CompleteIntersection(fields["N"], fields["generators"],
                                    fields.get("name"))
    if kind == "monomial_variety":
        return MonomialVariety(fields["source_vars"], fields["degree"],
                               fields["monomials"], fields.get("name"))
    if kind == "scroll_curve":
        return ScrollCurve(fields["a"], fields["b"], fields["d"],
                           fields["e"], fields["section"],
                           fields.get("name"))
    if kind == "point_set":
        return PointSet(fields["r"], fields["points"], fields.get("name"))
    raise SchemaError(f"unknown scene kind {kind!r}")


def _scalar_json(x):
    x = _as_fraction(x)
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(x):
    if isinstance(x, bool):
        raise SchemaError(f"not a scalar: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            num, _, den = x.partition("/")
            return Fraction(int(num), int(den)) if den else \
                Fraction(int(num))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad scalar string {x!r}") from exc
    raise SchemaError(f"not a scalar: {x!r}")


def scene_from_dict(data):
    if not isinstance(data, dict):
        raise SchemaError("scene description must be a JSON object")
    kind = data.get("kind")
    try:
        if kind == "p1_series":
            basis = data.get("basis")
            if basis is not None:
                basis = [[parse_scalar(c) for c in row] for row in basis]
            return P1Series(data["a"], basis, data.get("name"))
        if kind == "complete_intersection":
            gens = [(g["degree"], [parse_scalar(c)
                                   for c in g["coefficients"]])
                    for g in data["generators"]]
            return CompleteIntersection(data["N"], gens, data.get("name"))
        if kind == "monomial_variety":
            return MonomialVariety(data["source_vars"], data["degree"],
                                   [tuple(m) for m in data["monomials"]],
                                   data.get("name"))
        if kind == "scroll_curve":
            return ScrollCurve(data["a"], data["b"], data["d"], data["e"],
                               [parse_scalar(c) for c in data["section"]],
                               data.get("name"))
        if kind == "point_set":
            return PointSet(data["r"],
                            [[parse_scalar(c) for c in row]
                             for row in data["points"]],
                            data.get("name"))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"scene of kind {kind!r} is missing or has "
                          f"malformed fields: {exc}") from exc
    raise SchemaError(f"unknown scene kind {kind!r}")


def load_scene(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    return scene_from_dict(data)


def save_scene(scene, path):
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(scene.to_json_dict(), fh, indent=1)
        fh.write("\n")
    os.replace(tmp, path)
