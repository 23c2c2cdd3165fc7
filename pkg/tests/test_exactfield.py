from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinertorelli.errors import (BadPrime, FieldMismatch, NonPrimeModulus,
                                   ShapeMismatch)
from steinertorelli.exactfield import (GF, QQ, Matrix, left_kernel,
                                       make_field, normalize_projective,
                                       projective_count, projective_reps,
                                       rank, rank_kernel, rref,
                                       span_reduction)

PRIMES = [2, 3, 5, 7, 11, 13]


# ---- fields -------------------------------------------------------------

def test_inverse_in_f7():
    assert GF(7).inv(3) == 5


@pytest.mark.parametrize("p", PRIMES)
def test_scalar_arithmetic_exhaustive(p):
    fld = GF(p)
    for a in range(p):
        assert fld.add(a, fld.neg(a)) == 0
        if a:
            assert fld.mul(a, fld.inv(a)) == 1
        for b in range(p):
            assert fld.add(a, b) == (a + b) % p
            assert fld.mul(a, b) == (a * b) % p


@pytest.mark.parametrize("n", [1, 4, 6, 9, 15, 2 ** 31, 2 ** 31 + 11])
def test_non_prime_modulus_rejected(n):
    with pytest.raises(NonPrimeModulus):
        GF(n)


def test_make_field():
    assert make_field("prime", 7) == GF(7)
    assert make_field("rationals") == QQ
    with pytest.raises(NonPrimeModulus):
        make_field("prime")
    with pytest.raises(FieldMismatch):
        make_field("complex")


def test_fraction_reduction_mod_p():
    fld = GF(7)
    assert fld.normalize(Fraction(1, 2)) == 4      # 2*4 = 8 = 1
    assert fld.normalize(Fraction(-3, 5)) == 5     # -3 * 5^-1 = 4*3 = 12 = 5
    with pytest.raises(BadPrime):
        fld.normalize(Fraction(1, 7))


def test_zero_not_invertible():
    with pytest.raises(ZeroDivisionError):
        GF(5).inv(0)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(Fraction(0))


def test_field_coercion_rejects_junk():
    with pytest.raises(FieldMismatch):
        GF(5).normalize("3")
    with pytest.raises(FieldMismatch):
        QQ.normalize(0.5)


# ---- matrices -----------------------------------------------------------

def test_matrix_normalizes_entries():
    m = Matrix.from_rows(GF(5), [(7, -1, Fraction(1, 2))])
    assert m.entries == ((2, 4, 3),)


def test_shape_checks():
    with pytest.raises(ShapeMismatch):
        Matrix(GF(5), 2, 2, ((1, 2),))
    with pytest.raises(ShapeMismatch):
        Matrix.from_rows(GF(5), [(1, 2), (1,)])
    a = Matrix.from_rows(GF(5), [(1, 2)])
    b = Matrix.from_rows(GF(5), [(1, 2)])
    with pytest.raises(ShapeMismatch):
        a.mul(b)


def test_field_mismatch_on_mixing():
    a = Matrix.from_rows(GF(5), [(1,)])
    b = Matrix.from_rows(GF(7), [(1,)])
    with pytest.raises(FieldMismatch):
        a.mul(b)
    with pytest.raises(FieldMismatch):
        a.hstack(b)


def test_matmul_and_transpose():
    fld = GF(7)
    a = Matrix.from_rows(fld, [(1, 2), (3, 4)])
    b = Matrix.from_rows(fld, [(5, 6), (0, 1)])
    assert a.mul(b).entries == ((5, 1), (1, 1))    # [[5,8],[15,22]] mod 7
    assert a.transpose().entries == ((1, 3), (2, 4))
    assert a.mul_vec((1, 1)) == (3, 0)


# The F_5 matrix [[1,2,3],[2,4,1]] has proportional rows because
# 2*(1,2,3) = (2,4,6) = (2,4,1) mod 5: rank 1, nullity 2.  The same integer
# matrix over QQ has rank 2 with one dimensional kernel spanned by
# (-2, 1, 0), orthogonal to both rows.
def test_rank_kernel_f5_example():
    m = Matrix.from_rows(GF(5), [(1, 2, 3), (2, 4, 1)])
    kd = rank_kernel(m)
    assert kd.rank == 1
    assert kd.kernel == ((3, 1, 0), (2, 0, 1))
    for v in kd.kernel:
        assert m.mul_vec(v) == (0, 0)


def test_rank_kernel_qq_example():
    m = Matrix.from_rows(QQ, [(1, 2, 3), (2, 4, 1)])
    kd = rank_kernel(m)
    assert kd.rank == 2
    assert kd.kernel == ((Fraction(-2), Fraction(1), Fraction(0)),)
    assert m.mul_vec(kd.kernel[0]) == (Fraction(0), Fraction(0))


def test_rref_canonical_form():
    m = Matrix.from_rows(QQ, [(0, 2, 4), (1, 1, 1)])
    ech = rref(m)
    assert ech.pivots == (0, 1)
    assert ech.rows == ((Fraction(1), Fraction(0), Fraction(-1)),
                        (Fraction(0), Fraction(1), Fraction(2)))


def test_identity_and_zero():
    fld = GF(3)
    assert Matrix.identity(fld, 2).entries == ((1, 0), (0, 1))
    assert Matrix.zero(fld, 2, 3).is_zero()


def test_left_kernel():
    m = Matrix.from_rows(GF(5), [(1, 0), (2, 0), (0, 0)])
    kd = left_kernel(m)
    assert kd.rank == 1
    # row relations: r1 - 2 r0 = 0 and r2 = 0
    assert kd.kernel == ((3, 1, 0), (0, 0, 1))


def test_map_to_reduces_rationals():
    m = Matrix.from_rows(QQ, [(Fraction(1, 2), 3)])
    assert m.map_to(GF(5)).entries == ((3, 3),)
    with pytest.raises(BadPrime):
        m.map_to(GF(2))


# ---- hypothesis properties ----------------------------------------------

def _matrix_strategy(field_st):
    @st.composite
    def build(draw):
        fld = draw(field_st)
        nrows = draw(st.integers(1, 5))
        ncols = draw(st.integers(1, 5))
        ent = draw(st.lists(
            st.lists(st.integers(-20, 20), min_size=ncols, max_size=ncols),
            min_size=nrows, max_size=nrows))
        return Matrix.from_rows(fld, ent)
    return build()


any_field = st.sampled_from([GF(p) for p in PRIMES] + [QQ])
matrices = _matrix_strategy(any_field)


@given(matrices)
@settings(max_examples=120, deadline=None)
def test_rank_plus_nullity(m):
    kd = rank_kernel(m)
    assert kd.rank + kd.nullity == m.ncols


@given(matrices)
@settings(max_examples=120, deadline=None)
def test_kernel_vectors_annihilated(m):
    kd = rank_kernel(m)
    zero = (m.field.zero,) * m.nrows
    free = [j for j in range(m.ncols) if j not in kd.pivots]
    assert len(free) == kd.nullity
    for i, v in enumerate(kd.kernel):
        assert m.mul_vec(v) == zero
        # canonical form: 1 at the vector's own free coordinate, 0 at
        # every other free coordinate
        for j, f in enumerate(free):
            assert v[f] == (m.field.one if j == i else m.field.zero)


@given(matrices)
@settings(max_examples=120, deadline=None)
def test_rank_equals_transpose_rank(m):
    assert rank(m) == rank(m.transpose())


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_span_reduction_kills_rows(m):
    sr = span_reduction(m)
    assert sr.dim == m.ncols - rank(m)
    zero = (m.field.zero,) * sr.dim
    for row in m.entries:
        assert sr.reduce.mul_vec(row) == zero
    # complement coordinates really are coordinates: reducing the unit
    # vector at complement position i gives the i-th standard vector
    for i, c in enumerate(sr.complement):
        unit = [m.field.zero] * m.ncols
        unit[c] = m.field.one
        out = sr.reduce.mul_vec(unit)
        assert out[i] == m.field.one
        assert all(x == m.field.zero for j, x in enumerate(out) if j != i)


# ---- projective enumeration ---------------------------------------------

@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (5, 3), (7, 2)])
def test_projective_reps(p, m):
    reps = list(projective_reps(p, m))
    assert len(reps) == projective_count(p, m)
    assert len(set(reps)) == len(reps)
    assert reps == sorted(reps)
    fld = GF(p)
    for v in reps:
        assert normalize_projective(fld, v) == v
        lead = next(x for x in v if x != 0)
        assert lead == 1


def test_normalize_projective():
    fld = GF(7)
    assert normalize_projective(fld, (0, 3, 5)) == (0, 1, 4)
    assert normalize_projective(fld, (0, 0, 0)) is None
