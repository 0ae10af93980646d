from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import invertible, matrices, scalars
from oracles import cofactor_charpoly, float_rank, leibniz_det, to_complex
from rankcanon.exact_linalg import (
    ExactMatrix,
    GaussianRational as G,
    MixingConstantError,
    ShapeMismatchError,
    SpanBasis,
    det,
    faddeev_leverrier_charpoly,
    find_mixing_constant,
    format_scalar,
    independent_subset,
    inverse,
    is_psd_hermitian,
    rank,
    solve,
    span_coefficients,
)

E = ExactMatrix.unit


class TestScalars:
    def test_lowest_terms(self):
        z = G(Fraction(4, 6), Fraction(-10, 4))
        assert (z.re.numerator, z.re.denominator) == (2, 3)
        assert (z.im.numerator, z.im.denominator) == (-5, 2)

    def test_division(self):
        z = G(1, 2) / G(3, -1)
        assert z * G(3, -1) == G(1, 2)
        assert z == G(Fraction(1, 10), Fraction(7, 10))

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            G(1) / G(0)

    @pytest.mark.parametrize("z, text", [(G(3), "3"), (G(Fraction(-1, 2)), "-1/2"),
                                         (G(2, Fraction(1, 3)), "2+1/3i"), (G(0, -1), "0-1i")])
    def test_format(self, z, text):
        assert format_scalar(z) == text

    @given(scalars(), scalars(), scalars())
    def test_field_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        if b:
            assert (a / b) * b == a
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert (a * a.conjugate()).is_real()


class TestRank:
    def test_examples(self):
        assert rank(ExactMatrix.zeros(3, 3)) == 0
        assert rank(ExactMatrix.identity(3)) == 3
        assert rank(ExactMatrix.from_rows([[1, 2], [2, 4]])) == 1

    def test_empty(self):
        assert rank(ExactMatrix.zeros(0, 3)) == 0

    def test_complex_dependence(self):
        # second row is i times the first
        A = ExactMatrix.from_rows([[1, G(0, 1)], [G(0, 1), -1]])
        assert rank(A) == 1

    @given(matrices(max_dim=5))
    def test_transpose_invariant(self, A):
        assert rank(A) == rank(A.T) == rank(A.dagger())
        assert rank(A) <= min(A.shape)

    @given(st.data())
    def test_invertible_multiplication(self, data):
        A = data.draw(matrices(max_dim=4))
        P = data.draw(invertible(A.rows))
        Q = data.draw(invertible(A.cols))
        assert rank(P @ A @ Q) == rank(A)

    @given(matrices(max_dim=5, complex_=False, sparse=True))
    def test_float_oracle(self, A):
        assert rank(A) == float_rank(to_complex(A))


class TestDeterminant:
    @given(matrices(rows=3, cols=3))
    def test_leibniz(self, A):
        assert det(A) == leibniz_det([list(A.row(i)) for i in range(3)])

    @given(st.data())
    def test_inverse(self, data):
        n = data.draw(st.integers(1, 4))
        P = data.draw(invertible(n))
        assert P @ inverse(P) == ExactMatrix.identity(n)

    def test_singular(self):
        with pytest.raises(ZeroDivisionError):
            inverse(ExactMatrix.from_rows([[1, 2], [2, 4]]))


class TestSpan:
    def test_independent_subset_examples(self):
        I2 = ExactMatrix.identity(2)
        assert independent_subset([I2, I2.scale(2), E(2, 2, 0, 1)]) == [0, 2]
        assert independent_subset([ExactMatrix.zeros(2, 2), I2]) == [1]
        assert independent_subset([E(2, 2, i, j) for i in range(2) for j in range(2)]) == [0, 1, 2, 3]

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            independent_subset([ExactMatrix.identity(2), ExactMatrix.zeros(2, 3)])
        with pytest.raises(ShapeMismatchError):
            span_coefficients(ExactMatrix.zeros(3, 1), [ExactMatrix.zeros(2, 2)])

    def test_span_coefficients_examples(self):
        e11, e12, e22 = E(2, 2, 0, 0), E(2, 2, 0, 1), E(2, 2, 1, 1)
        assert span_coefficients(e11.scale(3), [e11]) == [G(3)]
        assert span_coefficients(e12, [e11]) is None
        target = e11 + e22
        basis = [e11, e22, e11 + e22]
        c = span_coefficients(target, basis)
        acc = ExactMatrix.zeros(2, 2)
        for ci, b in zip(c, basis):
            acc = acc + b.scale(ci)
        assert acc == target

    @given(st.lists(matrices(rows=2, cols=2), min_size=1, max_size=6))
    def test_greedy_subset_contract(self, vecs):
        keep = independent_subset(vecs)
        assert keep == sorted(keep)
        kept = [vecs[i] for i in keep]
        # kept vectors are independent by a direct rank computation
        stacked = ExactMatrix(len(kept), 4, [x for v in kept for x in v.entries])
        assert rank(stacked) == len(kept)
        for i, v in enumerate(vecs):
            if i not in keep:
                assert span_coefficients(v, kept) is not None
            # greedy: each kept index is outside the span of earlier kept ones
            earlier = [vecs[j] for j in keep if j < i]
            if i in keep:
                assert span_coefficients(v, earlier) is None

    @given(st.lists(matrices(rows=1, cols=3), min_size=1, max_size=5), matrices(rows=1, cols=3))
    def test_span_basis_membership(self, vecs, probe):
        basis = SpanBasis(3, vecs)
        assert (probe in basis) == (span_coefficients(probe, vecs) is not None)

    @given(matrices(max_dim=4), st.data())
    def test_solve(self, A, data):
        x = data.draw(st.lists(scalars(), min_size=A.cols, max_size=A.cols))
        b = [sum((A[i, j] * x[j] for j in range(A.cols)), G(0)) for i in range(A.rows)]
        y = solve(A, b)
        assert y is not None
        assert [sum((A[i, j] * y[j] for j in range(A.cols)), G(0)) for i in range(A.rows)] == b


class TestMixingConstant:
    def test_examples(self):
        assert find_mixing_constant(lambda k: k, 1) == G(1)
        assert find_mixing_constant(lambda k: k - 1, 1) == G(2)
        assert find_mixing_constant(lambda k: (k - 1) * (k - 2) * (k - 3), 3) == G(4)

    def test_identically_zero(self):
        with pytest.raises(MixingConstantError):
            find_mixing_constant(lambda k: G(0), 4)

    @given(st.lists(st.integers(1, 8), min_size=0, max_size=5))
    def test_avoids_roots(self, roots):
        def f(k):
            out = G(1)
            for r in roots:
                out = out * (k - r)
            return out
        k = find_mixing_constant(f, len(roots))
        assert f(k) != 0 and k != 0


class TestCharpoly:
    def test_examples(self):
        assert faddeev_leverrier_charpoly(ExactMatrix.identity(2)) == [G(1), G(-2), G(1)]
        assert faddeev_leverrier_charpoly(ExactMatrix.zeros(2, 2)) == [G(1), G(0), G(0)]

    def test_non_square(self):
        with pytest.raises(ShapeMismatchError):
            faddeev_leverrier_charpoly(ExactMatrix.zeros(2, 3))

    @given(matrices(rows=3, cols=3))
    def test_cofactor_oracle_rational(self, A):
        rows = [[z for z in A.row(i)] for i in range(3)]
        assert faddeev_leverrier_charpoly(A) == [G.coerce(c) for c in cofactor_charpoly(rows)]

    @given(st.integers(1, 5), st.data())
    def test_cofactor_oracle_sizes(self, n, data):
        A = data.draw(matrices(rows=n, cols=n))
        rows = [[z for z in A.row(i)] for i in range(n)]
        assert faddeev_leverrier_charpoly(A) == [G.coerce(c) for c in cofactor_charpoly(rows)]

    def test_psd_sign_rule(self):
        assert is_psd_hermitian(ExactMatrix.identity(3))
        assert not is_psd_hermitian(ExactMatrix.diag([1, -1]))
        assert is_psd_hermitian(ExactMatrix.diag([0, 2, 0]))

    @given(matrices(max_dim=5))
    def test_gram_is_psd(self, A):
        assert is_psd_hermitian(A @ A.dagger())

    @given(matrices(max_dim=4))
    def test_negated_gram_not_psd(self, A):
        assert is_psd_hermitian(-(A @ A.dagger())) == A.is_zero()

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError):
            is_psd_hermitian(ExactMatrix.from_rows([[0, 1], [0, 0]]))
