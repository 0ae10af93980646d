from itertools import combinations
from math import prod

import pytest
from hypothesis import given, strategies as st

from oracles import brute_partial_trace
from rankcanon.exact_linalg import ExactMatrix, GaussianRational as G, ShapeMismatchError
from rankcanon.quantum_states import (
    DensityMatrix,
    StateError,
    basis_state,
    ghz,
    is_ppt,
    max_entangled,
    maximally_mixed,
    partial_trace,
    partial_transpose,
    permute_subsystems,
    pure_state,
    random_block_matrix,
    random_density,
    reduced_rank,
    tensor,
    validate,
    zero_entropy_vector,
)

dims_strategy = st.lists(st.integers(1, 3), min_size=2, max_size=3).filter(lambda d: 2 <= prod(d) <= 12)


@st.composite
def states(draw, dims=None):
    dims = dims or draw(dims_strategy)
    D = prod(dims)
    r = draw(st.integers(1, min(D, 3)))
    return random_density(dims, r, draw(st.integers(0, 10_000)))


class TestValidate:
    def test_scaled_identity(self):
        assert validate(maximally_mixed([2, 2])).passed
        assert validate(maximally_mixed([2, 2]).scaled(7)).passed

    def test_negative_eigenvalue(self):
        rep = validate(DensityMatrix((2,), ExactMatrix.diag([1, -1])))
        assert not rep.passed and rep.first_failure.name == "psd"

    def test_not_hermitian(self):
        rep = validate(DensityMatrix((2,), ExactMatrix.from_rows([[1, 1], [0, 1]])))
        assert rep.first_failure.name == "hermitian"

    def test_zero_trace(self):
        rep = validate(DensityMatrix((2,), ExactMatrix.zeros(2, 2)))
        assert rep.first_failure.name == "trace_positive"

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            DensityMatrix((2, 2), ExactMatrix.identity(3))

    @given(states())
    def test_gram_states_validate(self, rho):
        assert validate(rho).passed


class TestPartialTrace:
    def test_product(self):
        a = DensityMatrix((2,), ExactMatrix.from_rows([[2, G(0, 1)], [G(0, -1), 1]]))
        b = DensityMatrix((3,), ExactMatrix.diag([1, 2, 3]))
        out = partial_trace(tensor(a, b), [0])
        assert out.matrix == a.matrix.scale(6)

    def test_identity(self):
        out = partial_trace(maximally_mixed([2, 2, 2]), [1])
        assert out.matrix == ExactMatrix.identity(2).scale(4)

    def test_ghz_pair(self):
        out = partial_trace(ghz(3), [0, 1])
        assert out.matrix == ExactMatrix.diag([1, 0, 0, 1])
        assert out.rank() == 2

    def test_errors(self):
        with pytest.raises(StateError):
            partial_trace(ghz(3), [])
        with pytest.raises(StateError):
            partial_trace(ghz(3), [3])

    @given(states(), st.data())
    def test_against_brute_force(self, rho, data):
        n = rho.parties
        keep = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True))
        ref, kdims = brute_partial_trace(rho.matrix.tolist(), rho.dims, keep)
        out = partial_trace(rho, keep)
        assert list(out.dims) == kdims
        assert out.matrix.tolist() == ref

    @given(states(dims=[2, 2, 2]))
    def test_trace_and_positivity(self, rho):
        for keep in ([0], [1, 2], [0, 2]):
            out = partial_trace(rho, keep)
            assert out.trace() == rho.trace()
            assert validate(out).passed

    @given(states(dims=[2, 1, 2]))
    def test_traces_commute(self, rho):
        step = partial_trace(partial_trace(rho, [0, 1]), [0])
        assert step.matrix == partial_trace(rho, [0]).matrix
        other = partial_trace(partial_trace(rho, [0, 2]), [0])
        assert other.matrix == step.matrix


class TestRanks:
    def test_examples(self):
        assert reduced_rank(basis_state([2, 2, 2], [0, 0, 0]), [1, 2]) == 1
        for keep in combinations(range(3), 2):
            assert reduced_rank(ghz(3), keep) == 2
        assert reduced_rank(maximally_mixed([2, 2]), [0, 1]) == 4

    @given(st.integers(0, 5000))
    def test_pure_complements(self, seed):
        psi = random_density([2, 2, 2], 1, seed)
        for k in range(1, 3):
            for S in combinations(range(3), k):
                comp = [i for i in range(3) if i not in S]
                assert reduced_rank(psi, S) == reduced_rank(psi, comp)

    @given(states(), st.integers(1, 5))
    def test_scale_invariance(self, rho, c):
        assert reduced_rank(rho.scaled(c), [0]) == reduced_rank(rho, [0])


class TestZeroEntropyVector:
    def test_product_basis(self):
        assert zero_entropy_vector(basis_state([2] * 4, [0] * 4)).ranks == (1,) * 7

    def test_bell_pairs(self):
        psi = tensor(max_entangled(), max_entangled())
        assert zero_entropy_vector(psi).ranks == (2, 2, 2, 2, 1, 4, 4)

    def test_ghz(self):
        assert zero_entropy_vector(ghz(4)).ranks == (2,) * 7

    def test_requires_pure(self):
        with pytest.raises(StateError):
            zero_entropy_vector(maximally_mixed([2, 2, 2, 2]))
        with pytest.raises(StateError):
            zero_entropy_vector(ghz(3))

    @given(st.integers(0, 1000))
    def test_complementary_pairs(self, seed):
        psi = random_density([2, 2, 1, 2], 1, seed)
        v = zero_entropy_vector(psi)
        assert v["AB"] == reduced_rank(psi, [2, 3])
        assert v["A"] == reduced_rank(psi, [1, 2, 3])
        assert all(r >= 1 for r in v.ranks)


class TestGenerators:
    def test_pure(self):
        rho = random_density([2, 3], 1, 11)
        assert rho.rank() == 1 and validate(rho).passed

    def test_full_rank(self):
        rho = random_density([2, 2], 4, 3)
        assert rho.rank() == 4 and validate(rho).passed

    def test_deterministic(self):
        assert random_density([2, 2, 2], 3, 99) == random_density([2, 2, 2], 3, 99)
        assert random_block_matrix(2, 3, 2, 2, 3, 5) == random_block_matrix(2, 3, 2, 2, 3, 5)

    def test_rank_bounds(self):
        with pytest.raises(StateError):
            random_density([2], 3, 0)
        with pytest.raises(StateError):
            random_block_matrix(1, 1, 2, 2, 2, 0)

    @pytest.mark.parametrize("shape", [(1, 1, 1, 1), (2, 2, 2, 2), (3, 2, 1, 3), (3, 3, 3, 3)])
    def test_block_matrix_extremes(self, shape):
        top = min(shape[0] * shape[1], shape[2] * shape[3])
        assert random_block_matrix(*shape, 1, 1).schmidt_rank() == 1
        assert random_block_matrix(*shape, top, 1).schmidt_rank() == top


class TestTransposes:
    def test_ppt_examples(self):
        assert is_ppt(maximally_mixed([2, 2]))
        assert not is_ppt(max_entangled())

    def test_partial_transpose_involution(self):
        rho = random_density([2, 3], 2, 4)
        assert partial_transpose(partial_transpose(rho, [1]), [1]) == rho
        assert partial_transpose(rho, [0, 1]).matrix == rho.matrix.T

    def test_permute(self):
        a = pure_state([1, 2], [2])
        b = maximally_mixed([3])
        assert permute_subsystems(tensor(a, b), [1, 0]).matrix == tensor(b, a).matrix
        with pytest.raises(StateError):
            permute_subsystems(tensor(a, b), [0, 0])
