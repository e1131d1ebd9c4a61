"""Hypercube geometry, state constructors, and density-matrix utilities."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperwalk import (
    MAX_DIMENSION,
    PositivityError,
    WalkParams,
    build_hamiltonian,
    diagnose,
    hamming_distance,
    hamming_matrix,
    hitting_probability,
    maximally_mixed,
    validate_density_matrix,
    vertex_state,
    von_neumann_entropy,
)

from conftest import random_density


class TestWalkParams:
    def test_defaults(self):
        p = WalkParams(3)
        assert p.omega == 1.0 and p.lam == 0.0
        assert p.dim == 8
        assert p.hitting_time == pytest.approx(np.pi / 2)

    def test_hitting_time_scales_with_omega(self):
        assert WalkParams(2, omega=2.0).hitting_time == pytest.approx(np.pi / 4)

    @pytest.mark.parametrize("bad", [{"d": 0}, {"d": -1}, {"d": 2, "omega": 0.0},
                                     {"d": 2, "omega": -1.0}, {"d": 2, "lam": -0.1}])
    def test_rejects_invalid_parameters(self, bad):
        with pytest.raises(ValueError):
            WalkParams(**bad)


class TestHamming:
    def test_identical_vertices(self):
        assert hamming_distance(0, 0) == 0

    def test_antipodal_vertices(self):
        for d in (1, 3, 7):
            assert hamming_distance(0, 2**d - 1) == d

    def test_examples(self):
        assert hamming_distance(5, 3) == 2

    def test_rejects_negative_labels(self):
        with pytest.raises(ValueError):
            hamming_distance(-1, 0)

    @given(st.integers(0, 2**14 - 1), st.integers(0, 2**14 - 1),
           st.integers(0, 2**14 - 1))
    def test_metric_axioms(self, x, y, z):
        assert hamming_distance(x, y) == hamming_distance(y, x)
        assert (hamming_distance(x, y) == 0) == (x == y)
        assert hamming_distance(x, z) <= hamming_distance(x, y) + hamming_distance(y, z)

    def test_matrix_agrees_with_pairwise_distances(self):
        m = hamming_matrix(3)
        for x in range(8):
            for y in range(8):
                assert m[x, y] == hamming_distance(x, y)

    @pytest.mark.parametrize("d", [0, 15, -3])
    def test_matrix_dimension_cap(self, d):
        with pytest.raises(ValueError):
            hamming_matrix(d)


class TestHamiltonian:
    def test_single_bit(self):
        h = build_hamiltonian(WalkParams(1))
        np.testing.assert_array_equal(h, [[0.0, 1.0], [1.0, 0.0]])

    def test_row_sums_equal_degree(self):
        h = build_hamiltonian(WalkParams(2))
        np.testing.assert_allclose(h.sum(axis=1), 2.0)

    def test_couples_only_adjacent_vertices(self):
        h = build_hamiltonian(WalkParams(3, omega=0.5))
        assert h[0][1] == h[0][2] == h[0][4] == 0.5
        assert h[0][3] == 0.0

    @pytest.mark.parametrize("d", range(1, 9))
    def test_each_row_has_exactly_d_couplings(self, d):
        omega = 0.7
        h = build_hamiltonian(WalkParams(d, omega=omega))
        nonzero = h != 0.0
        assert (nonzero.sum(axis=1) == d).all()
        assert (h[nonzero] == omega).all()

    def test_dimension_cap(self):
        with pytest.raises(ValueError):
            build_hamiltonian(WalkParams(MAX_DIMENSION + 1))

    def test_cap_can_be_lowered(self):
        with pytest.raises(ValueError):
            build_hamiltonian(WalkParams(5), max_dimension=4)


class TestStates:
    def test_vertex_state_is_pure_at_requested_vertex(self):
        rho = vertex_state(2, vertex=3)
        expected = np.zeros((4, 4))
        expected[3, 3] = 1.0
        np.testing.assert_array_equal(rho, expected)

    def test_vertex_state_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            vertex_state(2, vertex=4)

    def test_maximally_mixed_has_unit_trace(self):
        rho = maximally_mixed(3)
        assert np.trace(rho) == pytest.approx(1.0)
        np.testing.assert_allclose(np.diag(rho), 1 / 8)


class TestValidation:
    def test_accepts_valid_state(self):
        validate_density_matrix(vertex_state(3), check_positivity=True)

    def test_rejects_non_square(self):
        with pytest.raises(ValueError, match="square"):
            validate_density_matrix(np.zeros((2, 3)))

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError, match="power of two"):
            validate_density_matrix(np.eye(3) / 3)

    def test_rejects_trace_deviation(self):
        with pytest.raises(ValueError, match="trace"):
            validate_density_matrix(1.1 * vertex_state(2))

    def test_rejects_non_hermitian(self):
        rho = vertex_state(2).astype(complex)
        rho[0, 1] = 0.5j
        with pytest.raises(ValueError, match="Hermiticity"):
            validate_density_matrix(rho)

    def test_rejects_negative_eigenvalues(self):
        rho = np.diag([1.2, -0.2, 0.0, 0.0])
        with pytest.raises(PositivityError):
            validate_density_matrix(rho, check_positivity=True)


class TestHitting:
    def test_target_state_hits_with_certainty(self):
        d = 3
        rho = vertex_state(d, vertex=2**d - 1)
        assert hitting_probability(rho, 2**d - 1) == pytest.approx(1.0)

    def test_start_state_misses_target(self):
        d = 3
        assert hitting_probability(vertex_state(d), 2**d - 1) == pytest.approx(0.0)

    def test_maximally_mixed_spreads_uniformly(self):
        d = 4
        assert hitting_probability(maximally_mixed(d), 5) == pytest.approx(2.0**-d)

    def test_rejects_complex_population(self):
        rho = np.eye(2, dtype=complex)
        rho[1, 1] = 0.5 + 1e-6j
        with pytest.raises(ValueError):
            hitting_probability(rho, 1)

    @given(st.integers(0, 2**32 - 1), st.integers(1, 3))
    @settings(max_examples=25, deadline=None)
    def test_sums_to_trace_over_all_targets(self, seed, d):
        rho = random_density(np.random.default_rng(seed), 2**d)
        total = sum(hitting_probability(rho, v) for v in range(2**d))
        assert total == pytest.approx(1.0, abs=1e-9)


class TestEntropy:
    def test_pure_state_has_zero_entropy(self):
        assert von_neumann_entropy(vertex_state(3)) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed_has_d_bits(self):
        for d in (1, 2, 5):
            assert von_neumann_entropy(maximally_mixed(d)) == pytest.approx(d)

    def test_rejects_significantly_negative_eigenvalues(self):
        rho = np.diag([1.0 + 1e-7, -1e-7, 0.0, 0.0])
        with pytest.raises(PositivityError):
            von_neumann_entropy(rho)

    def test_tolerates_roundoff_negatives(self):
        rho = np.diag([1.0 + 1e-12, -1e-12])
        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-10)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_invariant_under_vertex_relabeling(self, seed):
        rng = np.random.default_rng(seed)
        rho = random_density(rng, 8)
        perm = rng.permutation(8)
        relabeled = rho[np.ix_(perm, perm)]
        assert von_neumann_entropy(relabeled) == pytest.approx(
            von_neumann_entropy(rho), abs=1e-9)

    @given(st.integers(0, 2**32 - 1), st.integers(2, 4))
    @settings(max_examples=25, deadline=None)
    def test_additive_over_tensor_products(self, seed, k):
        rng = np.random.default_rng(seed)
        factors = [random_density(rng, 2) for _ in range(k)]
        product = factors[0]
        for f in factors[1:]:
            product = np.kron(product, f)
        expected = sum(von_neumann_entropy(f) for f in factors)
        assert von_neumann_entropy(product) == pytest.approx(expected, abs=1e-10)


class TestDiagnose:
    def test_pure_state(self):
        report = diagnose(vertex_state(2))
        assert report.trace_deviation == pytest.approx(0.0, abs=1e-14)
        assert report.hermiticity_deviation == pytest.approx(0.0, abs=1e-14)
        assert report.min_eigenvalue == pytest.approx(0.0, abs=1e-14)

    def test_maximally_mixed(self):
        d = 3
        report = diagnose(maximally_mixed(d))
        assert report.min_eigenvalue == pytest.approx(2.0**-d)
