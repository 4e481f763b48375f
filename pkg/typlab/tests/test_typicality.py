import math
from fractions import Fraction
from unittest import TestCase

import numpy as np

from typlab.basis import enumerate_sector, rank_levels
from typlab.constants import InvalidSiteError, SpecMismatchError, TyplabValidationError
from typlab.hamiltonian import (
    ChainSpec,
    SpinHalfAngle,
    build_sector_hamiltonian,
    sample_goe,
    sample_spin_one_interaction,
)
from typlab.spectra import EigenDecomposition, eig_symmetric
from typlab.typicality import (
    atypicality,
    microcanonical_reference,
    reduced_density_matrix_oracle,
    reduced_populations,
    site_populations,
    tracked_levels,
)


def sector_decomposition(chain_length, interaction, charge):
    spec = ChainSpec(chain_length=chain_length, interaction=interaction)
    basis = enumerate_sector(chain_length, spec.local_dimension, charge)
    matrix = build_sector_hamiltonian(spec, basis).matrix
    return basis, eig_symmetric(matrix)


class TestReducedPopulations(TestCase):
    def test_basis_state(self):
        basis = enumerate_sector(4, 2, 2)
        state = np.zeros(basis.dimension)
        state[0] = 1.0
        populations = reduced_populations(state, basis, 0)
        self.assertEqual(populations.populations.tolist(), [1.0, 0.0])
        self.assertEqual(reduced_populations(state, basis, 3)[1], 1.0)

    def test_uniform_state(self):
        for chain_length, charge in [(4, 1), (7, 3), (10, 5), (13, 6)]:
            basis = enumerate_sector(chain_length, 2, charge)
            uniform = np.full(basis.dimension, 1 / math.sqrt(basis.dimension))
            for site in range(chain_length):
                self.assertAlmostEqual(
                    reduced_populations(uniform, basis, site)[1],
                    charge / chain_length,
                    delta=1e-12,
                )

    def test_half_filling_eigenstates(self):
        for chain_length in (4, 6, 8, 10):
            basis, decomposition = sector_decomposition(
                chain_length, SpinHalfAngle(), chain_length // 2
            )
            populations = site_populations(decomposition, basis)
            np.testing.assert_allclose(populations[:, :, 1], 0.5, atol=1e-10)

    def test_site_populations_match_single_states(self):
        basis, decomposition = sector_decomposition(
            5, sample_spin_one_interaction(np.random.default_rng(1)), 1
        )
        populations = site_populations(decomposition, basis)
        self.assertEqual(populations.shape, (basis.dimension, 5, 3))
        for eigenstate in (0, basis.dimension // 2, basis.dimension - 1):
            for site in range(5):
                np.testing.assert_allclose(
                    populations[eigenstate, site],
                    reduced_populations(
                        decomposition.eigenvectors[:, eigenstate], basis, site
                    ).populations,
                    atol=1e-14,
                )

    def test_invalid_inputs(self):
        basis = enumerate_sector(4, 2, 2)
        uniform = np.full(basis.dimension, 1 / math.sqrt(basis.dimension))
        with self.assertRaises(SpecMismatchError):
            reduced_populations(np.ones(5), basis, 0)
        with self.assertRaises(InvalidSiteError):
            reduced_populations(uniform, basis, 4)
        with self.assertRaises(TyplabValidationError):
            reduced_populations(2 * uniform, basis, 0)


class TestReducedDensityMatrixOracle(TestCase):
    def test_no_coherences(self):
        rng = np.random.default_rng(4)
        for chain_length, local_dimension, charge in [(8, 2, 3), (8, 2, 4), (6, 3, 0), (5, 3, -2)]:
            basis = enumerate_sector(chain_length, local_dimension, charge)
            state = rng.standard_normal(basis.dimension)
            state /= np.linalg.norm(state)
            for site in range(chain_length):
                matrix = reduced_density_matrix_oracle(state, basis, site)
                off_diagonal = matrix - np.diag(np.diag(matrix))
                self.assertLess(np.abs(off_diagonal).max(), 1e-14)
                np.testing.assert_allclose(
                    np.diag(matrix),
                    reduced_populations(state, basis, site).populations,
                    atol=1e-14,
                )


class TestMicrocanonicalReference(TestCase):
    def test_spin_half_values(self):
        self.assertEqual(microcanonical_reference(enumerate_sector(10, 2, 5)).populations[1], 0.5)
        reference = microcanonical_reference(enumerate_sector(13, 2, 6))
        self.assertEqual(reference.exact[1], Fraction(6, 13))

    def test_counting_identity(self):
        for chain_length in range(2, 15):
            for charge in range(1, chain_length):
                reference = microcanonical_reference(enumerate_sector(chain_length, 2, charge))
                self.assertEqual(reference.exact[1], Fraction(charge, chain_length))
                self.assertEqual(sum(reference.exact), 1)

    def test_spin_one_values(self):
        reference = microcanonical_reference(enumerate_sector(6, 3, 0))
        self.assertEqual(
            reference.exact, (Fraction(45, 141), Fraction(51, 141), Fraction(45, 141))
        )
        self.assertEqual(reference.exact[0], reference.exact[2])
        self.assertEqual(reference.exact[1], 1 - 2 * reference.exact[2])


class TestAtypicality(TestCase):
    def test_configuration_eigenstates(self):
        basis = enumerate_sector(4, 2, 2)
        decomposition = EigenDecomposition(np.arange(6.0), np.eye(6))
        report = atypicality(decomposition, basis)
        self.assertAlmostEqual(report.delta_rms, 0.5, places=15)
        self.assertEqual(report.dimension, 6)
        self.assertEqual(report.degeneracy_fraction, 0.0)
        self.assertIsNone(report.deviations)

    def test_half_filling_is_typical(self):
        for chain_length in (4, 6, 8, 10):
            basis, decomposition = sector_decomposition(
                chain_length, SpinHalfAngle(), chain_length // 2
            )
            self.assertLess(atypicality(decomposition, basis).delta_rms, 1e-10)

    def test_two_dimensional_goe(self):
        basis = enumerate_sector(2, 2, 1)
        matrix = sample_goe(2, np.random.default_rng(17))
        a, b, c = matrix[0, 0], matrix[0, 1], matrix[1, 1]
        expected = abs(a - c) / (2 * math.sqrt((a - c) ** 2 + 4 * b**2))
        report = atypicality(eig_symmetric(matrix), basis)
        self.assertAlmostEqual(report.delta_rms, expected, places=12)

    def test_invariant_under_chain_reflection(self):
        rng = np.random.default_rng(23)
        for chain_length, local_dimension, charge in [(7, 2, 3), (8, 2, 2), (5, 3, 0)]:
            basis = enumerate_sector(chain_length, local_dimension, charge)
            # reflected[i] is the index of configuration i read from the other end
            reflected = rank_levels(basis, basis.levels[:, ::-1])
            matrix = sample_goe(basis.dimension, rng)
            mirrored = np.empty_like(matrix)
            mirrored[np.ix_(reflected, reflected)] = matrix

            report = atypicality(eig_symmetric(matrix), basis)
            mirrored_report = atypicality(eig_symmetric(mirrored), basis)
            self.assertAlmostEqual(mirrored_report.delta_rms, report.delta_rms, places=12)
            np.testing.assert_allclose(
                site_populations(eig_symmetric(mirrored), basis),
                site_populations(eig_symmetric(matrix), basis)[:, ::-1, :],
                atol=1e-9,
            )

    def test_invariant_under_scaling(self):
        basis = enumerate_sector(8, 2, 3)
        matrix = sample_goe(basis.dimension, np.random.default_rng(31))
        expected = atypicality(eig_symmetric(matrix), basis).delta_rms
        for scale in (3.7, 0.2):
            report = atypicality(eig_symmetric(scale * matrix), basis)
            self.assertAlmostEqual(report.delta_rms, expected, places=12)

    def test_sum_rule_and_deviation_shape(self):
        basis, decomposition = sector_decomposition(
            6, sample_spin_one_interaction(np.random.default_rng(2)), 0
        )
        report = atypicality(decomposition, basis, keep_deviations=True, seed=2)
        self.assertEqual(report.deviations.shape, (141, 6, 2))
        self.assertLess(report.sum_rule_residual(), 1e-9)
        self.assertEqual(report.seed, 2)
        self.assertGreater(report.delta_rms, 0.0)
        self.assertLessEqual(report.delta_rms, 1.0)

    def test_tracked_levels(self):
        self.assertEqual(tracked_levels(2), (1,))
        self.assertEqual(tracked_levels(3), (2, 1))

    def test_one_dimensional_sector(self):
        basis = enumerate_sector(4, 2, 0)
        report = atypicality(EigenDecomposition(np.zeros(1), np.eye(1)), basis)
        self.assertEqual(report.delta_rms, 0.0)
        self.assertIsNone(report.degeneracy)
        self.assertIsNone(report.degeneracy_fraction)

    def test_mismatched_decomposition(self):
        with self.assertRaises(SpecMismatchError):
            atypicality(
                EigenDecomposition(np.arange(3.0), np.eye(3)), enumerate_sector(4, 2, 2)
            )
