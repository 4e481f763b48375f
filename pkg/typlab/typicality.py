"""Single-site populations of sector eigenstates and their rms deviation from the
micro-canonical prediction.

Two configurations of one sector never differ on a single site, so every
single-site reduced density matrix is diagonal in the level basis and the
populations carry all of it.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from typlab.basis import SectorBasis, site_level_counts
from typlab.constants import (
    NORMALIZATION_TOLERANCE,
    SPIN_HALF,
    InvalidSiteError,
    SpecMismatchError,
    TyplabValidationError,
)
from typlab.spectra import EigenDecomposition, GapStatistics, degeneracy_fraction


@dataclass(frozen=True, eq=False)
class SitePopulations:
    populations: np.ndarray

    def __getitem__(self, level: int) -> float:
        return float(self.populations[level])


@dataclass(frozen=True, eq=False)
class MicrocanonicalReference:
    """Site populations of the maximally mixed state on a sector."""

    populations: np.ndarray
    exact: tuple[Fraction, ...]
    chain_length: int
    local_dimension: int
    charge: int


@dataclass(frozen=True, eq=False)
class TypicalityReport:
    chain_length: int
    local_dimension: int
    charge: int
    dimension: int
    delta_rms: float
    degeneracy: GapStatistics | None
    # deviations[n, j, c]: eigenstate n, site j, tracked level c (see tracked_levels)
    deviations: np.ndarray | None = field(default=None, repr=False)
    wall_time: float = 0.0
    seed: int | None = None
    spec_hash: str | None = None

    @property
    def degeneracy_fraction(self) -> float | None:
        return None if self.degeneracy is None else self.degeneracy.degeneracy_fraction

    @property
    def mean_gap(self) -> float | None:
        return None if self.degeneracy is None else self.degeneracy.mean_gap

    def sum_rule_residual(self) -> float | None:
        """max over sites and levels of |sum_n delta_{j,n}|, which vanishes exactly."""
        if self.deviations is None:
            return None
        return float(np.abs(self.deviations.sum(axis=0)).max())


def tracked_levels(local_dimension: int) -> tuple[int, ...]:
    """Levels whose deviations enter delta: up for qubits, m = +1 and m = 0 for qutrits."""
    if local_dimension == SPIN_HALF:
        return (1,)
    return (2, 1)


def reduced_populations(
    eigvec: np.ndarray, basis: SectorBasis, site: int
) -> SitePopulations:
    """Diagonal of the single-site reduced density matrix of a sector state."""
    eigvec = np.asarray(eigvec, dtype=np.float64)
    if eigvec.shape != (basis.dimension,):
        raise SpecMismatchError(
            f"State has shape {eigvec.shape}, sector dimension is {basis.dimension}"
        )
    if not 0 <= site < basis.chain_length:
        raise InvalidSiteError(
            f"Site {site} out of range for chain of length {basis.chain_length}"
        )
    weights = eigvec**2
    if abs(weights.sum() - 1.0) > NORMALIZATION_TOLERANCE:
        raise TyplabValidationError(f"State is not normalized (norm^2={weights.sum()})")
    populations = np.bincount(
        basis.levels[:, site], weights=weights, minlength=basis.local_dimension
    )
    return SitePopulations(populations=populations)


def site_populations(decomposition: EigenDecomposition, basis: SectorBasis) -> np.ndarray:
    """populations[n, j, m] for every eigenstate n, site j and level m."""
    weights = decomposition.eigenvectors**2
    occupation = (
        basis.levels[:, :, None] == np.arange(basis.local_dimension)[None, None, :]
    ).astype(np.float64)
    return np.tensordot(weights, occupation, axes=(0, 0))


def microcanonical_reference(basis: SectorBasis) -> MicrocanonicalReference:
    """Populations from counting: for qubits p[up] = M/N."""
    # the counts do not depend on the site
    counts = site_level_counts(basis, 0)
    exact = tuple(Fraction(int(count), basis.dimension) for count in counts)
    return MicrocanonicalReference(
        populations=np.array([float(value) for value in exact]),
        exact=exact,
        chain_length=basis.chain_length,
        local_dimension=basis.local_dimension,
        charge=basis.charge,
    )


def atypicality(
    decomposition: EigenDecomposition,
    basis: SectorBasis,
    keep_deviations: bool = False,
    seed: int | None = None,
    spec_hash: str | None = None,
) -> TypicalityReport:
    """rms deviation of eigenstate site populations from the micro-canonical ones.

    delta_rms = sqrt(sum_{n,j} delta_{j,n}^2 / (D N)). For qutrits delta_{j,n}^2
    sums the squared deviations of the m = +1 and m = 0 populations.

    :raises SpecMismatchError: If the decomposition and basis dimensions differ.
    """
    if decomposition.dimension != basis.dimension:
        raise SpecMismatchError(
            f"Decomposition has dimension {decomposition.dimension}, "
            f"basis has {basis.dimension}"
        )
    reference = microcanonical_reference(basis)
    levels = list(tracked_levels(basis.local_dimension))
    populations = site_populations(decomposition, basis)[:, :, levels]
    deviations = populations - reference.populations[levels]

    delta_rms = float(
        np.sqrt(np.sum(deviations**2) / (basis.dimension * basis.chain_length))
    )
    degeneracy = (
        degeneracy_fraction(decomposition.eigenvalues)
        if decomposition.dimension >= 2
        else None
    )
    return TypicalityReport(
        chain_length=basis.chain_length,
        local_dimension=basis.local_dimension,
        charge=basis.charge,
        dimension=basis.dimension,
        delta_rms=delta_rms,
        degeneracy=degeneracy,
        deviations=deviations if keep_deviations else None,
        seed=seed,
        spec_hash=spec_hash,
    )


def reduced_density_matrix_oracle(
    eigvec: np.ndarray, basis: SectorBasis, site: int
) -> np.ndarray:
    """Full single-site reduced density matrix, by partial trace in the product space."""
    local_dimension = basis.local_dimension
    full = np.zeros(local_dimension**basis.chain_length)
    full[basis.states] = eigvec
    tensor = full.reshape(
        local_dimension**site,
        local_dimension,
        local_dimension ** (basis.chain_length - site - 1),
    )
    return np.einsum("aib,ajb->ij", tensor, tensor)
