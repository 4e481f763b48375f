"""Nearest-neighbour interaction Hamiltonians restricted to charge sectors.

In the weak-coupling limit only states degenerate under the free Hamiltonian
are coupled, so each sector block is the projection P H_int P of the open-chain
interaction H_int = g * sum_j O_j O_{j+1}. The free part is constant on a
sector and is left out.
"""

import hashlib
import json
from dataclasses import asdict, dataclass
from typing import ClassVar

import numpy as np

from typlab.basis import SectorBasis, rank_levels
from typlab.constants import (
    DEFAULT_THETA,
    MAX_ORACLE_DIMENSION,
    SPIN_HALF,
    SPIN_ONE,
    SectorCapacityError,
    SpecMismatchError,
    TyplabValidationError,
)


@dataclass(frozen=True)
class SpinHalfAngle:
    """Qubit interaction operator cos(theta) sigma_z + sin(theta) sigma_x."""

    theta: float = DEFAULT_THETA
    local_dimension: ClassVar[int] = SPIN_HALF

    def local_operator(self) -> np.ndarray:
        # (down, up) basis: sigma_z = diag(-1, +1)
        cos, sin = np.cos(self.theta), np.sin(self.theta)
        return np.array([[-cos, sin], [sin, cos]])

    def to_dict(self) -> dict:
        return {"theta": self.theta}


@dataclass(frozen=True)
class SpinOneMatrix:
    """Real symmetric qutrit interaction operator A with zero diagonal.

    Rows and columns 1, 2, 3 of A correspond to m = -1, 0, +1.
    """

    a12: float
    a13: float
    a23: float
    local_dimension: ClassVar[int] = SPIN_ONE

    def local_operator(self) -> np.ndarray:
        return np.array(
            [
                [0.0, self.a12, self.a13],
                [self.a12, 0.0, self.a23],
                [self.a13, self.a23, 0.0],
            ]
        )

    def to_dict(self) -> dict:
        return asdict(self)


InteractionSpec = SpinHalfAngle | SpinOneMatrix


def interaction_from_dict(data: dict) -> InteractionSpec:
    if "theta" in data:
        return SpinHalfAngle(theta=float(data["theta"]))
    try:
        return SpinOneMatrix(
            a12=float(data["a12"]), a13=float(data["a13"]), a23=float(data["a23"])
        )
    except KeyError as missing:
        raise TyplabValidationError(f"Interaction is missing {missing}") from None


@dataclass(frozen=True)
class ChainSpec:
    """A chain experiment: length, interaction operator and energy scales.

    `level_splitting` (Delta) is informational; it drops out of every sector block.
    """

    chain_length: int
    interaction: InteractionSpec
    coupling: float = 1.0
    level_splitting: float = 1.0

    def __post_init__(self):
        if self.chain_length < 2:
            raise TyplabValidationError(
                f"A chain needs at least 2 sites, got {self.chain_length}"
            )
        if self.coupling <= 0:
            raise TyplabValidationError(f"Coupling must be positive, got {self.coupling}")

    @property
    def local_dimension(self) -> int:
        return self.interaction.local_dimension

    def to_dict(self) -> dict:
        return {
            "chain_length": self.chain_length,
            "local_dimension": self.local_dimension,
            "coupling": self.coupling,
            "level_splitting": self.level_splitting,
            "interaction": self.interaction.to_dict(),
        }

    def spec_hash(self) -> str:
        encoded = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(encoded).hexdigest()[:16]


@dataclass(frozen=True, eq=False)
class SectorHamiltonian:
    basis: SectorBasis
    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return self.basis.dimension


def _bond_transitions(operator: np.ndarray) -> list[tuple[int, int, int, int, float]]:
    """Charge-conserving (a, b) -> (a', b') moves of O (x) O with non-zero amplitude."""
    dimension = operator.shape[0]
    transitions = []
    for a in range(dimension):
        for b in range(dimension):
            for a_new in range(dimension):
                b_new = a + b - a_new
                if not 0 <= b_new < dimension:
                    continue
                amplitude = operator[a_new, a] * operator[b_new, b]
                if amplitude != 0.0:
                    transitions.append((a, b, a_new, b_new, amplitude))
    return transitions


def _symmetrized(matrix: np.ndarray) -> np.ndarray:
    upper = np.triu(matrix, 1)
    return np.diag(np.diag(matrix)) + upper + upper.T


def build_sector_hamiltonian(spec: ChainSpec, basis: SectorBasis) -> SectorHamiltonian:
    """Dense block of the open-chain interaction on one sector.

    :raises SpecMismatchError: If the basis was built for another chain.
    """
    if (
        basis.chain_length != spec.chain_length
        or basis.local_dimension != spec.local_dimension
    ):
        raise SpecMismatchError(
            f"Basis (N={basis.chain_length}, d={basis.local_dimension}) does not match "
            f"chain (N={spec.chain_length}, d={spec.local_dimension})"
        )
    if basis.dimension < 1:
        raise SpecMismatchError("Cannot build a Hamiltonian on an empty sector")

    transitions = _bond_transitions(spec.interaction.local_operator())
    levels = basis.levels
    matrix = np.zeros((basis.dimension, basis.dimension))
    for bond in range(spec.chain_length - 1):
        left, right = levels[:, bond], levels[:, bond + 1]
        for a, b, a_new, b_new, amplitude in transitions:
            rows = np.flatnonzero((left == a) & (right == b))
            if rows.size == 0:
                continue
            targets = levels[rows].astype(np.int64)
            targets[:, bond] = a_new
            targets[:, bond + 1] = b_new
            # rank_levels refuses anything outside the sector
            columns = rank_levels(basis, targets)
            matrix[columns, rows] += amplitude

    matrix *= spec.coupling
    return SectorHamiltonian(basis=basis, matrix=_symmetrized(matrix))


def sample_goe(dimension: int, rng: np.random.Generator) -> np.ndarray:
    """Gaussian orthogonal ensemble sample.

    Off-diagonal entries have variance 1, diagonal entries variance 2.
    """
    if dimension < 2:
        raise TyplabValidationError(f"GOE dimension must be at least 2, got {dimension}")
    gaussian = rng.standard_normal((dimension, dimension))
    return (gaussian + gaussian.T) / np.sqrt(2.0)


def sample_spin_one_interaction(rng: np.random.Generator) -> SpinOneMatrix:
    a12, a13, a23 = rng.standard_normal(3)
    return SpinOneMatrix(a12=float(a12), a13=float(a13), a23=float(a23))


def build_full_hamiltonian_oracle(spec: ChainSpec) -> np.ndarray:
    """The interaction on the whole product space, built from Kronecker products.

    Only meant for verifying sector blocks on small chains.
    """
    local_dimension = spec.local_dimension
    full_dimension = local_dimension**spec.chain_length
    if full_dimension > MAX_ORACLE_DIMENSION:
        raise SectorCapacityError(
            f"Full space of dimension {full_dimension} exceeds {MAX_ORACLE_DIMENSION}"
        )
    operator = spec.interaction.local_operator()
    bond_operator = np.kron(operator, operator)
    full = np.zeros((full_dimension, full_dimension))
    for bond in range(spec.chain_length - 1):
        left = np.eye(local_dimension**bond)
        right = np.eye(local_dimension ** (spec.chain_length - bond - 2))
        full += np.kron(np.kron(left, bond_operator), right)
    return spec.coupling * full


def project_onto_sector(full: np.ndarray, basis: SectorBasis) -> np.ndarray:
    """Sector rows and columns of a full-space operator."""
    return full[np.ix_(basis.states, basis.states)]
