"""Dense symmetric eigendecomposition, adjacent-gap statistics and the degeneracy fraction."""

import os
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import linalg

from typlab import settings
from typlab.constants import (
    CSV_FLOAT_FORMAT,
    DEGENERACY_THRESHOLD_RATIO,
    SYMMETRY_TOLERANCE,
    MatrixValidationError,
    MemoryBudgetError,
    TyplabValidationError,
)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Ascending eigenvalues; column k of `eigenvectors` belongs to eigenvalue k."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dimension(self) -> int:
        return int(self.eigenvalues.shape[0])

    def residual_norms(self, matrix: np.ndarray) -> np.ndarray:
        """||H v_k - lambda_k v_k||_2 for every k."""
        residual = matrix @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return np.linalg.norm(residual, axis=0)

    def orthogonality_error(self) -> float:
        """max |<v_j, v_k> - delta_jk|."""
        gram = self.eigenvectors.T @ self.eigenvectors
        return float(np.abs(gram - np.eye(self.dimension)).max())

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.T


@dataclass(frozen=True, eq=False)
class GapStatistics:
    gaps: np.ndarray
    mean_gap: float
    threshold: float
    degenerate_gaps: int
    degeneracy_fraction: float


def dense_memory_bytes(dimension: int) -> int:
    """Rough peak memory of one dense decomposition: input copy, eigenvectors, workspace."""
    return 3 * 8 * dimension * dimension


def eig_symmetric(
    matrix: np.ndarray, memory_budget_mb: float | None = None
) -> EigenDecomposition:
    """Full spectrum and orthonormal eigenbasis of a dense real symmetric matrix.

    :raises MatrixValidationError: If the matrix is not square, finite and symmetric.
    :raises MemoryBudgetError: If the decomposition would not fit the memory budget.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
        raise MatrixValidationError(f"Expected a non-empty square matrix, got {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise MatrixValidationError("Matrix has non-finite entries")
    scale = np.abs(matrix).max()
    if np.abs(matrix - matrix.T).max() > SYMMETRY_TOLERANCE * scale:
        raise MatrixValidationError("Matrix is not symmetric")

    dimension = matrix.shape[0]
    budget = settings.memory_budget_bytes(memory_budget_mb)
    if dense_memory_bytes(dimension) > budget:
        raise MemoryBudgetError(
            f"Decomposing D={dimension} needs ~{dense_memory_bytes(dimension) / 2**20:.0f} MB, "
            f"budget is {budget / 2**20:.0f} MB"
        )

    eigenvalues, eigenvectors = linalg.eigh(matrix, check_finite=False)
    return EigenDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def degeneracy_fraction(eigenvalues: np.ndarray) -> GapStatistics:
    """Largest number of gaps whose combined sum stays below a tenth of the mean gap, over D.

    The smallest gaps are taken first, which maximizes the count. A fully
    degenerate spectrum (zero mean gap) has a degeneracy fraction of 1.
    """
    eigenvalues = np.asarray(eigenvalues, dtype=np.float64)
    if eigenvalues.ndim != 1 or eigenvalues.shape[0] < 2:
        raise TyplabValidationError("Need at least 2 eigenvalues for gap statistics")
    gaps = np.diff(eigenvalues)
    if np.any(gaps < 0):
        raise TyplabValidationError("Eigenvalues must be non-decreasing")

    dimension = eigenvalues.shape[0]
    mean_gap = float(gaps.mean())
    threshold = mean_gap * DEGENERACY_THRESHOLD_RATIO
    if mean_gap == 0.0:
        return GapStatistics(
            gaps=gaps,
            mean_gap=mean_gap,
            threshold=threshold,
            degenerate_gaps=gaps.shape[0],
            degeneracy_fraction=1.0,
        )

    running_sums = np.cumsum(np.sort(gaps))
    degenerate_gaps = int(np.searchsorted(running_sums, threshold, side="left"))
    return GapStatistics(
        gaps=gaps,
        mean_gap=mean_gap,
        threshold=threshold,
        degenerate_gaps=degenerate_gaps,
        degeneracy_fraction=degenerate_gaps / dimension,
    )


def export_gaps(decomposition: EigenDecomposition) -> np.ndarray:
    """Unnormalized adjacent gaps in spectral order."""
    return np.diff(decomposition.eigenvalues)


def spectrum_file_stem(
    family: str, chain_length: int, charge: int, sample_index: int | None = None
) -> str:
    stem = f"{family}_{chain_length}_{charge}"
    if sample_index is not None:
        stem += f"_s{sample_index}"
    return stem


def write_spectrum_csv(
    decomposition: EigenDecomposition, directory: str, stem: str
) -> str:
    path = os.path.join(directory, stem + ".spectrum.csv")
    frame = pd.DataFrame(
        {
            "index": np.arange(decomposition.dimension),
            "eigenvalue": decomposition.eigenvalues,
        }
    )
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    return path


def write_gaps_csv(decomposition: EigenDecomposition, directory: str, stem: str) -> str:
    gaps = export_gaps(decomposition)
    path = os.path.join(directory, stem + ".gaps.csv")
    frame = pd.DataFrame({"index": np.arange(1, gaps.shape[0] + 1), "gap": gaps})
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    return path
