from dataclasses import dataclass, field
from functools import total_ordering

from typlab.constants import (
    DEFAULT_SEED,
    DEFAULT_THETA,
    SPIN_HALF,
    SPIN_HALF_FAMILIES,
    SPIN_ONE,
    ExperimentFamily,
    SectorFamily,
    TyplabValidationError,
)


@total_ordering
@dataclass(frozen=True)
class GridPoint:
    """One sector of a sweep: chain length and conserved charge."""

    chain_length: int
    charge: int

    @property
    def label(self) -> str:
        return f"{self.chain_length}:{self.charge}"

    def __lt__(self, other: "GridPoint"):
        return (self.chain_length, self.charge) < (other.chain_length, other.charge)


@dataclass
class ExperimentPlan:
    """Everything needed to (re)run one experiment family deterministically."""

    family: ExperimentFamily
    grid: list[GridPoint]
    samples: int = 1
    seed: int = DEFAULT_SEED
    theta: float = DEFAULT_THETA
    sector_family: SectorFamily | None = None
    output_dir: str | None = None
    write_spectra: bool = False
    created_at: int | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.samples < 1:
            raise TyplabValidationError(f"Samples must be at least 1, got {self.samples}")
        if not self.grid:
            raise TyplabValidationError("Experiment plan has an empty grid")
        if self.is_spin_half and self.samples != 1:
            raise TyplabValidationError("Spin-1/2 sweeps are deterministic; use samples=1")

    @property
    def is_spin_half(self) -> bool:
        return self.family in SPIN_HALF_FAMILIES

    @property
    def local_dimension(self) -> int:
        if self.family == ExperimentFamily.SPIN_ONE_RANDOM_INTERACTIONS:
            return SPIN_ONE
        return SPIN_HALF

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "sector_family": self.sector_family.value if self.sector_family else None,
            "grid": [point.label for point in self.grid],
            "samples": self.samples,
            "seed": self.seed,
            "theta": self.theta,
            "created_at": self.created_at,
            "notes": list(self.notes),
        }
