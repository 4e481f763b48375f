import math
from dataclasses import asdict, dataclass, field
from functools import total_ordering

from typlab.constants import ExperimentFamily, TyplabValidationError


@total_ordering
@dataclass
class ResultRecord:
    """One evaluated grid point (or a failed one, with `error` set).

    Serializes to one JSON object per line; float fields round-trip exactly.
    """

    family: ExperimentFamily
    chain_length: int
    local_dim: int
    charge: int
    dimension: int | None
    sample: int = 0
    sector_family: str | None = None
    interaction: dict = field(default_factory=dict)
    seed: int | None = None
    spec_hash: str | None = None
    delta_rms: float | None = None
    f_deg: float | None = None
    mean_gap: float | None = None
    sum_rule_residual: float | None = None
    runtime_seconds: float = 0.0
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    @classmethod
    def from_json_record(cls, record: dict) -> "ResultRecord":
        try:
            return cls(
                family=ExperimentFamily(record["family"]),
                chain_length=int(record["N"]),
                local_dim=int(record["local_dim"]),
                charge=int(record["charge"]),
                dimension=record.get("D"),
                sample=int(record.get("sample", 0)),
                sector_family=record.get("sector_family"),
                interaction=dict(record.get("interaction") or {}),
                seed=record.get("seed"),
                spec_hash=record.get("spec_hash"),
                delta_rms=record.get("delta_rms"),
                f_deg=record.get("f_deg"),
                mean_gap=record.get("mean_gap"),
                sum_rule_residual=record.get("sum_rule_residual"),
                runtime_seconds=float(record.get("runtime_seconds", 0.0)),
                error=record.get("error"),
            )
        except (KeyError, ValueError) as invalid:
            raise TyplabValidationError(f"Malformed result record: {invalid}") from None

    def to_json_record(self) -> dict:
        data = asdict(self)
        record = {
            "family": self.family.value,
            "sector_family": self.sector_family,
            "sample": self.sample,
            "N": self.chain_length,
            "local_dim": self.local_dim,
            "charge": self.charge,
            "D": self.dimension,
            "interaction": data["interaction"],
            "seed": self.seed,
            "spec_hash": self.spec_hash,
            "delta_rms": self.delta_rms,
            "f_deg": self.f_deg,
            "mean_gap": self.mean_gap,
            "sum_rule_residual": self.sum_rule_residual,
            "runtime_seconds": self.runtime_seconds,
            "error": self.error,
        }
        # JSON has no NaN/inf
        for key, value in record.items():
            if isinstance(value, float) and not math.isfinite(value):
                record[key] = None
        return record

    def _sort_key(self):
        return (
            self.family.value,
            self.sector_family or "",
            self.chain_length,
            self.charge,
            self.sample,
        )

    def __lt__(self, other: "ResultRecord"):
        return self._sort_key() < other._sort_key()
