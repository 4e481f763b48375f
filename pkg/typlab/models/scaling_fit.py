import math
from dataclasses import dataclass, field


@dataclass
class ScalingFit:
    """delta ~ exp(intercept) * D^(-exponent), from ordinary least squares in log-log."""

    exponent: float
    exponent_stderr: float
    intercept: float
    points_used: int
    excluded_points: list[tuple[float, float]] = field(default_factory=list)

    @property
    def prefactor(self) -> float:
        return math.exp(self.intercept)

    def predict(self, dimension: float) -> float:
        return self.prefactor * dimension ** (-self.exponent)

    def to_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "exponent_stderr": self.exponent_stderr,
            "intercept": self.intercept,
            "points_used": self.points_used,
            "excluded_points": [list(point) for point in self.excluded_points],
        }
