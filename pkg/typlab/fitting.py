"""Power-law fits delta ~ D^(-alpha) by least squares on (ln D, ln delta)."""

from collections.abc import Iterable, Sequence

import numpy as np
import pandas as pd
from scipy import stats

from typlab.constants import FitError
from typlab.models import ScalingFit


def fit_power_law(
    points: Sequence[tuple[float, float]], exclude: Iterable[int] = ()
) -> ScalingFit:
    """Ordinary least squares of ln(delta) against ln(D); alpha is minus the slope.

    :param points: (D, delta) pairs.
    :param exclude: indices into `points` left out of the fit.

    :raises FitError: If an exclude index is out of range, an included point is
        non-positive, or fewer than 2 distinct dimensions remain.
    """
    excluded_indices = set(exclude)
    out_of_range = sorted(index for index in excluded_indices if not 0 <= index < len(points))
    if out_of_range:
        raise FitError(f"Exclude indices {out_of_range} outside 0..{len(points) - 1}")
    included = [point for index, point in enumerate(points) if index not in excluded_indices]
    excluded = [
        (float(points[index][0]), float(points[index][1]))
        for index in sorted(excluded_indices)
    ]
    if len(included) < 2:
        raise FitError(f"Need at least 2 points to fit, got {len(included)}")

    dimensions = np.array([point[0] for point in included], dtype=np.float64)
    deltas = np.array([point[1] for point in included], dtype=np.float64)
    if np.any(dimensions <= 0) or np.any(deltas <= 0):
        raise FitError("Power-law fits need positive dimensions and deltas")
    if np.unique(dimensions).size < 2:
        raise FitError(f"All included points share the dimension D={dimensions[0]:g}")

    regression = stats.linregress(np.log(dimensions), np.log(deltas))
    return ScalingFit(
        exponent=float(-regression.slope),
        exponent_stderr=float(regression.stderr),
        intercept=float(regression.intercept),
        points_used=len(included),
        excluded_points=excluded,
    )


def fit_curve(
    curve: pd.DataFrame, exclude_first: bool = False
) -> list[tuple[str, str, ScalingFit]]:
    """One fit per (family, sector_family) of an aggregated curve, ordered by D.

    Points with non-positive delta (e.g. one-dimensional sectors) cannot sit on a
    log-log line and are excluded along with, optionally, the left-most point.

    :return: (family, sector_family, fit) triples; groups with too few points are skipped.
    """
    fits = []
    for (family, sector_family), group in curve.groupby(["family", "sector_family"]):
        ordered = group.sort_values("D")
        points = list(zip(ordered["D"].astype(float), ordered["delta_mean"].astype(float)))
        exclude = [index for index, (_, delta) in enumerate(points) if not delta > 0]
        if exclude_first:
            positive = [index for index in range(len(points)) if index not in exclude]
            exclude.extend(positive[:1])
        dimensions = {point[0] for index, point in enumerate(points) if index not in exclude}
        if len(dimensions) < 2:
            continue
        fits.append((family, sector_family, fit_power_law(points, exclude=exclude)))
    return fits
