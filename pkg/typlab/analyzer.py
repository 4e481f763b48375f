import numpy as np
import pandas as pd

from typlab.constants import REPORT_COLUMNS, EmptyResultsError
from typlab.models import ResultRecord
from typlab.results import ResultStore


def records_frame(records: list[ResultRecord]) -> pd.DataFrame:
    """One row per successful record."""
    rows = [
        {
            "family": record.family.value,
            "sector_family": record.sector_family or "",
            "sample": record.sample,
            "N": record.chain_length,
            "charge": record.charge,
            "D": record.dimension,
            "delta_rms": record.delta_rms,
            "f_deg": record.f_deg,
        }
        for record in records
        if not record.failed
    ]
    return pd.DataFrame(
        rows,
        columns=["family", "sector_family", "sample", "N", "charge", "D", "delta_rms", "f_deg"],
    ).astype({"f_deg": "float64", "delta_rms": "float64"})


def aggregate(records: list[ResultRecord]) -> pd.DataFrame:
    """Per-sector mean, standard deviation and standard error of delta, and mean f_deg.

    Failed records are left out. A single sample has an undefined standard
    deviation (NaN, written as an empty CSV field).

    :raises EmptyResultsError: If there is no successful record.
    """
    frame = records_frame(records)
    if frame.empty:
        raise EmptyResultsError("No successful records to aggregate")

    grouped = frame.groupby(["family", "sector_family", "N", "charge", "D"], sort=True)
    summary = grouped.agg(
        delta_mean=("delta_rms", "mean"),
        delta_std=("delta_rms", "std"),
        fdeg_mean=("f_deg", "mean"),
        samples=("delta_rms", "count"),
    ).reset_index()
    summary["delta_stderr"] = summary["delta_std"] / np.sqrt(summary["samples"])
    return summary.sort_values(["family", "sector_family", "D"]).reset_index(drop=True)[
        REPORT_COLUMNS
    ]


def count_decreasing_samples(records: list[ResultRecord]) -> tuple[int, int]:
    """How many samples end (largest N) below where they start (smallest N).

    :return: (decreasing samples, samples with at least two chain lengths)
    """
    frame = records_frame(records)
    decreasing = 0
    compared = 0
    for _, sample_frame in frame.groupby(["family", "sector_family", "sample"]):
        ordered = sample_frame.sort_values("N")
        if len(ordered) < 2:
            continue
        compared += 1
        if ordered["delta_rms"].iloc[-1] < ordered["delta_rms"].iloc[0]:
            decreasing += 1
    return decreasing, compared


class ResultAnalyzer(ResultStore):
    """Data analysis operations over a stored results file."""

    def fetch_records_df(self) -> pd.DataFrame:
        return records_frame(self.select_records(include_failed=False))

    def fetch_report_df(self) -> pd.DataFrame:
        return aggregate(self.select_records(include_failed=False))

    def fetch_failed(self) -> list[ResultRecord]:
        return [record for record in self.select_records() if record.failed]
