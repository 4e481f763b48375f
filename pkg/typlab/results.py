import json
import os
from contextlib import contextmanager

from typlab.constants import RESULTS_FILE_NAME, EmptyResultsError, ExperimentFamily
from typlab.models import ExperimentPlan, ResultRecord


def resolve_results_path(path: str) -> str:
    """Accept either a results file or the directory holding `results.jsonl`."""
    if os.path.isdir(path):
        return os.path.join(path, RESULTS_FILE_NAME)
    return path


class ResultStore:
    """Results of a sweep kept as JSON lines, one `ResultRecord` per line, plus
    a `plan.json` sidecar describing the plan that produced them."""

    def __init__(self, path: str):
        self.path = resolve_results_path(path)

    @property
    def directory(self) -> str:
        return os.path.dirname(os.path.abspath(self.path))

    def init_store(self, plan: ExperimentPlan | None = None) -> None:
        """Create the output directory and start an empty results file."""
        os.makedirs(self.directory, exist_ok=True)
        with self.connect(mode="w"):
            pass
        if plan is not None:
            with open(
                os.path.join(self.directory, "plan.json"), "w", encoding="utf-8"
            ) as plan_file:
                json.dump(plan.to_dict(), plan_file, indent=2)

    @contextmanager
    def connect(self, mode: str = "a"):
        handle = open(self.path, mode, encoding="utf-8")
        try:
            yield handle
        finally:
            handle.close()

    def insert_records(self, records: list[ResultRecord]) -> None:
        with self.connect() as handle:
            for record in records:
                handle.write(json.dumps(record.to_json_record()) + "\n")

    def select_records(
        self,
        family: ExperimentFamily | None = None,
        include_failed: bool = True,
    ) -> list[ResultRecord]:
        """Read records back, optionally filtered by family and success.

        :raises EmptyResultsError: If the results file does not exist.
        """
        if not os.path.exists(self.path):
            raise EmptyResultsError(f"No results file at {self.path}")
        records = []
        with self.connect(mode="r") as handle:
            for line in handle:
                if not line.strip():
                    continue
                record = ResultRecord.from_json_record(json.loads(line))
                if family is not None and record.family != family:
                    continue
                if record.failed and not include_failed:
                    continue
                records.append(record)
        return sorted(records)
