import json
from pathlib import Path
from typing import Annotated

import typer
from rich import box
from rich.table import Table

from typlab.analyzer import aggregate
from typlab.constants import ExperimentFamily, FitError, TyplabValidationError
from typlab.fitting import fit_curve
from typlab.results import ResultStore
from typlab.settings import typlab_print


app = typer.Typer()

# Families whose smallest-D point is dropped unless --include-first is given
EXCLUDE_FIRST_BY_DEFAULT = {ExperimentFamily.SPIN_ONE_RANDOM_INTERACTIONS.value}


def excludes_first(family: str, exclude_first: bool, include_first: bool) -> bool:
    if exclude_first and include_first:
        raise TyplabValidationError("--exclude-first and --include-first are exclusive")
    if exclude_first or include_first:
        return exclude_first
    return family in EXCLUDE_FIRST_BY_DEFAULT


@app.command()
def fit(
    input_path: Annotated[
        Path,
        typer.Option(
            "--in",
            "-i",
            help="results.jsonl, or the directory holding it",
            exists=True,
        ),
    ],
    exclude_first: Annotated[
        bool,
        typer.Option("--exclude-first", help="Leave the smallest-D point of every curve out"),
    ] = False,
    include_first: Annotated[
        bool,
        typer.Option(
            "--include-first",
            help="Keep the smallest-D point even for spin-one ensembles",
        ),
    ] = False,
    out: Annotated[
        Path | None,
        typer.Option("--out", "-o", help="Write the fits to this JSON file", dir_okay=False),
    ] = None,
):
    """Fit delta ~ D^(-alpha) to the mean delta of every family in a results file."""
    records = ResultStore(str(input_path)).select_records(include_failed=False)
    curve = aggregate(records)

    fits = []
    for family in sorted(curve["family"].unique()):
        family_curve = curve[curve["family"] == family]
        fits.extend(
            fit_curve(family_curve, excludes_first(family, exclude_first, include_first))
        )
    if not fits:
        raise FitError("Not enough positive points in any family to fit a power law")

    fit_records = [
        {"family": family, "sector_family": sector_family or None, **scaling_fit.to_dict()}
        for family, sector_family, scaling_fit in fits
    ]
    if out is not None:
        with open(out, "w", encoding="utf-8") as fit_file:
            json.dump(fit_records, fit_file, indent=2)

    table = Table(
        "FAMILY", "SECTOR", "ALPHA", "STDERR", "POINTS", "EXCLUDED", box=box.MINIMAL_HEAVY_HEAD
    )
    for family, sector_family, scaling_fit in fits:
        table.add_row(
            family,
            sector_family,
            f"{scaling_fit.exponent:.4f}",
            f"{scaling_fit.exponent_stderr:.4f}",
            str(scaling_fit.points_used),
            ", ".join(f"D={dimension:g}" for dimension, _ in scaling_fit.excluded_points),
        )
    typlab_print(table)
