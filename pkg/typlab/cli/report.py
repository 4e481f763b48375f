import os
from pathlib import Path
from typing import Annotated

import typer
from rich import box
from rich.table import Table

from typlab.analyzer import ResultAnalyzer
from typlab.constants import CSV_FLOAT_FORMAT, REPORT_FILE_NAME
from typlab.settings import typlab_print


app = typer.Typer()


@app.command()
def report(
    input_path: Annotated[
        Path,
        typer.Option(
            "--in",
            "-i",
            help="Sweep output directory (or its results.jsonl)",
            exists=True,
        ),
    ],
    out: Annotated[
        Path | None,
        typer.Option(
            "--out",
            "-o",
            help=f"CSV destination [default: {REPORT_FILE_NAME} next to the results]",
            dir_okay=False,
            show_default=False,
        ),
    ] = None,
):
    """Per-dimension summary of delta and f_deg as CSV."""
    analyzer = ResultAnalyzer(str(input_path))
    summary = analyzer.fetch_report_df()
    destination = out or Path(os.path.join(analyzer.directory, REPORT_FILE_NAME))
    summary.to_csv(destination, index=False, float_format=CSV_FLOAT_FORMAT, na_rep="")

    table = Table(*[column.upper() for column in summary.columns], box=box.MINIMAL_HEAVY_HEAD)
    for row in summary.itertuples(index=False):
        table.add_row(*("" if value != value else str(value) for value in row))
    typlab_print(table)

    failed = analyzer.fetch_failed()
    if failed:
        typlab_print(f"[red]{len(failed)} failed grid points not included[/red]")
    typlab_print(f"Wrote [green]{destination}[/green]")
