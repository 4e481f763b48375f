import math
import os
from pathlib import Path
from typing import Annotated

import typer
from rich import box
from rich.progress import Progress
from rich.table import Table

from typlab import settings
from typlab.analyzer import count_decreasing_samples
from typlab.constants import (
    CSV_FLOAT_FORMAT,
    DEFAULT_FIXED_M,
    DEFAULT_GOE_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_SPIN_ONE_SAMPLES,
    DEFAULT_THETA,
    REPORT_FILE_NAME,
    RESULTS_FILE_NAME,
    ExperimentFamily,
    SectorFamily,
)
from typlab.experiments import ExperimentRunner, SweepResult, spin_half_grid, spin_one_grid
from typlab.models import ExperimentPlan
from typlab.parser import parse_sector_labels
from typlab.results import ResultStore
from typlab.settings import typlab_print
from typlab.time import display_duration, now_sec


app = typer.Typer(
    help="Run an experiment family and write results.jsonl and report.csv.",
    no_args_is_help=True,
)

# (n_min, n_max) used when the range is not given
SPIN_HALF_DEFAULT_RANGES = {
    SectorFamily.HALF: (5, 13),
    SectorFamily.HALF_MINUS_1: (5, 13),
    SectorFamily.HALF_MINUS_2: (7, 13),
    SectorFamily.FIXED_M: (13, 15),
    SectorFamily.HALF_FILLING: (4, 12),
}

OutOption = Annotated[
    Path,
    typer.Option("--out", "-o", help="Output directory", file_okay=False),
]
SeedOption = Annotated[
    int, typer.Option("--seed", help="Master seed (unsigned 64-bit)", min=0)
]
WorkersOption = Annotated[
    int | None,
    typer.Option(
        "--workers",
        "-w",
        help="Worker processes [default: TYPLAB_WORKERS or 1]",
        min=1,
        show_default=False,
    ),
]
SpectraOption = Annotated[
    bool,
    typer.Option(
        "--spectra/--no-spectra",
        help="Also write one spectrum and one gaps CSV per sector",
    ),
]


def run_plan(plan: ExperimentPlan, workers: int | None) -> SweepResult:
    """Run a plan with a progress bar and store its records and report."""
    store = ResultStore(os.path.join(plan.output_dir or ".", RESULTS_FILE_NAME))
    store.init_store(plan)

    total = len(plan.grid) * plan.samples
    with Progress(transient=True, disable=bool(settings.print_config["silent"])) as progress:
        task = progress.add_task(f"{plan.family.value}", total=total)
        runner = ExperimentRunner(
            workers=workers, on_record=lambda record: progress.advance(task)
        )
        result = runner.run(plan)

    store.insert_records(result.records)
    if not result.curve.empty:
        result.curve.to_csv(
            os.path.join(store.directory, REPORT_FILE_NAME),
            index=False,
            float_format=CSV_FLOAT_FORMAT,
            na_rep="",
        )
    display_sweep(result, store.path)
    return result


def _format(value) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


def display_sweep(result: SweepResult, results_path: str) -> None:
    table = Table(
        "N",
        "CHARGE",
        "D",
        "DELTA",
        "STDERR",
        "F_DEG",
        "SAMPLES",
        box=box.MINIMAL_HEAVY_HEAD,
    )
    for _, row in result.curve.iterrows():
        table.add_row(
            *map(
                _format,
                (
                    row["N"],
                    row["charge"],
                    row["D"],
                    row["delta_mean"],
                    row["delta_stderr"],
                    row["fdeg_mean"],
                    row["samples"],
                ),
            )
        )
    typlab_print(table)
    for record in result.failures:
        typlab_print(
            f"[red]Failed[/red] N={record.chain_length} charge={record.charge} "
            f"sample={record.sample}: {record.error}"
        )
    for note in result.notes:
        typlab_print(f"[yellow]Note:[/yellow] {note}")
    runtime = sum(record.runtime_seconds for record in result.records)
    typlab_print(
        f"Wrote {len(result.records)} records to [green]{results_path}[/green] "
        f"(compute time {display_duration(runtime)})"
    )


@app.command("spin-half")
def spin_half(
    family: Annotated[
        SectorFamily,
        typer.Option("--family", "-f", help="Sector followed as N grows"),
    ] = SectorFamily.HALF,
    n_min: Annotated[
        int | None, typer.Option("--n-min", help="Smallest chain length", min=2)
    ] = None,
    n_max: Annotated[
        int | None, typer.Option("--n-max", help="Largest chain length", min=2)
    ] = None,
    theta: Annotated[
        float, typer.Option("--theta", help="Interaction angle in radians")
    ] = DEFAULT_THETA,
    fixed_m: Annotated[
        int, typer.Option("--fixed-m", help="Up spins for --family fixed-m", min=1)
    ] = DEFAULT_FIXED_M,
    out: OutOption = Path("results/spin-half"),
    workers: WorkersOption = None,
    spectra: SpectraOption = False,
):
    """Sweep a spin-1/2 sector family over chain lengths (deterministic)."""
    default_min, default_max = SPIN_HALF_DEFAULT_RANGES[family]
    grid = spin_half_grid(
        family,
        n_min if n_min is not None else default_min,
        n_max if n_max is not None else default_max,
        fixed_m=fixed_m,
    )
    plan = ExperimentPlan(
        family=(
            ExperimentFamily.SPIN_HALF_FIXED_M
            if family == SectorFamily.FIXED_M
            else ExperimentFamily.SPIN_HALF_SECTOR_SWEEP
        ),
        grid=grid,
        theta=theta,
        sector_family=family,
        output_dir=str(out),
        write_spectra=spectra,
        created_at=now_sec(),
    )
    run_plan(plan, workers)


@app.command("spin-one")
def spin_one(
    n_min: Annotated[int, typer.Option("--n-min", help="Smallest chain length", min=2)] = 6,
    n_max: Annotated[int, typer.Option("--n-max", help="Largest chain length", min=2)] = 9,
    samples: Annotated[
        int, typer.Option("--samples", help="Random interactions A", min=1)
    ] = DEFAULT_SPIN_ONE_SAMPLES,
    charge: Annotated[
        int, typer.Option("--charge", help="Total magnetization of the sector")
    ] = 0,
    seed: SeedOption = DEFAULT_SEED,
    out: OutOption = Path("results/spin-one"),
    workers: WorkersOption = None,
    spectra: SpectraOption = False,
):
    """Follow random zero-diagonal spin-1 interactions over chain lengths."""
    plan = ExperimentPlan(
        family=ExperimentFamily.SPIN_ONE_RANDOM_INTERACTIONS,
        grid=spin_one_grid(n_min, n_max, charge=charge),
        samples=samples,
        seed=seed,
        output_dir=str(out),
        write_spectra=spectra,
        created_at=now_sec(),
    )
    result = run_plan(plan, workers)
    decreasing, compared = count_decreasing_samples(result.records)
    if compared:
        typlab_print(
            f"{decreasing} of {compared} interactions have a smaller delta at "
            f"N={max(point.chain_length for point in plan.grid)} than at "
            f"N={min(point.chain_length for point in plan.grid)}"
        )


@app.command("goe")
def goe(
    labels: Annotated[
        str,
        typer.Option(
            "--labels",
            "-l",
            help="Sector labels N:M fixing D = C(N, M), e.g. '8:4,10:5,12:6,14:7'",
        ),
    ] = "8:4,10:5,12:6,14:7",
    samples: Annotated[
        int, typer.Option("--samples", help="GOE samples per dimension", min=1)
    ] = DEFAULT_GOE_SAMPLES,
    seed: SeedOption = DEFAULT_SEED,
    out: OutOption = Path("results/goe"),
    workers: WorkersOption = None,
    spectra: SpectraOption = False,
):
    """Random-matrix baseline measured with spin-1/2 sector labels."""
    plan = ExperimentPlan(
        family=ExperimentFamily.GOE_BASELINE,
        grid=parse_sector_labels(labels),
        samples=samples,
        seed=seed,
        output_dir=str(out),
        write_spectra=spectra,
        created_at=now_sec(),
    )
    run_plan(plan, workers)
