import zlib
from collections import deque
from collections.abc import Callable
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field, replace

import numpy as np
import pandas as pd

from typlab import settings
from typlab.analyzer import aggregate
from typlab.basis import enumerate_sector, sector_dimension
from typlab.constants import (
    DEFAULT_FIXED_M,
    REPORT_COLUMNS,
    SPIN_HALF,
    SPIN_HALF_FAMILIES,
    SPIN_ONE,
    ExperimentFamily,
    SectorFamily,
    TyplabError,
    TyplabValidationError,
)
from typlab.hamiltonian import (
    ChainSpec,
    InteractionSpec,
    SpinHalfAngle,
    build_sector_hamiltonian,
    sample_goe,
    sample_spin_one_interaction,
)
from typlab.models import ExperimentPlan, GridPoint, ResultRecord
from typlab.spectra import (
    dense_memory_bytes,
    eig_symmetric,
    spectrum_file_stem,
    write_gaps_csv,
    write_spectrum_csv,
)
from typlab.time import Stopwatch
from typlab.typicality import TypicalityReport, atypicality

FIXED_M_NOTE = (
    "Published fixed-M values are printed as (399, 415, 448, ...)x10^-2, which exceeds "
    "the bound delta <= 1. Computed values match them at x10^-4 (delta ~ 0.04 for M=6, "
    "N=13..15), not the delta ~ 0.4 a x10^-3 reading would give."
)


def spin_half_charge(
    sector_family: SectorFamily, chain_length: int, fixed_m: int = DEFAULT_FIXED_M
) -> int:
    """Number of up spins followed by a spin-1/2 sector family at length N."""
    if sector_family == SectorFamily.HALF or sector_family == SectorFamily.HALF_FILLING:
        return chain_length // 2
    if sector_family == SectorFamily.HALF_MINUS_1:
        return chain_length // 2 - 1
    if sector_family == SectorFamily.HALF_MINUS_2:
        return chain_length // 2 - 2
    return fixed_m


def spin_half_grid(
    sector_family: SectorFamily,
    n_min: int,
    n_max: int,
    fixed_m: int = DEFAULT_FIXED_M,
) -> list[GridPoint]:
    """Sectors of a spin-1/2 family for n_min <= N <= n_max.

    The trunc(N/2) families use odd N only (half filling at even N is exactly
    typical), the half-filling diagnostic uses even N, fixed-M uses every N.
    Sectors with fewer than two states are skipped.
    """
    grid = []
    for chain_length in range(max(n_min, 2), n_max + 1):
        if sector_family == SectorFamily.HALF_FILLING and chain_length % 2:
            continue
        if (
            sector_family
            in (SectorFamily.HALF, SectorFamily.HALF_MINUS_1, SectorFamily.HALF_MINUS_2)
            and chain_length % 2 == 0
        ):
            continue
        charge = spin_half_charge(sector_family, chain_length, fixed_m)
        if 1 <= charge < chain_length:
            grid.append(GridPoint(chain_length=chain_length, charge=charge))
    return grid


def spin_one_grid(n_min: int, n_max: int, charge: int = 0) -> list[GridPoint]:
    return [
        GridPoint(chain_length=chain_length, charge=charge)
        for chain_length in range(max(n_min, 2), n_max + 1)
        if abs(charge) <= chain_length
    ]


def derive_seed(
    master_seed: int,
    family: ExperimentFamily,
    sample_index: int,
    chain_length: int,
    charge: int | None = None,
) -> int:
    """Independent 64-bit seed per (family, sample, N[, charge]), stable across runs.

    GOE samples also key on the charge, so labels sharing N (8:3 and 8:5 even share
    D) draw distinct matrices.
    """
    family_key = zlib.crc32(family.value.encode())
    entropy = [master_seed, family_key, sample_index, chain_length]
    if charge is not None:
        entropy.append(charge)
    sequence = np.random.SeedSequence(entropy)
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class PointJob:
    """One (grid point, sample) evaluation, self-contained so it can cross processes."""

    family: ExperimentFamily
    chain_length: int
    charge: int
    local_dimension: int
    sample_index: int = 0
    sector_family: str | None = None
    seed: int | None = None
    interaction: InteractionSpec | None = None
    spectra_dir: str | None = None
    memory_budget_mb: float | None = None


@dataclass
class SweepResult:
    records: list[ResultRecord]
    curve: pd.DataFrame
    notes: list[str] = field(default_factory=list)

    @property
    def failures(self) -> list[ResultRecord]:
        return [record for record in self.records if record.failed]


def _typicality_of(job: PointJob) -> TypicalityReport:
    with Stopwatch() as stopwatch:
        basis = enumerate_sector(job.chain_length, job.local_dimension, job.charge)
        spec_hash = None
        if job.family == ExperimentFamily.GOE_BASELINE:
            matrix = sample_goe(basis.dimension, np.random.default_rng(job.seed))
        else:
            if job.interaction is None:
                raise TyplabValidationError(f"{job.family.value} needs an interaction")
            spec = ChainSpec(chain_length=job.chain_length, interaction=job.interaction)
            matrix = build_sector_hamiltonian(spec, basis).matrix
            spec_hash = spec.spec_hash()

        decomposition = eig_symmetric(matrix, memory_budget_mb=job.memory_budget_mb)
        if job.spectra_dir and decomposition.dimension >= 2:
            sample = None if job.family in SPIN_HALF_FAMILIES else job.sample_index
            stem = spectrum_file_stem(
                job.sector_family or job.family.value, job.chain_length, job.charge, sample
            )
            write_spectrum_csv(decomposition, job.spectra_dir, stem)
            write_gaps_csv(decomposition, job.spectra_dir, stem)

        report = atypicality(
            decomposition, basis, keep_deviations=True, seed=job.seed, spec_hash=spec_hash
        )
    return replace(report, wall_time=stopwatch.elapsed)


def evaluate_point(job: PointJob) -> ResultRecord:
    """Evaluate one job; library errors become a failed record instead of propagating."""
    record = ResultRecord(
        family=job.family,
        chain_length=job.chain_length,
        local_dim=job.local_dimension,
        charge=job.charge,
        dimension=None,
        sample=job.sample_index,
        sector_family=job.sector_family,
        interaction=job.interaction.to_dict() if job.interaction else {},
        seed=job.seed,
    )
    report = None
    with Stopwatch() as stopwatch:
        try:
            report = _typicality_of(job)
        except TyplabError as error:
            record.error = str(error)
    record.runtime_seconds = stopwatch.elapsed

    if report is not None:
        record.dimension = report.dimension
        record.spec_hash = report.spec_hash
        record.delta_rms = report.delta_rms
        record.f_deg = report.degeneracy_fraction
        record.mean_gap = report.mean_gap
        record.sum_rule_residual = report.sum_rule_residual()
    return record


class ExperimentRunner:
    """Runs experiment plans, fanning (grid point, sample) jobs out to a process pool.

    Jobs are admitted while their estimated dense-matrix memory fits the budget,
    so at most one decomposition of maximal size is in flight. Records always
    come back ordered by grid coordinates, never by completion time.
    """

    def __init__(
        self,
        workers: int | None = None,
        memory_budget_mb: float | None = None,
        on_record: Callable[[ResultRecord], None] | None = None,
    ):
        self.workers = workers or settings.WORKERS
        self.memory_budget_mb = memory_budget_mb
        self.on_record = on_record

    def run(self, plan: ExperimentPlan) -> SweepResult:
        if plan.is_spin_half:
            return self.run_spin_half_sweep(plan)
        if plan.family == ExperimentFamily.GOE_BASELINE:
            return self.run_goe_baseline(plan)
        return self.run_spin_one_ensemble(plan)

    def run_spin_half_sweep(self, plan: ExperimentPlan) -> SweepResult:
        """One deterministic record per sector of a spin-1/2 family."""
        if not plan.is_spin_half:
            raise TyplabValidationError(f"Not a spin-1/2 plan: {plan.family.value}")
        interaction = SpinHalfAngle(theta=plan.theta)
        jobs = [
            self._job(plan, point, SPIN_HALF, interaction=interaction)
            for point in sorted(plan.grid)
        ]
        notes = list(plan.notes)
        if plan.sector_family == SectorFamily.FIXED_M:
            notes.append(FIXED_M_NOTE)
        return self._sweep(jobs, notes)

    def run_goe_baseline(self, plan: ExperimentPlan) -> SweepResult:
        """GOE samples of dimension C(N, M), measured against the (N, M) qubit sector."""
        if plan.family != ExperimentFamily.GOE_BASELINE:
            raise TyplabValidationError(f"Not a GOE plan: {plan.family.value}")
        jobs = [
            self._job(
                plan,
                point,
                SPIN_HALF,
                sample_index=sample_index,
                seed=derive_seed(
                    plan.seed, plan.family, sample_index, point.chain_length, point.charge
                ),
            )
            for point in sorted(plan.grid)
            for sample_index in range(plan.samples)
        ]
        return self._sweep(jobs, list(plan.notes))

    def run_spin_one_ensemble(self, plan: ExperimentPlan) -> SweepResult:
        """Random zero-diagonal interactions, each one followed over every chain length."""
        if plan.family != ExperimentFamily.SPIN_ONE_RANDOM_INTERACTIONS:
            raise TyplabValidationError(f"Not a spin-1 plan: {plan.family.value}")
        # the interaction of a sample must not depend on N, hence chain_length=0
        seeds = [
            derive_seed(plan.seed, plan.family, sample_index, 0)
            for sample_index in range(plan.samples)
        ]
        interactions = [
            sample_spin_one_interaction(np.random.default_rng(seed)) for seed in seeds
        ]
        jobs = [
            self._job(
                plan,
                point,
                SPIN_ONE,
                sample_index=sample_index,
                seed=seeds[sample_index],
                interaction=interactions[sample_index],
            )
            for point in sorted(plan.grid)
            for sample_index in range(plan.samples)
        ]
        return self._sweep(jobs, list(plan.notes))

    def _job(
        self,
        plan: ExperimentPlan,
        point: GridPoint,
        local_dimension: int,
        sample_index: int = 0,
        seed: int | None = None,
        interaction: InteractionSpec | None = None,
    ) -> PointJob:
        return PointJob(
            family=plan.family,
            chain_length=point.chain_length,
            charge=point.charge,
            local_dimension=local_dimension,
            sample_index=sample_index,
            sector_family=plan.sector_family.value if plan.sector_family else None,
            seed=seed,
            interaction=interaction,
            spectra_dir=plan.output_dir if plan.write_spectra else None,
            memory_budget_mb=self.memory_budget_mb,
        )

    def _sweep(self, jobs: list[PointJob], notes: list[str]) -> SweepResult:
        records = sorted(self.execute(jobs))
        if any(not record.failed for record in records):
            curve = aggregate(records)
        else:
            curve = pd.DataFrame(columns=REPORT_COLUMNS)
        return SweepResult(records=records, curve=curve, notes=notes)

    def _job_cost(self, job: PointJob) -> int:
        try:
            dimension = sector_dimension(job.chain_length, job.local_dimension, job.charge)
        except TyplabError:
            return 0
        return dense_memory_bytes(dimension)

    def _announce(self, record: ResultRecord) -> None:
        settings.debug_print(
            f"N={record.chain_length} charge={record.charge} sample={record.sample} "
            f"D={record.dimension} delta={record.delta_rms} "
            f"({record.runtime_seconds:.2f}s){' ' + record.error if record.error else ''}"
        )
        if self.on_record is not None:
            self.on_record(record)

    def execute(self, jobs: list[PointJob]) -> list[ResultRecord]:
        """Evaluate jobs, returning records in job order."""
        if self.workers <= 1:
            records = []
            for job in jobs:
                record = evaluate_point(job)
                self._announce(record)
                records.append(record)
            return records

        budget = settings.memory_budget_bytes(self.memory_budget_mb)
        costs = [self._job_cost(job) for job in jobs]
        results: list[ResultRecord | None] = [None] * len(jobs)
        pending = deque(range(len(jobs)))
        in_flight = {}
        used = 0
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            while pending or in_flight:
                # an over-budget job still runs alone, where it fails with a recorded error
                while pending and (not in_flight or used + costs[pending[0]] <= budget):
                    index = pending.popleft()
                    in_flight[pool.submit(evaluate_point, jobs[index])] = index
                    used += costs[index]
                done, _ = wait(in_flight, return_when=FIRST_COMPLETED)
                for future in done:
                    index = in_flight.pop(future)
                    used -= costs[index]
                    results[index] = future.result()
                    self._announce(results[index])
        return [record for record in results if record is not None]
