import json
from pathlib import Path
from typing import Annotated

import numpy as np
import typer

from typlab.basis import enumerate_sector
from typlab.constants import DEFAULT_SEED, DEFAULT_THETA, SPIN_HALF, SPIN_ONE
from typlab.hamiltonian import (
    ChainSpec,
    SpinHalfAngle,
    build_sector_hamiltonian,
    sample_goe,
    sample_spin_one_interaction,
)
from typlab.settings import typlab_print


app = typer.Typer()


@app.command()
def dump(
    chain_length: Annotated[int, typer.Option("--n", help="Chain length", min=2)],
    charge: Annotated[int, typer.Option("--charge", help="Sector charge")],
    out: Annotated[
        Path,
        typer.Option("--out", "-o", help="Path prefix for <prefix>.f64 and <prefix>.json"),
    ],
    local_dim: Annotated[
        int, typer.Option("--local-dim", help="2 for spin-1/2, 3 for spin-1", min=2, max=3)
    ] = SPIN_HALF,
    theta: Annotated[float, typer.Option("--theta", help="Spin-1/2 angle")] = DEFAULT_THETA,
    seed: Annotated[
        int, typer.Option("--seed", help="Seed for the spin-1 interaction or GOE", min=0)
    ] = DEFAULT_SEED,
    goe: Annotated[
        bool, typer.Option("--goe", help="Dump a GOE sample of the sector's dimension")
    ] = False,
):
    """Write one sector matrix as row-major float64 plus a JSON header, for debugging."""
    basis = enumerate_sector(chain_length, local_dim, charge)
    rng = np.random.default_rng(seed)
    if goe:
        matrix = sample_goe(basis.dimension, rng)
        interaction = {"goe_seed": seed}
    else:
        spin_interaction = (
            SpinHalfAngle(theta=theta)
            if local_dim == SPIN_HALF
            else sample_spin_one_interaction(rng)
        )
        spec = ChainSpec(chain_length=chain_length, interaction=spin_interaction)
        matrix = build_sector_hamiltonian(spec, basis).matrix
        interaction = spin_interaction.to_dict()

    header = {
        "N": chain_length,
        "local_dim": local_dim,
        "charge": charge,
        "D": basis.dimension,
        "dtype": "<f8",
        "order": "row-major",
        "interaction": interaction,
    }
    out.parent.mkdir(parents=True, exist_ok=True)
    np.ascontiguousarray(matrix, dtype="<f8").tofile(f"{out}.f64")
    with open(f"{out}.json", "w", encoding="utf-8") as header_file:
        json.dump(header, header_file, indent=2)
    typlab_print(
        f"Dumped {basis.dimension}x{basis.dimension} "
        f"{'GOE' if goe else 'spin-1' if local_dim == SPIN_ONE else 'spin-1/2'} "
        f"matrix to [green]{out}.f64[/green]"
    )
