"""Fixed-charge sectors of non-interacting spin chains.

A configuration is a sequence of local level indices, one per site. Spin-1/2
levels are 0 (down) and 1 (up) and the charge is the number of up spins.
Spin-1 levels are 0, 1, 2 for m = -1, 0, +1 and the charge is the total
magnetization. Sectors are ordered lexicographically over level sequences.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from typlab.constants import (
    LOCAL_DIMENSIONS,
    MAX_SECTOR_DIMENSION,
    SPIN_HALF,
    EmptySectorError,
    InvalidSiteError,
    SectorCapacityError,
    SectorIndexError,
    SectorMembershipError,
    TyplabValidationError,
)

SiteLevel = int
Configuration = tuple[SiteLevel, ...]


@dataclass(frozen=True, eq=False)
class SectorBasis:
    """Lexicographically ordered configurations of one charge sector.

    `levels[i]` is the i-th configuration and `states[i]` the same configuration
    packed as a base-d word with site 0 as the most significant digit, which
    makes it the index of the configuration in the full product basis.
    """

    chain_length: int
    local_dimension: int
    charge: int
    levels: np.ndarray = field(repr=False)
    states: np.ndarray = field(repr=False)
    # completions[pos, s]: configurations of sites pos..N-1 with level sum s
    completions: np.ndarray = field(repr=False)

    @property
    def dimension(self) -> int:
        return int(self.levels.shape[0])

    @property
    def level_total(self) -> int:
        """Sum of level indices shared by every configuration of the sector."""
        return level_total(self.chain_length, self.local_dimension, self.charge)

    @property
    def configurations(self) -> list[Configuration]:
        return [tuple(int(level) for level in row) for row in self.levels]

    @property
    def magnetizations(self) -> np.ndarray:
        """Per-site magnetization values m of every configuration."""
        if self.local_dimension == SPIN_HALF:
            return 2 * self.levels.astype(np.int64) - 1
        return self.levels.astype(np.int64) - 1

    def __len__(self) -> int:
        return self.dimension


def level_total(chain_length: int, local_dimension: int, charge: int) -> int:
    if local_dimension == SPIN_HALF:
        return charge
    return charge + chain_length


def _validate_chain(chain_length: int, local_dimension: int) -> None:
    if chain_length < 1:
        raise TyplabValidationError(f"Chain length must be at least 1, got {chain_length}")
    if local_dimension not in LOCAL_DIMENSIONS:
        raise TyplabValidationError(
            f"Local dimension must be one of {LOCAL_DIMENSIONS}, got {local_dimension}"
        )


def _completion_counts(
    chain_length: int, local_dimension: int, total: int
) -> list[list[int]]:
    """counts[pos][s] = number of ways sites pos..N-1 hold levels summing to s.

    For qubits these are binomial coefficients, i.e. the combinatorial number
    system; for qutrits there is no closed form so the table is filled from the
    last site backwards.
    """
    if local_dimension == SPIN_HALF:
        return [
            [math.comb(chain_length - pos, s) for s in range(total + 1)]
            for pos in range(chain_length + 1)
        ]

    counts = [[0] * (total + 1) for _ in range(chain_length + 1)]
    counts[chain_length][0] = 1
    for pos in range(chain_length - 1, -1, -1):
        for s in range(total + 1):
            counts[pos][s] = sum(
                counts[pos + 1][s - level]
                for level in range(local_dimension)
                if s - level >= 0
            )
    return counts


def sector_dimension(chain_length: int, local_dimension: int, charge: int) -> int:
    """Exact dimension of a sector, without enumerating it."""
    _validate_chain(chain_length, local_dimension)
    total = level_total(chain_length, local_dimension, charge)
    if total < 0 or total > (local_dimension - 1) * chain_length:
        raise EmptySectorError(
            f"Charge {charge} is not achievable for N={chain_length}, d={local_dimension}"
        )
    return _completion_counts(chain_length, local_dimension, total)[0][total]


def enumerate_sector(
    chain_length: int, local_dimension: int, charge: int
) -> SectorBasis:
    """All configurations with the given charge, in strict lexicographic order.

    :raises EmptySectorError: If no configuration has the requested charge.
    :raises SectorCapacityError: If the sector is larger than `MAX_SECTOR_DIMENSION`.
    """
    dimension = sector_dimension(chain_length, local_dimension, charge)
    if dimension > MAX_SECTOR_DIMENSION:
        raise SectorCapacityError(
            f"Sector N={chain_length}, d={local_dimension}, charge={charge} has "
            f"dimension {dimension} > {MAX_SECTOR_DIMENSION}"
        )
    if local_dimension**chain_length > 2**62:
        raise SectorCapacityError(
            f"Configurations of N={chain_length}, d={local_dimension} do not fit a 64-bit word"
        )
    total = level_total(chain_length, local_dimension, charge)
    counts = _completion_counts(chain_length, local_dimension, total)

    # Grow prefixes site by site, children in level order, so the result stays
    # lexicographically sorted. Prefixes that can no longer reach the total are dropped.
    prefixes = np.zeros((1, 0), dtype=np.uint8)
    sums = np.zeros(1, dtype=np.int64)
    levels_range = np.arange(local_dimension, dtype=np.uint8)
    for pos in range(chain_length):
        rows = np.repeat(prefixes, local_dimension, axis=0)
        new_levels = np.tile(levels_range, len(prefixes))
        sums = np.repeat(sums, local_dimension) + new_levels
        remaining_sites = chain_length - pos - 1
        keep = (sums <= total) & (total - sums <= (local_dimension - 1) * remaining_sites)
        prefixes = np.column_stack([rows, new_levels])[keep]
        sums = sums[keep]

    if prefixes.shape[0] != dimension:
        raise AssertionError(
            f"Enumerated {prefixes.shape[0]} configurations, expected {dimension}"
        )

    weights = local_dimension ** np.arange(chain_length - 1, -1, -1, dtype=np.int64)
    states = prefixes.astype(np.int64) @ weights
    # entries reachable from a sector prefix never exceed the dimension
    completions = np.array(
        [[min(count, MAX_SECTOR_DIMENSION + 1) for count in row] for row in counts],
        dtype=np.int64,
    )
    for array in (prefixes, states, completions):
        array.flags.writeable = False

    return SectorBasis(
        chain_length=chain_length,
        local_dimension=local_dimension,
        charge=charge,
        levels=prefixes,
        states=states,
        completions=completions,
    )


def _check_membership(basis: SectorBasis, levels: np.ndarray) -> None:
    if levels.ndim != 2 or levels.shape[1] != basis.chain_length:
        raise SectorMembershipError(
            f"Configurations must have length {basis.chain_length}"
        )
    if levels.size and (levels.min() < 0 or levels.max() >= basis.local_dimension):
        raise SectorMembershipError(
            f"Levels must lie in [0, {basis.local_dimension})"
        )
    if np.any(levels.sum(axis=1) != basis.level_total):
        raise SectorMembershipError(
            f"Configuration does not belong to the sector with charge {basis.charge}"
        )


def rank_levels(basis: SectorBasis, levels: np.ndarray) -> np.ndarray:
    """Vectorized rank of many configurations (rows of `levels`)."""
    levels = np.asarray(levels, dtype=np.int64)
    _check_membership(basis, levels)

    completions = basis.completions
    remaining = np.full(levels.shape[0], basis.level_total, dtype=np.int64)
    ranks = np.zeros(levels.shape[0], dtype=np.int64)
    for pos in range(basis.chain_length):
        site_levels = levels[:, pos]
        # skip every configuration that puts a smaller level on this site
        for smaller in range(basis.local_dimension - 1):
            skipped = site_levels > smaller
            rest = remaining - smaller
            valid = skipped & (rest >= 0)
            ranks[valid] += completions[pos + 1, rest[valid]]
        remaining -= site_levels
    return ranks


def rank(basis: SectorBasis, config: Configuration) -> int:
    """Index of `config` in the lexicographic ordering of the sector.

    :raises SectorMembershipError: If `config` does not belong to the sector.
    """
    return int(rank_levels(basis, np.array([config], dtype=np.int64))[0])


def unrank(basis: SectorBasis, index: int) -> Configuration:
    """The `index`-th configuration of the sector in lexicographic order."""
    if not 0 <= index < basis.dimension:
        raise SectorIndexError(
            f"Index {index} out of range for sector of dimension {basis.dimension}"
        )
    completions = basis.completions
    remaining = basis.level_total
    config = []
    for pos in range(basis.chain_length):
        for level in range(basis.local_dimension):
            if remaining - level < 0:
                raise AssertionError("Ran out of charge while unranking")
            block = int(completions[pos + 1, remaining - level])
            if index < block:
                config.append(level)
                remaining -= level
                break
            index -= block
    return tuple(config)


def site_level_counts(basis: SectorBasis, site: int) -> np.ndarray:
    """counts[m]: number of sector configurations holding level m on `site`."""
    if not 0 <= site < basis.chain_length:
        raise InvalidSiteError(
            f"Site {site} out of range for chain of length {basis.chain_length}"
        )
    return np.bincount(basis.levels[:, site], minlength=basis.local_dimension).astype(
        np.int64
    )
