import math
from enum import Enum


class ExperimentFamily(Enum):
    SPIN_HALF_SECTOR_SWEEP = "spin_half_sector_sweep"
    SPIN_HALF_FIXED_M = "spin_half_fixed_M"
    SPIN_ONE_RANDOM_INTERACTIONS = "spin_one_random_interactions"
    GOE_BASELINE = "goe_baseline"


class SectorFamily(Enum):
    """Which spin-1/2 sector to follow as the chain grows."""

    HALF = "half"
    HALF_MINUS_1 = "half-1"
    HALF_MINUS_2 = "half-2"
    FIXED_M = "fixed-m"
    HALF_FILLING = "half-filling"


SPIN_HALF_FAMILIES = (
    ExperimentFamily.SPIN_HALF_SECTOR_SWEEP,
    ExperimentFamily.SPIN_HALF_FIXED_M,
)


SPIN_HALF = 2
SPIN_ONE = 3
LOCAL_DIMENSIONS = (SPIN_HALF, SPIN_ONE)

DEFAULT_THETA = 0.375 * math.pi
DEFAULT_FIXED_M = 6
DEFAULT_GOE_SAMPLES = 50
DEFAULT_SPIN_ONE_SAMPLES = 21
DEFAULT_SEED = 20120601

# Sectors larger than this are never enumerated.
MAX_SECTOR_DIMENSION = 2**31
# Full product spaces larger than this are never built by the oracle.
MAX_ORACLE_DIMENSION = 4096

# Relative tolerance for accepting a matrix as symmetric.
SYMMETRY_TOLERANCE = 1e-12
NORMALIZATION_TOLERANCE = 1e-8
# Threshold is this fraction of the mean adjacent gap.
DEGENERACY_THRESHOLD_RATIO = 0.1

RESULTS_FILE_NAME = "results.jsonl"
REPORT_FILE_NAME = "report.csv"
CSV_FLOAT_FORMAT = "%.17g"

REPORT_COLUMNS = [
    "family",
    "sector_family",
    "N",
    "charge",
    "D",
    "delta_mean",
    "delta_std",
    "delta_stderr",
    "fdeg_mean",
    "samples",
]


class TyplabError(Exception):
    exit_status = 1


class EmptySectorError(TyplabError):
    exit_status = 2


class SectorCapacityError(TyplabError):
    exit_status = 3


class SectorMembershipError(TyplabError):
    exit_status = 4


class SectorIndexError(TyplabError):
    exit_status = 5


class InvalidSiteError(TyplabError):
    exit_status = 6


class SpecMismatchError(TyplabError):
    exit_status = 7


class MatrixValidationError(TyplabError):
    exit_status = 8


class MemoryBudgetError(TyplabError):
    exit_status = 9


class FitError(TyplabError):
    exit_status = 10


class EmptyResultsError(TyplabError):
    exit_status = 11


class TyplabValidationError(TyplabError):
    exit_status = 12
