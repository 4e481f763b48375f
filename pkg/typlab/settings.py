import os
from rich.console import Console


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "false").lower() in ("true", "1", "yes", "y")


TYPLAB_SILENT = _env_flag("TYPLAB_SILENT")
DEBUG = _env_flag("DEBUG")
# Cap on the dense-matrix memory admitted at once, in megabytes.
MEMORY_BUDGET_MB = float(os.environ.get("TYPICALITY_MEM_BUDGET_MB", "4096"))
WORKERS = int(os.environ.get("TYPLAB_WORKERS", "1"))

# Global configuration for printing, updatable by CLI options and initialized
# from environment variables or defaults above.
print_config = {"silent": TYPLAB_SILENT, "debug": DEBUG}


def typlab_print(*args, **kwargs):
    """Prints to console if not in silent mode."""
    if not TYPLAB_SILENT and not print_config["silent"]:
        console = Console()
        console.print(*args, **kwargs)


def debug_print(*args, **kwargs):
    """Prints to console only in debug mode (and never when silent)."""
    if print_config["debug"]:
        typlab_print(*args, style="dim", **kwargs)


def memory_budget_bytes(budget_mb: float | None = None) -> float:
    """The dense-matrix memory budget in bytes, defaulting to the environment setting."""
    return (MEMORY_BUDGET_MB if budget_mb is None else budget_mb) * 1024 * 1024
