from datetime import datetime
from time import perf_counter


def now_sec() -> int:
    """Returns the current time as integer seconds since epoch."""
    return int(datetime.now().timestamp())


def display_duration(seconds: float) -> str:
    """Formats a duration (seconds) in HH:MM:SS format."""
    minutes, seconds = divmod(int(round(seconds)), 60)
    hours, minutes = divmod(minutes, 60)
    return "{0:02d}:{1:02d}:{2:02d}".format(hours, minutes, seconds)


class Stopwatch:
    """Context manager measuring wall time spent inside its block."""

    def __init__(self):
        self.started_at: float | None = None
        self.elapsed: float = 0.0

    def __enter__(self) -> "Stopwatch":
        self.started_at = perf_counter()
        return self

    def __exit__(self, *exc_info) -> None:
        if self.started_at is not None:
            self.elapsed = perf_counter() - self.started_at
