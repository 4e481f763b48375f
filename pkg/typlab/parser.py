"""Parsing of sector-label lists such as ``8:4, 10:5, 12:6``."""

import pyparsing as pp

from typlab.constants import TyplabValidationError
from typlab.models import GridPoint

integer = pp.common.signed_integer
label = pp.Group(integer("chain_length") + pp.Suppress(":") + integer("charge"))
separator = pp.Suppress(pp.one_of(", ;"))
labels = label + pp.ZeroOrMore(pp.Optional(separator) + label) + pp.StringEnd()


def typlab_assert(expr, message):
    if not expr:
        error_message = f"[red]Label Validation Error:[/red] {message}"
        raise TyplabValidationError(error_message)


def parse_sector_labels(text: str) -> list[GridPoint]:
    """Parse ``N:M`` pairs separated by commas, semicolons or spaces."""
    try:
        parsed = labels.parse_string(text.strip())
    except pp.ParseException as invalid:
        raise TyplabValidationError(
            f"[red]Label Validation Error:[/red] could not parse {text!r}: {invalid.msg}"
        ) from None

    grid = []
    for item in parsed:
        point = GridPoint(chain_length=int(item.chain_length), charge=int(item.charge))
        typlab_assert(point.chain_length >= 2, f"chain length must be >= 2 in {point.label}")
        typlab_assert(
            0 <= point.charge <= point.chain_length,
            f"charge must lie in [0, N] in {point.label}",
        )
        typlab_assert(point not in grid, f"duplicate label {point.label}")
        grid.append(point)
    return grid
