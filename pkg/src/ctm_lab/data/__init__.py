"""Precomputed tables shipped with the package.

Each file is a full exhaustive run of one rule space, saved in the
canonical table format. They exist so that block decomposition and the
reports work out of the box without re-running the spaces; regenerating
them with run_space + to_ctm reproduces the files byte for byte.
"""

from importlib import resources

from ..ctm import CtmTable, loads_ctm_table
from ..errors import ValidationError

BUILTIN_TABLES = {
    "d2_zero": "d2_zero.ctm",
    "d2_both": "d2_both.ctm",
    "d3_zero": "d3_zero.ctm",
    "d3_both": "d3_both.ctm",
}


def builtin_table(name: str) -> CtmTable:
    """Load a shipped table: d2_zero, d2_both, d3_zero, or d3_both."""
    try:
        filename = BUILTIN_TABLES[name]
    except KeyError:
        raise ValidationError(
            f"unknown builtin table {name!r}; available: {', '.join(sorted(BUILTIN_TABLES))}"
        ) from None
    payload = resources.files(__package__).joinpath(filename).read_bytes()
    return loads_ctm_table(payload)
