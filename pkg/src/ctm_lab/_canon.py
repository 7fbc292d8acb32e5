"""Canonical text rendering shared by table and report files.

Every persisted artifact sorts records the same way (count descending,
string length ascending, then lexicographic) and renders floats with 17
significant digits, so identical data always serializes to identical bytes
and float round-trips are exact.
"""

import json


def fmt_float(x) -> str:
    return format(float(x), ".17g")


def fmt_value(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return fmt_float(x)
    return str(x)


def canonical_key(record):
    """Sort key for (string, count, ...) records."""
    string, count = record[0], record[1]
    return (-count, len(string), string)


def meta_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
