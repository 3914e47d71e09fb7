"""Monadic CSP processes from Python.

Functions take program source text and return the JSON shapes the ``csp``
command prints, as plain dicts and lists.
"""

from ._mcsp import (
    Session,
    SourceError,
    check,
    divergences,
    failures,
    law_names,
    lts,
    refine,
    run_law,
    traces,
)

__all__ = [
    "Session",
    "SourceError",
    "check",
    "divergences",
    "failures",
    "law_names",
    "lts",
    "refine",
    "run_law",
    "traces",
]
