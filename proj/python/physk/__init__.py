"""Dimension checking and proving for physics statements."""

from ._core import (
    PhyskError,
    aggregate,
    check,
    eval_corpus,
    evaluate,
    fuzz,
    normalize,
    prove,
    ring_equal,
    units_table,
    verify_script,
)

__all__ = [
    "PhyskError",
    "aggregate",
    "check",
    "eval_corpus",
    "evaluate",
    "fuzz",
    "normalize",
    "prove",
    "ring_equal",
    "units_table",
    "verify_script",
]
