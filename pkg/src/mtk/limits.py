"""Configurable resource bounds.

Both limits are read from the environment on each use so callers and
test fixtures can adjust them without reloading the package.
"""
from __future__ import annotations

import os

DEFAULT_MAX_RANK = 16
DEFAULT_MAX_CYCLO_ORDER = 1_000_000


def max_rank() -> int:
    """Largest rank the subcategory-enumeration routines will accept."""
    return int(os.environ.get("MTK_MAX_RANK", DEFAULT_MAX_RANK))


def max_cyclo_order() -> int:
    """Largest cyclotomic field order arithmetic will embed into."""
    return int(os.environ.get("MTK_MAX_CYCLO_ORDER", DEFAULT_MAX_CYCLO_ORDER))
