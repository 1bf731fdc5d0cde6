"""Runtime limits shared by constructors, searches and the CLI."""

from __future__ import annotations

import os

DEFAULT_ORDER_CAP = 4096
DEFAULT_SEARCH_BUDGET = 2_000_000
DEFAULT_COMPLEMENT_BUDGET = 10_000_000
DEFAULT_ELEMENT_CAP = 50_000

ORDER_CAP_ENV = "ODDAUT_CAP"


def resolve_order_cap(explicit: int | None = None) -> int:
    """Order cap precedence: explicit argument, then $ODDAUT_CAP, then default."""
    if explicit is not None:
        return int(explicit)
    env = os.environ.get(ORDER_CAP_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_ORDER_CAP
