"""Capacity bounds for exhaustive operations, overridable via environment."""

from __future__ import annotations

import os

# Largest n for which is_excellent may enumerate all 2^n - 1 candidate sets.
EXCELLENT_EXHAUSTIVE_BOUND = 14
# Largest n for which exact good-partition search may enumerate set partitions.
EXACT_PARTITION_BOUND = 12
# Largest group order accepted for subgroup enumeration.
GROUP_ORDER_BOUND = 128

_ENV_NAMES = {
    "excellent": "STABLEREG_EXCELLENT_BOUND",
    "partition": "STABLEREG_PARTITION_BOUND",
    "group": "STABLEREG_GROUP_BOUND",
}

_DEFAULTS = {
    "excellent": EXCELLENT_EXHAUSTIVE_BOUND,
    "partition": EXACT_PARTITION_BOUND,
    "group": GROUP_ORDER_BOUND,
}


def capacity_bound(kind: str) -> int:
    """Configured bound for `kind` in {excellent, partition, group}."""
    env = os.environ.get(_ENV_NAMES[kind])
    if env is not None:
        return int(env)
    return _DEFAULTS[kind]
