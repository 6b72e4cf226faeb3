"""Calibrated pass thresholds.

Exact-constant checks (embedding chain, monotonicity in the smoothness
weight, Karamata, the rearranged Minkowski inequalities, the coefficient
block bounds, Parseval) carry constants fixed by the statements themselves.
Everything else is calibrated empirically against the shipped corpora and
then pinned here; editing ``data/calibration.json`` is the only way to move
a pass threshold.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=1)
def calibration() -> dict:
    with resources.files("lorentz_forge.data").joinpath(
            "calibration.json").open() as fh:
        return json.load(fh)


@lru_cache(maxsize=1)
def pinned_ratios() -> dict:
    with resources.files("lorentz_forge.data").joinpath(
            "pinned_ratios.json").open() as fh:
        return json.load(fh)
