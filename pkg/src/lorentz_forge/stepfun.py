"""Exact algebra and integration for dyadic piecewise-constant functions.

Functions live on ``[0,1)`` (or ``[0,1)^2``) subdivided into ``2^n`` equal
dyadic cells per axis and are extended by zero outside.  Values are
nonnegative magnitudes; callers feed ``|f|``.  Every weighted integral the
norm machinery needs reduces to closed-form sums of the power primitive
``int t^{c-1} dt`` over cells, so downstream inequality checks carry only
binary64 rounding error, never quadrature error.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np


class DivergentIntegralError(ValueError):
    """Raised when a requested weighted integral diverges at the origin."""


def _as_readonly(arr) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DyadicStep1D:
    """Step function on [0,1): cell ``j`` covers ``[j/2^level, (j+1)/2^level)``.

    ``values`` must have length ``2**level`` and hold finite nonnegative
    magnitudes.
    """

    level: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.level < 0:
            raise ValueError(f"level must be >= 0, got {self.level}")
        vals = _as_readonly(self.values)
        object.__setattr__(self, "values", vals)
        if vals.shape != (2**self.level,):
            raise ValueError(
                f"values shape {vals.shape} does not match 2^{self.level} cells"
            )
        if not np.all(np.isfinite(vals)) or np.any(vals < 0):
            raise ValueError("values must be finite and nonnegative")

    @property
    def width(self) -> float:
        return 2.0 ** -self.level


@dataclass(frozen=True)
class DyadicStep2D:
    """Step function on [0,1)^2 over a ``2^{n1} x 2^{n2}`` dyadic grid.

    ``values[j2, j1]`` is the value on the rectangle
    ``[j1/2^{n1}, (j1+1)/2^{n1}) x [j2/2^{n2}, (j2+1)/2^{n2})``; rows index
    the second variable (x2-slices), columns the first.  Queries outside
    ``[0,1)^2`` return 0 (implicit zero extension).
    """

    levels: tuple[int, int]
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        n1, n2 = self.levels
        if n1 < 0 or n2 < 0:
            raise ValueError(f"levels must be >= 0, got {self.levels}")
        vals = _as_readonly(self.values)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "levels", (int(n1), int(n2)))
        if vals.shape != (2**n2, 2**n1):
            raise ValueError(
                f"values shape {vals.shape} does not match (2^{n2}, 2^{n1})"
            )
        if not np.all(np.isfinite(vals)) or np.any(vals < 0):
            raise ValueError("values must be finite and nonnegative")

    @property
    def widths(self) -> tuple[float, float]:
        n1, n2 = self.levels
        return 2.0**-n1, 2.0**-n2

    def row_slice(self, j2: int) -> DyadicStep1D:
        """Slice at fixed x2-cell ``j2`` as a 1D step function of x1."""
        return DyadicStep1D(self.levels[0], self.values[j2])


def constant_grid(c: float, levels: tuple[int, int] = (0, 0)) -> DyadicStep2D:
    """Constant function ``f = c`` at the requested resolution."""
    n1, n2 = levels
    return DyadicStep2D(levels, np.full((2**n2, 2**n1), float(c)))


def indicator_grid(a1: float, a2: float, levels: tuple[int, int]) -> DyadicStep2D:
    """Indicator of the dyadic rectangle ``[0,a1) x [0,a2)``.

    ``a1 * 2^{n1}`` and ``a2 * 2^{n2}`` must be integers.
    """
    n1, n2 = levels
    k1 = a1 * 2**n1
    k2 = a2 * 2**n2
    if k1 != int(k1) or k2 != int(k2):
        raise ValueError("corner must be dyadic at the requested level")
    vals = np.zeros((2**n2, 2**n1))
    vals[: int(k2), : int(k1)] = 1.0
    return DyadicStep2D(levels, vals)


def power_weight_integral(c: float, a: float, b: float) -> float:
    """``int_a^b t^{c-1} dt`` in closed form.

    Equals ``(b^c - a^c)/c`` for ``c != 0`` and ``ln(b/a)`` for ``c == 0``;
    ``a > 0`` is required when ``c <= 0`` (the integral diverges otherwise).
    """
    if not (0 <= a < b):
        raise ValueError(f"need 0 <= a < b, got ({a}, {b})")
    if c == 0:
        if a == 0:
            raise DivergentIntegralError("int t^{-1} dt diverges at 0")
        return math.log(b / a)
    if c < 0 and a == 0:
        raise DivergentIntegralError(f"int t^({c}-1) dt diverges at 0")
    return (b**c - a**c) / c


def evaluate(f: DyadicStep2D, t1: float, t2: float) -> float:
    """Value of the cell containing ``(t1, t2)``; 0 once either coordinate >= 1.

    Arguments must be strictly positive.
    """
    if t1 <= 0 or t2 <= 0:
        raise ValueError(f"arguments must be positive, got ({t1}, {t2})")
    if t1 >= 1 or t2 >= 1:
        return 0.0
    n1, n2 = f.levels
    j1 = min(int(t1 * 2**n1), 2**n1 - 1)
    j2 = min(int(t2 * 2**n2), 2**n2 - 1)
    return float(f.values[j2, j1])


def weighted_integral_1d(g: DyadicStep1D, c: float, a: float, b: float) -> float:
    """``int_a^b t^{c-1} g(t) dt`` computed cell-exactly.

    Requires ``0 <= a < b <= 1``; for ``c <= 0`` the lower limit must be
    positive unless ``g`` vanishes on the cells touching 0.
    """
    if not (0 <= a < b <= 1):
        raise ValueError(f"need 0 <= a < b <= 1, got ({a}, {b})")
    if c <= 0 and a == 0 and g.values[0] > 0:
        raise DivergentIntegralError(
            "weight t^{c-1} with c <= 0 is not integrable down to 0"
        )
    h = g.width
    edges = np.arange(len(g.values) + 1) * h
    lo = np.maximum(edges[:-1], a)
    hi = np.minimum(edges[1:], b)
    total = 0.0
    for v, lo_j, hi_j in zip(g.values, lo, hi):
        if hi_j <= lo_j or v == 0.0:
            continue
        total += v * power_weight_integral(c, lo_j, hi_j)
    return total


def refine(f: DyadicStep2D, new_levels: tuple[int, int]) -> DyadicStep2D:
    """Value-preserving subdivision to a finer dyadic grid."""
    n1, n2 = f.levels
    m1, m2 = new_levels
    if m1 < n1 or m2 < n2:
        raise ValueError(f"cannot coarsen {f.levels} to {new_levels}")
    vals = np.repeat(f.values, 2 ** (m2 - n2), axis=0)
    vals = np.repeat(vals, 2 ** (m1 - n1), axis=1)
    return DyadicStep2D((m1, m2), vals)


def save_grid(f: DyadicStep2D, path) -> None:
    """Write the grid file format: levels plus rows in x2-major order."""
    doc = {"levels": list(f.levels), "values": [list(map(float, r)) for r in f.values]}
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load_grid(path) -> DyadicStep2D:
    """Read a grid file written by :func:`save_grid`."""
    with open(path) as fh:
        doc = json.load(fh)
    return DyadicStep2D(tuple(doc["levels"]), np.array(doc["values"], dtype=float))
