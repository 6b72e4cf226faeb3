"""Deterministic test-function corpora.

Every generator is a pure function of its spec (kind, level, count, seed,
parameters); rerunning produces byte-identical corpora.  Families are chosen
to stress the inequalities near p = (2,2) with q > 2: flat random grids,
tensor products, power-log profiles with slowly varying factors, sign-planted
lacunary coefficient polynomials, and indicator rectangles.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from ..fourier import WALSH, CoeffMatrix, walsh_synthesize
from ..rearrange import iterated_rearrange_2d
from ..stepfun import DyadicStep2D


@dataclass(frozen=True)
class CorpusSpec:
    kind: str  # random_step | tensor | power_log | lacunary | indicator
    level: tuple[int, int]
    count: int
    seed: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("random_step", "tensor", "power_log",
                             "lacunary", "indicator"):
            raise ValueError(f"unknown corpus kind {self.kind!r}")


def _power_log_profile(level: int, r: float, s: float) -> np.ndarray:
    """``t^{-1/r} * (1 - ln t)^{-s}`` at dyadic midpoints (finite everywhere)."""
    h = 2.0**-level
    t = (np.arange(2**level) + 0.5) * h
    vals = t ** (-1.0 / r) * (1.0 - np.log(t)) ** (-s)
    if not np.all(np.isfinite(vals)):
        raise ValueError(f"power_log profile r={r}, s={s} produced non-finite samples")
    return vals


def generate(spec: CorpusSpec) -> list[DyadicStep2D]:
    """Deterministic corpus of nonnegative step functions."""
    n1, n2 = spec.level
    r1, r2 = 2**n1, 2**n2
    rng = np.random.default_rng(spec.seed)
    out: list[DyadicStep2D] = []
    if spec.kind == "random_step":
        for _ in range(spec.count):
            out.append(DyadicStep2D(spec.level, rng.random((r2, r1))))
    elif spec.kind == "tensor":
        for _ in range(spec.count):
            u = rng.random(r1)
            w = rng.random(r2)
            out.append(DyadicStep2D(spec.level, np.outer(w, u)))
    elif spec.kind == "power_log":
        rs = spec.params.get("r", (1.5, 2.0, 4.0))
        ss = spec.params.get("s", (0.0, 0.5, 2.0))
        for i in range(spec.count):
            p1 = _power_log_profile(n1, rs[i % len(rs)], ss[(i // len(rs)) % len(ss)])
            p2 = _power_log_profile(n2, rs[(i + 1) % len(rs)], ss[i % len(ss)])
            f = DyadicStep2D(spec.level, np.outer(p2, p1))
            out.append(iterated_rearrange_2d(f))
    elif spec.kind == "lacunary":
        for _, f in generate_lacunary_pairs(spec.level, spec.count, spec.seed,
                                            spec.params.get("ratio", 2.0)):
            out.append(f)
    elif spec.kind == "indicator":
        for i in range(spec.count):
            vals = np.zeros((r2, r1))
            k1 = max(r1 >> (i % (n1 + 1)), 1)
            k2 = max(r2 >> ((i // (n1 + 1)) % (n2 + 1)), 1)
            vals[:k2, :k1] = 1.0
            out.append(DyadicStep2D(spec.level, vals))
    return out


def generate_lacunary_pairs(level: tuple[int, int], count: int, seed: int,
                            ratio: float = 2.0) -> list[tuple[CoeffMatrix, DyadicStep2D]]:
    """Sign-planted lacunary coefficient polynomials with their functions.

    Instance 0 is the canonical all-plus diagonal polynomial
    ``sum_j w_{n_j}(x1) w_{n_j}(x2)`` with gaps ``n_j ~ ratio^j``; later
    instances draw random signs.  Each pair holds the planted coefficients
    (the true coefficients of the signed polynomial) and the magnitude
    function used on the norm side.
    """
    n1, n2 = level
    K1, K2 = 2**n1, 2**n2
    positions = []
    j = 0
    while True:
        pos = int(round(ratio**j))
        if pos >= min(K1, K2):
            break
        if pos not in positions:
            positions.append(pos)
        j += 1
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        signs = np.ones(len(positions)) if i == 0 else \
            rng.choice([-1.0, 1.0], size=len(positions))
        c = np.zeros((K1, K2))
        for pos, s in zip(positions, signs):
            c[pos, pos] = s
        vals = walsh_synthesize(c, level)
        f = DyadicStep2D(level, np.abs(vals))
        out.append((CoeffMatrix(WALSH, WALSH, c.astype(complex)), f))
    return out


def generate_karamata_pairs(count: int, seed: int, length: int = 16
                            ) -> list[tuple[np.ndarray, np.ndarray]]:
    """Majorization pairs by mass-preserving flattening.

    ``f`` is a nonincreasing sequence; ``g`` arises from ``f`` by averaging
    random contiguous blocks, which preserves the total, keeps ``g``
    nonincreasing, and guarantees the prefix sums of ``f`` dominate those of
    ``g`` by construction.  Violated hypotheses indicate a generator bug and
    raise immediately.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        f = np.sort(rng.random(length))[::-1]
        g = f.copy()
        for _ in range(int(rng.integers(1, 5))):
            i = int(rng.integers(0, length - 1))
            j = int(rng.integers(i + 1, length))
            g[i:j + 1] = g[i:j + 1].mean()
        if not np.all(np.diff(g) <= 1e-12):
            raise AssertionError("generator bug: flattened sequence not nonincreasing")
        pf, pg = np.cumsum(f), np.cumsum(g)
        if not (np.all(pf >= pg - 1e-12) and abs(pf[-1] - pg[-1]) < 1e-9):
            raise AssertionError("generator bug: majorization hypothesis violated")
        out.append((f, g))
    return out


def corpus_hash(funcs) -> str:
    """SHA-256 over the concatenated levels and cell values of a corpus."""
    h = hashlib.sha256()
    for f in funcs:
        if isinstance(f, tuple):  # (coeffs, function) pairs
            h.update(np.ascontiguousarray(f[0].entries).tobytes())
            f = f[1]
        h.update(bytes(str(f.levels), "ascii"))
        h.update(np.ascontiguousarray(f.values).tobytes())
    return h.hexdigest()
