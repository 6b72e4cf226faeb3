"""Fourier coefficients of step functions for bounded orthonormal tensor
systems (complex exponentials and Paley-ordered Walsh functions), block
statistics of the rearranged coefficients, and the log-weighted coefficient
suprema.

Coefficients are exact: Walsh coefficients come from a fast Walsh-Hadamard
transform of the cell values (step functions at level n lie in the span of
the first 2^n Walsh functions), and trigonometric coefficients integrate the
complex exponentials cell by cell in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .norms import Exponents, GrandNormResult, GrandParams, grand_seq_norm
from .rearrange import (Sequence2D, iterated_rearrange_seq,
                        iterated_rearrange_seq_first_index)
from .stepfun import DyadicStep2D

INF = float("inf")


@dataclass(frozen=True)
class OrthonormalSystem:
    """A uniformly bounded orthonormal system on [0,1].

    ``kind`` is ``"trig"`` (complex exponentials enumerated by frequency
    0, 1, -1, 2, -2, ...) or ``"walsh"`` (Paley order); both have sup bound 1.
    """

    kind: str
    bound: float = 1.0

    def __post_init__(self):
        if self.kind not in ("trig", "walsh"):
            raise ValueError(f"unknown system kind {self.kind!r}")


TRIG = OrthonormalSystem("trig")
WALSH = OrthonormalSystem("walsh")


def trig_frequency(i: int) -> int:
    """Frequency of enumeration slot ``i`` (0-based): 0, 1, -1, 2, -2, ..."""
    if i == 0:
        return 0
    return (i + 1) // 2 if i % 2 == 1 else -(i // 2)


def _bitrev_perm(n_levels: int) -> np.ndarray:
    """Bit-reversal permutation of ``0 .. 2^n - 1`` over ``n`` bits."""
    size = 2**n_levels
    perm = np.zeros(size, dtype=int)
    for j in range(size):
        r = 0
        x = j
        for _ in range(n_levels):
            r = (r << 1) | (x & 1)
            x >>= 1
        perm[j] = r
    return perm


def fwht(arr: np.ndarray, axis: int) -> np.ndarray:
    """In-order fast Walsh-Hadamard transform (natural/Hadamard order)."""
    a = np.array(arr, dtype=float)
    a = np.moveaxis(a, axis, -1)
    n = a.shape[-1]
    if n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    h = 1
    while h < n:
        shp = a.shape[:-1] + (n // (2 * h), 2, h)
        blocks = a.reshape(shp)
        top = blocks[..., 0, :] + blocks[..., 1, :]
        bot = blocks[..., 0, :] - blocks[..., 1, :]
        a = np.stack([top, bot], axis=-2).reshape(a.shape)
        h *= 2
    return np.moveaxis(a, -1, axis)


def walsh_on_cells(k: int, level: int) -> np.ndarray:
    """Values (+-1) of the Paley-ordered Walsh function ``w_k`` on the
    ``2^level`` dyadic cells; requires ``k < 2^level``."""
    if k >= 2**level:
        raise ValueError(f"w_{k} is not constant on level-{level} cells")
    rev = _bitrev_perm(level)
    j = np.arange(2**level)
    bits = np.bitwise_count(np.bitwise_and(rev[j], k)) if hasattr(np, "bitwise_count") \
        else np.array([bin(rev[x] & k).count("1") for x in j])
    return np.where(bits % 2 == 0, 1.0, -1.0)


def _walsh_coeffs_axis(vals: np.ndarray, axis: int, level: int, K: int) -> np.ndarray:
    """Paley-order Walsh coefficients along one axis, exact for K <= 2^level."""
    if K > 2**level:
        raise ValueError(
            f"walsh truncation {K} exceeds resolution 2^{level}; refine first")
    rev = _bitrev_perm(level)
    reordered = np.take(vals, rev, axis=axis)
    coeffs = fwht(reordered, axis=axis) * 2.0**-level
    return np.take(coeffs, np.arange(K), axis=axis)


def walsh_synthesize(coeffs: np.ndarray, levels: tuple[int, int]) -> np.ndarray:
    """Cell values of ``sum c[k1,k2] w_{k1}(x1) w_{k2}(x2)`` (Paley order).

    ``coeffs[k1, k2]`` may be signed; the returned array is laid out like
    :class:`~lorentz_forge.stepfun.DyadicStep2D` values (rows = x2-cells).
    """
    n1, n2 = levels
    c = np.zeros((2**n1, 2**n2))
    k1, k2 = coeffs.shape
    if k1 > 2**n1 or k2 > 2**n2:
        raise ValueError("coefficients exceed the requested resolution")
    c[:k1, :k2] = coeffs
    vals = fwht(c, axis=0)[_bitrev_perm(n1), :]
    vals = fwht(vals, axis=1)[:, _bitrev_perm(n2)]
    return vals.T  # [j2, j1]


def _trig_cell_matrix(K: int, level: int) -> np.ndarray:
    """``E[k, j] = int_cell_j exp(-2 pi i freq(k) x) dx`` in closed form."""
    h = 2.0**-level
    edges = np.arange(2**level + 1) * h
    freqs = np.array([trig_frequency(i) for i in range(K)])
    E = np.empty((K, 2**level), dtype=complex)
    for row, k in enumerate(freqs):
        if k == 0:
            E[row] = h
        else:
            ph = np.exp(-2j * np.pi * k * edges)
            E[row] = (ph[1:] - ph[:-1]) / (-2j * np.pi * k)
    return E


@dataclass(frozen=True)
class CoeffMatrix:
    """Truncated double-indexed coefficient array with system metadata.

    ``entries[i1, i2]`` is the coefficient at enumeration slots
    ``(i1 + 1, i2 + 1)``; for Walsh those slots are the Paley indices
    ``(i1, i2)`` directly.
    """

    system1: OrthonormalSystem
    system2: OrthonormalSystem
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        ent = np.array(self.entries, dtype=complex)
        ent.setflags(write=False)
        object.__setattr__(self, "entries", ent)

    @property
    def truncation(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def magnitudes(self) -> Sequence2D:
        return Sequence2D(np.abs(self.entries))


def coeffs_from_values(values: np.ndarray, levels: tuple[int, int],
                       sys1: OrthonormalSystem, sys2: OrthonormalSystem,
                       K1: int, K2: int) -> CoeffMatrix:
    """Coefficients of a (possibly signed) cell-value array.

    The norm side of every check works with magnitudes, but the coefficient
    side may legitimately come from signed synthesis; this entry point keeps
    the two consistent.
    """
    n1, n2 = levels
    v = np.asarray(values, dtype=float)  # [j2, j1]
    if sys1.kind == "walsh":
        a1 = _walsh_coeffs_axis(v, axis=1, level=n1, K=K1).astype(complex)
    else:
        a1 = v @ _trig_cell_matrix(K1, n1).T  # (r2, K1)
    if sys2.kind == "walsh":
        a = _walsh_coeffs_axis(a1.real, axis=0, level=n2, K=K2) + \
            1j * _walsh_coeffs_axis(a1.imag, axis=0, level=n2, K=K2)
    else:
        a = _trig_cell_matrix(K2, n2) @ a1  # (K2, K1)
    return CoeffMatrix(sys1, sys2, a.T)  # entries [k1, k2]


def coeffs_2d(f: DyadicStep2D, sys1: OrthonormalSystem, sys2: OrthonormalSystem,
              K1: int, K2: int) -> CoeffMatrix:
    """Exact coefficients of ``f`` for the tensor system ``sys1 x sys2``."""
    return coeffs_from_values(np.asarray(f.values), f.levels, sys1, sys2, K1, K2)


def gram_matrix(system: OrthonormalSystem, count: int, level: int) -> np.ndarray:
    """Gram matrix of the first ``count`` system functions, integrated in
    closed form on a level-``level`` grid (used for orthonormality checks)."""
    if system.kind == "walsh":
        W = np.vstack([walsh_on_cells(k, level) for k in range(count)])
        return (W @ W.T) * 2.0**-level
    E = _trig_cell_matrix(count, level)
    # int phi_m conj(phi_n) = sum over cells of the closed-form integrals of
    # exp(2 pi i (freq(m) - freq(n)) x)
    freqs = [trig_frequency(i) for i in range(count)]
    G = np.empty((count, count), dtype=complex)
    h = 2.0**-level
    edges = np.arange(2**level + 1) * h
    for m, km in enumerate(freqs):
        for n, kn in enumerate(freqs):
            d = km - kn
            if d == 0:
                G[m, n] = 1.0
            else:
                ph = np.exp(2j * np.pi * d * edges)
                G[m, n] = np.sum((ph[1:] - ph[:-1]) / (2j * np.pi * d))
    return G


def block_l2(a: CoeffMatrix, N1: int, N2: int, order: str = "seq") -> float:
    """l2 norm of the top ``N1 x N2`` block of the rearranged magnitudes.

    ``order="seq"`` rearranges second index first (m2 then m1);
    ``order="fun"`` uses the function-style order (m1 then m2).  Truncated
    matrices under-approximate the full-system block sums, which is the safe
    direction for every upper-bound check.
    """
    K1, K2 = a.truncation
    if not (1 <= N1 <= K1 and 1 <= N2 <= K2):
        raise ValueError(f"block ({N1},{N2}) exceeds truncation ({K1},{K2})")
    mags = a.magnitudes
    if order == "seq":
        r = iterated_rearrange_seq(mags)
    elif order == "fun":
        r = iterated_rearrange_seq_first_index(mags)
    else:
        raise ValueError(f"order must be 'seq' or 'fun', got {order!r}")
    block = np.asarray(r.entries)[:N1, :N2]
    return float(np.sqrt(np.sum(block**2)))


def bochkarev_lhs(a: CoeffMatrix, q: tuple[float, float]) -> float:
    """Log-weighted supremum of cumulative block l2 sums.

    ``sup_{k1,k2} (ln max(k1,2))^{1/q1 - 1/2} (ln max(k2,2))^{1/q2 - 1/2}``
    times the top ``k1 x k2`` block l2 norm of the rearranged magnitudes.
    """
    if any(not (2 <= qi) for qi in q):
        raise ValueError(f"requires 2 <= q <= inf, got {q}")
    r = np.asarray(iterated_rearrange_seq(a.magnitudes).entries)
    S = np.cumsum(np.cumsum(r**2, axis=0), axis=1)
    K1, K2 = r.shape
    e1 = 0.5 - (0.0 if q[0] == INF else 1.0 / q[0])
    e2 = 0.5 - (0.0 if q[1] == INF else 1.0 / q[1])
    w1 = np.log(np.maximum(np.arange(1, K1 + 1), 2)) ** e1
    w2 = np.log(np.maximum(np.arange(1, K2 + 1), 2)) ** e2
    vals = np.sqrt(S) / np.outer(w1, w2)
    return float(np.max(vals))


def block_sup_lhs(a: CoeffMatrix, q: tuple[float, float]) -> float:
    """``sup_n n1^{1/q1-1/2} n2^{1/q2-1/2} [sum over the 2^{n1} x 2^{n2}
    block of (a^{*2,*1})^2]^{1/2}`` over ``n_i >= 1``.

    The bracket saturates once a block covers the stored matrix and the
    weights are nonincreasing for ``q >= 2``, so a finite scan is exact.
    """
    r = np.asarray(iterated_rearrange_seq(a.magnitudes).entries)
    sqrtS = np.sqrt(np.cumsum(np.cumsum(r**2, axis=0), axis=1))
    K1, K2 = r.shape
    e1 = (0.0 if q[0] == INF else 1.0 / q[0]) - 0.5
    e2 = (0.0 if q[1] == INF else 1.0 / q[1]) - 0.5
    n1_max = max(int(math.ceil(math.log2(K1))), 1) + 1
    n2_max = max(int(math.ceil(math.log2(K2))), 1) + 1
    best = 0.0
    for n1 in range(1, n1_max + 1):
        i1 = min(2**n1, K1) - 1
        for n2 in range(1, n2_max + 1):
            i2 = min(2**n2, K2) - 1
            val = n1**e1 * n2**e2 * sqrtS[i1, i2]
            best = max(best, val)
    return best


def te3_lhs(a: CoeffMatrix, p: tuple[float, float], q: tuple[float, float]) -> float:
    """Discrete block-norm left side with weights ``2^{k/p'}`` on the
    normalized brackets of the rearranged coefficient magnitudes."""
    from .norms import seq_block_lorentz_norm

    return seq_block_lorentz_norm(a.magnitudes, p, q)


def te4_lhs(a: CoeffMatrix, e: Exponents, gp: GrandParams) -> GrandNormResult:
    """Grand sequence norm of the magnitudes at smoothness ``lambda = theta + beta``,
    ``beta_i = max(1/2, 1/q_i)``, with the damped exponent sign."""
    if e.p != (2.0, 2.0):
        raise ValueError(f"defined for p = (2, 2), got {e.p}")
    betas = tuple(max(0.5, 0.0 if qi == INF else 1.0 / qi) for qi in e.q)
    lam = (gp.theta[0] + betas[0], gp.theta[1] + betas[1])
    return grand_seq_norm(a.magnitudes, e,
                          GrandParams(lam, eps_levels=gp.eps_levels), sign="minus")
