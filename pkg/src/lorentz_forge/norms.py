"""Scalar norms: mixed Lebesgue, anisotropic Lorentz, grand Lorentz (both
signs), the discrete grand sequence norm, the log-weighted sup form, and the
dyadic sup characterization used as a cross-check oracle.

Conventions
-----------
* Exponent components live in ``(0, inf]``; an infinite component turns the
  corresponding integral (or sum) into a supremum.
* All integrals reduce to closed-form power-weight sums over dyadic cells;
  a divergent integral yields ``+inf``, never an exception.
* Grand norms search a geometric epsilon grid ``2^-j, j = 0..J``.  The
  sup-form grid maximum under-approximates the true supremum and the
  inf-form grid minimum over-approximates the true infimum; the direction
  is reported with the value.  A zero smoothness component adds the grid
  point ``eps = 0`` so the collapse to the plain Lorentz norm is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rearrange import Sequence2D, iterated_rearrange_2d, iterated_rearrange_seq
from .stepfun import DyadicStep2D

INF = float("inf")


@dataclass(frozen=True)
class Exponents:
    """Integrability/fineness parameter bundle ``(p, q)``, components in (0, inf]."""

    p: tuple[float, float]
    q: tuple[float, float]

    def __post_init__(self):
        for name, pair in (("p", self.p), ("q", self.q)):
            if len(pair) != 2 or any(not (x > 0) for x in pair):
                raise ValueError(f"{name} components must be positive, got {pair}")
        object.__setattr__(self, "p", (float(self.p[0]), float(self.p[1])))
        object.__setattr__(self, "q", (float(self.q[0]), float(self.q[1])))

    def conjugate(self, i: int) -> float:
        """Conjugate exponent ``p_i'`` with ``1/p_i + 1/p_i' = 1`` (needs p_i >= 1)."""
        pi = self.p[i]
        if pi < 1:
            raise ValueError(f"conjugate undefined for p={pi} < 1")
        if pi == 1:
            return INF
        if pi == INF:
            return 1.0
        return pi / (pi - 1.0)


@dataclass(frozen=True)
class GrandParams:
    """Smoothness weights and epsilon-search configuration for grand norms.

    ``theta`` components must share one sign: both >= 0 selects the sup form,
    both < 0 the inf form.  ``eps_levels`` is the geometric grid depth J
    (grid ``2^-j, j=0..J``); ``delta`` caps the epsilon range per axis.
    """

    theta: tuple[float, float]
    eps_levels: int = 24
    delta: tuple[float, float] = (1.0, 1.0)

    def __post_init__(self):
        t1, t2 = self.theta
        if (t1 < 0) != (t2 < 0):
            raise ValueError(f"mixed-sign theta {self.theta} is not defined")
        if self.eps_levels < 0:
            raise ValueError("eps_levels must be >= 0")
        if any(not (0 < d <= 1) for d in self.delta):
            raise ValueError(f"delta must lie in (0,1], got {self.delta}")
        object.__setattr__(self, "theta", (float(t1), float(t2)))

    @property
    def sup_form(self) -> bool:
        return self.theta[0] >= 0


@dataclass(frozen=True)
class GrandNormResult:
    """Grand norm value with the witnessing epsilon pair and approximation side."""

    value: float
    eps: tuple[float, float]
    direction: str  # "under" | "over" | "exact"

    def __float__(self) -> float:
        return self.value


# ---------------------------------------------------------------------------
# closed-form cell weights


def _cell_weights(c: float, ncells: int, h: float) -> np.ndarray:
    """``int t^{c-1} dt`` over each dyadic cell ``(jh, (j+1)h]`` of (0,1].

    The first cell carries ``+inf`` when ``c <= 0`` (divergence at 0).
    """
    edges = np.arange(ncells + 1) * h
    if c > 0:
        pows = edges**c
        return (pows[1:] - pows[:-1]) / c
    out = np.empty(ncells)
    out[0] = INF
    if c == 0:
        out[1:] = np.log(edges[2:] / edges[1:-1])
    else:
        pows = edges[1:] ** c
        out[1:] = (pows[1:] - pows[:-1]) / c
    return out


def _cell_weights_batch(cs: np.ndarray, ncells: int, h: float) -> np.ndarray:
    """Rows of :func:`_cell_weights` for an array of exponents ``cs``."""
    return np.vstack([_cell_weights(c, ncells, h) for c in cs])


def _stage_finite(vals_q: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Sum ``v^q * w`` along the last axis, treating ``0 * inf`` as 0."""
    with np.errstate(invalid="ignore"):
        prod = np.where(vals_q > 0, vals_q * weights, 0.0)
    return prod.sum(axis=-1)


def _lorentz_core(g: np.ndarray, h1: float, h2: float,
                  a1: float, a2: float, q1: float, q2: float) -> float:
    """Nested weighted integral of a rearranged value matrix ``g[j2, j1]``.

    Computes ``( int ( int (t1^a1 t2^a2 g)^{q1} dt1/t1 )^{q2/q1} dt2/t2 )^{1/q2}``
    with sup forms replacing infinite ``q`` components.  Returns ``+inf`` on
    divergence.
    """
    r2, r1 = g.shape
    # inner stage over t1, one value per t2-cell
    if q1 == INF:
        b1 = (np.arange(1, r1 + 1) * h1) ** a1
        inner = np.max(g * b1, axis=1)
    else:
        w1 = _cell_weights(a1 * q1, r1, h1)
        inner = _stage_finite(g**q1, w1) ** (1.0 / q1)
    # outer stage over t2
    if q2 == INF:
        b2 = (np.arange(1, r2 + 1) * h2) ** a2
        return float(np.max(inner * b2))
    w2 = _cell_weights(a2 * q2, r2, h2)
    return float(_stage_finite(inner**q2, w2) ** (1.0 / q2))


def _lorentz_core_batch(g: np.ndarray, h1: float, h2: float,
                        a1s: np.ndarray, a2s: np.ndarray,
                        q1: float, q2: float) -> np.ndarray:
    """Matrix of :func:`_lorentz_core` values over exponent grids ``a1s x a2s``."""
    r2, r1 = g.shape
    if q1 == INF:
        b1 = np.arange(1, r1 + 1) * h1
        sup_w = np.exp(np.outer(a1s, np.log(b1)))  # (m1, r1)
        inner = np.max(g[None, :, :] * sup_w[:, None, :], axis=2)  # (m1, r2)
    else:
        w1 = _cell_weights_batch(a1s * q1, r1, h1)  # (m1, r1)
        gq = g**q1
        inner = np.empty((len(a1s), r2))
        for i, wrow in enumerate(w1):
            inner[i] = _stage_finite(gq, wrow)
        inner **= 1.0 / q1
    if q2 == INF:
        b2 = np.arange(1, r2 + 1) * h2
        sup_w2 = np.exp(np.outer(a2s, np.log(b2)))  # (m2, r2)
        return np.max(inner[:, None, :] * sup_w2[None, :, :], axis=2)
    w2 = _cell_weights_batch(a2s * q2, r2, h2)  # (m2, r2)
    out = np.empty((len(a1s), len(a2s)))
    innq = inner**q2
    for j, wrow in enumerate(w2):
        out[:, j] = _stage_finite(innq, wrow)
    return out ** (1.0 / q2)


# ---------------------------------------------------------------------------
# public norms


def mixed_lebesgue_norm(f: DyadicStep2D, p: tuple[float, float]) -> float:
    """Mixed-norm Lebesgue value: inner L^{p1} in x1, outer L^{p2} in x2."""
    p1, p2 = p
    v = np.asarray(f.values)
    h1, h2 = f.widths
    if p1 == INF:
        inner = np.max(v, axis=1)
    else:
        inner = ((v**p1).sum(axis=1) * h1) ** (1.0 / p1)
    if p2 == INF:
        return float(np.max(inner))
    return float(((inner**p2).sum() * h2) ** (1.0 / p2))


def lorentz_norm(f: DyadicStep2D, e: Exponents) -> float:
    """Anisotropic Lorentz norm built from the iterated rearrangement.

    Weights ``t1^{1/p1} t2^{1/p2}`` against ``dt/t`` measures, inner integral
    in t1 with exponent q1, outer in t2 with q2; infinite ``q`` components
    become per-cell-exact suprema.  Divergence reports ``+inf``.
    """
    g = iterated_rearrange_2d(f)
    h1, h2 = f.widths
    a1 = 0.0 if e.p[0] == INF else 1.0 / e.p[0]
    a2 = 0.0 if e.p[1] == INF else 1.0 / e.p[1]
    return _lorentz_core(np.asarray(g.values), h1, h2, a1, a2, e.q[0], e.q[1])


def _eps_grid(gp: GrandParams, axis: int, cap: float) -> np.ndarray:
    grid = 2.0 ** -np.arange(gp.eps_levels + 1)
    cap = min(cap, gp.delta[axis])
    grid = grid[grid <= cap]
    if cap not in grid:
        grid = np.concatenate([[cap], grid])
    return grid


def grand_lorentz_norm(f: DyadicStep2D, e: Exponents, gp: GrandParams) -> GrandNormResult:
    """Grand Lorentz norm over the epsilon grid.

    Sup form (theta >= 0): maximum of ``eps1^t1 eps2^t2`` times the Lorentz
    norm with exponents ``1/p_i + eps_i`` (an under-approximation of the true
    supremum except at theta = 0, where the added ``eps = 0`` grid point makes
    the collapse to the plain Lorentz norm exact).  Inf form (theta < 0):
    grid minimum with exponents ``1/p_i - eps_i``, ``eps_i <= 1/p_i`` (an
    over-approximation of the true infimum).
    """
    g = iterated_rearrange_2d(f)
    h1, h2 = f.widths
    t1, t2 = gp.theta
    base = [0.0 if pi == INF else 1.0 / pi for pi in e.p]
    if gp.theta == (0.0, 0.0):
        # the objective is nonincreasing in eps, so the supremum is the
        # monotone limit at eps -> 0: exactly the plain norm
        return GrandNormResult(
            _lorentz_core(np.asarray(g.values), h1, h2, base[0], base[1],
                          e.q[0], e.q[1]),
            (0.0, 0.0), "exact")
    if gp.sup_form:
        e1 = _eps_grid(gp, 0, 1.0)
        e2 = _eps_grid(gp, 1, 1.0)
        if t1 == 0:
            e1 = np.concatenate([e1, [0.0]])
        if t2 == 0:
            e2 = np.concatenate([e2, [0.0]])
        vals = _lorentz_core_batch(np.asarray(g.values), h1, h2,
                                   base[0] + e1, base[1] + e2, e.q[0], e.q[1])
        # eps^0 = 1 by convention, including at eps = 0
        w1 = np.where(e1 > 0, e1, 1.0) ** t1 if t1 else np.ones_like(e1)
        w2 = np.where(e2 > 0, e2, 1.0) ** t2 if t2 else np.ones_like(e2)
        obj = vals * np.outer(w1, w2)
        i, j = np.unravel_index(np.argmax(obj), obj.shape)
        direction = "exact" if (t1 == 0 and t2 == 0) else "under"
        return GrandNormResult(float(obj[i, j]), (float(e1[i]), float(e2[j])), direction)
    if e.p[0] == INF or e.p[1] == INF:
        raise ValueError("inf-form grand norm requires finite p")
    e1 = _eps_grid(gp, 0, base[0])
    e2 = _eps_grid(gp, 1, base[1])
    vals = _lorentz_core_batch(np.asarray(g.values), h1, h2,
                               base[0] - e1, base[1] - e2, e.q[0], e.q[1])
    obj = vals * np.outer(e1**t1, e2**t2)
    i, j = np.unravel_index(np.argmin(obj), obj.shape)
    return GrandNormResult(float(obj[i, j]), (float(e1[i]), float(e2[j])), "over")


# ---------------------------------------------------------------------------
# discrete sequence norms


def _geom_tail(e: float, start: int) -> float:
    """``sum_{k >= start} 2^{e k}`` (``+inf`` when ``e >= 0``)."""
    if e >= 0:
        return INF
    r = 2.0**e
    return r**start / (1.0 - r)


def _block_sqrt_table(r: np.ndarray) -> np.ndarray:
    """``sqrt(S)[k1, k2]`` with ``S`` the cumulative square sum of the
    rearranged entries over the top ``2^{k1} x 2^{k2}`` block, ``k_i = 0..kappa_i``.

    Dimensions are implicitly zero-padded to powers of two, so the table
    saturates at the true totals.
    """
    K1, K2 = r.shape
    kap1 = max(int(math.ceil(math.log2(K1))), 0) if K1 > 1 else 0
    kap2 = max(int(math.ceil(math.log2(K2))), 0) if K2 > 1 else 0
    csum = np.cumsum(np.cumsum(r**2, axis=0), axis=1)
    idx1 = np.minimum(2 ** np.arange(kap1 + 1), K1) - 1
    idx2 = np.minimum(2 ** np.arange(kap2 + 1), K2) - 1
    return np.sqrt(csum[np.ix_(idx1, idx2)])


def _seq_block_core(sqrtS: np.ndarray, nu1: float, nu2: float,
                    q1: float, q2: float) -> float:
    """Nested (q1, q2) block sums ``2^{nu1 k1 + nu2 k2} sqrtS[k1^, k2^]``
    over all ``k_i >= 0``; beyond the stored table the bracket saturates and
    the geometric tails are summed in closed form.
    """
    kap1 = sqrtS.shape[0] - 1
    kap2 = sqrtS.shape[1] - 1
    u1 = 2.0 ** (nu1 * np.arange(kap1 + 1))

    def inner(col: np.ndarray) -> float:
        sat = col[-1]
        if q1 == INF:
            head = float(np.max(u1 * col))
            if nu1 > 0 and sat > 0:
                return INF
            return head
        head = float(np.sum((u1 * col) ** q1))
        if sat > 0:
            tail = _geom_tail(nu1 * q1, kap1 + 1)
            head = head + sat**q1 * tail if tail != INF else INF
        return head ** (1.0 / q1) if head != INF else INF

    f_vals = np.array([inner(sqrtS[:, k2]) for k2 in range(kap2 + 1)])
    u2 = 2.0 ** (nu2 * np.arange(kap2 + 1))
    sat = f_vals[-1]
    if q2 == INF:
        head = float(np.max(u2 * f_vals))
        if nu2 > 0 and sat > 0:
            return INF
        return head
    head = float(np.sum((u2 * f_vals) ** q2))
    if sat > 0:
        tail = _geom_tail(nu2 * q2, kap2 + 1)
        head = head + sat**q2 * tail if tail != INF else INF
    return head ** (1.0 / q2) if head != INF else INF


def seq_block_lorentz_norm(a: Sequence2D, p: tuple[float, float],
                           q: tuple[float, float]) -> float:
    """Discrete block norm with fixed weights ``2^{k1/p1' + k2/p2'}`` applied
    to the normalized brackets ``[2^{-k1-k2} sum (a^{*2,*1})^2]^{1/2}``.
    """
    e = Exponents(p, q)
    r = np.asarray(iterated_rearrange_seq(a).entries)
    sqrtS = _block_sqrt_table(r)
    nu1 = 1.0 / e.conjugate(0) - 0.5
    nu2 = 1.0 / e.conjugate(1) - 0.5
    return _seq_block_core(sqrtS, nu1, nu2, q[0], q[1])


def grand_seq_norm(a: Sequence2D, e: Exponents, gp: GrandParams,
                   sign: str = "plus") -> GrandNormResult:
    """Grand sequence norm: sup over the epsilon grid of ``eps^theta`` times
    the nested block sums with weights ``2^{k(1/p +/- eps)}``.

    ``sign="plus"`` follows the defining display (which diverges for any
    nontrivial sequence whenever ``p <= 2``); ``sign="minus"`` uses the
    damped exponent ``2^{k(1/p - eps)}`` consistent with the way the norm is
    consumed downstream.  The grid supremum under-approximates.
    """
    if sign not in ("plus", "minus"):
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    t1, t2 = gp.theta
    if t1 < 0 or t2 < 0:
        raise ValueError("grand sequence norm is defined for theta >= 0")
    r = np.asarray(iterated_rearrange_seq(a).entries)
    sqrtS = _block_sqrt_table(r)
    base = [0.0 if pi == INF else 1.0 / pi for pi in e.p]
    s = 1.0 if sign == "plus" else -1.0
    e1 = _eps_grid(gp, 0, 1.0)
    e2 = _eps_grid(gp, 1, 1.0)
    if t1 == 0:
        e1 = np.concatenate([e1, [0.0]])
    if t2 == 0:
        e2 = np.concatenate([e2, [0.0]])
    best = -INF
    best_eps = (float(e1[0]), float(e2[0]))
    for x1 in e1:
        w1 = x1**t1 if (x1 > 0 or t1 > 0) else 1.0
        nu1 = base[0] + s * x1 - 0.5
        for x2 in e2:
            w2 = x2**t2 if (x2 > 0 or t2 > 0) else 1.0
            nu2 = base[1] + s * x2 - 0.5
            val = w1 * w2 * _seq_block_core(sqrtS, nu1, nu2, e.q[0], e.q[1])
            if val > best:
                best = val
                best_eps = (float(x1), float(x2))
    return GrandNormResult(float(best), best_eps, "under")


# ---------------------------------------------------------------------------
# log-weighted sup form and the dyadic sup characterization


def _log_weight_right_endpoints(ncells: int, h: float, inv_p: float,
                                theta: float) -> np.ndarray:
    """Per-cell suprema of ``t^{1/p} |ln t|^{-theta}`` over ``(jh, (j+1)h]``.

    On (0,1) the weight is strictly increasing, so the supremum sits at the
    right endpoint; the last cell's endpoint ``t = 1`` gives ``+inf``.
    """
    b = np.arange(1, ncells + 1) * h
    out = np.empty(ncells)
    interior = b < 1.0
    out[interior] = b[interior] ** inv_p * (-np.log(b[interior])) ** -theta
    out[~interior] = INF
    return out


def logweight_sup_norm(f: DyadicStep2D, p: tuple[float, float],
                       theta: tuple[float, float]) -> float:
    """``sup_{t in (0,1)^2} t1^{1/p1} t2^{1/p2} / (|ln t1|^th1 |ln t2|^th2)``
    applied to the iterated rearrangement.

    The supremum is one-sided on (0,1): it is ``+inf`` exactly when the
    rearranged function is positive on a cell touching ``t = 1``.
    """
    if any(pi == INF for pi in p):
        raise ValueError("log-weighted sup form requires finite p")
    if any(ti <= 0 for ti in theta):
        raise ValueError("log-weighted sup form requires theta > 0")
    g = np.asarray(iterated_rearrange_2d(f).values)
    h1, h2 = f.widths
    r2, r1 = g.shape
    w1 = _log_weight_right_endpoints(r1, h1, 1.0 / p[0], theta[0])
    w2 = _log_weight_right_endpoints(r2, h2, 1.0 / p[1], theta[1])
    weights = np.outer(w2, w1)
    masked = np.where(g > 0, weights * np.where(g > 0, g, 1.0), 0.0)
    return float(np.max(masked)) if masked.size else 0.0


def _dyadic_samples(g: np.ndarray, axis_len: int, level: int) -> np.ndarray:
    """Indices of the cells containing ``t = 2^m`` for ``m = -1 .. -(level+1)``."""
    ms = np.arange(1, level + 2)
    return np.minimum((2.0**-ms * axis_len).astype(int), axis_len - 1)


def discrete_grand_norm_P6(f: DyadicStep2D, e: Exponents,
                           theta: tuple[float, float],
                           k_max: int = 2**12) -> float:
    """Dyadic sup characterization of the sup-form grand norm.

    Scans integer ``k_i in {2..k_max}`` of ``k1^-th1 k2^-th2`` times the
    nested dyadic sums of ``2^{m(1/p + 1/k)} g(2^{m1}, 2^{m2})`` over
    ``m <= 0``; equals the grand Lorentz norm up to absolute constants and
    serves as a cross-check oracle.  A monotone bound on the tail of the
    ``k`` scan allows early exit.
    """
    if any(ti <= 0 for ti in theta):
        raise ValueError("requires theta > 0")
    if any(pi == INF for pi in e.p):
        raise ValueError("requires finite p")
    tau1, tau2 = e.q
    g = np.asarray(iterated_rearrange_2d(f).values)
    n1, n2 = f.levels
    r2, r1 = g.shape
    # samples v[i2, i1] = g(2^{-m1}, 2^{-m2}) for m = 1 .. level+1; the last
    # sample repeats for all deeper m (first cell), handled via closed tails
    i1 = _dyadic_samples(g, r1, n1)
    i2 = _dyadic_samples(g, r2, n2)
    v = g[np.ix_(i2, i1)]  # (len m2, len m1)
    m1 = np.arange(1, n1 + 2)
    m2 = np.arange(1, n2 + 2)

    def nested(c1: float, c2: float) -> float:
        """Nested (tau1, tau2) dyadic sums with per-axis weights 2^{-m c}."""
        w1 = 2.0 ** (-m1 * c1)
        w2 = 2.0 ** (-m2 * c2)
        if tau1 == INF:
            inner = np.max(v * w1, axis=1)
        else:
            terms = (v * w1) ** tau1
            tail = v[:, -1] ** tau1 * _geom_tail(-c1 * tau1, n1 + 2)
            inner = (terms.sum(axis=1) + tail) ** (1.0 / tau1)
        if tau2 == INF:
            return float(np.max(inner * w2))
        terms = (inner * w2) ** tau2
        tail = inner[-1] ** tau2 * _geom_tail(-c2 * tau2, n2 + 2)
        return float((terms.sum() + tail) ** (1.0 / tau2))

    inv_p1 = 1.0 / e.p[0]
    inv_p2 = 1.0 / e.p[1]
    limit = nested(inv_p1, inv_p2)  # k -> inf bound, finite for finite p
    best = 0.0
    for k2 in range(2, k_max + 1):
        if k2**-theta[1] * 2.0 ** -theta[0] * limit <= best:
            break
        for k1 in range(2, k_max + 1):
            if k1**-theta[0] * k2**-theta[1] * limit <= best:
                break
            val = k1**-theta[0] * k2**-theta[1] * nested(
                inv_p1 + 1.0 / k1, inv_p2 + 1.0 / k2)
            if val > best:
                best = val
    return best


# ---------------------------------------------------------------------------
# JSON request surface


def _parse_pair(raw) -> tuple[float, float]:
    def one(x):
        if isinstance(x, str) and x.lower() in ("inf", "infinity"):
            return INF
        return float(x)

    return one(raw[0]), one(raw[1])


def evaluate_norm_request(req: dict, obj) -> dict:
    """Evaluate a norm request against a grid or sequence.

    ``req`` follows ``{"norm": ..., "p": [...], "q": [...], "theta": [...],
    "sign": ..., "epsJ": ...}``; the response reports ``value``,
    ``approx_direction`` and, for grand norms, ``argmax_eps``.
    """
    kind = req["norm"]
    p = _parse_pair(req.get("p", (2, 2)))
    q = _parse_pair(req.get("q", (2, 2)))
    theta = tuple(float(x) for x in req.get("theta", (0.0, 0.0)))
    eps_j = int(req.get("epsJ", 24))
    if kind == "mixed":
        if not isinstance(obj, DyadicStep2D):
            raise TypeError("mixed norm needs a grid")
        return {"value": mixed_lebesgue_norm(obj, p),
                "approx_direction": "exact", "argmax_eps": None}
    if kind == "lorentz":
        return {"value": lorentz_norm(obj, Exponents(p, q)),
                "approx_direction": "exact", "argmax_eps": None}
    if kind == "grand":
        res = grand_lorentz_norm(obj, Exponents(p, q),
                                 GrandParams(theta, eps_levels=eps_j))
        return {"value": res.value, "approx_direction": res.direction,
                "argmax_eps": list(res.eps)}
    if kind == "seq_grand":
        if not isinstance(obj, Sequence2D):
            raise TypeError("seq_grand norm needs a sequence")
        res = grand_seq_norm(obj, Exponents(p, q),
                             GrandParams(theta, eps_levels=eps_j),
                             sign=req.get("sign", "plus"))
        return {"value": res.value, "approx_direction": res.direction,
                "argmax_eps": list(res.eps)}
    if kind == "logweight":
        return {"value": logweight_sup_norm(obj, p, theta),
                "approx_direction": "exact", "argmax_eps": None}
    if kind == "p6":
        return {"value": discrete_grand_norm_P6(obj, Exponents(p, q), theta),
                "approx_direction": "under", "argmax_eps": None}
    raise ValueError(f"unknown norm kind {kind!r}")
