"""Weighted logarithmic and identric means.

Each family carries two independent code paths: the direct closed form
(canonical implementation) and the composition through classic means of
intermediate points (kept for cross-validation).  Duals are computed by
definition, 1/M_v(1/a, 1/b); their compositional identities are test
oracles, not implementations.

Conventions shared by all six families:

- weights within V_EPS of 0 or 1 return a resp. b exactly (the closed
  forms carry 1/v and 1/(1-v) factors);
- exactly equal arguments return a (every formula is 0/0 there);
- the direct forms reflect (a, b, v) -> (b, a, 1-v) onto v <= 1/2 first,
  which caps the (1-v)/v amplification and makes reflection exact.
"""

from __future__ import annotations

import numpy as np

from .numerics import log_ratio
from .scalars import (
    H_SERIES,
    V_EPS,
    identric_mean,
    identric_mean_dual,
    log_mean,
    log_mean_dual,
    weighted_arithmetic,
    weighted_geometric,
    weighted_harmonic,
)

__all__ = [
    "weighted_log",
    "weighted_log_composed",
    "weighted_identric",
    "weighted_identric_composed",
    "weighted_log_dual",
    "weighted_log_dual_composed",
    "weighted_identric_dual",
    "weighted_identric_dual_composed",
    "second_weighted_log",
    "second_weighted_log_composed",
    "second_weighted_log_dual",
    "second_weighted_log_dual_composed",
]


def _bcast(a, b, v):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    return np.broadcast_arrays(a, b, v)


def _reflect(a, b, v):
    """Map v > 1/2 onto the mirror configuration; 1 - v is exact there."""
    swap = v > 0.5
    a2 = np.where(swap, b, a)
    b2 = np.where(swap, a, b)
    v2 = np.where(swap, 1.0 - v, v)
    return a2, b2, v2


def _endpoints(a2, b2, v2, interior):
    """Select endpoint values around an interior evaluation."""
    return np.where(v2 < V_EPS, a2, np.where(v2 > 1.0 - V_EPS, b2, interior))


def weighted_log(a, b, v):
    """Weighted logarithmic mean, direct closed form."""
    a, b, v = _bcast(a, b, v)
    a2, b2, v2 = _reflect(a, b, v)
    h = log_ratio(a2, b2)
    ok = (h != 0.0) & (v2 >= V_EPS) & (v2 <= 1.0 - V_EPS)
    hs = np.where(ok, h, 1.0)
    vs = np.where(ok, v2, 0.5)
    with np.errstate(over="ignore", invalid="ignore"):
        t = ((1.0 - vs) / vs) * np.expm1(vs * hs) \
            + (vs / (1.0 - vs)) * np.exp(vs * hs) * np.expm1((1.0 - vs) * hs)
        interior = a2 * (t / hs)
    return _endpoints(a2, b2, v2, np.where(h == 0.0, a2, interior))


def weighted_log_composed(a, b, v):
    """Weighted logarithmic mean composed from classic L at the geometric split."""
    a, b, v = _bcast(a, b, v)
    g = weighted_geometric(a, b, v)
    interior = weighted_arithmetic(log_mean(g, a), log_mean(g, b), v)
    return np.where(v < V_EPS, a, np.where(v > 1.0 - V_EPS, b, interior))


def weighted_identric(a, b, v):
    """Weighted identric mean, direct closed form evaluated in log space."""
    a, b, v = _bcast(a, b, v)
    a2, b2, v2 = _reflect(a, b, v)
    h = log_ratio(a2, b2)
    ok = (h != 0.0) & (v2 >= V_EPS) & (v2 <= 1.0 - V_EPS)
    hs = np.where(ok, h, 1.0)
    vs = np.where(ok, v2, 0.5)
    with np.errstate(over="ignore", invalid="ignore"):
        em = np.expm1(hs)                    # (b - a)/a in ratio coordinates
        t_mid = ((1.0 - 2.0 * vs) / (vs * (1.0 - vs))) * (1.0 + vs * em) * np.log1p(vs * em)
        t_hi = (vs / (1.0 - vs)) * (em + 1.0) * hs
        interior = a2 * np.exp((t_mid + t_hi) / em - 1.0)
    return _endpoints(a2, b2, v2, np.where(h == 0.0, a2, interior))


def weighted_identric_composed(a, b, v):
    """Weighted identric mean composed from classic I at the arithmetic split."""
    a, b, v = _bcast(a, b, v)
    n = weighted_arithmetic(a, b, v)
    interior = weighted_geometric(identric_mean(n, a), identric_mean(n, b), v)
    return np.where(v < V_EPS, a, np.where(v > 1.0 - V_EPS, b, interior))


def weighted_log_dual(a, b, v):
    """Dual of the weighted logarithmic mean, 1 / L_v(1/a, 1/b)."""
    a, b, v = _bcast(a, b, v)
    return 1.0 / weighted_log(1.0 / a, 1.0 / b, v)


def weighted_log_dual_composed(a, b, v):
    """Dual weighted log mean composed from classic L* at the geometric split."""
    a, b, v = _bcast(a, b, v)
    g = weighted_geometric(a, b, v)
    interior = weighted_harmonic(log_mean_dual(g, a), log_mean_dual(g, b), v)
    return np.where(v < V_EPS, a, np.where(v > 1.0 - V_EPS, b, interior))


def weighted_identric_dual(a, b, v):
    """Dual of the weighted identric mean, 1 / I_v(1/a, 1/b)."""
    a, b, v = _bcast(a, b, v)
    return 1.0 / weighted_identric(1.0 / a, 1.0 / b, v)


def weighted_identric_dual_composed(a, b, v):
    """Dual weighted identric mean composed from classic I* at the harmonic split."""
    a, b, v = _bcast(a, b, v)
    m = weighted_harmonic(a, b, v)
    interior = weighted_geometric(identric_mean_dual(m, a), identric_mean_dual(m, b), v)
    return np.where(v < V_EPS, a, np.where(v > 1.0 - V_EPS, b, interior))


def _split_at_arithmetic(a, b, v):
    """((1-v)/v) log(n/a) + (v/(1-v)) log(b/n) at n = (1-v)a + vb.

    The increments v(b-a)/a and (1-v)(a-b)/b are formed directly so the
    rounding of n never gets amplified by the near-equal-argument logs.
    Both terms share the sign of b - a: no cancellation at any weight.
    """
    vs = np.clip(v, V_EPS, 1.0 - V_EPS)
    return ((1.0 - vs) / vs) * np.log1p(vs * (b - a) / a) \
        - (vs / (1.0 - vs)) * np.log1p((1.0 - vs) * (a - b) / b)


def _split_at_harmonic(a, b, v):
    """((1-v)/v) log(m/a) + (v/(1-v)) log(b/m) at the harmonic point m."""
    vs = np.clip(v, V_EPS, 1.0 - V_EPS)
    return -((1.0 - vs) / vs) * np.log1p(vs * (a - b) / b) \
        + (vs / (1.0 - vs)) * np.log1p((1.0 - vs) * (b - a) / a)


def second_weighted_log(a, b, v):
    """Second weighted logarithmic mean (harmonic split of L at the arithmetic point)."""
    a, b, v = _bcast(a, b, v)
    h = log_ratio(a, b)
    den = _split_at_arithmetic(a, b, v)
    ok = h != 0.0
    with np.errstate(invalid="ignore", divide="ignore"):
        interior = (b - a) / np.where(ok, den, 1.0)
    return np.where(v < V_EPS, a, np.where(v > 1.0 - V_EPS, b, np.where(ok, interior, a)))


def second_weighted_log_composed(a, b, v):
    a, b, v = _bcast(a, b, v)
    n = weighted_arithmetic(a, b, v)
    interior = weighted_harmonic(log_mean(n, a), log_mean(n, b), v)
    return np.where(v < V_EPS, a, np.where(v > 1.0 - V_EPS, b, interior))


def second_weighted_log_dual(a, b, v):
    """Dual of the second weighted logarithmic mean, explicit closed form.

    Evaluated as exp(log a + log b + log D - log|b - a|) so the product
    a*b never materializes (it can overflow for wide pairs).
    """
    a, b, v = _bcast(a, b, v)
    h = log_ratio(a, b)
    d = _split_at_harmonic(a, b, v)
    ok = h != 0.0
    with np.errstate(invalid="ignore", divide="ignore"):
        interior = np.exp(
            np.log(a) + np.log(b)
            + np.log(np.abs(np.where(ok, d, 1.0)))
            - np.log(np.abs(np.where(ok, b - a, 1.0)))
        )
    return np.where(v < V_EPS, a, np.where(v > 1.0 - V_EPS, b, np.where(ok, interior, a)))


def second_weighted_log_dual_composed(a, b, v):
    """Arithmetic split of L* at the harmonic point (the dual composition)."""
    a, b, v = _bcast(a, b, v)
    m = weighted_harmonic(a, b, v)
    interior = weighted_arithmetic(log_mean_dual(m, a), log_mean_dual(m, b), v)
    return np.where(v < V_EPS, a, np.where(v > 1.0 - V_EPS, b, interior))
