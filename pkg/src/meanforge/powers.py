"""Power binomial, Stolarsky, and power logarithmic/difference/exponential
families, plus their weighted versions.

Everything runs through the identity b**t - a**t = 2 (ab)**(t/2) sinh(t h/2)
with h = log(b/a), which turns the whole two-parameter family into

    log S_{p,q}(a, b) = mu + c * slope(p c, q c),
    mu = log sqrt(ab),  c = h / 2,

where slope is the stable divided difference of log(sinh(z)/z) from
``numerics``.  Every degenerate branch (p = 0, q = 0, p = q, a = b) is the
exact analytic limit of the same expression, so values are continuous
across the classification radius to ~1e-12 rather than the required 1e-8.

The compositional weighted forms are the canonical implementations; the
explicit closed forms (valid away from the degenerate parameters) are
kept as independent cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .numerics import langevin, log_cosh, log_ratio, log_sinhc, log_sinhc_slope
from .scalars import geometric_mean, weighted_arithmetic, weighted_geometric

__all__ = [
    "DELTA",
    "StolarskyBranch",
    "StolarskyParams",
    "binomial_mean",
    "weighted_binomial",
    "stolarsky_mean",
    "stolarsky_from_params",
    "power_log_mean",
    "power_difference_mean",
    "power_exponential_mean",
    "second_power_log_mean",
    "power_family",
    "POWER_KINDS",
    "weighted_stolarsky",
    "weighted_stolarsky_explicit",
    "weighted_power_log",
    "weighted_power_difference",
    "weighted_power_exponential",
    "weighted_second_power_log",
    "weighted_power",
    "weighted_power_explicit",
    "WEIGHTED_POWER_KINDS",
]

# classification radius for degenerate Stolarsky parameters
DELTA = 1e-6


class StolarskyBranch(str, Enum):
    GENERIC = "generic"
    P_ZERO = "p_zero"
    Q_ZERO = "q_zero"
    P_EQUALS_Q = "p_equals_q"
    BOTH_ZERO = "both_zero"


@dataclass(frozen=True)
class StolarskyParams:
    """Parameter pair (p, q) with its degeneracy classification."""

    p: float
    q: float
    branch: StolarskyBranch = field(init=False)

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (np.isfinite(p) and np.isfinite(q)):
            raise ValueError(f"parameters must be finite, got ({self.p}, {self.q})")
        if abs(p) < DELTA and abs(q) < DELTA:
            br = StolarskyBranch.BOTH_ZERO
        elif abs(p) < DELTA:
            br = StolarskyBranch.P_ZERO
        elif abs(q) < DELTA:
            br = StolarskyBranch.Q_ZERO
        elif abs(p - q) < DELTA:
            br = StolarskyBranch.P_EQUALS_Q
        else:
            br = StolarskyBranch.GENERIC
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "branch", br)

    def swapped(self):
        return StolarskyParams(self.q, self.p)


def _abp(p, a, b):
    p = np.asarray(p, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return np.broadcast_arrays(p, a, b)


def _mu_c(a, b):
    """(log sqrt(ab), log(b/a)/2)."""
    return 0.5 * (np.log(a) + np.log(b)), 0.5 * log_ratio(a, b)


def binomial_mean(p, a, b):
    """Power binomial mean ((a^p + b^p)/2)^(1/p); geometric at p = 0."""
    p, a, b = _abp(p, a, b)
    mu, c = _mu_c(a, b)
    ps = np.where(p == 0.0, 1.0, p)
    val = np.exp(mu + log_cosh(ps * c) / ps)
    return np.where(p == 0.0, geometric_mean(a, b), np.where(a == b, a, val))


def weighted_binomial(p, a, b, v):
    """Weighted power binomial mean ((1-v) a^p + v b^p)^(1/p)."""
    p = np.asarray(p, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    p, a, b, v = np.broadcast_arrays(p, a, b, v)
    h = log_ratio(a, b)
    w = p * h
    ps = np.where(p == 0.0, 1.0, p)
    # anchor at whichever argument carries the larger p-th power; exact
    # endpoint weights short-circuit (the anchored log1p hits -1 there
    # once expm1(-|w|) rounds to -1)
    pos = w >= 0.0
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        interior = np.where(
            pos,
            np.exp(np.log(b) + np.log1p((1.0 - v) * np.expm1(-w)) / ps),
            np.exp(np.log(a) + np.log1p(v * np.expm1(w)) / ps),
        )
    interior = np.where(v == 0.0, a, np.where(v == 1.0, b, interior))
    return np.where(p == 0.0, weighted_geometric(a, b, v), np.where(a == b, a, interior))


def stolarsky_mean(p, q, a, b):
    """Stolarsky mean ((p/q)(b^q - a^q)/(b^p - a^p))^(1/(q-p)) with all limits."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    p, q, a, b = np.broadcast_arrays(p, q, a, b)
    mu, c = _mu_c(a, b)
    val = np.exp(mu + c * log_sinhc_slope(p * c, q * c))
    return np.where(a == b, a, val)


def stolarsky_from_params(params: StolarskyParams, a, b):
    return stolarsky_mean(params.p, params.q, a, b)


def power_log_mean(p, a, b):
    """((b^{p+1} - a^{p+1}) / ((p+1)(b-a)))^(1/p); I at p = 0, L at p = -1."""
    p, a, b = _abp(p, a, b)
    mu, c = _mu_c(a, b)
    val = np.exp(mu + c * log_sinhc_slope(c, (p + 1.0) * c))
    return np.where(a == b, a, val)


def power_difference_mean(p, a, b):
    """(p/(p+1)) (b^{p+1} - a^{p+1}) / (b^p - a^p) with its limit branches."""
    p, a, b = _abp(p, a, b)
    mu, c = _mu_c(a, b)
    val = np.exp(mu + c * log_sinhc_slope(p * c, (p + 1.0) * c))
    return np.where(a == b, a, val)


def power_exponential_mean(p, a, b):
    """exp(-1/p + (a^p log a - b^p log b)/(a^p - b^p)); geometric at p = 0."""
    p, a, b = _abp(p, a, b)
    mu, c = _mu_c(a, b)
    val = np.exp(mu + c * langevin(p * c))
    return np.where(a == b, a, val)


def second_power_log_mean(p, a, b):
    """(((b^p - a^p)/p) / log(b/a))^(1/p); geometric at p = 0."""
    p, a, b = _abp(p, a, b)
    mu, c = _mu_c(a, b)
    val = np.exp(mu + c * log_sinhc_slope(np.zeros_like(p), p * c))
    return np.where(a == b, a, val)


POWER_KINDS = ("Lp", "Dp", "Ip", "calLp")

_POWER_FAMILY = {
    "Lp": power_log_mean,
    "Dp": power_difference_mean,
    "Ip": power_exponential_mean,
    "calLp": second_power_log_mean,
}


def power_family(kind, p, a, b):
    """Dispatch on kind in {"Lp", "Dp", "Ip", "calLp"}."""
    try:
        fn = _POWER_FAMILY[kind]
    except KeyError:
        raise ValueError(f"unknown power-mean kind {kind!r}") from None
    return fn(p, a, b)


# ----------------------------------------------------------------------
# weighted versions built by splitting at an inner weighted mean
# ----------------------------------------------------------------------


def weighted_stolarsky(p, q, a, b, v, form="via_Bp"):
    """Weighted Stolarsky mean, compositional form.

    via_Bp splits at the weighted binomial B_{p;v} and recombines with
    B_{q-p;v}; via_Bq swaps the roles of p and q.  Both are weighted
    means with midpoint S_{p,q}; they do not coincide in general.
    """
    if form == "via_Bq":
        p, q = q, p
    elif form != "via_Bp":
        raise ValueError(f"unknown weighted Stolarsky form {form!r}")
    inner = weighted_binomial(p, a, b, v)
    s1 = stolarsky_mean(p, q, inner, a)
    s2 = stolarsky_mean(p, q, inner, b)
    return weighted_binomial(np.asarray(q, dtype=np.float64) - p, s1, s2, v)


def _abpv(p, a, b, v):
    p = np.asarray(p, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    return np.broadcast_arrays(p, a, b, v)


def _sorted_pair(a, b, v):
    swap = a > b
    return np.where(swap, b, a), np.where(swap, a, b), np.where(swap, 1.0 - v, v)


def _binomial_offsets(p, a, b, v):
    """(log B - log a, log B - log b) for B = B_{p;v}(a, b), cancellation-free.

    One offset comes straight out of a log1p/expm1 pair; the other is
    recovered through h = log(b/a), which keeps the relative error of both
    bounded by ~eps/min(v, 1-v) even for nearly equal arguments.
    """
    h = log_ratio(a, b)
    w = p * h
    ps = np.where(p == 0.0, 1.0, p)
    pos = w >= 0.0
    with np.errstate(over="ignore", invalid="ignore"):
        d_b_pos = np.log1p((1.0 - v) * np.expm1(-w)) / ps
        d_a_neg = np.log1p(v * np.expm1(w)) / ps
    d_a = np.where(pos, h + d_b_pos, d_a_neg)
    d_b = np.where(pos, d_b_pos, d_a_neg - h)
    zero = p == 0.0
    d_a = np.where(zero, v * h, d_a)
    d_b = np.where(zero, -(1.0 - v) * h, d_b)
    return d_a, d_b


def _nabla_offsets(a, b, v):
    """(log n - log a, log n - log b) for n = (1-v) a + v b, cancellation-free."""
    return np.log1p(v * (b - a) / a), np.log1p((1.0 - v) * (a - b) / b)


def _log_power_gap(r, logx, d):
    """log((y^r - x^r)/r) for the pair {x, y = x e^d}, any r != 0, any sign of d."""
    return np.log(np.abs(d)) + r * (logx + 0.5 * d) + log_sinhc(0.5 * r * d)


def weighted_stolarsky_explicit(p, q, a, b, v, form="via_Bp"):
    """Printed closed form of the weighted Stolarsky mean.

    Requires p != 0, q != 0, p != q and a != b; the compositional form is
    the one that is defined everywhere.
    """
    if form == "via_Bq":
        p, q = q, p
    elif form != "via_Bp":
        raise ValueError(f"unknown weighted Stolarsky form {form!r}")
    q = np.asarray(q, dtype=np.float64)
    p, a, b, v = _abpv(p, a, b, v)
    p, q = np.broadcast_arrays(p, q)
    a, b, v = _sorted_pair(a, b, v)
    la = np.log(a)
    h = log_ratio(a, b)
    d_a, d_b = _binomial_offsets(p, a, b, v)
    t1 = np.log((1.0 - v) / v) + _log_power_gap(q, la, d_a)
    t2 = np.log(v / (1.0 - v)) + _log_power_gap(q, la + d_a, -d_b)
    ln_den = _log_power_gap(p, la, h)
    return np.exp((np.logaddexp(t1, t2) - ln_den) / (q - p))


def weighted_power_log(p, a, b, v):
    """B_{p;v} split of the power logarithmic mean at the arithmetic point."""
    n = weighted_arithmetic(a, b, v)
    return weighted_binomial(p, power_log_mean(p, n, a), power_log_mean(p, n, b), v)


def weighted_power_difference(p, a, b, v):
    """Arithmetic split of the power difference mean at the binomial point."""
    inner = weighted_binomial(p, a, b, v)
    return weighted_arithmetic(
        power_difference_mean(p, inner, a), power_difference_mean(p, inner, b), v
    )


def weighted_power_exponential(p, a, b, v):
    """Geometric split of the power exponential mean at the binomial point."""
    inner = weighted_binomial(p, a, b, v)
    return weighted_geometric(
        power_exponential_mean(p, inner, a), power_exponential_mean(p, inner, b), v
    )


def weighted_second_power_log(p, a, b, v):
    """B_{-p;v} split of the second power logarithmic mean at the binomial point."""
    p = np.asarray(p, dtype=np.float64)
    inner = weighted_binomial(p, a, b, v)
    return weighted_binomial(
        -p, second_power_log_mean(p, inner, a), second_power_log_mean(p, inner, b), v
    )


def _weighted_power_log_explicit(p, a, b, v):
    p, a, b, v = _abpv(p, a, b, v)
    a, b, v = _sorted_pair(a, b, v)
    r = p + 1.0
    la = np.log(a)
    h = log_ratio(a, b)
    d_a, d_b = _nabla_offsets(a, b, v)
    t1 = np.log((1.0 - v) / v) + _log_power_gap(r, la, d_a)
    t2 = np.log(v / (1.0 - v)) + _log_power_gap(r, la + d_a, -d_b)
    ln_den = _log_power_gap(1.0, la, h)
    return np.exp((np.logaddexp(t1, t2) - ln_den) / p)


def _weighted_power_difference_explicit(p, a, b, v):
    p, a, b, v = _abpv(p, a, b, v)
    a, b, v = _sorted_pair(a, b, v)
    r = p + 1.0
    la = np.log(a)
    h = log_ratio(a, b)
    d_a, d_b = _binomial_offsets(p, a, b, v)
    t1 = np.log((1.0 - v) / v) + _log_power_gap(r, la, d_a)
    t2 = np.log(v / (1.0 - v)) + _log_power_gap(r, la + d_a, -d_b)
    ln_den = _log_power_gap(p, la, h)
    return np.exp(np.logaddexp(t1, t2) - ln_den)


def _weighted_second_power_log_explicit(p, a, b, v):
    p, a, b, v = _abpv(p, a, b, v)
    a, b, v = _sorted_pair(a, b, v)
    la = np.log(a)
    h = log_ratio(a, b)
    d_a, d_b = _binomial_offsets(p, a, b, v)
    d = ((1.0 - v) / v) * d_a - (v / (1.0 - v)) * d_b
    return np.exp((_log_power_gap(p, la, h) - np.log(d)) / p)


def _weighted_power_exponential_explicit(p, a, b, v):
    """Closed form obtained by substituting the exponential-mean formula
    into its composition; evaluated relative to the inner binomial point."""
    p, a, b, v = _abpv(p, a, b, v)
    a, b, v = _sorted_pair(a, b, v)
    d_a, d_b = _binomial_offsets(p, a, b, v)
    ln_inner = np.log(a) + d_a
    e_a = np.expm1(-p * d_a)
    e_b = np.expm1(-p * d_b)
    num = ((1.0 - v) / v) * d_a * (1.0 + e_a) - (v / (1.0 - v)) * d_b * (1.0 + e_b)
    return np.exp(ln_inner - 1.0 / p + num / (e_b - e_a))


WEIGHTED_POWER_KINDS = ("Lpv", "Dpv", "Ipv", "calLpv")

_WEIGHTED_POWER = {
    "Lpv": (weighted_power_log, _weighted_power_log_explicit),
    "Dpv": (weighted_power_difference, _weighted_power_difference_explicit),
    "Ipv": (weighted_power_exponential, _weighted_power_exponential_explicit),
    "calLpv": (weighted_second_power_log, _weighted_second_power_log_explicit),
}


def weighted_power(kind, p, a, b, v):
    """Compositional weighted power mean, kind in WEIGHTED_POWER_KINDS."""
    try:
        fn, _ = _WEIGHTED_POWER[kind]
    except KeyError:
        raise ValueError(f"unknown weighted power-mean kind {kind!r}") from None
    return fn(p, a, b, v)


def weighted_power_explicit(kind, p, a, b, v):
    """Explicit closed form (cross-check path; needs nondegenerate p)."""
    try:
        _, fn = _WEIGHTED_POWER[kind]
    except KeyError:
        raise ValueError(f"unknown weighted power-mean kind {kind!r}") from None
    return fn(p, a, b, v)
