"""Classic symmetric means, their duals, and the standard weighted means.

All evaluators accept floats or numpy float64 arrays and broadcast.  The
logarithmic and identric means switch to short series in h = log(b/a)
near equal arguments, where their closed forms are 0/0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .numerics import log_ratio

__all__ = [
    "MeanKind",
    "WeightClass",
    "PositivePair",
    "Weight",
    "SymmetricMean",
    "MEANS",
    "classic_mean",
    "arithmetic_mean",
    "geometric_mean",
    "harmonic_mean",
    "log_mean",
    "identric_mean",
    "log_mean_dual",
    "identric_mean_dual",
    "weighted_arithmetic",
    "weighted_geometric",
    "weighted_harmonic",
    "weighted_standard",
    "V_EPS",
    "H_SERIES",
]

# weights closer than this to 0 or 1 are treated as exact endpoints by the
# weighted log/identric families (their formulas carry 1/v and 1/(1-v))
V_EPS = 1e-9
# below this |log(b/a)| the log/identric means use their Taylor series
H_SERIES = 1e-8


class MeanKind(str, Enum):
    MIN = "min"
    MAX = "max"
    ARITH = "arith"
    GEOM = "geom"
    HARM = "harm"
    LOG = "log"
    IDENTRIC = "identric"
    LOG_DUAL = "log_dual"
    IDENTRIC_DUAL = "identric_dual"


class WeightClass(str, Enum):
    ENDPOINT0 = "endpoint0"
    INTERIOR = "interior"
    MIDPOINT = "midpoint"
    ENDPOINT1 = "endpoint1"


@dataclass(frozen=True)
class PositivePair:
    """Ordered pair of strictly positive reals, the domain of every mean."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (np.isfinite(a) and np.isfinite(b)):
            raise ValueError(f"pair entries must be finite, got ({self.a}, {self.b})")
        if a <= 0.0 or b <= 0.0:
            raise ValueError(f"pair entries must be positive, got ({self.a}, {self.b})")
        r = b / a
        if not np.isfinite(r) or r == 0.0:
            raise ValueError(f"ratio b/a must be finite and nonzero, got {r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class Weight:
    """A weight v in [0, 1] with its exact classification."""

    v: float
    kind: WeightClass = field(init=False)

    def __post_init__(self):
        v = float(self.v)
        if not (0.0 <= v <= 1.0):
            raise ValueError(f"weight must lie in [0, 1], got {self.v}")
        if v == 0.0:
            k = WeightClass.ENDPOINT0
        elif v == 1.0:
            k = WeightClass.ENDPOINT1
        elif v == 0.5:
            k = WeightClass.MIDPOINT
        else:
            k = WeightClass.INTERIOR
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "kind", k)


def _pair(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return np.broadcast_arrays(a, b)


def arithmetic_mean(a, b):
    a, b = _pair(a, b)
    return 0.5 * (a + b)


def geometric_mean(a, b):
    # sqrt(a)*sqrt(b) rather than sqrt(a*b): the product can overflow
    a, b = _pair(a, b)
    return np.sqrt(a) * np.sqrt(b)


def harmonic_mean(a, b):
    a, b = _pair(a, b)
    return 2.0 / (1.0 / a + 1.0 / b)


def log_mean(a, b):
    """(b - a) / log(b/a), extended by continuity across a = b."""
    a, b = _pair(a, b)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    h = log_ratio(lo, hi)
    small = h < H_SERIES
    hs = np.where(small, 1.0, h)
    series = lo * (1.0 + h * (0.5 + h / 6.0))
    return np.where(small, series, (hi - lo) / hs)


def identric_mean(a, b):
    """exp(-1) * (b**b / a**a) ** (1/(b-a)), extended across a = b."""
    a, b = _pair(a, b)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    h = log_ratio(lo, hi)
    small = h < H_SERIES
    hs = np.where(small, 1.0, h)
    series = lo * (1.0 + h * (0.5 + h * (5.0 / 24.0)))
    with np.errstate(over="ignore"):
        direct = lo * np.exp(hs / (-np.expm1(-hs)) - 1.0)
    return np.where(small, series, direct)


def log_mean_dual(a, b):
    a, b = _pair(a, b)
    return 1.0 / log_mean(1.0 / a, 1.0 / b)


def identric_mean_dual(a, b):
    a, b = _pair(a, b)
    return 1.0 / identric_mean(1.0 / a, 1.0 / b)


def weighted_arithmetic(a, b, v):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    return (1.0 - v) * a + v * b


def weighted_geometric(a, b, v):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    return a * np.exp(v * log_ratio(a, b))


def weighted_harmonic(a, b, v):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    return 1.0 / ((1.0 - v) / a + v / b)


class SymmetricMean:
    """An evaluable symmetric homogeneous binary mean."""

    def __init__(self, name, fn):
        self.name = name
        self._fn = fn

    def __call__(self, a, b):
        return self._fn(a, b)

    def dual(self):
        """Dual mean 1 / m(1/a, 1/b), computed by definition."""
        base = self._fn
        if self.name == "min":
            return SymmetricMean("max", lambda a, b: np.maximum(*_pair(a, b)))
        if self.name == "max":
            return SymmetricMean("min", lambda a, b: np.minimum(*_pair(a, b)))
        return SymmetricMean(
            f"{self.name}*",
            lambda a, b, _f=base: 1.0 / _f(1.0 / np.asarray(a, dtype=np.float64),
                                           1.0 / np.asarray(b, dtype=np.float64)),
        )

    def __repr__(self):
        return f"SymmetricMean({self.name!r})"


MEANS = {
    MeanKind.MIN: SymmetricMean("min", lambda a, b: np.minimum(*_pair(a, b))),
    MeanKind.MAX: SymmetricMean("max", lambda a, b: np.maximum(*_pair(a, b))),
    MeanKind.ARITH: SymmetricMean("arith", arithmetic_mean),
    MeanKind.GEOM: SymmetricMean("geom", geometric_mean),
    MeanKind.HARM: SymmetricMean("harm", harmonic_mean),
    MeanKind.LOG: SymmetricMean("log", log_mean),
    MeanKind.IDENTRIC: SymmetricMean("identric", identric_mean),
    MeanKind.LOG_DUAL: SymmetricMean("log_dual", log_mean_dual),
    MeanKind.IDENTRIC_DUAL: SymmetricMean("identric_dual", identric_mean_dual),
}


def classic_mean(kind, a, b=None):
    """Evaluate a classic mean by kind tag on (a, b) or on a PositivePair."""
    if isinstance(a, PositivePair):
        a, b = a.a, a.b
    kind = MeanKind(kind)
    return MEANS[kind](a, b)


_WEIGHTED_STANDARD = {
    MeanKind.ARITH: weighted_arithmetic,
    MeanKind.GEOM: weighted_geometric,
    MeanKind.HARM: weighted_harmonic,
}


def weighted_standard(kind, a, b, v):
    """Weighted arithmetic / geometric / harmonic mean."""
    kind = MeanKind(kind)
    try:
        fn = _WEIGHTED_STANDARD[kind]
    except KeyError:
        raise ValueError(f"no standard weighted form for kind {kind.value!r}") from None
    return fn(a, b, v)
