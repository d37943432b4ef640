"""Mean-composition calculus: resultant mean-map, stability and
stabilizability checks, the generic weighted-mean constructor, grid traces
of means, and the fixed-point stabilizer that recovers a mean from a pair
of stable means.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .scalars import (
    MEANS,
    MeanKind,
    SymmetricMean,
    weighted_arithmetic,
    weighted_geometric,
    weighted_harmonic,
)
from .weighted import (
    second_weighted_log,
    second_weighted_log_dual,
    weighted_identric,
    weighted_identric_dual,
    weighted_log,
    weighted_log_dual,
)

__all__ = [
    "resultant",
    "StabilizabilityReport",
    "check_stable",
    "check_stabilizable",
    "check_cross_mean",
    "WeightedFamily",
    "STANDARD_FAMILIES",
    "weighted_construct",
    "TABLE1_LABELS",
    "TABLE1_MEANS",
    "table1",
    "GridConfig",
    "MeanTrace",
    "NonConvergence",
    "StabilizeResult",
    "stabilize_fixed_point",
]


def resultant(m1, m2, m3):
    """Resultant mean-map R(m1, m2, m3)(a, b) = m1(m2(a, w), m2(w, b)), w = m3(a, b)."""

    def _eval(a, b):
        w = m3(a, b)
        return m1(m2(a, w), m2(w, b))

    names = ", ".join(getattr(m, "name", "?") for m in (m1, m2, m3))
    return SymmetricMean(f"R({names})", _eval)


@dataclass(frozen=True)
class StabilizabilityReport:
    """Outcome of a randomized residual check."""

    relation: str
    samples: int
    tolerance: float
    max_residual: float
    worst_input: tuple
    verdict: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "verdict", bool(self.max_residual <= self.tolerance))


def _sample_pairs(rng, n, ratio_span=8.0, scale_span=4.0):
    h = rng.uniform(-ratio_span, ratio_span, n)
    a = np.exp(rng.uniform(-scale_span, scale_span, n))
    return a, a * np.exp(h)


def check_stable(m, samples=2000, tol=1e-11, seed=0):
    """Randomized check of R(m, m, m) = m."""
    rng = np.random.default_rng(seed)
    a, b = _sample_pairs(rng, samples)
    ref = m(a, b)
    res = np.abs(resultant(m, m, m)(a, b) - ref) / ref
    i = int(np.argmax(res))
    return StabilizabilityReport(
        relation=f"R({m.name},{m.name},{m.name}) = {m.name}",
        samples=samples,
        tolerance=tol,
        max_residual=float(res[i]),
        worst_input=(float(a[i]), float(b[i])),
    )


def check_stabilizable(m1, m, m2, samples=2000, tol=1e-11, seed=0):
    """Randomized check of R(m1, m, m2) = m."""
    rng = np.random.default_rng(seed)
    a, b = _sample_pairs(rng, samples)
    ref = m(a, b)
    res = np.abs(resultant(m1, m, m2)(a, b) - ref) / ref
    i = int(np.argmax(res))
    return StabilizabilityReport(
        relation=f"R({m1.name},{m.name},{m2.name}) = {m.name}",
        samples=samples,
        tolerance=tol,
        max_residual=float(res[i]),
        worst_input=(float(a[i]), float(b[i])),
    )


_PERMS4 = None


def check_cross_mean(m, samples=500, tol=1e-11, seed=0):
    """Check that m(m(a,b), m(c,d)) is invariant under all permutations
    of the four arguments."""
    global _PERMS4
    if _PERMS4 is None:
        from itertools import permutations

        _PERMS4 = list(permutations(range(4)))
    rng = np.random.default_rng(seed)
    cols = [np.exp(rng.uniform(-4.0, 4.0, samples)) for _ in range(4)]
    ref = m(m(cols[0], cols[1]), m(cols[2], cols[3]))
    worst = np.zeros(samples)
    for perm in _PERMS4:
        x = [cols[k] for k in perm]
        val = m(m(x[0], x[1]), m(x[2], x[3]))
        worst = np.maximum(worst, np.abs(val - ref) / ref)
    i = int(np.argmax(worst))
    return StabilizabilityReport(
        relation=f"{m.name} x {m.name} symmetric in 4 arguments",
        samples=samples,
        tolerance=tol,
        max_residual=float(worst[i]),
        worst_input=tuple(float(c[i]) for c in cols),
    )


class WeightedFamily:
    """A v-indexed weighted mean family, callable as f(a, b, v)."""

    def __init__(self, name, fn):
        self.name = name
        self._fn = fn

    def __call__(self, a, b, v):
        return self._fn(a, b, v)

    def midpoint_mean(self):
        """The associated symmetric mean, frozen at v = 1/2."""
        return SymmetricMean(f"{self.name}[1/2]", lambda a, b: self._fn(a, b, 0.5))

    def __repr__(self):
        return f"WeightedFamily({self.name!r})"


STANDARD_FAMILIES = {
    "arith": WeightedFamily("arith_v", weighted_arithmetic),
    "geom": WeightedFamily("geom_v", weighted_geometric),
    "harm": WeightedFamily("harm_v", weighted_harmonic),
}


def weighted_construct(m, p_family, q_family):
    """Weighted family v -> q_v(M(p_v(a,b), a), M(p_v(a,b), b)) for symmetric M.

    With p, q stable and M the unique (q, p)-stabilizable mean, this is the
    weighted family associated with M; its midpoint is M itself.
    """

    def _eval(a, b, v):
        w = p_family(a, b, v)
        return q_family(m(w, a), m(w, b), v)

    return WeightedFamily(f"{m.name}[{p_family.name},{q_family.name}]", _eval)


# symmetric mean reconstructed by each (inner split p_v, outer recombine q_v)
# pairing of the three standard weighted families
TABLE1_LABELS = ("arith", "geom", "harm")
TABLE1_MEANS = {
    ("arith", "arith"): MeanKind.ARITH,
    ("arith", "geom"): MeanKind.IDENTRIC,
    ("arith", "harm"): MeanKind.LOG,
    ("geom", "arith"): MeanKind.LOG,
    ("geom", "geom"): MeanKind.GEOM,
    ("geom", "harm"): MeanKind.LOG_DUAL,
    ("harm", "arith"): MeanKind.LOG_DUAL,
    ("harm", "geom"): MeanKind.IDENTRIC_DUAL,
    ("harm", "harm"): MeanKind.HARM,
}

# the named weighted family realized in each cell (rows: p, columns: q)
TABLE1_FAMILIES = {
    ("arith", "arith"): ("arith_v", weighted_arithmetic),
    ("arith", "geom"): ("Iv", weighted_identric),
    ("arith", "harm"): ("calLv", second_weighted_log),
    ("geom", "arith"): ("Lv", weighted_log),
    ("geom", "geom"): ("geom_v", weighted_geometric),
    ("geom", "harm"): ("Lv_dual", weighted_log_dual),
    ("harm", "arith"): ("calLv_dual", second_weighted_log_dual),
    ("harm", "geom"): ("Iv_dual", weighted_identric_dual),
    ("harm", "harm"): ("harm_v", weighted_harmonic),
}


def table1(a, b, v, via_construct=True):
    """3x3 grid of weighted-mean values over rows p_v and columns q_v.

    With via_construct=True every entry is built by weighted_construct from
    the cell's symmetric mean; otherwise the named closed-form families are
    evaluated directly.
    """
    out = []
    for p_name in TABLE1_LABELS:
        row = []
        for q_name in TABLE1_LABELS:
            if via_construct:
                m = MEANS[TABLE1_MEANS[(p_name, q_name)]]
                fam = weighted_construct(
                    m, STANDARD_FAMILIES[p_name], STANDARD_FAMILIES[q_name]
                )
                row.append(float(fam(a, b, v)))
            else:
                row.append(float(TABLE1_FAMILIES[(p_name, q_name)][1](a, b, v)))
        out.append(row)
    return out


# ----------------------------------------------------------------------
# grid traces and the fixed-point stabilizer
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class GridConfig:
    """Log-spaced evaluation grid for mean traces; x = 1 is always a node."""

    points: int = 513
    half_width: float = 12.0

    def __post_init__(self):
        if self.points < 3 or self.points % 2 == 0:
            raise ValueError("points must be odd and >= 3 so that x = 1 is a node")
        if not (0 < self.half_width < 700):
            raise ValueError("half_width must lie in (0, 700)")

    def log_nodes(self):
        return np.linspace(-self.half_width, self.half_width, self.points)


class MeanTrace:
    """Grid representation f(x) = M(1, x) of a symmetric homogeneous mean.

    Off-grid values are interpolated by a cubic spline in (log x, log f);
    beyond the grid the trace continues along the boundary log-log slope
    (power-law continuation, the homogeneous asymptotic behavior).
    """

    def __init__(self, log_x, log_f, interpolation="cubic_spline"):
        log_x = np.asarray(log_x, dtype=np.float64)
        log_f = np.asarray(log_f, dtype=np.float64)
        if log_x.ndim != 1 or log_x.shape != log_f.shape:
            raise ValueError("log_x and log_f must be 1-d arrays of equal length")
        if not np.any(log_x == 0.0):
            raise ValueError("the grid must contain x = 1 exactly")
        center = int(np.argmin(np.abs(log_x)))
        if log_f[center] != 0.0:
            raise ValueError("a mean trace must satisfy f(1) = 1")
        x = np.exp(log_x)
        f = np.exp(log_f)
        if np.any(f < np.minimum(1.0, x) * (1 - 1e-12)) or np.any(
            f > np.maximum(1.0, x) * (1 + 1e-12)
        ):
            raise ValueError("trace violates min(1,x) <= f(x) <= max(1,x)")
        self.log_x = log_x
        self.log_f = log_f
        self.interpolation = interpolation
        self._spline = CubicSpline(log_x, log_f)
        self._slope_lo = float(self._spline(log_x[0], 1))
        self._slope_hi = float(self._spline(log_x[-1], 1))

    @classmethod
    def from_mean(cls, mean, grid=GridConfig()):
        s = grid.log_nodes()
        f = mean(1.0, np.exp(s))
        return cls(s, np.log(f))

    def trace_fn(self, x):
        """f(x) = M(1, x), interpolated (power-law continued off-grid)."""
        s = np.asarray(np.log(np.asarray(x, dtype=np.float64)))
        lo, hi = self.log_x[0], self.log_x[-1]
        inside = np.clip(s, lo, hi)
        t = self._spline(inside)
        t = np.where(s < lo, self.log_f[0] + self._slope_lo * (s - lo), t)
        t = np.where(s > hi, self.log_f[-1] + self._slope_hi * (s - hi), t)
        return np.exp(t)

    def __call__(self, a, b):
        """M(a, b) = a * f(b/a) by homogeneity."""
        a = np.asarray(a, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        return a * self.trace_fn(b / a)

    def as_mean(self, name="trace"):
        return SymmetricMean(name, self)

    def symmetry_residual(self, n=101):
        """max |f(x) - x f(1/x)| / f(x) over a probe grid; 0 for a trace of
        a genuinely symmetric homogeneous mean (up to interpolation error)."""
        s = np.linspace(self.log_x[0], self.log_x[-1], n)
        x = np.exp(s)
        f = self.trace_fn(x)
        g = x * self.trace_fn(1.0 / x)
        return float(np.max(np.abs(f - g) / f))

    def values(self):
        return np.exp(self.log_x), np.exp(self.log_f)


class NonConvergence(RuntimeError):
    """Fixed-point iteration failed to reach the tolerance."""

    def __init__(self, iterations, residual, history):
        super().__init__(
            f"no convergence after {iterations} iterations; last residual {residual:.3e}"
        )
        self.iterations = iterations
        self.residual = residual
        self.history = history


@dataclass
class StabilizeResult:
    trace: MeanTrace
    iterations: int
    residual: float
    history: list


_INITIAL_TRACES = {
    "arith": MeanKind.ARITH,
    "geom": MeanKind.GEOM,
    "harm": MeanKind.HARM,
}


def stabilize_fixed_point(
    q_kind,
    p_kind,
    grid=GridConfig(),
    tol=1e-10,
    max_iter=200,
    initial="geom",
):
    """Iterate M <- R(q, M, p) on a grid trace until the sup-norm change
    drops below tol.

    For stable q, p (q a strict cross mean) the iteration settles on the
    unique (q, p)-stabilizable mean.  The residual is checked before the
    first update, so an initial trace that is already the fixed point
    reports zero iterations.
    """
    q = MEANS[MeanKind(q_kind)]
    p = MEANS[MeanKind(p_kind)]
    s = grid.log_nodes()
    x = np.exp(s)

    if isinstance(initial, MeanTrace):
        f = initial.trace_fn(x)
    else:
        f = MEANS[_INITIAL_TRACES[initial]](1.0, x)

    lo = np.minimum(1.0, x)
    hi = np.maximum(1.0, x)
    f = np.clip(f, lo, hi)
    w = p(1.0, x)
    history = []
    for k in range(max_iter + 1):
        trace = MeanTrace(s, np.log(f))
        # R(q, M, p)(1, x) with M(w, x) = w f(x/w) closed under homogeneity
        new = np.clip(q(trace(1.0, w), trace(w, x)), lo, hi)
        residual = float(np.max(np.abs(new / f - 1.0)))
        history.append(residual)
        if residual <= tol:
            return StabilizeResult(trace=trace, iterations=k, residual=residual, history=history)
        f = new
    raise NonConvergence(max_iter, history[-1], history)
