"""Randomized verification suite for every scalar and operator inequality
chain and identity exposed by this package.

All randomness flows through one numpy PCG64 generator (seeded via
``default_rng``) consumed in a fixed documented order: scalar chain block,
identity checks in registry order, then the operator block.  Reports are
therefore byte-identical for equal seeds and configurations.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import algebra, operators, powers, scalars, weighted

__all__ = [
    "CHAIN_IDS",
    "SCALAR_CHAIN_IDS",
    "scalar_chain_terms",
    "check_chain",
    "VerifyConfig",
    "ChainResult",
    "IdentityResult",
    "SuiteReport",
    "run_suite",
]

SCALAR_CHAIN_IDS = ("eq0", "eq02", "eq11", "eq12", "eq13", "eq14")
CHAIN_IDS = SCALAR_CHAIN_IDS + operators.OPERATOR_CHAIN_IDS


def scalar_chain_terms(chain_id, a, b, v):
    """Ordered terms of one scalar inequality chain, vectorized over inputs."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    nab = scalars.weighted_arithmetic
    sha = scalars.weighted_geometric
    har = scalars.weighted_harmonic
    if chain_id == "eq0":
        return [
            ("harm", scalars.harmonic_mean(a, b)),
            ("identric_dual", scalars.identric_mean_dual(a, b)),
            ("log_dual", scalars.log_mean_dual(a, b)),
            ("geom", scalars.geometric_mean(a, b)),
            ("log", scalars.log_mean(a, b)),
            ("identric", scalars.identric_mean(a, b)),
            ("arith", scalars.arithmetic_mean(a, b)),
        ]
    if chain_id == "eq02":
        return [
            ("harm_v", har(a, b, v)),
            ("geom_v", sha(a, b, v)),
            ("arith_v", nab(a, b, v)),
        ]
    if chain_id == "eq11":
        return [
            ("geom_v", sha(a, b, v)),
            ("geom_half_split", nab(sha(a, b, 0.5 * v), sha(a, b, 0.5 * (1.0 + v)), v)),
            ("weighted_log", weighted.weighted_log(a, b, v)),
            ("mix_upper", nab(sha(a, b, v), nab(a, b, v), 0.5)),
            ("arith_v", nab(a, b, v)),
        ]
    if chain_id == "eq12":
        return [
            ("geom_v", sha(a, b, v)),
            ("mix_lower", sha(nab(a, b, v), sha(a, b, v), 0.5)),
            ("weighted_identric", weighted.weighted_identric(a, b, v)),
            ("arith_half_split", sha(nab(a, b, 0.5 * v), nab(a, b, 0.5 * (1.0 + v)), v)),
            ("arith_v", nab(a, b, v)),
        ]
    if chain_id == "eq13":
        g = sha(a, b, v)
        n = nab(a, b, v)
        return [
            ("weighted_log", weighted.weighted_log(a, b, v)),
            ("log_of_splits", scalars.log_mean(g, n)),
            ("identric_of_splits", scalars.identric_mean(g, n)),
            ("mix_upper", nab(g, n, 0.5)),
        ]
    if chain_id == "eq14":
        g = scalars.geometric_mean(a, b)
        return [
            ("geom_v", sha(a, b, v)),
            ("geom_split_of_mixes", sha(nab(a, g, v), nab(g, b, v), v)),
            ("weighted_identric", weighted.weighted_identric(a, b, v)),
        ]
    raise ValueError(f"unknown scalar chain {chain_id!r}")


def check_chain(chain_id, a, b, v, tol=1e-12):
    """Per-link slacks term[i+1] - term[i]; a link passes when the slack is
    at least -tol * max(a, b)."""
    terms = scalar_chain_terms(chain_id, a, b, v)
    vals = [t[1] for t in terms]
    slacks = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    floor = -tol * np.maximum(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64))
    ok = np.all([s >= floor for s in slacks])
    return slacks, bool(ok)


@dataclass(frozen=True)
class VerifyConfig:
    samples: int = 100_000
    identity_samples: int = 5_000
    op_samples: int = 120
    op_dims: tuple = (2, 3, 4, 5, 6, 7, 8)
    seed: int = 0
    ratio_log_span: float = 14.0
    scale_log10_span: float = 6.0
    v_lo: float = 0.001
    v_hi: float = 0.999
    tol_chain: float = 1e-12
    tol_op_chain: float = 1e-10
    tol_agreement: float = 1e-12
    tol_algebra: float = 1e-11
    tol_power: float = 1e-11

    def validate(self):
        if self.samples < 8:
            raise ValueError("samples must be at least 8")
        if self.identity_samples < 8:
            raise ValueError("identity_samples must be at least 8")
        if self.op_samples < 0:
            raise ValueError("op_samples must be nonnegative")
        if any(d < 1 for d in self.op_dims):
            raise ValueError("operator dimensions must be positive")
        if not (0.0 < self.v_lo < self.v_hi < 1.0):
            raise ValueError("need 0 < v_lo < v_hi < 1")
        if self.ratio_log_span <= 0 or self.ratio_log_span > 690.0:
            raise ValueError("ratio_log_span must lie in (0, 690]")
        for name in ("tol_chain", "tol_op_chain", "tol_agreement", "tol_algebra", "tol_power"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class ChainResult:
    chain_id: str
    samples: int
    failures: int
    worst_slack: float        # most negative normalized slack observed
    worst_input: list

    def as_dict(self):
        return {
            "id": self.chain_id,
            "samples": self.samples,
            "failures": self.failures,
            "worst_slack": self.worst_slack,
            "worst_input": self.worst_input,
        }


@dataclass
class IdentityResult:
    identity_id: str
    samples: int
    max_residual: float
    tolerance: float          # inf marks report-only entries
    passed: bool

    def as_dict(self):
        return {
            "id": self.identity_id,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass
class SuiteReport:
    seed: int
    tolerances: dict
    chains: list
    identities: list
    wall_time_s: float = field(default=0.0, compare=False)

    @property
    def passed(self):
        return all(c.failures == 0 for c in self.chains) and all(
            i.passed for i in self.identities
        )

    def body(self):
        """Deterministic report body; wall time deliberately excluded."""
        return {
            "seed": self.seed,
            "tolerances": self.tolerances,
            "chains": [c.as_dict() for c in self.chains],
            "identities": [i.as_dict() for i in self.identities],
            "passed": self.passed,
        }

    def to_json(self):
        return json.dumps(self.body(), indent=2)

    def to_text(self):
        lines = [f"seed: {self.seed}"]
        for k, t in self.tolerances.items():
            lines.append(f"tolerance {k}: {t!r}")
        for c in self.chains:
            lines.append(
                f"chain {c.chain_id}: samples={c.samples} failures={c.failures} "
                f"worst_slack={c.worst_slack!r} worst_input={c.worst_input!r}"
            )
        for i in self.identities:
            status = "pass" if i.passed else "FAIL"
            lines.append(
                f"identity {i.identity_id}: samples={i.samples} "
                f"max_residual={i.max_residual!r} tol={i.tolerance!r} {status}"
            )
        lines.append(f"verdict: {'pass' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _draw_scalar(rng, n, cfg, force_corners=False):
    h = rng.uniform(-cfg.ratio_log_span, cfg.ratio_log_span, n)
    a = 10.0 ** rng.uniform(-cfg.scale_log10_span, cfg.scale_log10_span, n)
    v = rng.uniform(cfg.v_lo, cfg.v_hi, n)
    b = a * np.exp(h)
    if force_corners and n >= 8:
        v[0], v[1], v[2] = 0.0, 0.5, 1.0
        b[3] = a[3]
        b[4], v[4] = a[4], 0.0
        b[5], v[5] = a[5], 0.5
        b[6], v[6] = a[6], 1.0
    return a, b, v


def _rel(x, y):
    x = np.asarray(x, dtype=np.float64)
    return float(np.max(np.abs(x - y) / np.abs(x)))


def _run_scalar_chain(chain_id, rng, cfg):
    a, b, v = _draw_scalar(rng, cfg.samples, cfg, force_corners=True)
    terms = scalar_chain_terms(chain_id, a, b, v)
    floor = np.maximum(a, b)
    worst = np.full(cfg.samples, np.inf)
    for i in range(len(terms) - 1):
        slack = (terms[i + 1][1] - terms[i][1]) / floor
        worst = np.minimum(worst, slack)
    failures = int(np.sum(worst < -cfg.tol_chain))
    j = int(np.argmin(worst))
    return ChainResult(
        chain_id=chain_id,
        samples=cfg.samples,
        failures=failures,
        worst_slack=float(worst[j]),
        worst_input=[float(a[j]), float(b[j]), float(v[j])],
    )


# ----------------------------------------------------------------------
# identity registry
# ----------------------------------------------------------------------


def _id_weighted_log_agreement(rng, cfg):
    a, b, v = _draw_scalar(rng, cfg.samples, cfg)
    return cfg.samples, _rel(
        weighted.weighted_log(a, b, v), weighted.weighted_log_composed(a, b, v)
    )


def _id_weighted_identric_agreement(rng, cfg):
    a, b, v = _draw_scalar(rng, cfg.samples, cfg)
    return cfg.samples, _rel(
        weighted.weighted_identric(a, b, v), weighted.weighted_identric_composed(a, b, v)
    )


_SIX_FAMILIES = (
    weighted.weighted_log,
    weighted.weighted_identric,
    weighted.weighted_log_dual,
    weighted.weighted_identric_dual,
    weighted.second_weighted_log,
    weighted.second_weighted_log_dual,
)


def _id_reflection(rng, cfg):
    n = cfg.identity_samples
    a, b, v = _draw_scalar(rng, n, cfg, force_corners=True)
    worst = 0.0
    for fam in _SIX_FAMILIES:
        worst = max(worst, _rel(fam(a, b, v), fam(b, a, 1.0 - v)))
    return n * len(_SIX_FAMILIES), worst


def _id_dual_log_composition(rng, cfg):
    a, b, v = _draw_scalar(rng, cfg.identity_samples, cfg)
    return cfg.identity_samples, _rel(
        weighted.weighted_log_dual(a, b, v), weighted.weighted_log_dual_composed(a, b, v)
    )


def _id_dual_identric_composition(rng, cfg):
    a, b, v = _draw_scalar(rng, cfg.identity_samples, cfg)
    return cfg.identity_samples, _rel(
        weighted.weighted_identric_dual(a, b, v),
        weighted.weighted_identric_dual_composed(a, b, v),
    )


def _id_dual_classic_exact(rng, cfg):
    a, b, _ = _draw_scalar(rng, cfg.identity_samples, cfg)
    harm_dual = scalars.MEANS[scalars.MeanKind.HARM].dual()
    geom_dual = scalars.MEANS[scalars.MeanKind.GEOM].dual()
    r1 = _rel(scalars.arithmetic_mean(a, b), harm_dual(a, b))
    r2 = _rel(scalars.geometric_mean(a, b), geom_dual(a, b))
    return cfg.identity_samples, max(r1, r2)


def _id_dual_involution(rng, cfg):
    a, b, _ = _draw_scalar(rng, cfg.identity_samples, cfg)
    worst = 0.0
    for kind in (scalars.MeanKind.LOG, scalars.MeanKind.IDENTRIC, scalars.MeanKind.ARITH):
        m = scalars.MEANS[kind]
        worst = max(worst, _rel(m(a, b), m.dual().dual()(a, b)))
    return cfg.identity_samples, worst


def _id_dual_closed_forms(rng, cfg):
    # L* L = a b and I* I = a b, compared in log space to dodge overflow
    a, b, _ = _draw_scalar(rng, cfg.identity_samples, cfg)
    target = np.log(a) + np.log(b)
    r1 = float(np.max(np.abs(
        np.log(scalars.log_mean_dual(a, b)) + np.log(scalars.log_mean(a, b)) - target
    )))
    r2 = float(np.max(np.abs(
        np.log(scalars.identric_mean_dual(a, b)) + np.log(scalars.identric_mean(a, b)) - target
    )))
    return cfg.identity_samples, max(r1, r2)


def _id_second_log_composition(rng, cfg):
    a, b, v = _draw_scalar(rng, cfg.identity_samples, cfg)
    return cfg.identity_samples, _rel(
        weighted.second_weighted_log(a, b, v), weighted.second_weighted_log_composed(a, b, v)
    )


def _id_second_log_dual_composition(rng, cfg):
    a, b, v = _draw_scalar(rng, cfg.identity_samples, cfg)
    return cfg.identity_samples, _rel(
        weighted.second_weighted_log_dual(a, b, v),
        weighted.second_weighted_log_dual_composed(a, b, v),
    )


def _id_second_log_dual_definition(rng, cfg):
    a, b, v = _draw_scalar(rng, cfg.identity_samples, cfg)
    r1 = _rel(
        weighted.second_weighted_log_dual(a, b, v),
        1.0 / weighted.second_weighted_log(1.0 / a, 1.0 / b, v),
    )
    r2 = _rel(
        weighted.second_weighted_log(a, b, v),
        1.0 / weighted.second_weighted_log_dual(1.0 / a, 1.0 / b, v),
    )
    return cfg.identity_samples, max(r1, r2)


def _id_stability_standard(rng, cfg):
    a, b, _ = _draw_scalar(rng, cfg.identity_samples, cfg)
    worst = 0.0
    for kind in (scalars.MeanKind.ARITH, scalars.MeanKind.GEOM, scalars.MeanKind.HARM):
        m = scalars.MEANS[kind]
        w = m(a, b)
        worst = max(worst, _rel(m(a, b), m(m(a, w), m(w, b))))
    return cfg.identity_samples * 3, worst


def _id_stability_binomial(rng, cfg):
    n = cfg.identity_samples
    a, b, _ = _draw_scalar(rng, n, cfg)
    worst = 0.0
    for p in rng.uniform(-4.0, 4.0, 20):
        w = powers.binomial_mean(p, a, b)
        r = powers.binomial_mean(p, powers.binomial_mean(p, a, w), powers.binomial_mean(p, w, b))
        worst = max(worst, _rel(powers.binomial_mean(p, a, b), r))
    return n * 20, worst


_THM31_RELATIONS = (
    (scalars.MeanKind.HARM, scalars.MeanKind.LOG, scalars.MeanKind.ARITH),
    (scalars.MeanKind.ARITH, scalars.MeanKind.LOG, scalars.MeanKind.GEOM),
    (scalars.MeanKind.GEOM, scalars.MeanKind.IDENTRIC, scalars.MeanKind.ARITH),
    (scalars.MeanKind.ARITH, scalars.MeanKind.LOG_DUAL, scalars.MeanKind.HARM),
    (scalars.MeanKind.HARM, scalars.MeanKind.LOG_DUAL, scalars.MeanKind.GEOM),
    (scalars.MeanKind.GEOM, scalars.MeanKind.IDENTRIC_DUAL, scalars.MeanKind.HARM),
)


def _id_stabilizable_relations(rng, cfg):
    a, b, _ = _draw_scalar(rng, cfg.identity_samples, cfg)
    worst = 0.0
    for k1, k, k2 in _THM31_RELATIONS:
        m1, m, m2 = scalars.MEANS[k1], scalars.MEANS[k], scalars.MEANS[k2]
        w = m2(a, b)
        worst = max(worst, _rel(m(a, b), m1(m(a, w), m(w, b))))
    return cfg.identity_samples * len(_THM31_RELATIONS), worst


def _id_dual_transport(rng, cfg):
    a, b, _ = _draw_scalar(rng, cfg.identity_samples, cfg)
    worst = 0.0
    for k1, k, k2 in _THM31_RELATIONS:
        m1 = scalars.MEANS[k1].dual()
        m = scalars.MEANS[k].dual()
        m2 = scalars.MEANS[k2].dual()
        w = m2(a, b)
        worst = max(worst, _rel(m(a, b), m1(m(a, w), m(w, b))))
    return cfg.identity_samples * len(_THM31_RELATIONS), worst


def _id_stolarsky_stabilizable(rng, cfg):
    n = cfg.identity_samples
    a, b, _ = _draw_scalar(rng, n, cfg)
    p = rng.uniform(-4.0, 4.0, n)
    q = rng.uniform(-4.0, 4.0, n)
    w = powers.binomial_mean(p, a, b)
    r = powers.binomial_mean(
        q - p, powers.stolarsky_mean(p, q, a, w), powers.stolarsky_mean(p, q, w, b)
    )
    res1 = _rel(powers.stolarsky_mean(p, q, a, b), r)
    # swapped-parameter variant
    w2 = powers.binomial_mean(q, a, b)
    r2 = powers.binomial_mean(
        p - q, powers.stolarsky_mean(p, q, a, w2), powers.stolarsky_mean(p, q, w2, b)
    )
    res2 = _rel(powers.stolarsky_mean(p, q, a, b), r2)
    return 2 * n, max(res1, res2)


def _id_power_family_stabilizable(rng, cfg):
    n = cfg.identity_samples
    a, b, _ = _draw_scalar(rng, n, cfg)
    p = rng.uniform(-4.0, 4.0, n)
    one = np.ones_like(p)
    worst = 0.0

    def res(outer_p, fam, inner_p):
        w = powers.binomial_mean(inner_p, a, b)
        r = powers.binomial_mean(outer_p, fam(a, w), fam(w, b))
        return _rel(fam(a, b), r)

    worst = max(worst, res(p, lambda x, y: powers.power_log_mean(p, x, y), one))
    worst = max(worst, res(one, lambda x, y: powers.power_difference_mean(p, x, y), p))
    worst = max(worst, res(0.0 * one, lambda x, y: powers.power_exponential_mean(p, x, y), p))
    worst = max(worst, res(p, lambda x, y: powers.second_power_log_mean(p, x, y), 0.0 * one))
    # alternates obtained from the swapped parameter pair
    worst = max(worst, res(-p, lambda x, y: powers.power_log_mean(p, x, y), p + 1.0))
    worst = max(worst, res(-one, lambda x, y: powers.power_difference_mean(p, x, y), p + 1.0))
    worst = max(worst, res(-p, lambda x, y: powers.second_power_log_mean(p, x, y), p))
    return 7 * n, worst


def _id_stolarsky_specializations(rng, cfg):
    n = cfg.identity_samples
    a, b, _ = _draw_scalar(rng, n, cfg)
    p = rng.uniform(-4.0, 4.0, n)
    one = np.ones_like(p)
    worst = max(
        _rel(powers.binomial_mean(p, a, b), powers.stolarsky_mean(p, 2.0 * p, a, b)),
        _rel(powers.power_log_mean(p, a, b), powers.stolarsky_mean(one, p + 1.0, a, b)),
        _rel(powers.power_difference_mean(p, a, b), powers.stolarsky_mean(p, p + 1.0, a, b)),
        _rel(powers.power_exponential_mean(p, a, b), powers.stolarsky_mean(p, p, a, b)),
        _rel(powers.second_power_log_mean(p, a, b), powers.stolarsky_mean(0.0 * one, p, a, b)),
    )
    return 5 * n, worst


def _id_stolarsky_swap_symmetry(rng, cfg):
    n = cfg.identity_samples
    a, b, _ = _draw_scalar(rng, n, cfg)
    p = rng.uniform(-4.0, 4.0, n)
    q = rng.uniform(-4.0, 4.0, n)
    r1 = _rel(powers.stolarsky_mean(p, q, a, b), powers.stolarsky_mean(q, p, a, b))
    r2 = _rel(powers.stolarsky_mean(p, q, a, b), powers.stolarsky_mean(p, q, b, a))
    return 2 * n, max(r1, r2)


_PARTICULAR_CASES = (
    ("Lp", -2.0, scalars.geometric_mean),
    ("Lp", -1.0, scalars.log_mean),
    ("Lp", 0.0, scalars.identric_mean),
    ("Lp", 1.0, scalars.arithmetic_mean),
    ("Dp", -2.0, scalars.harmonic_mean),
    ("Dp", -1.0, scalars.log_mean_dual),
    ("Dp", -0.5, scalars.geometric_mean),
    ("Dp", 0.0, scalars.log_mean),
    ("Dp", 1.0, scalars.arithmetic_mean),
    ("Ip", -1.0, scalars.identric_mean_dual),
    ("Ip", 0.0, scalars.geometric_mean),
    ("Ip", 1.0, scalars.identric_mean),
    ("calLp", -1.0, scalars.log_mean_dual),
    ("calLp", 0.0, scalars.geometric_mean),
    ("calLp", 1.0, scalars.log_mean),
)


def _id_power_particular_cases(rng, cfg):
    n = cfg.identity_samples
    a, b, _ = _draw_scalar(rng, n, cfg)
    worst = 0.0
    for kind, p, ref in _PARTICULAR_CASES:
        worst = max(worst, _rel(ref(a, b), powers.power_family(kind, p, a, b)))
    return n * len(_PARTICULAR_CASES), worst


def _id_binomial_particular_cases(rng, cfg):
    n = cfg.identity_samples
    a, b, _ = _draw_scalar(rng, n, cfg)
    worst = max(
        _rel(scalars.arithmetic_mean(a, b), powers.binomial_mean(1.0, a, b)),
        _rel(scalars.geometric_mean(a, b), powers.binomial_mean(0.0, a, b)),
        _rel(scalars.harmonic_mean(a, b), powers.binomial_mean(-1.0, a, b)),
        _rel(
            scalars.arithmetic_mean(scalars.arithmetic_mean(a, b), scalars.geometric_mean(a, b)),
            powers.binomial_mean(0.5, a, b),
        ),
    )
    return 4 * n, worst


def _id_branch_continuity(rng, cfg):
    n = cfg.identity_samples
    h = rng.uniform(-2.0, 2.0, n)
    a = 10.0 ** rng.uniform(-1.0, 1.0, n)
    b = a * np.exp(h)
    p = rng.uniform(-4.0, 4.0, n)
    p = np.where(np.abs(p) < 0.01, p + 0.02, p)
    eps = 1.0000001 * powers.DELTA
    # just outside the p = q radius vs the exact coincident-parameter value
    s_out = powers.stolarsky_mean(p, p + eps, a, b)
    s_lim = powers.power_exponential_mean(p + 0.5 * eps, a, b)
    r1 = _rel(s_lim, s_out)
    # evaluation is continuous through the p = 0 radius as well
    s_lo = powers.stolarsky_mean(0.9999999 * powers.DELTA, p, a, b)
    s_hi = powers.stolarsky_mean(eps, p, a, b)
    r2 = _rel(s_lo, s_hi)
    return 2 * n, max(r1, r2)


def _id_concavity(rng, cfg):
    n = cfg.identity_samples
    a = 10.0 ** rng.uniform(-2.0, 2.0, n)
    x1 = a * np.exp(rng.uniform(-6.0, 6.0, n))
    x2 = a * np.exp(rng.uniform(-6.0, 6.0, n))
    t = rng.uniform(0.0, 1.0, n)
    mix = t * x1 + (1.0 - t) * x2
    scale = np.maximum(np.maximum(x1, x2), a)
    gap_l = (scalars.log_mean(a, mix)
             - t * scalars.log_mean(a, x1) - (1.0 - t) * scalars.log_mean(a, x2)) / scale
    gap_i = (scalars.identric_mean(mix, a)
             - t * scalars.identric_mean(x1, a) - (1.0 - t) * scalars.identric_mean(x2, a)) / scale
    worst = max(0.0, float(-np.min(gap_l)), float(-np.min(gap_i)))
    return 2 * n, worst


def _id_table1_midpoint(rng, cfg):
    n = min(cfg.identity_samples, 200)
    a, b, _ = _draw_scalar(rng, n, cfg)
    expected = [
        [scalars.arithmetic_mean, scalars.identric_mean, scalars.log_mean],
        [scalars.log_mean, scalars.geometric_mean, scalars.log_mean_dual],
        [scalars.log_mean_dual, scalars.identric_mean_dual, scalars.harmonic_mean],
    ]
    worst = 0.0
    for ai, bi in zip(a, b):
        grid = algebra.table1(ai, bi, 0.5)
        for i in range(3):
            for j in range(3):
                ref = float(expected[i][j](ai, bi))
                worst = max(worst, abs(grid[i][j] - ref) / ref)
    return 9 * n, worst


def _id_weighted_construct_conditions(rng, cfg):
    n = cfg.identity_samples
    a, b, v = _draw_scalar(rng, n, cfg, force_corners=True)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    worst = 0.0
    for p_name in algebra.TABLE1_LABELS:
        for q_name in algebra.TABLE1_LABELS:
            m = scalars.MEANS[algebra.TABLE1_MEANS[(p_name, q_name)]]
            fam = algebra.weighted_construct(
                m, algebra.STANDARD_FAMILIES[p_name], algebra.STANDARD_FAMILIES[q_name]
            )
            val = fam(a, b, v)
            below = np.max((lo - val) / lo)
            above = np.max((val - hi) / hi)
            refl = _rel(val, fam(b, a, 1.0 - v))
            worst = max(worst, float(below), float(above), refl)
    return 9 * n, worst


def _id_weighted_binomial_properties(rng, cfg):
    n = cfg.identity_samples
    a, b, v = _draw_scalar(rng, n, cfg, force_corners=True)
    p = rng.uniform(-4.0, 4.0, n)
    r1 = _rel(powers.binomial_mean(p, a, b), powers.weighted_binomial(p, a, b, 0.5))
    r2 = _rel(powers.weighted_binomial(p, a, b, v), powers.weighted_binomial(p, b, a, 1.0 - v))
    return 2 * n, max(r1, r2)


def _id_weighted_binomial_zero_limit(rng, cfg):
    # limit probe at desk-scale ratios: the true gap scales like
    # |p| h^2 v(1-v)/2, so p = 1e-10 with |h| <= 14 sits inside 1e-8
    n = cfg.identity_samples
    h = rng.uniform(-14.0, 14.0, n)
    a = 10.0 ** rng.uniform(-cfg.scale_log10_span, cfg.scale_log10_span, n)
    b = a * np.exp(h)
    v = rng.uniform(cfg.v_lo, cfg.v_hi, n)
    g = scalars.weighted_geometric(a, b, v)
    r = max(
        _rel(g, powers.weighted_binomial(1e-10, a, b, v)),
        _rel(g, powers.weighted_binomial(-1e-10, a, b, v)),
    )
    return 2 * n, r


def _draw_power_tame(rng, n):
    """Sampler for explicit-form agreements: nondegenerate parameters."""
    h = rng.uniform(-5.0, 5.0, n)
    sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    h = sign * np.maximum(np.abs(h), 1e-3)
    a = 10.0 ** rng.uniform(-2.0, 2.0, n)
    b = a * np.exp(h)
    v = rng.uniform(0.02, 0.98, n)
    p = rng.uniform(-4.0, 4.0, n)
    p = np.where(np.abs(p) < 0.05, p + 0.1, p)
    p = np.where(np.abs(p + 1.0) < 0.05, p + 0.1, p)
    q = p + np.where(rng.random(n) < 0.5, 1.0, -1.0) * np.exp(
        rng.uniform(np.log(0.05), np.log(4.0), n)
    )
    q = np.where(np.abs(q) < 0.05, q + 0.12, q)
    q = np.where(np.abs(q - p) < 0.05, q + 0.12, q)
    return a, b, v, p, q


def _id_weighted_stolarsky_agreement(rng, cfg):
    n = cfg.identity_samples
    a, b, v, p, q = _draw_power_tame(rng, n)
    r1 = _rel(
        powers.weighted_stolarsky(p, q, a, b, v),
        powers.weighted_stolarsky_explicit(p, q, a, b, v),
    )
    r2 = _rel(
        powers.weighted_stolarsky(p, q, a, b, v, form="via_Bq"),
        powers.weighted_stolarsky_explicit(p, q, a, b, v, form="via_Bq"),
    )
    return 2 * n, max(r1, r2)


def _id_weighted_power_agreement(rng, cfg):
    n = cfg.identity_samples
    a, b, v, p, _ = _draw_power_tame(rng, n)
    worst = 0.0
    for kind in powers.WEIGHTED_POWER_KINDS:
        worst = max(
            worst,
            _rel(powers.weighted_power(kind, p, a, b, v),
                 powers.weighted_power_explicit(kind, p, a, b, v)),
        )
    return 4 * n, worst


def _id_weighted_power_midpoint(rng, cfg):
    n = cfg.identity_samples
    a, b, _ = _draw_scalar(rng, n, cfg)
    p = rng.uniform(-4.0, 4.0, n)
    q = rng.uniform(-4.0, 4.0, n)
    worst = _rel(powers.stolarsky_mean(p, q, a, b), powers.weighted_stolarsky(p, q, a, b, 0.5))
    worst = max(
        worst,
        _rel(powers.stolarsky_mean(p, q, a, b),
             powers.weighted_stolarsky(p, q, a, b, 0.5, form="via_Bq")),
    )
    for kind, fam in (
        ("Lp", "Lpv"), ("Dp", "Dpv"), ("Ip", "Ipv"), ("calLp", "calLpv")
    ):
        worst = max(
            worst,
            _rel(powers.power_family(kind, p, a, b),
                 powers.weighted_power(fam, p, a, b, 0.5)),
        )
    return 6 * n, worst


def _id_weighted_power_reflection_bounds(rng, cfg):
    n = cfg.identity_samples
    a, b, v = _draw_scalar(rng, n, cfg, force_corners=True)
    p = rng.uniform(-4.0, 4.0, n)
    q = rng.uniform(-4.0, 4.0, n)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    worst = 0.0
    evals = [
        powers.weighted_stolarsky(p, q, a, b, v),
        powers.weighted_stolarsky(p, q, a, b, v, form="via_Bq"),
    ] + [powers.weighted_power(k, p, a, b, v) for k in powers.WEIGHTED_POWER_KINDS]
    refls = [
        powers.weighted_stolarsky(p, q, b, a, 1.0 - v),
        powers.weighted_stolarsky(p, q, b, a, 1.0 - v, form="via_Bq"),
    ] + [powers.weighted_power(k, p, b, a, 1.0 - v) for k in powers.WEIGHTED_POWER_KINDS]
    for val, refl in zip(evals, refls):
        worst = max(worst, _rel(val, refl))
        worst = max(worst, float(np.max((lo - val) / lo)))
        worst = max(worst, float(np.max((val - hi) / hi)))
    return 6 * n, worst


def _id_weighted_power_cross_families(rng, cfg):
    # the §-level constructions must reproduce the named weighted families
    n = cfg.identity_samples
    a, b, v = _draw_scalar(rng, n, cfg)
    worst = max(
        _rel(weighted.weighted_log(a, b, v), powers.weighted_power_difference(0.0, a, b, v)),
        _rel(weighted.weighted_identric(a, b, v), powers.weighted_power_log(0.0, a, b, v)),
        _rel(weighted.second_weighted_log(a, b, v), powers.weighted_power_log(-1.0, a, b, v)),
        _rel(weighted.weighted_identric(a, b, v), powers.weighted_power_exponential(1.0, a, b, v)),
        _rel(weighted.weighted_identric_dual(a, b, v),
             powers.weighted_power_exponential(-1.0, a, b, v)),
        _rel(weighted.second_weighted_log_dual(a, b, v),
             powers.weighted_second_power_log(-1.0, a, b, v)),
        _rel(scalars.weighted_geometric(a, b, v),
             powers.weighted_power_exponential(0.0, a, b, v)),
    )
    return 7 * n, worst


def _id_via_forms_discrepancy(rng, cfg):
    # the two weighted Stolarsky constructions are both valid weighted
    # means with the same midpoint; their gap is reported, never asserted
    n = cfg.identity_samples
    a, b, v = _draw_scalar(rng, n, cfg)
    p = rng.uniform(-4.0, 4.0, n)
    q = rng.uniform(-4.0, 4.0, n)
    gap = _rel(
        powers.weighted_stolarsky(p, q, a, b, v),
        powers.weighted_stolarsky(p, q, a, b, v, form="via_Bq"),
    )
    return n, gap


# (identity id, tolerance attribute or literal, runner)
_IDENTITY_REGISTRY = (
    ("weighted_log_direct_vs_composed", "tol_agreement", _id_weighted_log_agreement),
    ("weighted_identric_direct_vs_composed", "tol_agreement", _id_weighted_identric_agreement),
    ("weighted_family_reflection", "tol_agreement", _id_reflection),
    ("weighted_log_dual_composition", "tol_agreement", _id_dual_log_composition),
    ("weighted_identric_dual_composition", "tol_agreement", _id_dual_identric_composition),
    ("classic_dual_harm_geom_exact", 1e-14, _id_dual_classic_exact),
    ("classic_dual_involution", 1e-14, _id_dual_involution),
    ("classic_dual_closed_forms", "tol_agreement", _id_dual_closed_forms),
    ("second_log_composition", "tol_agreement", _id_second_log_composition),
    ("second_log_dual_composition", "tol_agreement", _id_second_log_dual_composition),
    ("second_log_dual_definition", "tol_agreement", _id_second_log_dual_definition),
    ("stability_standard_means", "tol_algebra", _id_stability_standard),
    ("stability_binomial", "tol_algebra", _id_stability_binomial),
    ("stabilizable_relations", "tol_algebra", _id_stabilizable_relations),
    ("stabilizable_dual_transport", "tol_algebra", _id_dual_transport),
    ("stolarsky_stabilizable", "tol_algebra", _id_stolarsky_stabilizable),
    ("power_family_stabilizable", "tol_algebra", _id_power_family_stabilizable),
    ("stolarsky_specializations", "tol_power", _id_stolarsky_specializations),
    ("stolarsky_parameter_swap", "tol_power", _id_stolarsky_swap_symmetry),
    ("power_particular_cases", "tol_power", _id_power_particular_cases),
    ("binomial_particular_cases", "tol_power", _id_binomial_particular_cases),
    ("stolarsky_branch_continuity", 1e-8, _id_branch_continuity),
    ("log_identric_concavity", "tol_agreement", _id_concavity),
    ("table1_midpoint", "tol_agreement", _id_table1_midpoint),
    ("weighted_construct_conditions", "tol_agreement", _id_weighted_construct_conditions),
    ("weighted_binomial_properties", "tol_power", _id_weighted_binomial_properties),
    ("weighted_binomial_zero_limit", 1e-8, _id_weighted_binomial_zero_limit),
    ("weighted_stolarsky_explicit_agreement", "tol_power", _id_weighted_stolarsky_agreement),
    ("weighted_power_explicit_agreement", "tol_power", _id_weighted_power_agreement),
    ("weighted_power_midpoint", "tol_power", _id_weighted_power_midpoint),
    ("weighted_power_reflection_bounds", "tol_power", _id_weighted_power_reflection_bounds),
    ("weighted_power_cross_families", "tol_power", _id_weighted_power_cross_families),
    ("weighted_stolarsky_form_gap", float("inf"), _id_via_forms_discrepancy),
)


def _run_operator_chain_block(rng, cfg):
    """Operator chains over random HPD pairs; returns per-chain results and
    the operator identity residuals drawn from the same pairs."""
    results = {cid: [0, np.inf, None] for cid in operators.OPERATOR_CHAIN_IDS}
    worst_dual_log = worst_dual_identric = 0.0
    worst_commuting = 0.0
    n_ops = 0
    for k in range(cfg.op_samples):
        dim = cfg.op_dims[k % len(cfg.op_dims)]
        A = operators.random_hpd(rng, dim)
        B = A if k % 17 == 3 else operators.random_hpd(rng, dim)
        v = 0.5 if k % 11 == 5 else float(rng.uniform(0.05, 0.95))
        n_ops += 1
        rep = operators.check_operator_chains(A, B, v, tol=cfg.tol_op_chain)
        for cid, links in rep.items():
            entry = results[cid]
            for link in links:
                if not link.ok:
                    entry[0] += 1
                if link.normalized < entry[1]:
                    entry[1] = link.normalized
                    entry[2] = [dim, v]
        la = operators.op_weighted_log(A, B, v)
        lb = operators.op_weighted_log(A, B, v, mode="composed")
        worst_dual_log = max(
            worst_dual_log,
            float(np.linalg.norm(la.mat - lb.mat, 2) / np.linalg.norm(la.mat, 2)),
        )
        ia = operators.op_weighted_identric(A, B, v)
        ib = operators.op_weighted_identric(A, B, v, mode="composed")
        worst_dual_identric = max(
            worst_dual_identric,
            float(np.linalg.norm(ia.mat - ib.mat, 2) / np.linalg.norm(ia.mat, 2)),
        )
        # commuting-diagonal reduction against the scalar module
        lam_a = np.exp(rng.uniform(-3.0, 3.0, dim))
        lam_b = np.exp(rng.uniform(-3.0, 3.0, dim))
        DA, DB = operators.HPDMatrix(np.diag(lam_a)), operators.HPDMatrix(np.diag(lam_b))
        got = np.sort(np.diag(operators.op_weighted_log(DA, DB, v).mat).real)
        want = np.sort(weighted.weighted_log(lam_a, lam_b, v))
        worst_commuting = max(worst_commuting, float(np.max(np.abs(got - want) / want)))

    chain_results = []
    for cid in operators.OPERATOR_CHAIN_IDS:
        failures, worst, where = results[cid]
        chain_results.append(
            ChainResult(
                chain_id=cid,
                samples=n_ops,
                failures=failures,
                worst_slack=worst,
                worst_input=where if where is not None else [],
            )
        )
    identities = [
        ("operator_weighted_log_dual_path", 1e-10, n_ops, worst_dual_log),
        ("operator_weighted_identric_dual_path", 1e-10, n_ops, worst_dual_identric),
        ("operator_commuting_reduction", 1e-12, n_ops, worst_commuting),
    ]
    return chain_results, identities


def _run_operator_integral_block(rng, cfg):
    n = max(4, cfg.op_samples // 12)
    worst = 0.0
    for _ in range(n):
        dim = int(rng.integers(2, 5))
        A = operators.random_hpd(rng, dim)
        B = operators.random_hpd(rng, dim)
        ref = operators.op_log_mean(A, B).mat
        for form in ("sharp", "nabla_inv"):
            got = operators.op_log_integral(A, B, form).mat
            worst = max(worst, float(np.linalg.norm(got - ref, 2) / np.linalg.norm(ref, 2)))
    return 2 * n, worst


def run_suite(config=VerifyConfig()):
    """Execute every chain spec and identity check; deterministic per seed."""
    config.validate()
    missing = set(CHAIN_IDS) - (set(SCALAR_CHAIN_IDS) | set(operators.OPERATOR_CHAIN_IDS))
    if missing:
        raise RuntimeError(f"chain registry lost ids: {missing}")

    t0 = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    chains = [_run_scalar_chain(cid, rng, config) for cid in SCALAR_CHAIN_IDS]

    identities = []
    for ident_id, tol_spec, runner in _IDENTITY_REGISTRY:
        tol = getattr(config, tol_spec) if isinstance(tol_spec, str) else float(tol_spec)
        samples, residual = runner(rng, config)
        identities.append(
            IdentityResult(
                identity_id=ident_id,
                samples=samples,
                max_residual=float(residual),
                tolerance=tol,
                passed=bool(residual <= tol),
            )
        )

    if config.op_samples > 0:
        op_chains, op_ids = _run_operator_chain_block(rng, config)
        chains.extend(op_chains)
        for ident_id, tol, samples, residual in op_ids:
            identities.append(
                IdentityResult(
                    identity_id=ident_id,
                    samples=samples,
                    max_residual=float(residual),
                    tolerance=tol,
                    passed=bool(residual <= tol),
                )
            )
        samples, residual = _run_operator_integral_block(rng, config)
        identities.append(
            IdentityResult(
                identity_id="operator_log_integral_forms",
                samples=samples,
                max_residual=float(residual),
                tolerance=1e-8,
                passed=bool(residual <= 1e-8),
            )
        )
    else:
        chains.extend(
            ChainResult(chain_id=cid, samples=0, failures=0, worst_slack=0.0, worst_input=[])
            for cid in operators.OPERATOR_CHAIN_IDS
        )

    tolerances = {
        "chain": config.tol_chain,
        "operator_chain": config.tol_op_chain,
        "agreement": config.tol_agreement,
        "algebra": config.tol_algebra,
        "power": config.tol_power,
    }
    report = SuiteReport(
        seed=config.seed,
        tolerances=tolerances,
        chains=chains,
        identities=identities,
    )
    report.wall_time_s = time.perf_counter() - t0
    return report
