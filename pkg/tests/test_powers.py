"""Power binomial / Stolarsky families, their degenerate branches, and the
weighted versions built from them."""

import numpy as np
import pytest

from meanforge import powers as P
from meanforge import scalars as S
from meanforge import weighted as W

from conftest import sample_pairs, sample_triples

E = float(np.e)
I_1_E = 1.789572396841833451057


def test_binomial_examples():
    assert float(P.binomial_mean(2, 1, 7)) == pytest.approx(5.0, rel=1e-14)
    assert float(P.binomial_mean(0, 2, 8)) == pytest.approx(4.0, rel=1e-14)
    assert float(P.binomial_mean(0.5, 1, 9)) == pytest.approx(4.0, rel=1e-14)
    assert float(P.binomial_mean(-3.2, 6, 6)) == 6.0


def test_binomial_special_orders(rng):
    a, b = sample_pairs(rng, 5000)
    assert np.max(np.abs(P.binomial_mean(1, a, b) - S.arithmetic_mean(a, b))
                  / S.arithmetic_mean(a, b)) < 1e-12
    g = S.geometric_mean(a, b)
    assert np.max(np.abs(P.binomial_mean(0, a, b) - g) / g) < 1e-12
    h = S.harmonic_mean(a, b)
    assert np.max(np.abs(P.binomial_mean(-1, a, b) - h) / h) < 1e-12
    half = S.arithmetic_mean(S.arithmetic_mean(a, b), g)
    assert np.max(np.abs(P.binomial_mean(0.5, a, b) - half) / half) < 1e-12


def test_binomial_monotone_in_order(rng):
    a, b = sample_pairs(rng, 300, ratio_span=6)
    ps = np.linspace(-6, 6, 25)
    vals = np.stack([P.binomial_mean(p, a, b) for p in ps])
    assert np.all(np.diff(vals, axis=0) >= -1e-12 * np.maximum(a, b))


def test_stolarsky_examples():
    assert float(P.stolarsky_mean(1, 2, 2, 6)) == pytest.approx(4.0, rel=1e-13)
    assert float(P.stolarsky_mean(2, 1, 2, 6)) == pytest.approx(4.0, rel=1e-13)
    assert float(P.stolarsky_mean(1, 1, 1, E)) == pytest.approx(I_1_E, rel=1e-13)
    assert float(P.stolarsky_mean(-1.7, 2.4, 5, 5)) == 5.0


def test_stolarsky_params_classification():
    cases = [
        ((1.0, 2.0), P.StolarskyBranch.GENERIC),
        ((0.0, 2.0), P.StolarskyBranch.P_ZERO),
        ((2.0, 1e-8), P.StolarskyBranch.Q_ZERO),
        ((1.0, 1.0 + 1e-8), P.StolarskyBranch.P_EQUALS_Q),
        ((1e-8, -1e-9), P.StolarskyBranch.BOTH_ZERO),
    ]
    for (p, q), branch in cases:
        assert P.StolarskyParams(p, q).branch is branch
    # classification commutes with parameter swap (p_zero and q_zero mirror)
    mirror = {
        P.StolarskyBranch.P_ZERO: P.StolarskyBranch.Q_ZERO,
        P.StolarskyBranch.Q_ZERO: P.StolarskyBranch.P_ZERO,
    }
    for (p, q), branch in cases:
        got = P.StolarskyParams(p, q).swapped().branch
        assert got is mirror.get(branch, branch)
    with pytest.raises(ValueError):
        P.StolarskyParams(float("nan"), 1.0)


def test_stolarsky_from_params_matches():
    params = P.StolarskyParams(0.7, -2.2)
    assert float(P.stolarsky_from_params(params, 2, 9)) == float(
        P.stolarsky_mean(0.7, -2.2, 2, 9)
    )


def test_stolarsky_symmetries(rng):
    a, b = sample_pairs(rng, 5000)
    p = rng.uniform(-4, 4, a.shape)
    q = rng.uniform(-4, 4, a.shape)
    s = P.stolarsky_mean(p, q, a, b)
    assert np.max(np.abs(s - P.stolarsky_mean(q, p, a, b)) / s) < 1e-12
    assert np.max(np.abs(s - P.stolarsky_mean(p, q, b, a)) / s) < 1e-12
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    assert np.all(s >= lo * (1 - 1e-12)) and np.all(s <= hi * (1 + 1e-12))


def test_power_family_examples():
    assert float(P.power_difference_mean(-0.5, 4, 9)) == pytest.approx(6.0, rel=1e-13)
    assert float(P.power_log_mean(1, 2, 4)) == pytest.approx(3.0, rel=1e-13)
    assert float(P.second_power_log_mean(1, 1, E)) == pytest.approx(E - 1, rel=1e-13)
    assert float(P.power_family("Ip", 1.0, 1, E)) == pytest.approx(I_1_E, rel=1e-13)
    with pytest.raises(ValueError):
        P.power_family("nope", 1.0, 1, 2)


PARTICULAR = [
    ("Lp", -2.0, S.geometric_mean),
    ("Lp", -1.0, S.log_mean),
    ("Lp", 0.0, S.identric_mean),
    ("Lp", 1.0, S.arithmetic_mean),
    ("Dp", -2.0, S.harmonic_mean),
    ("Dp", -1.0, S.log_mean_dual),
    ("Dp", -0.5, S.geometric_mean),
    ("Dp", 0.0, S.log_mean),
    ("Dp", 1.0, S.arithmetic_mean),
    ("Ip", -1.0, S.identric_mean_dual),
    ("Ip", 0.0, S.geometric_mean),
    ("Ip", 1.0, S.identric_mean),
    ("calLp", -1.0, S.log_mean_dual),
    ("calLp", 0.0, S.geometric_mean),
    ("calLp", 1.0, S.log_mean),
]


@pytest.mark.parametrize("kind,p,classic", PARTICULAR)
def test_power_particular_cases(kind, p, classic, rng):
    a, b = sample_pairs(rng, 3000)
    got = P.power_family(kind, p, a, b)
    want = classic(a, b)
    assert np.max(np.abs(got - want) / want) <= 1e-11


def test_stolarsky_specializations(rng):
    a, b = sample_pairs(rng, 5000)
    p = rng.uniform(-4, 4, a.shape)
    one = np.ones_like(p)
    pairs = [
        (P.binomial_mean(p, a, b), P.stolarsky_mean(p, 2 * p, a, b)),
        (P.power_log_mean(p, a, b), P.stolarsky_mean(one, p + 1, a, b)),
        (P.power_difference_mean(p, a, b), P.stolarsky_mean(p, p + 1, a, b)),
        (P.power_exponential_mean(p, a, b), P.stolarsky_mean(p, p, a, b)),
        (P.second_power_log_mean(p, a, b), P.stolarsky_mean(0 * one, p, a, b)),
    ]
    for got, want in pairs:
        assert np.max(np.abs(got - want) / want) <= 1e-11


def test_branch_switch_continuity():
    eps = 1.0000001 * P.DELTA
    for p, a, b in [(1.3, 2.0, 3.0), (-2.1, 1.0, 7.0), (0.7, 5.0, 0.2)]:
        generic = float(P.stolarsky_mean(p, p + eps, a, b))
        limit = float(P.power_exponential_mean(p + eps / 2, a, b))
        assert abs(generic - limit) / limit <= 1e-8
        across = float(P.stolarsky_mean(p, p + 0.9999999 * P.DELTA, a, b))
        assert abs(generic - across) / across <= 1e-8


def test_weighted_binomial_examples():
    assert float(P.weighted_binomial(1, 1, 5, 0.25)) == pytest.approx(2.0, rel=1e-14)
    assert float(P.weighted_binomial(0, 1, 16, 0.25)) == pytest.approx(2.0, rel=1e-14)
    assert float(P.weighted_binomial(-1, 1, 3, 0.5)) == pytest.approx(1.5, rel=1e-14)
    assert float(P.weighted_binomial(2.3, 4, 4, 0.77)) == 4.0
    # exact endpoint weights survive huge exponent spreads
    assert float(P.weighted_binomial(4.0, 1e-6, 1e6, 0.0)) == pytest.approx(1e-6, rel=1e-12)
    assert float(P.weighted_binomial(4.0, 1e-6, 1e6, 1.0)) == pytest.approx(1e6, rel=1e-12)


def test_weighted_binomial_properties(rng):
    a, b, v = sample_triples(rng, 5000)
    p = rng.uniform(-4, 4, a.shape)
    mid = P.weighted_binomial(p, a, b, 0.5)
    ref = P.binomial_mean(p, a, b)
    assert np.max(np.abs(mid - ref) / ref) < 1e-11
    val = P.weighted_binomial(p, a, b, v)
    refl = P.weighted_binomial(p, b, a, 1 - v)
    assert np.max(np.abs(val - refl) / val) < 1e-12
    g = S.weighted_geometric(a, b, v)
    for tiny in (1e-10, -1e-10):
        lim = P.weighted_binomial(tiny, a, b, v)
        assert np.max(np.abs(lim - g) / g) < 1e-8


def test_weighted_stolarsky_midpoint_and_bounds(rng):
    a, b, v = sample_triples(rng, 5000)
    p = rng.uniform(-4, 4, a.shape)
    q = rng.uniform(-4, 4, a.shape)
    ref = P.stolarsky_mean(p, q, a, b)
    for form in ("via_Bp", "via_Bq"):
        mid = P.weighted_stolarsky(p, q, a, b, 0.5, form=form)
        assert np.max(np.abs(mid - ref) / ref) <= 1e-11
        val = P.weighted_stolarsky(p, q, a, b, v, form=form)
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        assert np.all(val >= lo * (1 - 1e-12)) and np.all(val <= hi * (1 + 1e-12))
        refl = P.weighted_stolarsky(p, q, b, a, 1 - v, form=form)
        assert np.max(np.abs(val - refl) / val) <= 1e-11
    assert float(P.weighted_stolarsky(1, 2, 1, 4, 0.5)) == pytest.approx(2.5, rel=1e-13)
    assert float(P.weighted_stolarsky(0.3, -1.2, 9, 9, 0.8)) == 9.0
    with pytest.raises(ValueError):
        P.weighted_stolarsky(1, 2, 1, 4, 0.5, form="nope")


def _tame_params(rng, n):
    h = rng.uniform(-5, 5, n)
    h = np.where(np.abs(h) < 1e-3, 1e-3, h)
    a = 10.0 ** rng.uniform(-2, 2, n)
    b = a * np.exp(h)
    v = rng.uniform(0.02, 0.98, n)
    p = rng.uniform(-4, 4, n)
    p = np.where(np.abs(p) < 0.05, p + 0.1, p)
    p = np.where(np.abs(p + 1) < 0.05, p + 0.1, p)
    q = p + np.where(rng.random(n) < 0.5, 1.0, -1.0) * np.exp(rng.uniform(np.log(0.05), np.log(4), n))
    q = np.where(np.abs(q) < 0.05, q + 0.12, q)
    q = np.where(np.abs(q - p) < 0.05, q + 0.12, q)
    return a, b, v, p, q


def test_weighted_stolarsky_explicit_agreement(rng):
    a, b, v, p, q = _tame_params(rng, 10000)
    for form in ("via_Bp", "via_Bq"):
        comp = P.weighted_stolarsky(p, q, a, b, v, form=form)
        expl = P.weighted_stolarsky_explicit(p, q, a, b, v, form=form)
        assert np.max(np.abs(comp - expl) / comp) <= 1e-11, form


def test_weighted_power_explicit_agreement(rng):
    a, b, v, p, _ = _tame_params(rng, 10000)
    for kind in P.WEIGHTED_POWER_KINDS:
        comp = P.weighted_power(kind, p, a, b, v)
        expl = P.weighted_power_explicit(kind, p, a, b, v)
        assert np.max(np.abs(comp - expl) / comp) <= 1e-11, kind
    with pytest.raises(ValueError):
        P.weighted_power("nope", 1, 1, 2, 0.5)
    with pytest.raises(ValueError):
        P.weighted_power_explicit("nope", 1, 1, 2, 0.5)


def test_weighted_power_midpoint_reflection_bounds(rng):
    a, b, v = sample_triples(rng, 5000)
    p = rng.uniform(-4, 4, a.shape)
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    refs = {
        "Lpv": P.power_log_mean(p, a, b),
        "Dpv": P.power_difference_mean(p, a, b),
        "Ipv": P.power_exponential_mean(p, a, b),
        "calLpv": P.second_power_log_mean(p, a, b),
    }
    for kind in P.WEIGHTED_POWER_KINDS:
        mid = P.weighted_power(kind, p, a, b, 0.5)
        assert np.max(np.abs(mid - refs[kind]) / refs[kind]) <= 1e-11, kind
        val = P.weighted_power(kind, p, a, b, v)
        assert np.all(val >= lo * (1 - 1e-12)) and np.all(val <= hi * (1 + 1e-12)), kind
        refl = P.weighted_power(kind, p, b, a, 1 - v)
        assert np.max(np.abs(val - refl) / val) <= 1e-11, kind


def test_weighted_power_reduces_to_weighted_families(rng):
    # zero / unit orders of the weighted power means recover the directly
    # implemented weighted log/identric families and their duals
    a, b, v = sample_triples(rng, 5000)
    cases = [
        (P.weighted_power_difference(0.0, a, b, v), W.weighted_log(a, b, v)),
        (P.weighted_power_log(0.0, a, b, v), W.weighted_identric(a, b, v)),
        (P.weighted_power_log(-1.0, a, b, v), W.second_weighted_log(a, b, v)),
        (P.weighted_power_exponential(1.0, a, b, v), W.weighted_identric(a, b, v)),
        (P.weighted_power_exponential(-1.0, a, b, v), W.weighted_identric_dual(a, b, v)),
        (P.weighted_second_power_log(-1.0, a, b, v), W.second_weighted_log_dual(a, b, v)),
        (P.weighted_power_exponential(0.0, a, b, v), S.weighted_geometric(a, b, v)),
    ]
    for got, want in cases:
        assert np.max(np.abs(got - want) / want) <= 1e-11


def test_weighted_stolarsky_forms_share_midpoint_only(rng):
    # both constructions are weighted means of the same symmetric mean;
    # away from v = 1/2 they genuinely differ (reported, never asserted)
    a, b, v = sample_triples(rng, 2000)
    p = rng.uniform(-4, 4, a.shape)
    q = rng.uniform(-4, 4, a.shape)
    f1 = P.weighted_stolarsky(p, q, a, b, v)
    f2 = P.weighted_stolarsky(p, q, a, b, v, form="via_Bq")
    gap = float(np.max(np.abs(f1 - f2) / f1))
    assert np.isfinite(gap)
