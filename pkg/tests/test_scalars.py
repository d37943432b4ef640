"""Classic means, duals, weighted standard means, and their basic laws."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanforge import scalars as S

from conftest import sample_pairs, sample_triples

E = float(np.e)

# frozen 30-digit oracle values
L_1_E = 1.718281828459045235360        # e - 1
I_1_E = 1.789572396841833451057
LSTAR_1_4 = 1.848392481493187491779    # 4 log(4) / 3
L_1_4 = 2.164042561333445111040       # 3 / log 4


def test_classic_examples():
    assert float(S.arithmetic_mean(2, 8)) == 5.0
    assert float(S.geometric_mean(2, 8)) == pytest.approx(4.0, rel=1e-15)
    assert float(S.harmonic_mean(1, 3)) == pytest.approx(1.5, rel=1e-15)
    assert float(S.log_mean(1, E)) == pytest.approx(L_1_E, rel=1e-14)
    assert float(S.identric_mean(1, E)) == pytest.approx(I_1_E, rel=1e-14)
    assert float(S.log_mean(1, 4)) == pytest.approx(L_1_4, rel=1e-14)


def test_equal_arguments_fixed_point():
    for kind in S.MeanKind:
        m = S.MEANS[kind]
        for x in (1e-6, 1.0, 3.7, 1e6):
            assert float(m(x, x)) == pytest.approx(x, rel=1e-15)


def test_weighted_standard_examples():
    assert float(S.weighted_arithmetic(1, 5, 0.25)) == 2.0
    assert float(S.weighted_geometric(1, 16, 0.25)) == pytest.approx(2.0, rel=1e-15)
    assert float(S.weighted_harmonic(1, 3, 0.5)) == pytest.approx(1.5, rel=1e-15)
    with pytest.raises(ValueError):
        S.weighted_standard("log", 1, 2, 0.5)


def test_weighted_standard_midpoint_and_reflection(rng):
    a, b, v = sample_triples(rng, 3000)
    for kind in ("arith", "geom", "harm"):
        mid = S.weighted_standard(kind, a, b, 0.5)
        ref = S.MEANS[S.MeanKind(kind)](a, b)
        assert np.max(np.abs(mid - ref) / ref) < 1e-12
        refl = S.weighted_standard(kind, b, a, 1.0 - v)
        val = S.weighted_standard(kind, a, b, v)
        assert np.max(np.abs(val - refl) / val) < 1e-12


def test_dual_examples():
    harm = S.MEANS[S.MeanKind.HARM]
    geom = S.MEANS[S.MeanKind.GEOM]
    log = S.MEANS[S.MeanKind.LOG]
    assert float(harm.dual()(2, 8)) == pytest.approx(5.0, rel=1e-14)
    assert float(geom.dual()(2, 8)) == pytest.approx(4.0, rel=1e-14)
    assert float(log.dual()(1, 4)) == pytest.approx(LSTAR_1_4, rel=1e-13)
    assert float(S.log_mean_dual(1, 4)) == pytest.approx(LSTAR_1_4, rel=1e-13)


def test_dual_involution(rng):
    a, b = sample_pairs(rng, 2000)
    for kind in (S.MeanKind.LOG, S.MeanKind.IDENTRIC, S.MeanKind.ARITH, S.MeanKind.HARM):
        m = S.MEANS[kind]
        twice = m.dual().dual()
        assert np.max(np.abs(twice(a, b) - m(a, b)) / m(a, b)) < 1e-14


def test_dual_of_trivial_means():
    mn = S.MEANS[S.MeanKind.MIN]
    assert float(mn.dual()(2, 5)) == 5.0
    assert float(mn.dual().dual()(2, 5)) == 2.0


def test_mean_axioms_sampled(rng):
    a, b = sample_pairs(rng, 20000)
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    t = 10.0 ** rng.uniform(-3, 3, a.shape)
    for kind in S.MeanKind:
        m = S.MEANS[kind]
        val = m(a, b)
        assert np.all(val >= lo * (1 - 1e-12)) and np.all(val <= hi * (1 + 1e-12))
        sym = m(b, a)
        assert np.max(np.abs(val - sym) / val) < 1e-12
        hom = m(t * a, t * b)
        assert np.max(np.abs(hom - t * val) / (t * val)) < 1e-12


def test_ordering_chain_classic(rng):
    # harm <= I* <= L* <= geom <= log <= identric <= arith
    a, b = sample_pairs(rng, 20000)
    chain = [
        S.harmonic_mean(a, b),
        S.identric_mean_dual(a, b),
        S.log_mean_dual(a, b),
        S.geometric_mean(a, b),
        S.log_mean(a, b),
        S.identric_mean(a, b),
        S.arithmetic_mean(a, b),
    ]
    floor = -1e-12 * np.maximum(a, b)
    for lo_t, hi_t in zip(chain, chain[1:]):
        assert np.all(hi_t - lo_t >= floor)


def test_ordering_chain_weighted(rng):
    a, b, v = sample_triples(rng, 20000)
    floor = -1e-12 * np.maximum(a, b)
    h = S.weighted_harmonic(a, b, v)
    g = S.weighted_geometric(a, b, v)
    n = S.weighted_arithmetic(a, b, v)
    assert np.all(g - h >= floor)
    assert np.all(n - g >= floor)


@given(
    a=st.floats(min_value=1e-6, max_value=1e6),
    b=st.floats(min_value=1e-6, max_value=1e6),
)
@settings(max_examples=300, deadline=None)
def test_log_identric_between_geom_and_arith(a, b):
    lo = float(S.geometric_mean(a, b))
    hi = float(S.arithmetic_mean(a, b))
    lv = float(S.log_mean(a, b))
    iv = float(S.identric_mean(a, b))
    slack = 1e-12 * max(a, b)
    assert lo - slack <= lv <= iv <= hi + slack


def test_series_branch_joins_direct_branch():
    # straddle the h = 1e-8 switch; values must agree through it
    for base in (1e-3, 1.0, 1e4):
        for h in (9.9e-9, 1.01e-8):
            b = base * np.exp(h)
            direct = float(S.log_mean(base, b))
            assert direct == pytest.approx(base * (1 + h / 2), rel=1e-13)
            ident = float(S.identric_mean(base, b))
            assert ident == pytest.approx(base * (1 + h / 2), rel=1e-13)


def test_positive_pair_validation():
    S.PositivePair(1.0, 2.0)
    with pytest.raises(ValueError):
        S.PositivePair(-1.0, 2.0)
    with pytest.raises(ValueError):
        S.PositivePair(0.0, 2.0)
    with pytest.raises(ValueError):
        S.PositivePair(float("inf"), 2.0)
    with pytest.raises(ValueError):
        S.PositivePair(float("nan"), 2.0)


def test_weight_classification():
    assert S.Weight(0.0).kind is S.WeightClass.ENDPOINT0
    assert S.Weight(1.0).kind is S.WeightClass.ENDPOINT1
    assert S.Weight(0.5).kind is S.WeightClass.MIDPOINT
    assert S.Weight(0.25).kind is S.WeightClass.INTERIOR
    assert S.Weight(5e-324).kind is S.WeightClass.INTERIOR  # exact comparison only
    with pytest.raises(ValueError):
        S.Weight(1.5)
    with pytest.raises(ValueError):
        S.Weight(-0.1)


def test_classic_mean_accepts_pair():
    pair = S.PositivePair(2.0, 8.0)
    assert float(S.classic_mean("geom", pair)) == pytest.approx(4.0, rel=1e-15)
    assert float(S.classic_mean(S.MeanKind.ARITH, 2.0, 8.0)) == 5.0
