"""Resultant mean-map calculus, stability checks, traces, the fixed-point
stabilizer, and the nine-family table."""

import numpy as np
import pytest

from meanforge import algebra as A
from meanforge import powers as P
from meanforge import scalars as S
from meanforge import weighted as W

K = S.MeanKind
M = S.MEANS

L_1_4 = 2.164042561333445111040
LV_1_4_Q = 1.518125990183969111862
I_1_E = 1.789572396841833451057


def test_resultant_examples():
    assert float(A.resultant(M[K.ARITH], M[K.ARITH], M[K.ARITH])(2, 6)) == 4.0
    r = A.resultant(M[K.ARITH], M[K.LOG], M[K.GEOM])
    assert float(r(1, 4)) == pytest.approx(L_1_4, rel=1e-13)
    assert float(A.resultant(M[K.GEOM], M[K.IDENTRIC], M[K.ARITH])(3, 3)) == 3.0
    assert r.name == "R(arith, log, geom)"


def test_check_stable():
    for kind in (K.ARITH, K.GEOM, K.HARM):
        rep = A.check_stable(M[kind])
        assert rep.verdict and rep.max_residual <= 1e-11
        assert rep.samples == 2000
    rep = A.check_stable(M[K.LOG])
    assert not rep.verdict
    b3 = S.SymmetricMean("binomial3", lambda a, b: P.binomial_mean(3.0, a, b))
    assert A.check_stable(b3).verdict


def test_check_stable_binomial_random_orders(rng):
    for p in rng.uniform(-4, 4, 20):
        bp = S.SymmetricMean(f"binomial{p:.3f}", lambda a, b, _p=p: P.binomial_mean(_p, a, b))
        rep = A.check_stable(bp, samples=500)
        assert rep.verdict, (p, rep.max_residual)


THM31 = [
    (K.HARM, K.LOG, K.ARITH),
    (K.ARITH, K.LOG, K.GEOM),
    (K.GEOM, K.IDENTRIC, K.ARITH),
    (K.ARITH, K.LOG_DUAL, K.HARM),
    (K.HARM, K.LOG_DUAL, K.GEOM),
    (K.GEOM, K.IDENTRIC_DUAL, K.HARM),
]


@pytest.mark.parametrize("k1,k,k2", THM31)
def test_check_stabilizable_relations(k1, k, k2):
    rep = A.check_stabilizable(M[k1], M[k], M[k2])
    assert rep.verdict and rep.max_residual <= 1e-11, rep.relation


def test_check_stabilizable_negative_case():
    rep = A.check_stabilizable(M[K.ARITH], M[K.GEOM], M[K.HARM])
    assert not rep.verdict  # geom is not (arith, harm)-stabilizable


def test_check_stabilizable_trivial_case():
    rep = A.check_stabilizable(M[K.GEOM], M[K.GEOM], M[K.GEOM])
    assert rep.verdict


def test_check_cross_mean():
    for kind in (K.ARITH, K.GEOM, K.HARM):
        assert A.check_cross_mean(M[kind]).verdict
    assert not A.check_cross_mean(M[K.LOG]).verdict
    assert not A.check_cross_mean(M[K.IDENTRIC]).verdict


def test_dual_transport(rng):
    # if m is (m1, m2)-stabilizable then m* is (m1*, m2*)-stabilizable
    for k1, k, k2 in THM31:
        rep = A.check_stabilizable(M[k1].dual(), M[k].dual(), M[k2].dual(), samples=500)
        assert rep.verdict, rep.relation


def test_weighted_construct():
    fam = A.weighted_construct(
        M[K.LOG], A.STANDARD_FAMILIES["geom"], A.STANDARD_FAMILIES["arith"]
    )
    assert float(fam(1, 4, 0.25)) == pytest.approx(LV_1_4_Q, rel=1e-13)
    fam_i = A.weighted_construct(
        M[K.IDENTRIC], A.STANDARD_FAMILIES["arith"], A.STANDARD_FAMILIES["geom"]
    )
    assert float(fam_i(5, 5, 0.4)) == 5.0
    fam_g = A.weighted_construct(
        M[K.GEOM], A.STANDARD_FAMILIES["geom"], A.STANDARD_FAMILIES["geom"]
    )
    assert float(fam_g(2, 8, 0.5)) == pytest.approx(4.0, rel=1e-13)


def test_weighted_construct_is_weighted_mean(rng):
    a = 10.0 ** rng.uniform(-3, 3, 2000)
    b = a * np.exp(rng.uniform(-8, 8, 2000))
    v = rng.uniform(0, 1, 2000)
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    for p_name in A.TABLE1_LABELS:
        for q_name in A.TABLE1_LABELS:
            m = M[A.TABLE1_MEANS[(p_name, q_name)]]
            fam = A.weighted_construct(
                m, A.STANDARD_FAMILIES[p_name], A.STANDARD_FAMILIES[q_name]
            )
            val = fam(a, b, v)
            assert np.all(val >= lo * (1 - 1e-12)) and np.all(val <= hi * (1 + 1e-12))
            refl = fam(b, a, 1 - v)
            assert np.max(np.abs(val - refl) / val) < 1e-12
            mid = fam(a, b, 0.5)
            ref = m(a, b)
            assert np.max(np.abs(mid - ref) / ref) < 1e-12


def test_table1_values():
    grid = A.table1(2, 8, 0.3)
    assert grid[0][0] == pytest.approx(float(S.weighted_arithmetic(2, 8, 0.3)), rel=1e-13)
    assert grid[1][1] == pytest.approx(float(S.weighted_geometric(2, 8, 0.3)), rel=1e-13)
    assert grid[2][2] == pytest.approx(float(S.weighted_harmonic(2, 8, 0.3)), rel=1e-13)
    assert A.table1(1, 4, 0.25)[1][0] == pytest.approx(LV_1_4_Q, rel=1e-13)
    assert all(x == pytest.approx(3.0, rel=1e-13) for row in A.table1(3, 3, 0.71) for x in row)


def test_table1_matches_closed_form_families(rng):
    for _ in range(25):
        a = float(10 ** rng.uniform(-2, 2))
        b = a * float(np.exp(rng.uniform(-6, 6)))
        v = float(rng.uniform(0.01, 0.99))
        built = A.table1(a, b, v)
        direct = A.table1(a, b, v, via_construct=False)
        for i in range(3):
            for j in range(3):
                assert built[i][j] == pytest.approx(direct[i][j], rel=1e-12)


def test_table1_midpoint_layout(rng):
    expected = [
        [S.arithmetic_mean, S.identric_mean, S.log_mean],
        [S.log_mean, S.geometric_mean, S.log_mean_dual],
        [S.log_mean_dual, S.identric_mean_dual, S.harmonic_mean],
    ]
    for _ in range(25):
        a = float(10 ** rng.uniform(-2, 2))
        b = a * float(np.exp(rng.uniform(-6, 6)))
        grid = A.table1(a, b, 0.5)
        for i in range(3):
            for j in range(3):
                assert grid[i][j] == pytest.approx(float(expected[i][j](a, b)), rel=1e-12)


def test_grid_config_validation():
    with pytest.raises(ValueError):
        A.GridConfig(points=512)
    with pytest.raises(ValueError):
        A.GridConfig(points=1)
    with pytest.raises(ValueError):
        A.GridConfig(half_width=0)


def test_mean_trace_basic():
    trace = A.MeanTrace.from_mean(M[K.LOG])
    assert trace.symmetry_residual() < 1e-10
    x = np.array([0.5, 1.0, 7.3, 100.0])
    got = trace(1.0, x)
    want = S.log_mean(1.0, x)
    assert np.max(np.abs(got - want) / want) < 1e-10
    # homogeneous evaluation off the unit anchor
    assert float(trace(3.0, 12.0)) == pytest.approx(float(S.log_mean(3.0, 12.0)), rel=1e-10)


def test_mean_trace_validation():
    s = np.linspace(-2, 2, 5)
    with pytest.raises(ValueError):
        A.MeanTrace(s, np.full(5, 0.1))         # f(1) != 1
    good = np.log(S.arithmetic_mean(1.0, np.exp(s)))
    A.MeanTrace(s, good)
    bad = good.copy()
    bad[-1] = np.log(np.exp(s[-1]) * 2.0)       # above max(1, x)
    with pytest.raises(ValueError):
        A.MeanTrace(s, bad)
    with pytest.raises(ValueError):
        A.MeanTrace(np.linspace(0.5, 2, 4), np.zeros(4))  # no x = 1 node


def test_mean_trace_extrapolates_off_grid():
    trace = A.MeanTrace.from_mean(M[K.ARITH], A.GridConfig(points=65, half_width=3.0))
    val = float(trace.trace_fn(np.exp(4.0)))
    assert val == pytest.approx(0.5 * (1 + np.exp(4.0)), rel=0.05)
    assert val > 0


STAB_TARGETS = [
    ("arith", "geom", S.log_mean),
    ("geom", "arith", S.identric_mean),
    ("harm", "geom", S.log_mean_dual),
    ("geom", "harm", S.identric_mean_dual),
]


@pytest.mark.parametrize("q,p,target", STAB_TARGETS)
def test_stabilize_fixed_point_targets(q, p, target):
    res = A.stabilize_fixed_point(q, p)
    x, f = res.trace.values()
    mask = np.abs(np.log(x)) <= 8.0
    want = target(1.0, x[mask])
    assert res.iterations <= 200
    assert np.max(np.abs(f[mask] - want) / want) <= 1e-8


def test_stabilize_examples():
    res = A.stabilize_fixed_point("arith", "geom")
    assert float(res.trace.trace_fn(4.0)) == pytest.approx(L_1_4, rel=1e-8)
    res = A.stabilize_fixed_point("geom", "arith")
    assert float(res.trace.trace_fn(np.e)) == pytest.approx(I_1_E, rel=1e-8)
    res = A.stabilize_fixed_point("harm", "arith")
    x, f = res.trace.values()
    mask = np.abs(np.log(x)) <= 8.0
    want = S.log_mean(1.0, x[mask])
    assert np.max(np.abs(f[mask] - want) / want) <= 1e-8


def test_stabilize_fixed_means_converge_instantly():
    assert A.stabilize_fixed_point("geom", "geom").iterations == 0
    assert A.stabilize_fixed_point("arith", "arith", initial="arith").iterations == 0
    assert A.stabilize_fixed_point("harm", "harm", initial="harm").iterations == 0


def test_stabilize_unique_limit_from_any_start():
    tol = 1e-10
    traces = [
        A.stabilize_fixed_point("arith", "geom", tol=tol, initial=init).trace
        for init in ("arith", "geom", "harm")
    ]
    f0 = np.exp(traces[0].log_f)
    for other in traces[1:]:
        f = np.exp(other.log_f)
        assert np.max(np.abs(f - f0) / f0) <= 10 * tol


def test_stabilize_nonconvergence():
    with pytest.raises(A.NonConvergence) as err:
        A.stabilize_fixed_point("arith", "geom", max_iter=2, initial="harm")
    assert err.value.iterations == 2
    assert len(err.value.history) == 3
    assert err.value.residual > 0


def test_stabilize_accepts_trace_initial():
    warm = A.stabilize_fixed_point("arith", "geom").trace
    res = A.stabilize_fixed_point("arith", "geom", initial=warm)
    assert res.iterations <= 1
