import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def sample_pairs(rng, n, ratio_span=14.0, scale_span=6.0):
    """Random positive pairs: a log-uniform, log(b/a) uniform."""
    h = rng.uniform(-ratio_span, ratio_span, n)
    a = 10.0 ** rng.uniform(-scale_span, scale_span, n)
    return a, a * np.exp(h)


def sample_triples(rng, n, **kw):
    a, b = sample_pairs(rng, n, **kw)
    v = rng.uniform(0.001, 0.999, n)
    return a, b, v
