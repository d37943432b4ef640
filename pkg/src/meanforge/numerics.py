"""Singularity-safe scalar kernels shared by the mean evaluators.

Every function accepts floats or numpy float64 arrays and stays accurate
near the removable singularities (equal arguments, vanishing exponents,
coincident parameters) where the textbook formulas lose all their digits.

The workhorse identity is ``b**t - a**t = 2 * (a*b)**(t/2) * sinh(t*h/2)``
with ``h = log(b/a)``; it reduces the entire Stolarsky/power-mean family
to evaluations of ``log(sinh(z)/z)`` and its divided differences, which
are computed here by series, direct, or asymptotic formulas depending on
the argument regime.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "log_ratio",
    "log_sinhc",
    "log_cosh",
    "langevin",
    "langevin_d2",
    "langevin_d4",
    "log_sinhc_slope",
]

_LN2 = 0.6931471805599453

# Taylor coefficients at 0, all validated against sympy expansions.
# log(sinh(z)/z) = z^2/6 - z^4/180 + z^6/2835 - z^8/37800 + z^10/467775 - ...
_LSC = (1 / 6, -1 / 180, 1 / 2835, -1 / 37800, 1 / 467775, -691 / 3831077250)
# coth(z) - 1/z = z/3 - z^3/45 + 2 z^5/945 - z^7/4725 + 2 z^9/93555 - ...
_LANG = (1 / 3, -1 / 45, 2 / 945, -1 / 4725, 2 / 93555, -1382 / 638512875, 4 / 18243225)
# d^2/dz^2 of the above
_LANG2 = (-2 / 15, 8 / 189, -2 / 225, 16 / 10395, -2764 / 11609325, 16 / 467775)
# d^4/dz^4
_LANG4 = (16 / 63, -8 / 45, 32 / 495, -22112 / 1289925, 32 / 8505, -28936 / 39760875)
# log(cosh(z)) = z^2/2 - z^4/12 + z^6/45 - 17 z^8/2520 + 31 z^10/14175 - ...
_LNCH = (1 / 2, -1 / 12, 1 / 45, -17 / 2520, 31 / 14175, -691 / 935550)

# |dz| below which the slope of log_sinhc is taken from the central
# Taylor expansion; above it the direct difference has enough digits.
_SLOPE_CENTRAL = 0.04
# |z| beyond which the same-sign decomposition of the slope is exact
# enough to kill the cancellation of two large log_sinhc values.
_SLOPE_FAR = 3.0


def _even_poly(w, coeffs):
    acc = np.zeros_like(w)
    for c in reversed(coeffs):
        acc = w * acc + c
    return acc


def log_ratio(a, b):
    """log(b/a), accurate also when b/a is close to 1."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    r = b / a
    near = (r > 0.5) & (r < 2.0)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        out = np.where(near, np.log1p((b - a) / np.where(near, a, 1.0)), np.log(r))
    return out


def log_sinhc(z):
    """log(sinh(z)/z); even, vanishes at 0, ~|z| - log(2|z|) for large |z|."""
    z = np.asarray(z, dtype=np.float64)
    az = np.abs(z)
    w = z * z
    small = az <= 0.1
    large = az >= 20.0
    az_mid = np.clip(az, 0.05, 25.0)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        series = w * _even_poly(w, _LSC)
        mid = np.log(np.sinh(az_mid) / az_mid)
        asym = az - _LN2 - np.log(np.where(large, az, 1.0)) + np.log1p(-np.exp(-2.0 * np.where(large, az, 20.0)))
    return np.where(small, series, np.where(large, asym, mid))


def log_cosh(z):
    """log(cosh(z)); even, ~|z| - log 2 for large |z|."""
    z = np.asarray(z, dtype=np.float64)
    az = np.abs(z)
    w = z * z
    small = az <= 0.1
    large = az >= 350.0
    az_mid = np.clip(az, 0.0, 355.0)
    with np.errstate(over="ignore"):
        series = w * _even_poly(w, _LNCH)
        mid = np.log(np.cosh(az_mid))
        asym = az - _LN2 + np.log1p(np.exp(-2.0 * np.clip(az, 1.0, None)))
    return np.where(small, series, np.where(large, asym, mid))


def langevin(z):
    """coth(z) - 1/z; odd, bounded by 1, slope 1/3 at 0."""
    z = np.asarray(z, dtype=np.float64)
    s = np.sign(z)
    az = np.abs(z)
    w = z * z
    small = az <= 0.15
    large = az >= 20.0
    az_safe = np.where(small, 1.0, az)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        series = z * _even_poly(w, _LANG)
        mid = s * (1.0 / np.tanh(az_safe) - 1.0 / az_safe)
        asym = s * (1.0 - 1.0 / az_safe + 2.0 / np.expm1(2.0 * az_safe))
    return np.where(small, series, np.where(large, asym, mid))


def langevin_d2(z):
    """Second derivative of langevin: 2 coth(z) csch(z)^2 - 2/z^3."""
    z = np.asarray(z, dtype=np.float64)
    s = np.sign(z)
    az = np.abs(z)
    w = z * z
    small = az <= 0.25
    large = az >= 300.0
    az_safe = np.clip(np.where(small, 1.0, az), 0.1, 305.0)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        series = z * _even_poly(w, _LANG2)
        csch2 = 1.0 / np.sinh(az_safe) ** 2
        mid = s * (2.0 * csch2 / np.tanh(az_safe) - 2.0 / az_safe**3)
        asym = s * (-2.0 / np.where(large, az, 1.0) ** 3)
    return np.where(small, series, np.where(large, asym, mid))


def langevin_d4(z):
    """Fourth derivative of langevin: 8 csch^2 coth^3 + 16 csch^4 coth - 24/z^5."""
    z = np.asarray(z, dtype=np.float64)
    s = np.sign(z)
    az = np.abs(z)
    w = z * z
    small = az <= 0.5
    large = az >= 300.0
    az_safe = np.clip(np.where(small, 1.0, az), 0.1, 305.0)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        series = z * _even_poly(w, _LANG4)
        csch2 = 1.0 / np.sinh(az_safe) ** 2
        coth = 1.0 / np.tanh(az_safe)
        mid = s * (8.0 * csch2 * coth**3 + 16.0 * csch2**2 * coth - 24.0 / az_safe**5)
        asym = s * (-24.0 / np.where(large, az, 1.0) ** 5)
    return np.where(small, series, np.where(large, asym, mid))


def log_sinhc_slope(zp, zq):
    """(log_sinhc(zq) - log_sinhc(zp)) / (zq - zp), stable in every regime.

    Degenerates to langevin((zp+zq)/2) as zq -> zp.  Three regimes:

    - nearly coincident arguments: central Taylor expansion of the divided
      difference in langevin and its odd derivatives;
    - both arguments on the same side and far from 0: exact decomposition
      log_sinhc(z) = |z| - log(2|z|) + log1p(-exp(-2|z|)), whose difference
      has no cancellation;
    - otherwise: direct difference (the values are small there).
    """
    zp = np.asarray(zp, dtype=np.float64)
    zq = np.asarray(zq, dtype=np.float64)
    zp, zq = np.broadcast_arrays(zp, zq)
    dz = zq - zp
    z0 = 0.5 * (zp + zq)
    adz = np.abs(dz)

    central = adz <= _SLOPE_CENTRAL
    far = (~central) & (zp * zq > 0) & (np.minimum(np.abs(zp), np.abs(zq)) >= _SLOPE_FAR)
    direct = ~(central | far)

    dz2 = dz * dz
    central_val = langevin(z0) + dz2 * (langevin_d2(z0) / 24.0 + dz2 * (langevin_d4(z0) / 1920.0))

    u = np.abs(zp)
    w = np.abs(zq)
    du = np.where(far, w - u, 1.0)
    u_safe = np.where(far, u, 1.0)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        gdiff = np.log1p(-np.exp(-2.0 * w)) - np.log1p(-np.exp(-2.0 * u_safe))
        far_val = np.sign(zp) * (1.0 - np.log1p(du / u_safe) / du + gdiff / du)
        dz_safe = np.where(direct, dz, 1.0)
        direct_val = (log_sinhc(zq) - log_sinhc(zp)) / dz_safe

    return np.where(central, central_val, np.where(far, far_val, direct_val))
