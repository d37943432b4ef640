"""Means of Hermitian positive-definite matrices.

Matrix means are evaluated through the representing-function calculus
A^(1/2) f(A^(-1/2) B A^(-1/2)) A^(1/2); matrix functions go through the
cached spectral decomposition, and every product that should be Hermitian
is re-symmetrized before further use.
"""

from __future__ import annotations

import numpy as np

from .scalars import identric_mean, log_mean
from .weighted import weighted_identric, weighted_log

__all__ = [
    "DimensionMismatch",
    "NonPositive",
    "HPDMatrix",
    "RepresentingFunction",
    "apply_mean",
    "op_weighted_arithmetic",
    "op_weighted_geometric",
    "op_weighted_harmonic",
    "op_weighted_standard",
    "op_log_mean",
    "op_identric_mean",
    "op_weighted_log",
    "op_weighted_identric",
    "op_log_integral",
    "loewner_leq",
    "LoewnerResult",
    "OPERATOR_CHAIN_IDS",
    "operator_chain_terms",
    "check_operator_chains",
    "random_hpd",
    "format_matrix",
    "parse_matrix",
    "read_matrix",
    "write_matrix",
]


class DimensionMismatch(ValueError):
    pass


class NonPositive(ArithmeticError):
    """An intermediate matrix lost positive definiteness beyond tolerance."""


def _herm(m):
    return 0.5 * (m + m.conj().T)


class HPDMatrix:
    """A Hermitian positive-definite matrix with cached spectral data."""

    def __init__(self, mat):
        mat = np.asarray(mat)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {mat.shape}")
        mat = mat.astype(np.complex128 if np.iscomplexobj(mat) else np.float64)
        scale = np.max(np.abs(mat))
        if scale == 0 or not np.isfinite(scale):
            raise ValueError("matrix entries must be finite and not all zero")
        if np.max(np.abs(mat - mat.conj().T)) > 1e-12 * scale:
            raise ValueError("matrix is not Hermitian within 1e-12 relative")
        self.mat = _herm(mat)
        self.n = mat.shape[0]
        w, u = np.linalg.eigh(self.mat)
        if w[0] <= 0.0:
            raise NonPositive(f"matrix has a nonpositive eigenvalue {w[0]:.3e}")
        self.eigvals = w
        self.eigvecs = u
        recon = (u * w) @ u.conj().T
        if np.max(np.abs(recon - self.mat)) > 1e-11 * scale:
            raise ValueError("spectral reconstruction failed its tolerance")
        self._sqrt = None
        self._inv_sqrt = None

    def apply(self, fn):
        """U f(diag) U* as a plain ndarray, re-symmetrized."""
        vals = np.asarray(fn(self.eigvals), dtype=np.float64)
        if np.any(~np.isfinite(vals)):
            raise NonPositive("scalar map produced a non-finite eigenvalue")
        return _herm((self.eigvecs * vals) @ self.eigvecs.conj().T)

    @property
    def sqrt(self):
        if self._sqrt is None:
            self._sqrt = self.apply(np.sqrt)
        return self._sqrt

    @property
    def inv_sqrt(self):
        if self._inv_sqrt is None:
            self._inv_sqrt = self.apply(lambda w: 1.0 / np.sqrt(w))
        return self._inv_sqrt

    @property
    def inv(self):
        return self.apply(lambda w: 1.0 / w)

    def norm(self):
        """Spectral norm."""
        return float(np.max(np.abs(self.eigvals)))

    def __repr__(self):
        return f"HPDMatrix(n={self.n}, eigvals={np.array2string(self.eigvals, precision=4)})"


def _as_hpd(x):
    return x if isinstance(x, HPDMatrix) else HPDMatrix(x)


def _check_dims(a, b):
    if a.n != b.n:
        raise DimensionMismatch(f"dimensions differ: {a.n} vs {b.n}")


class RepresentingFunction:
    """A scalar map f on (0, inf) with f(1) = 1, generating an operator mean."""

    def __init__(self, name, fn):
        self.name = name
        self._fn = fn
        one = float(fn(np.asarray(1.0)))
        if abs(one - 1.0) > 1e-12:
            raise ValueError(f"representing function must satisfy f(1) = 1, got {one!r}")

    def __call__(self, x):
        return self._fn(x)

    @classmethod
    def from_scalar_mean(cls, name, mean):
        """f(x) = m(1, x) for a scalar binary mean m."""
        return cls(name, lambda x: mean(1.0, x))

    def is_monotone_on(self, grid):
        """Necessary condition only: nondecreasing on the sampled grid."""
        vals = self._fn(np.asarray(grid, dtype=np.float64))
        return bool(np.all(np.diff(vals) >= -1e-12 * np.max(np.abs(vals))))


def apply_mean(f, a, b):
    """A^(1/2) f(A^(-1/2) B A^(-1/2)) A^(1/2)."""
    a = _as_hpd(a)
    b = _as_hpd(b)
    _check_dims(a, b)
    inner = HPDMatrix(_herm(a.inv_sqrt @ b.mat @ a.inv_sqrt))
    mapped = inner.apply(f)
    return HPDMatrix(_herm(a.sqrt @ mapped @ a.sqrt))


def op_weighted_arithmetic(a, b, v):
    a, b = _as_hpd(a), _as_hpd(b)
    _check_dims(a, b)
    return HPDMatrix((1.0 - v) * a.mat + v * b.mat)


def op_weighted_geometric(a, b, v):
    a, b = _as_hpd(a), _as_hpd(b)
    _check_dims(a, b)
    inner = HPDMatrix(_herm(a.inv_sqrt @ b.mat @ a.inv_sqrt))
    return HPDMatrix(_herm(a.sqrt @ inner.apply(lambda w: w**v) @ a.sqrt))


def op_weighted_harmonic(a, b, v):
    a, b = _as_hpd(a), _as_hpd(b)
    _check_dims(a, b)
    return HPDMatrix(HPDMatrix(_herm((1.0 - v) * a.inv + v * b.inv)).inv)


_OP_STANDARD = {
    "arith": op_weighted_arithmetic,
    "geom": op_weighted_geometric,
    "harm": op_weighted_harmonic,
}


def op_weighted_standard(kind, a, b, v):
    try:
        fn = _OP_STANDARD[str(kind)]
    except KeyError:
        raise ValueError(f"no standard weighted operator mean of kind {kind!r}") from None
    return fn(a, b, v)


_F_LOG = RepresentingFunction("log_mean", lambda x: log_mean(1.0, x))
_F_IDENTRIC = RepresentingFunction("identric_mean", lambda x: identric_mean(1.0, x))


def op_log_mean(a, b):
    """Operator logarithmic mean via its representing function."""
    return apply_mean(_F_LOG, a, b)


def op_identric_mean(a, b):
    return apply_mean(_F_IDENTRIC, a, b)


def op_weighted_log(a, b, v, mode="representing"):
    """Weighted operator logarithmic mean.

    representing: spectral evaluation of x -> L_v(1, x);
    composed: arithmetic v-combination of operator L at the geometric split.
    """
    a, b = _as_hpd(a), _as_hpd(b)
    _check_dims(a, b)
    if mode == "representing":
        f = RepresentingFunction("weighted_log", lambda x: weighted_log(1.0, x, v))
        return apply_mean(f, a, b)
    if mode == "composed":
        g = op_weighted_geometric(a, b, v)
        l1 = op_log_mean(g, a)
        l2 = op_log_mean(g, b)
        return HPDMatrix((1.0 - v) * l1.mat + v * l2.mat)
    raise ValueError(f"unknown mode {mode!r}")


def op_weighted_identric(a, b, v, mode="representing"):
    """Weighted operator identric mean (spectral or composed path)."""
    a, b = _as_hpd(a), _as_hpd(b)
    _check_dims(a, b)
    if mode == "representing":
        f = RepresentingFunction("weighted_identric", lambda x: weighted_identric(1.0, x, v))
        return apply_mean(f, a, b)
    if mode == "composed":
        n = op_weighted_arithmetic(a, b, v)
        i1 = op_identric_mean(n, a)
        i2 = op_identric_mean(n, b)
        return op_weighted_geometric(i1, i2, v)
    raise ValueError(f"unknown mode {mode!r}")


def op_log_integral(a, b, form="sharp", tol=1e-11, max_order=256):
    """Operator logarithmic mean by Gauss-Legendre quadrature over the weight.

    form="sharp": integral of the weighted geometric mean over t in [0, 1];
    form="nabla_inv": inverse of the integral of the inverse weighted
    arithmetic mean.  The order doubles from 8 until two successive results
    agree to tol in spectral norm (relative), or max_order is reached.
    """
    a, b = _as_hpd(a), _as_hpd(b)
    _check_dims(a, b)
    if form not in ("sharp", "nabla_inv"):
        raise ValueError(f"unknown integral form {form!r}")

    def integrate(order):
        nodes, weights = np.polynomial.legendre.leggauss(order)
        t = 0.5 * (nodes + 1.0)
        w = 0.5 * weights
        acc = np.zeros_like(a.mat)
        for ti, wi in zip(t, w):
            if form == "sharp":
                acc = acc + wi * op_weighted_geometric(a, b, ti).mat
            else:
                acc = acc + wi * op_weighted_arithmetic(a, b, ti).inv
        return acc

    order = 8
    prev = integrate(order)
    while order < max_order:
        order *= 2
        cur = integrate(order)
        delta = np.linalg.norm(cur - prev, 2) / np.linalg.norm(cur, 2)
        prev = cur
        if delta < tol:
            break
    result = HPDMatrix(_herm(prev))
    if form == "nabla_inv":
        result = HPDMatrix(result.inv)
    return result


class LoewnerResult:
    """Outcome of a Loewner-order comparison A <= B."""

    def __init__(self, ok, witness, scale):
        self.ok = bool(ok)
        self.witness = float(witness)          # min eigenvalue of B - A
        self.scale = float(scale)
        self.normalized = float(witness / scale)

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"LoewnerResult(ok={self.ok}, witness={self.witness:.3e})"


def loewner_leq(a, b, tol=1e-10):
    """A <= B in the Loewner order, up to tol times max(1, |A|, |B|)."""
    a, b = _as_hpd(a), _as_hpd(b)
    _check_dims(a, b)
    diff = _herm(b.mat - a.mat)
    wmin = float(np.linalg.eigvalsh(diff)[0])
    scale = max(1.0, a.norm(), b.norm())
    return LoewnerResult(wmin >= -tol * scale, wmin, scale)


OPERATOR_CHAIN_IDS = ("op20", "op235", "op27", "op28", "op29", "op30")


def operator_chain_terms(chain_id, a, b, v):
    """Ordered terms of one operator inequality chain as HPDMatrix values."""
    a, b = _as_hpd(a), _as_hpd(b)
    _check_dims(a, b)
    nab = lambda x, y, t: op_weighted_arithmetic(x, y, t)
    sha = lambda x, y, t: op_weighted_geometric(x, y, t)
    har = lambda x, y, t: op_weighted_harmonic(x, y, t)
    if chain_id == "op20":
        return [har(a, b, v), sha(a, b, v), nab(a, b, v)]
    if chain_id == "op235":
        return [
            har(a, b, 0.5),
            sha(a, b, 0.5),
            op_log_mean(a, b),
            op_identric_mean(a, b),
            nab(a, b, 0.5),
        ]
    if chain_id == "op27":
        return [
            sha(a, b, v),
            nab(sha(a, b, 0.5 * v), sha(a, b, 0.5 * (1.0 + v)), v),
            op_weighted_log(a, b, v),
            nab(sha(a, b, v), nab(a, b, v), 0.5),
            nab(a, b, v),
        ]
    if chain_id == "op28":
        return [
            sha(a, b, v),
            sha(nab(a, b, v), sha(a, b, v), 0.5),
            op_weighted_identric(a, b, v),
            sha(nab(a, b, 0.5 * v), nab(a, b, 0.5 * (1.0 + v)), v),
            nab(a, b, v),
        ]
    if chain_id == "op29":
        return [
            op_weighted_log(a, b, v),
            op_log_mean(sha(a, b, v), nab(a, b, v)),
            op_identric_mean(sha(a, b, v), nab(a, b, v)),
            nab(sha(a, b, v), nab(a, b, v), 0.5),
        ]
    if chain_id == "op30":
        g = sha(a, b, 0.5)
        return [
            sha(a, b, v),
            sha(nab(a, g, v), nab(g, b, v), v),
            op_weighted_identric(a, b, v),
        ]
    raise ValueError(f"unknown operator chain {chain_id!r}")


def check_operator_chains(a, b, v, tol=1e-10, chains=OPERATOR_CHAIN_IDS):
    """Verify every adjacent link of the requested chains in Loewner order.

    Returns {chain_id: [LoewnerResult, ...]}; a failed link shows up as a
    result with ok=False rather than an exception.
    """
    report = {}
    for cid in chains:
        terms = operator_chain_terms(cid, a, b, v)
        report[cid] = [
            loewner_leq(terms[i], terms[i + 1], tol=tol) for i in range(len(terms) - 1)
        ]
    return report


def random_hpd(rng, n, log_cond_span=3.0, complex_entries=True):
    """Random HPD matrix Q diag(lambda) Q* with log-uniform eigenvalues."""
    if complex_entries:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    else:
        g = rng.standard_normal((n, n))
    q, _ = np.linalg.qr(g)
    lam = np.exp(rng.uniform(-log_cond_span, log_cond_span, n))
    return HPDMatrix(_herm((q * lam) @ q.conj().T))


# ----------------------------------------------------------------------
# plain-text dense matrix I/O
# ----------------------------------------------------------------------


def _format_entry(z):
    z = complex(z)
    if z.imag == 0.0:
        return repr(z.real)
    return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}j"


def format_matrix(mat):
    """First line n, then n rows of n whitespace-separated entries."""
    mat = mat.mat if isinstance(mat, HPDMatrix) else np.asarray(mat)
    n = mat.shape[0]
    lines = [str(n)]
    for row in mat:
        lines.append(" ".join(_format_entry(z) for z in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text):
    tokens = text.split()
    if not tokens:
        raise ValueError("empty matrix text")
    try:
        n = int(tokens[0])
    except ValueError:
        raise ValueError(f"first token must be the dimension, got {tokens[0]!r}") from None
    need = n * n
    if len(tokens) - 1 != need:
        raise ValueError(f"expected {need} entries for n={n}, got {len(tokens) - 1}")
    try:
        vals = [complex(t) for t in tokens[1:]]
    except ValueError as exc:
        raise ValueError(f"bad matrix entry: {exc}") from None
    mat = np.array(vals, dtype=np.complex128).reshape(n, n)
    if np.all(mat.imag == 0.0):
        mat = mat.real
    return mat


def read_matrix(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path, mat):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(mat))
