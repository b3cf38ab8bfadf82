"""Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.

Self-contained: the Sturm count gives guaranteed index bracketing, which the
node-theorem checks elsewhere rely on, so no LAPACK-backed solver is used on
this path.  Eigenvectors come from inverse iteration with a pivoted
tridiagonal solve.  Kernels are numba-compiled when numba is available and
fall back to the identical pure-Python code otherwise.
"""

from __future__ import annotations

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap

__all__ = [
    "sturm_count",
    "gershgorin_bounds",
    "eigvalsh_bisect",
    "inverse_iteration",
    "count_sign_changes",
]

_TINY = 1e-300


@njit(cache=True)
def _count_below(diag, off2, x):
    # Number of sign agreements in the LDL^T pivots of T - x*I equals the
    # number of eigenvalues strictly below x (Sturm sequence).
    n = diag.shape[0]
    count = 0
    d = 1.0
    for i in range(n):
        e2 = off2[i - 1] if i > 0 else 0.0
        d = (diag[i] - x) - e2 / d
        if d == 0.0:
            d = -_TINY
        if d < 0.0:
            count += 1
    return count


def sturm_count(diag: np.ndarray, off: np.ndarray, x: float) -> int:
    """Count eigenvalues of tridiag(diag, off) strictly below x."""
    diag = np.ascontiguousarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    if off.shape[0] != diag.shape[0] - 1:
        raise ValueError("off must have length n - 1")
    return int(_count_below(diag, np.ascontiguousarray(off * off), float(x)))


def gershgorin_bounds(diag: np.ndarray, off: np.ndarray) -> tuple[float, float]:
    """Interval certain to contain the whole spectrum."""
    diag = np.asarray(diag, dtype=float)
    off = np.abs(np.asarray(off, dtype=float))
    radius = np.zeros_like(diag)
    radius[:-1] += off
    radius[1:] += off
    return float(np.min(diag - radius)), float(np.max(diag + radius))


def eigvalsh_bisect(
    diag: np.ndarray,
    off: np.ndarray,
    k: int,
    tol: float = 1e-10,
    maxit: int = 200,
) -> tuple[np.ndarray, np.ndarray]:
    """The k smallest eigenvalues, each bisected to a bracket below ``tol``.

    Returns (values, widths): bracket midpoints and final bracket widths.
    Index bracketing is exact because the Sturm count is monotone in x.
    """
    diag = np.ascontiguousarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    n = diag.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    off2 = np.ascontiguousarray(off * off)
    lo0, hi0 = gershgorin_bounds(diag, off)
    if lo0 == hi0:
        lo0 -= 1.0
        hi0 += 1.0
    values = np.empty(k)
    widths = np.empty(k)
    lo_floor = lo0
    for j in range(k):
        # All eigenvalues are >= the previous one, so reuse its lower edge.
        a, b = lo_floor, hi0
        it = 0
        while b - a > tol and it < maxit:
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break  # bracket at floating-point resolution
            if _count_below(diag, off2, mid) >= j + 1:
                b = mid
            else:
                a = mid
            it += 1
        values[j] = 0.5 * (a + b)
        widths[j] = b - a
        lo_floor = a
    return values, widths


@njit(cache=True)
def _solve_shifted(diag, off, lam, rhs):
    # Gaussian elimination with partial pivoting on (T - lam*I) x = rhs.
    # Pivoting introduces a second superdiagonal (u2).
    n = diag.shape[0]
    d = np.empty(n)
    u1 = np.zeros(n)
    u2 = np.zeros(n)
    x = rhs.copy()
    for i in range(n):
        d[i] = diag[i] - lam
    for i in range(n - 1):
        u1[i] = off[i]
    for i in range(n - 1):
        sub = off[i]
        if abs(sub) > abs(d[i]):
            # swap rows i and i+1
            td, tu1, tu2, tx = d[i], u1[i], u2[i], x[i]
            d[i] = sub
            u1[i] = d[i + 1]
            u2[i] = u1[i + 1]
            x[i] = x[i + 1]
            d[i + 1] = tu1
            u1[i + 1] = tu2
            x[i + 1] = tx
            sub = td
        piv = d[i]
        if piv == 0.0:
            piv = _TINY
            d[i] = piv
        m = sub / piv
        d[i + 1] = d[i + 1] - m * u1[i]
        u1[i + 1] = u1[i + 1] - m * u2[i]
        x[i + 1] = x[i + 1] - m * x[i]
    if d[n - 1] == 0.0:
        d[n - 1] = _TINY
    x[n - 1] = x[n - 1] / d[n - 1]
    if n > 1:
        x[n - 2] = (x[n - 2] - u1[n - 2] * x[n - 1]) / d[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - u1[i] * x[i + 1] - u2[i] * x[i + 2]) / d[i]
    return x


@njit(cache=True)
def _inverse_iteration(diag, off, lam, iters):
    n = diag.shape[0]
    v = np.empty(n)
    # deterministic, generic start vector (float-hash; no RNG state needed)
    for i in range(n):
        x = np.sin((i + 1.0) * 12.9898) * 43758.5453
        v[i] = (x - np.floor(x)) - 0.5
    nrm = np.sqrt(np.sum(v * v))
    for i in range(n):
        v[i] /= nrm
    for _ in range(iters):
        w = _solve_shifted(diag, off, lam, v)
        nrm = np.sqrt(np.sum(w * w))
        if nrm == 0.0 or not np.isfinite(nrm):
            break
        for i in range(n):
            v[i] = w[i] / nrm
    return v


def inverse_iteration(
    diag: np.ndarray,
    off: np.ndarray,
    lam: float,
    iters: int = 3,
) -> np.ndarray:
    """Unit eigenvector estimate for the eigenvalue nearest lam."""
    diag = np.ascontiguousarray(diag, dtype=float)
    off = np.ascontiguousarray(off, dtype=float)
    v = _inverse_iteration(diag, off, float(lam), int(iters))
    if not np.all(np.isfinite(v)):
        # retry with a tiny relative shift away from an exact pivot kill
        scale = max(1.0, float(np.max(np.abs(diag))))
        v = _inverse_iteration(diag, off, float(lam) + 1e-13 * scale, int(iters))
    return v


def count_sign_changes(v: np.ndarray, rel_tol: float = 1e-8) -> int:
    """Strict sign changes of v, ignoring entries below rel_tol * max|v|."""
    v = np.asarray(v, dtype=float)
    vmax = float(np.max(np.abs(v)))
    if vmax == 0.0:
        return 0
    keep = v[np.abs(v) > rel_tol * vmax]
    signs = np.sign(keep)
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
