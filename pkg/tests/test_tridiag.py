import math

import numpy as np
import pytest

from dipole1d.tridiag import (
    count_sign_changes,
    eigvalsh_bisect,
    gershgorin_bounds,
    inverse_iteration,
    sturm_count,
)


def _dense(diag, off):
    return np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)


def test_closed_form_three_point_laplacian():
    # half the standard (-1, 2, -1) stencil at unit spacing
    diag = np.array([1.0, 1.0, 1.0])
    off = np.array([-0.5, -0.5])
    vals, widths = eigvalsh_bisect(diag, off, 3, tol=1e-12)
    want = np.array([1 - math.sqrt(2) / 2, 1.0, 1 + math.sqrt(2) / 2])
    assert np.max(np.abs(vals - want)) < 1e-11
    assert np.all(widths <= 1e-12)


def test_sturm_count_matches_dense_oracle():
    rng = np.random.default_rng(42)
    for _ in range(25):
        n = int(rng.integers(2, 50))
        diag = rng.uniform(-3, 3, size=n)
        off = rng.uniform(-2, 2, size=n - 1)
        ref = np.linalg.eigvalsh(_dense(diag, off))
        for x in rng.uniform(ref[0] - 1, ref[-1] + 1, size=5):
            assert sturm_count(diag, off, float(x)) == int(np.sum(ref < x))


def test_bisection_matches_dense_oracle():
    rng = np.random.default_rng(1234)
    for _ in range(20):
        n = int(rng.integers(16, 51))
        diag = rng.uniform(-2, 2, size=n)
        off = -rng.uniform(0.1, 2.0, size=n - 1)
        ref = np.sort(np.linalg.eigvalsh(_dense(diag, off)))
        k = int(rng.integers(1, n + 1))
        vals, widths = eigvalsh_bisect(diag, off, k)
        assert np.max(np.abs(vals - ref[:k])) <= 1e-9
        assert np.all(widths <= 1e-10)


def test_bisection_handles_decoupled_blocks():
    # zero off-diagonal entry: two independent blocks, degenerate pairs
    diag = np.array([1.0, 2.0, 1.0, 2.0])
    off = np.array([-0.3, 0.0, -0.3])
    ref = np.sort(np.linalg.eigvalsh(_dense(diag, off)))
    vals, _ = eigvalsh_bisect(diag, off, 4, tol=1e-12)
    assert np.max(np.abs(vals - ref)) < 1e-11
    assert vals[0] == pytest.approx(vals[1], abs=1e-11)


def test_gershgorin_contains_spectrum():
    rng = np.random.default_rng(9)
    diag = rng.uniform(-5, 5, size=30)
    off = rng.uniform(-2, 2, size=29)
    lo, hi = gershgorin_bounds(diag, off)
    ref = np.linalg.eigvalsh(_dense(diag, off))
    assert lo <= ref[0] and ref[-1] <= hi


def test_inverse_iteration_eigenvector_residual():
    rng = np.random.default_rng(77)
    for _ in range(5):
        n = 40
        diag = rng.uniform(-2, 2, size=n)
        off = -rng.uniform(0.1, 1.5, size=n - 1)
        vals, _ = eigvalsh_bisect(diag, off, 3)
        T = _dense(diag, off)
        for lam in vals:
            v = inverse_iteration(diag, off, float(lam))
            assert np.linalg.norm(v) == pytest.approx(1.0, rel=1e-10)
            res = np.linalg.norm(T @ v - lam * v)
            assert res < 1e-6 * np.linalg.norm(T, ord=2)


def test_k_out_of_range():
    diag = np.zeros(5)
    off = -np.ones(4)
    with pytest.raises(ValueError):
        eigvalsh_bisect(diag, off, 0)
    with pytest.raises(ValueError):
        eigvalsh_bisect(diag, off, 6)


def test_count_sign_changes():
    assert count_sign_changes(np.array([1.0, 2.0, 1.0])) == 0
    assert count_sign_changes(np.array([1.0, -1.0, 1.0])) == 2
    assert count_sign_changes(np.array([1.0, 1e-14, -1.0])) == 1
    assert count_sign_changes(np.array([0.0, 0.0])) == 0
    x = np.sin(np.linspace(0.01, 3 * math.pi - 0.01, 200))
    assert count_sign_changes(x) == 2
