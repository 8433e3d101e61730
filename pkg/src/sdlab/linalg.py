"""Dense symmetric eigensolvers: cyclic Jacobi (primary) and power iteration (oracle)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


@njit(cache=True)
def jacobi_inplace(a, v, tol, max_sweeps):
    """Diagonalize symmetric ``a`` in place by cyclic Jacobi rotations.

    ``v`` (n x n, or 0 x 0 to skip) accumulates the rotations. Returns the
    number of sweeps used and the final off-diagonal norm relative to the
    Frobenius norm of the input.
    """
    n = a.shape[0]
    vecs = v.shape[0] == n
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    fro = math.sqrt(fro)
    if fro == 0.0:
        return 0, 0.0
    sweeps = 0
    off = 0.0
    while True:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        off = math.sqrt(off)
        if off <= tol * fro or sweeps >= max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                if vecs:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = c * vkp - s * vkq
                        v[k, q] = s * vkp + c * vkq
        sweeps += 1
    return sweeps, off / fro


@njit(cache=True)
def jacobi_largest(a, tol, max_sweeps):
    """Largest eigenvalue of symmetric ``a`` (copied, not modified)."""
    w = a.copy()
    jacobi_inplace(w, np.empty((0, 0)), tol, max_sweeps)
    best = w[0, 0]
    for i in range(1, w.shape[0]):
        if w[i, i] > best:
            best = w[i, i]
    return best


@dataclass(frozen=True)
class EigenResult:
    values: np.ndarray       # ascending
    vectors: np.ndarray      # columns match ``values``
    sweeps: int
    off_norm: float          # relative off-diagonal norm at exit

    @property
    def largest(self) -> float:
        return float(self.values[-1])

    def residual(self, a: np.ndarray) -> float:
        x = self.vectors[:, -1]
        return float(np.linalg.norm(a @ x - self.values[-1] * x))


def jacobi_eigh(a, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenResult:
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("need a square matrix")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    n = a.shape[0]
    v = np.eye(n)
    sweeps, off = jacobi_inplace(a, v, tol, max_sweeps)
    vals = np.diag(a).copy()
    order = np.argsort(vals, kind="stable")
    return EigenResult(vals[order], v[:, order], int(sweeps), float(off))


def power_iteration(a, tol: float = 1e-11, max_iter: int = 500_000, seed: int = 0) -> float:
    """Largest eigenvalue of a symmetric nonnegative matrix by shifted power iteration.

    Shifting by half the maximum row sum keeps ``-lambda`` (bipartite graphs)
    from competing with ``lambda``. Stops once the eigen-residual is below
    ``tol`` relative to the shift.
    """
    a = np.asarray(a, dtype=np.float64)
    n = a.shape[0]
    if not a.any():
        return 0.0
    shift = 0.5 * float(np.abs(a).sum(axis=1).max())
    b = a + shift * np.eye(n)
    rng = np.random.default_rng(seed)
    x = 1.0 + rng.random(n)
    x /= np.linalg.norm(x)
    rq = float(x @ b @ x)
    for _ in range(max_iter):
        y = b @ x
        rq = float(x @ y)
        if np.linalg.norm(y - rq * x) <= tol * shift:
            break
        x = y / np.linalg.norm(y)
    return rq - shift
