"""Compressed-row complex Hermitian operators and a Lanczos eigensolver.

The solver is thick-restart Lanczos with full reorthogonalization and
locking: converged Ritz pairs are deflated and the basis restarts from the
best unconverged Ritz vectors plus the residual direction.  Everything is
seeded, so repeated solves are bitwise identical.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SparseHermitianOperator:
    """CSR complex Hermitian matrix, verified A = A^dagger on construction."""

    matrix: sp.csr_matrix

    @property
    def dimension(self):
        return self.matrix.shape[0]

    @property
    def nnz(self):
        return self.matrix.nnz

    def apply(self, v):
        return self.matrix @ v

    @classmethod
    def from_entries(cls, rows, cols, values, dimension, verify=True):
        m = sp.coo_matrix(
            (np.asarray(values, dtype=complex), (rows, cols)),
            shape=(dimension, dimension),
        ).tocsr()
        op = cls(matrix=m)
        if verify:
            op.verify_hermitian()
        return op

    @classmethod
    def from_dense(cls, a, verify=True):
        a = np.asarray(a, dtype=complex)
        op = cls(matrix=sp.csr_matrix(a))
        if verify:
            op.verify_hermitian()
        return op

    def verify_hermitian(self, seed=1234, rtol=1e-12):
        scale = max(1.0, abs(self.matrix.data).max() if self.nnz else 0.0)
        asym = self.matrix - self.matrix.getH()
        structural = abs(asym.data).max() if asym.nnz else 0.0
        if structural > rtol * scale:
            raise ValueError(f"stored entries not Hermitian: |A - A^H| = {structural:.3e}")
        rng = np.random.default_rng(seed)
        n = self.dimension
        u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        pairing = np.vdot(u, self.apply(v)) - np.conj(np.vdot(v, self.apply(u)))
        norm = np.linalg.norm(u) * np.linalg.norm(self.apply(v)) + 1e-300
        if abs(pairing) > 1e-10 * norm:
            raise ValueError(f"pairing identity violated: {abs(pairing):.3e}")


def matvec(op, v):
    """y = A v with a dimension contract check."""
    v = np.asarray(v)
    if v.shape != (op.dimension,):
        raise ValueError(f"dimension mismatch: operator {op.dimension}, vector {v.shape}")
    return op.apply(v)


@dataclass
class EigenResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns
    residuals: np.ndarray
    iterations: int
    seed: int
    converged_count: int
    converged: bool


def _orthogonalize(v, basis, n_cols):
    """Project the columns basis[:, :n_cols] out of v (in place), twice if needed."""
    if n_cols == 0:
        return v
    b = basis[:, :n_cols]
    before = np.linalg.norm(v)
    v -= b @ (b.conj().T @ v)
    if np.linalg.norm(v) < 0.7071 * before:
        v -= b @ (b.conj().T @ v)
    return v


def lowest_eigenpairs(op, k, tol=1e-8, max_iter=100_000, seed=0, basis_size=None,
                      cluster_factor=10.0):
    """k smallest eigenpairs of a Hermitian operator, residual-certified.

    Near-degenerate levels (gaps below cluster_factor*tol) are locked as one
    cluster so that multiplicities are never split across a restart.  On
    hitting max_iter matvecs a partial result is returned with its
    converged_count; callers decide whether that is an error.
    """
    n = op.dimension
    if k < 1:
        raise ValueError("k must be positive")
    if k > n:
        raise ValueError(f"k={k} exceeds dimension {n}")
    m = basis_size or min(n, max(40, 4 * k + 16))
    m = int(min(max(m, k + 2), n))

    rng = np.random.default_rng(seed)
    V = np.zeros((n, m + 1), dtype=complex, order="F")
    B = np.zeros((m + 1, m + 1))
    locked_vals = []
    locked_vecs = np.zeros((n, 0), dtype=complex)

    v0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v0 = _orthogonalize(v0, locked_vecs, 0)
    V[:, 0] = v0 / np.linalg.norm(v0)

    n_thick = 0
    matvecs = 0
    scale_est = 1.0

    while True:
        for j in range(n_thick, m):
            w = op.apply(V[:, j])
            matvecs += 1
            scale_est = max(scale_est, np.linalg.norm(w))
            if locked_vecs.shape[1]:
                w -= locked_vecs @ (locked_vecs.conj().T @ w)
            coeffs = V[:, : j + 1].conj().T @ w
            w -= V[:, : j + 1] @ coeffs
            alpha = coeffs[j].real
            extra = V[:, : j + 1].conj().T @ w
            if np.linalg.norm(extra) > 1e-14 * scale_est:
                w -= V[:, : j + 1] @ extra
                alpha += extra[j].real
            B[j, j] = alpha
            beta = np.linalg.norm(w)
            if beta < 1e-13 * scale_est:
                # invariant subspace: continue with a fresh orthogonal direction
                w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                if locked_vecs.shape[1]:
                    w -= locked_vecs @ (locked_vecs.conj().T @ w)
                w -= V[:, : j + 1] @ (V[:, : j + 1].conj().T @ w)
                nrm = np.linalg.norm(w)
                if nrm < 1e-8:
                    break  # space exhausted
                V[:, j + 1] = w / nrm
                B[j, j + 1] = B[j + 1, j] = 0.0
            else:
                V[:, j + 1] = w / beta
                B[j, j + 1] = B[j + 1, j] = beta

        theta, S = eigh(B[:m, :m])
        beta_last = B[m - 1, m]
        rho = np.abs(beta_last * S[m - 1, :])

        # lock converged clusters from the bottom of the spectrum up
        cluster_width = cluster_factor * tol
        i = 0
        newly_locked = []
        while i < m and len(locked_vals) + len(newly_locked) < k:
            j_end = i
            while j_end + 1 < m and theta[j_end + 1] - theta[j_end] <= cluster_width:
                j_end += 1
            if np.all(rho[i : j_end + 1] <= tol):
                newly_locked.extend(range(i, j_end + 1))
                i = j_end + 1
            else:
                break
        if newly_locked:
            Q = V[:, :m] @ S[:, newly_locked]
            if locked_vecs.shape[1]:
                Q -= locked_vecs @ (locked_vecs.conj().T @ Q)
                Q, _ = np.linalg.qr(Q)
            locked_vecs = np.concatenate([locked_vecs, Q], axis=1)
            locked_vals.extend(theta[newly_locked])

        done = len(locked_vals) >= k
        if done or matvecs >= max_iter:
            break

        # thick restart from the best unconverged Ritz vectors
        needed = k - len(locked_vals)
        remaining = [i for i in range(m) if i not in set(newly_locked)]
        keep = remaining[: min(m - 2, needed + 8)]
        Y = V[:, :m] @ S[:, keep]
        resid_dir = V[:, m].copy()
        n_thick = len(keep)
        V[:, :n_thick] = Y
        V[:, n_thick] = resid_dir
        B[:, :] = 0.0
        B[:n_thick, :n_thick] = np.diag(theta[keep])
        B[:n_thick, n_thick] = beta_last * S[m - 1, keep]
        B[n_thick, :n_thick] = B[:n_thick, n_thick]

    order = np.argsort(locked_vals)[:k]
    vals = np.asarray(locked_vals)[order]
    vecs = locked_vecs[:, order]
    residuals = np.empty(len(vals))
    for i in range(len(vals)):
        residuals[i] = np.linalg.norm(op.apply(vecs[:, i]) - vals[i] * vecs[:, i])
        matvecs += 1
    converged_count = int(np.sum(residuals <= 10 * tol))
    return EigenResult(
        eigenvalues=vals,
        eigenvectors=vecs,
        residuals=residuals,
        iterations=matvecs,
        seed=seed,
        converged_count=min(converged_count, len(vals)),
        converged=len(vals) >= k and bool(np.all(residuals <= 10 * tol)),
    )
