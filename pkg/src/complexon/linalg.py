"""Symmetric eigendecomposition by cyclic Jacobi rotations.

Eigenpairs are returned as a :class:`Spectrum` indexed by nonzero signed
integers: ``1, 2, ...`` walk the non-negative eigenvalues from the largest
down, ``-1, -2, ...`` walk the negative ones from the most negative up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numba
import numpy as np

__all__ = ["ConvergenceError", "Spectrum", "sym_eig", "check_symmetric"]

DEFAULT_TOL = 1e-12
MAX_SWEEPS = 100


class ConvergenceError(np.linalg.LinAlgError):
    """Raised when Jacobi sweeps fail to annihilate the off-diagonal part."""


def check_symmetric(M, atol: float = 1e-12) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix contains non-finite entries")
    scale = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
    if M.size and np.max(np.abs(M - M.T)) > atol * scale:
        raise ValueError("matrix is not symmetric")
    return M


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order with matching eigenvector columns.

    ``values`` is sorted descending; ``vectors[:, k]`` belongs to
    ``values[k]``. Signed access goes through :meth:`eigenvalue` and
    :meth:`eigenvector`.
    """

    values: np.ndarray
    vectors: np.ndarray | None = None

    @property
    def n_positive(self) -> int:
        """Number of eigenvalues reachable through positive indices (>= 0)."""
        return int(np.count_nonzero(self.values >= 0))

    @property
    def n_negative(self) -> int:
        return int(self.values.size - self.n_positive)

    def indices(self) -> list[int]:
        """Signed indices of all stored eigenpairs, ``1..p`` then ``-1..-q``."""
        return list(range(1, self.n_positive + 1)) + [-k for k in range(1, self.n_negative + 1)]

    def _position(self, i: int) -> int | None:
        if i == 0:
            raise IndexError("signed eigenvalue indices are nonzero")
        if i > 0:
            return i - 1 if i <= self.n_positive else None
        if -i <= self.n_negative:
            return self.values.size + i
        return None

    def eigenvalue(self, i: int, pad: bool = True) -> float:
        """Eigenvalue at signed index ``i``.

        Indices beyond the stored pairs are the zero padding of a finite-rank
        operator and return 0.0, unless ``pad`` is False.
        """
        pos = self._position(i)
        if pos is None:
            if pad:
                return 0.0
            raise IndexError(f"no eigenvalue at index {i}")
        return float(self.values[pos])

    def eigenvector(self, i: int) -> np.ndarray:
        if self.vectors is None:
            raise ValueError("spectrum was computed without eigenvectors")
        pos = self._position(i)
        if pos is None:
            raise IndexError(f"no eigenvector at index {i}")
        return self.vectors[:, pos]

    def __iter__(self) -> Iterator[tuple[int, float]]:
        for i in self.indices():
            yield i, self.eigenvalue(i)

    def __len__(self) -> int:
        return int(self.values.size)

    def scaled(self, factor: float, vector_factor: float | None = None) -> "Spectrum":
        """Spectrum of ``factor * M``; eigenvectors optionally rescaled.

        ``factor`` must be positive so the signed ordering is preserved.
        """
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        vecs = self.vectors
        if vecs is not None and vector_factor is not None:
            vecs = vecs * vector_factor
        return Spectrum(self.values * factor, vecs)


@numba.njit(cache=True)
def _jacobi_sweeps(A, Vt, tol, max_sweeps):  # pragma: no cover - compiled
    # Cyclic-by-row Jacobi on a symmetric array, in place. Rotations are
    # accumulated into the rows of Vt. Returns sweeps used, or -1.
    n = A.shape[0]
    norm = np.sqrt(np.sum(A * A))
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * A[i, j] * A[i, j]
        if np.sqrt(off) <= tol * norm:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                zeta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(zeta) > 1e150:
                    t = 0.5 / zeta
                else:
                    t = 1.0 / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                    if zeta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for r in range(n):
                    if r == p or r == q:
                        continue
                    apr = A[p, r]
                    aqr = A[q, r]
                    x = c * apr - s * aqr
                    y = s * apr + c * aqr
                    A[p, r] = x
                    A[r, p] = x
                    A[q, r] = y
                    A[r, q] = y
                A[p, p] -= t * apq
                A[q, q] += t * apq
                A[p, q] = 0.0
                A[q, p] = 0.0
                for r in range(Vt.shape[1]):
                    vp = Vt[p, r]
                    vq = Vt[q, r]
                    Vt[p, r] = c * vp - s * vq
                    Vt[q, r] = s * vp + c * vq
    return -1


def _jacobi(A: np.ndarray, tol: float, max_sweeps: int, want_vectors: bool):
    n = A.shape[0]
    A = np.ascontiguousarray(A, dtype=np.float64)
    # an empty Vt keeps the kernel signature fixed when vectors are not wanted
    Vt = np.eye(n) if want_vectors else np.zeros((n, 0))
    sweeps = _jacobi_sweeps(A, Vt, tol, max_sweeps)
    if sweeps < 0:
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})"
        )
    return np.diag(A).copy(), (Vt.T.copy() if want_vectors else None)


def _order(values: np.ndarray, vectors: np.ndarray | None, tie_tol: float):
    """Descending order; ties broken by position of the dominant component."""
    n = values.size
    if vectors is not None and n:
        lead = np.argmax(np.abs(vectors), axis=0)
        signs = np.sign(vectors[lead, np.arange(n)])
        signs[signs == 0] = 1.0
        vectors = vectors * signs
    else:
        lead = np.zeros(n, dtype=np.intp)
    order = np.argsort(-values, kind="stable")
    # cluster numerically equal eigenvalues and reorder inside each cluster
    out, start = [], 0
    for k in range(1, n + 1):
        if k == n or values[order[k - 1]] - values[order[k]] > tie_tol:
            block = order[start:k]
            out.extend(sorted(block, key=lambda j: (lead[j], j)))
            start = k
    idx = np.asarray(out, dtype=np.intp)
    vals = values[idx]
    if vectors is not None:
        vectors = vectors[:, idx]
    return vals, vectors


def sym_eig(M, tol: float = DEFAULT_TOL, vectors: bool = True, max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    """Full eigendecomposition of a real symmetric matrix.

    Converged when the off-diagonal Frobenius norm drops below
    ``tol * ||M||_F``. Eigenvalues within that same scale of zero are
    snapped to 0.0 so they take positive indices.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = check_symmetric(M)
    A = 0.5 * (M + M.T)
    values, V = _jacobi(A.copy(), tol, max_sweeps, vectors)
    scale = tol * max(float(np.linalg.norm(M)), np.finfo(float).tiny)
    values = np.where(np.abs(values) <= scale, 0.0, values)
    values, V = _order(values, V, tie_tol=10 * scale)
    return Spectrum(values, V)
