"""Eigendecomposition of Jacobi matrices and exact spectral propagators."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec
from .errors import ConvergenceFailure, DimensionMismatch, NotNormalized

MAX_SWEEPS = 50


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Ascending eigenvalues; column ``k`` of ``eigenvectors`` belongs to ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def size(self) -> int:
        return self.eigenvalues.size


@dataclass(frozen=True, eq=False)
class Propagator:
    entries: np.ndarray
    time: float


def tridiagonal_eigh(diag, offdiag, max_sweeps: int = MAX_SWEEPS):
    """Implicit QL with Wilkinson shifts for a symmetric tridiagonal matrix.

    Returns ``(eigenvalues, eigenvectors)`` unsorted, eigenvectors as columns.
    Raises :class:`ConvergenceFailure` if any eigenvalue needs more than
    ``max_sweeps`` iterations.
    """
    d = np.array(diag, dtype=float)
    n = d.size
    e = np.zeros(n)
    e[: n - 1] = offdiag
    z = np.eye(n)
    eps = np.finfo(float).eps

    for l in range(n):
        sweeps = 0
        while True:
            # look for a negligible off-diagonal element to split the matrix
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps == max_sweeps:
                raise ConvergenceFailure(
                    f"eigenvalue {l} not converged after {max_sweeps} QL sweeps"
                )
            sweeps += 1

            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                zi1 = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * zi1
                z[:, i] = c * z[:, i] - s * zi1
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d, z


def _normalize_signs(vecs: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    for k in range(vecs.shape[1]):
        col = vecs[:, k]
        nz = np.flatnonzero(np.abs(col) > tol)
        if nz.size and col[nz[0]] < 0:
            vecs[:, k] = -col
    return vecs


def eigendecompose(chain: ChainSpec) -> SpectralData:
    """Spectrum of the chain's Jacobi matrix.

    Eigenvalues come back ascending and each eigenvector has its first
    nonzero component positive, so the output is deterministic.
    """
    vals, vecs = tridiagonal_eigh(chain.fields, chain.couplings)
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = _normalize_signs(vecs[:, order])
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return SpectralData(vals, vecs)


def propagator(spec: SpectralData, t: float) -> Propagator:
    """``U(t) = sum_k exp(-i t lambda_k) v_k v_k^T``."""
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t!r}")
    v = spec.eigenvectors
    phases = np.exp(-1j * t * spec.eigenvalues)
    return Propagator((v * phases) @ v.T, float(t))


def evolve(spec: SpectralData, psi0, t: float, norm_tol: float = 1e-9) -> np.ndarray:
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (spec.size,):
        raise DimensionMismatch(f"state has shape {psi0.shape}, chain has {spec.size} sites")
    norm = np.linalg.norm(psi0)
    if abs(norm - 1.0) > norm_tol:
        raise NotNormalized(f"state norm is {norm!r}")
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t!r}")
    v = spec.eigenvectors
    coeffs = v.T @ psi0
    return v @ (np.exp(-1j * t * spec.eigenvalues) * coeffs)
