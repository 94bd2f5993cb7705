"""Isospectral deformation turning a perfect-transfer chain into a fractional-revival chain.

The deformation conjugates the Jacobi matrix by the orthogonal involution
``V(theta)``.  Because ``V R V = Q(theta) = V(2 theta)``, a chain with
``exp(-iTJ) = R`` is mapped to one with ``exp(-iTJ') = Q``.  Only the middle
couplings/fields change, and :func:`deform_closed_form` writes those changes
down directly; :func:`deform_conjugate` does the dense product and serves as
its cross-check.
"""

from __future__ import annotations

import math

import numpy as np

from .chain import DEFAULT_TOL, ChainSpec, is_mirror_symmetric, to_matrix
from .errors import DimensionMismatch, NotMirrorSymmetric, NotTridiagonal, ThetaOutOfRange
from .spectral import eigendecompose


def _check_theta(theta: float) -> None:
    if not (0.0 <= theta < math.pi):
        raise ThetaOutOfRange(f"theta must lie in [0, pi), got {theta!r}")


def _involution(n: int, angle: float) -> np.ndarray:
    if n < 1:
        raise DimensionMismatch("the deformation needs at least two sites (n >= 1)")
    s, c = math.sin(angle), math.cos(angle)
    v = np.zeros((n + 1, n + 1))
    for l in range((n + 1) // 2):
        r = n - l
        v[l, l] = s
        v[l, r] = c
        v[r, l] = c
        v[r, r] = -s
    if n % 2 == 0:
        v[n // 2, n // 2] = 1.0
    return v


def build_V(n: int, theta: float) -> np.ndarray:
    """Involution ``V(theta)`` on sites ``0..n``. ``V(0)`` is the reflection ``R``."""
    _check_theta(theta)
    return _involution(n, theta)


def build_Q(n: int, theta: float) -> np.ndarray:
    """``Q(theta) = V(2 theta)``; the range check applies to ``theta``, not ``2 theta``."""
    _check_theta(theta)
    return _involution(n, 2.0 * theta)


def _require_mirror(chain: ChainSpec, tol: float) -> None:
    if not is_mirror_symmetric(chain, tol):
        raise NotMirrorSymmetric("deformation requires a mirror-symmetric chain")


def deform_conjugate(chain: ChainSpec, theta: float, tol: float = DEFAULT_TOL,
                     band_tol: float = DEFAULT_TOL) -> ChainSpec:
    """Deformed chain from the dense product ``V M V``.

    ``tol`` is the mirror-symmetry tolerance on the input.  Raises
    :class:`NotTridiagonal` if anything leaks outside the band by more than
    ``band_tol``.
    """
    _require_mirror(chain, tol)
    v = build_V(chain.n, theta)
    m = v @ to_matrix(chain) @ v
    m = 0.5 * (m + m.T)
    leak = band_leakage(m)
    if leak > band_tol:
        raise NotTridiagonal(f"out-of-band entry of modulus {leak:.3e} after conjugation")
    return ChainSpec(np.diag(m, 1), np.diag(m), allow_signed=True)


def band_leakage(m: np.ndarray) -> float:
    """Largest modulus outside the tridiagonal band."""
    outside = np.triu(m, 2) + np.tril(m, -2)
    return float(np.max(np.abs(outside), initial=0.0))


def deform_closed_form(chain: ChainSpec, theta: float, tol: float = DEFAULT_TOL) -> ChainSpec:
    """Deformed chain from the middle-of-chain perturbation formulas.

    Every entry except the middle ones is copied unchanged.
    """
    _require_mirror(chain, tol)
    _check_theta(theta)
    N = chain.n
    if N < 1:
        raise DimensionMismatch("the deformation needs at least two sites (n >= 1)")
    J = chain.couplings.copy()
    B = chain.fields.copy()
    if N % 2:
        h = (N - 1) // 2
        jm = chain.couplings[h]  # J_{(N+1)/2}, joining sites h and h + 1
        J[h] = jm * math.cos(2 * theta)
        B[h] = chain.fields[h] + jm * math.sin(2 * theta)
        B[h + 1] = chain.fields[h] - jm * math.sin(2 * theta)
    else:
        h = N // 2
        jm = chain.couplings[h - 1]  # J_{N/2}
        J[h - 1] = jm * (math.cos(theta) + math.sin(theta))
        J[h] = jm * (math.cos(theta) - math.sin(theta))
    return ChainSpec(J, B, allow_signed=True)


def isospectral_residual(a: ChainSpec, b: ChainSpec) -> float:
    if a.n != b.n:
        raise DimensionMismatch(f"chains have orders {a.n} and {b.n}")
    return float(np.max(np.abs(eigendecompose(a).eigenvalues - eigendecompose(b).eigenvalues)))


def q_invariance_residual(deformed: ChainSpec, theta: float, n: int | None = None) -> float:
    """``max |Q M Q - M|`` for the deformed chain's matrix ``M``.

    ``n`` defaults to the chain order; pass it explicitly to check a ``Q`` of
    another size (which raises).
    """
    n = deformed.n if n is None else n
    if n != deformed.n:
        raise DimensionMismatch(f"Q has order {n}, chain has order {deformed.n}")
    q = build_Q(n, theta)
    m = to_matrix(deformed)
    return float(np.max(np.abs(q @ m @ q - m)))
