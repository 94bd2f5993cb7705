"""Full ``2**(n+1)``-dimensional checks for small chains.

Basis convention: the computational index is a bitstring with site 0 as the
least significant bit and spin-up encoded as bit 1.  Single-site operators are
therefore written in the (down, up) ordering, so ``sigma_z = diag(-1, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec
from .errors import BadSite, TooLarge

MAX_ORDER = 12

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, 1j], [-1j, 0]], dtype=complex)
SZ = np.array([[-1, 0], [0, 1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True, eq=False)
class FullHamiltonian:
    matrix: np.ndarray
    site_count: int

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


def _check_size(n: int) -> None:
    if n > MAX_ORDER:
        raise TooLarge(f"full-space methods support n <= {MAX_ORDER}, got n={n}")


def site_op(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """``op`` acting on ``site``; site 0 is the rightmost Kronecker factor."""
    out = np.ones((1, 1), dtype=complex)
    for s in reversed(range(n_sites)):
        out = np.kron(out, op if s == site else I2)
    return out


def build_full(chain: ChainSpec) -> FullHamiltonian:
    """``H = 1/2 sum J (sx sx + sy sy) + 1/2 sum B (sz + 1)`` from Pauli products."""
    _check_size(chain.n)
    ns = chain.n_sites
    dim = 2**ns
    h = np.zeros((dim, dim), dtype=complex)
    for l, j in enumerate(chain.couplings):
        h += 0.5 * j * (site_op(SX, l, ns) @ site_op(SX, l + 1, ns)
                        + site_op(SY, l, ns) @ site_op(SY, l + 1, ns))
    for l, b in enumerate(chain.fields):
        h += 0.5 * b * (site_op(SZ, l, ns) + np.eye(dim))
    assert np.max(np.abs(h.imag), initial=0.0) == 0.0
    return FullHamiltonian(h.real.copy(), ns)


def excitation_number(n_sites: int) -> np.ndarray:
    """Diagonal of ``1/2 sum (sz + 1)``: the popcount of each basis index."""
    idx = np.arange(2**n_sites)
    return np.array([bin(i).count("1") for i in idx], dtype=float)


def magnetization_commutator_residual(full: FullHamiltonian) -> float:
    s = excitation_number(full.site_count)
    # [H, S]_{ij} = H_ij (s_j - s_i) for diagonal S
    comm = full.matrix * (s[None, :] - s[:, None])
    return float(np.max(np.abs(comm)))


def one_excitation_indices(n_sites: int) -> np.ndarray:
    return 1 << np.arange(n_sites)


def restrict_one_excitation(full: FullHamiltonian) -> np.ndarray:
    idx = one_excitation_indices(full.site_count)
    return full.matrix[np.ix_(idx, idx)].copy()


def embed_site_state(n_sites: int, site: int) -> np.ndarray:
    """Full-space state with a single spin up at ``site``."""
    psi = np.zeros(2**n_sites, dtype=complex)
    psi[1 << site] = 1.0
    return psi


def evolve_full(full: FullHamiltonian, psi0, t: float) -> np.ndarray:
    vals, vecs = np.linalg.eigh(full.matrix)
    return vecs @ (np.exp(-1j * t * vals) * (vecs.T @ np.asarray(psi0, dtype=complex)))


def reduced_density_matrix(psi: np.ndarray, n_sites: int, site_a: int, site_b: int) -> np.ndarray:
    """Two-site reduced state in the basis ``|s_a s_b>`` with ``s = 0`` down, ``1`` up."""
    # C-order reshape puts the most significant bit (site n) on axis 0
    tensor = psi.reshape((2,) * n_sites)
    ax_a, ax_b = n_sites - 1 - site_a, n_sites - 1 - site_b
    tensor = np.moveaxis(tensor, (ax_a, ax_b), (0, 1)).reshape(4, -1)
    return tensor @ tensor.conj().T


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    The spin-flip values ``lambda_i`` (square roots of the eigenvalues of
    ``rho (Y rho* Y)``) are taken as the singular values of ``A^T Y A`` with
    ``rho = A A^dagger``.  Same numbers, but no square roots of rounding-level
    eigenvalues, which would otherwise cost ~1e-8 near pure states.
    """
    yy = np.kron(SY, SY)
    w, v = np.linalg.eigh(rho)
    a = v * np.sqrt(np.clip(w, 0.0, None))
    lam = np.linalg.svd(a.T @ yy @ a, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1:].sum()))


def concurrence_after_revival(chain_deformed: ChainSpec, T: float,
                              site_a: int, site_b: int) -> float:
    """Concurrence of sites ``(site_a, site_b)`` after evolving ``|0>`` for time ``T`` in full space."""
    _check_size(chain_deformed.n)
    ns = chain_deformed.n_sites
    for s in (site_a, site_b):
        if not 0 <= s < ns:
            raise BadSite(f"site {s} outside 0..{ns - 1}")
    if site_a == site_b:
        raise BadSite("sites must be distinct")
    full = build_full(chain_deformed)
    psi = evolve_full(full, embed_site_state(ns, 0), T)
    return concurrence(reduced_density_matrix(psi, ns, site_a, site_b))
