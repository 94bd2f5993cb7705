"""Canonical chain families."""

from __future__ import annotations

import numpy as np

from .chain import ChainSpec


def krawtchouk(N: int) -> ChainSpec:
    """Zero-field chain with ``J_l = sqrt(l (N + 1 - l)) / 2``; transfers perfectly at ``T = pi``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    l = np.arange(1, N + 1, dtype=float)
    return ChainSpec(0.5 * np.sqrt(l * (N + 1 - l)), np.zeros(N + 1))


def uniform(N: int) -> ChainSpec:
    """All couplings 1, all fields 0."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return ChainSpec(np.ones(N), np.zeros(N + 1))


def shift_fields(chain: ChainSpec, c: float) -> ChainSpec:
    """Add ``c`` to every field. Shifts the spectrum by ``c`` and multiplies ``U(t)`` by ``exp(-i c t)``."""
    return ChainSpec(chain.couplings, chain.fields + c, chain.allow_signed)


def shifted_krawtchouk(N: int) -> ChainSpec:
    """Krawtchouk chain with fields ``-N/2``, for which ``exp(-i pi J) = R`` exactly."""
    return shift_fields(krawtchouk(N), -N / 2)


MODELS = {"krawtchouk": krawtchouk, "uniform": uniform}
