"""Chain specifications for XX spin chains in the one-excitation sector.

A chain with ``n + 1`` sites (indexed ``0..n``) is described by ``n`` couplings
and ``n + 1`` local fields.  Coupling ``couplings[k]`` joins sites ``k`` and
``k + 1``; in the 1-based physics notation that is ``J_{k+1}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import LengthMismatch, NonFinite, NonPositiveCoupling

DEFAULT_TOL = 1e-10


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ChainSpec:
    """Couplings and fields of a nearest-neighbour chain.

    Use :func:`new_chain` to build one; the constructor validates as well but
    expects already-converted arrays.
    """

    couplings: np.ndarray
    fields: np.ndarray
    allow_signed: bool = False

    def __post_init__(self):
        couplings = _frozen(self.couplings)
        fields = _frozen(self.fields)
        object.__setattr__(self, "couplings", couplings)
        object.__setattr__(self, "fields", fields)

        if fields.size == 0 or couplings.size != fields.size - 1:
            raise LengthMismatch(
                f"need len(fields) == len(couplings) + 1, got {fields.size} fields "
                f"and {couplings.size} couplings"
            )
        if not (np.all(np.isfinite(couplings)) and np.all(np.isfinite(fields))):
            raise NonFinite("couplings and fields must be finite")
        if not self.allow_signed and np.any(couplings <= 0):
            k = int(np.argmax(couplings <= 0))
            raise NonPositiveCoupling(
                f"coupling J_{k + 1} = {couplings[k]!r} is not strictly positive "
                "(pass allow_signed=True to permit signed couplings)"
            )

    @property
    def n(self) -> int:
        """Chain order: the chain has ``n + 1`` sites."""
        return self.couplings.size

    @property
    def n_sites(self) -> int:
        return self.fields.size

    def __eq__(self, other):
        if not isinstance(other, ChainSpec):
            return NotImplemented
        return (
            self.allow_signed == other.allow_signed
            and np.array_equal(self.couplings, other.couplings)
            and np.array_equal(self.fields, other.fields)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"ChainSpec(n={self.n}, couplings={self.couplings.tolist()}, "
            f"fields={self.fields.tolist()}, allow_signed={self.allow_signed})"
        )


def new_chain(couplings, fields, allow_signed: bool = False) -> ChainSpec:
    """Validate and build a :class:`ChainSpec`."""
    return ChainSpec(couplings, fields, allow_signed)


def to_matrix(chain: ChainSpec) -> np.ndarray:
    """Dense Jacobi matrix: fields on the diagonal, couplings beside it."""
    m = np.diag(chain.fields)
    if chain.n:
        k = np.arange(chain.n)
        m[k, k + 1] = chain.couplings
        m[k + 1, k] = chain.couplings
    return m


def reflection_matrix(n: int) -> np.ndarray:
    """The anti-diagonal permutation ``R`` acting on sites ``0..n``."""
    return np.eye(n + 1)[::-1].copy()


def reflect(chain: ChainSpec) -> ChainSpec:
    """Chain realizing ``R M R``: couplings and fields reversed."""
    return ChainSpec(chain.couplings[::-1], chain.fields[::-1], chain.allow_signed)


def is_mirror_symmetric(chain: ChainSpec, tol: float = DEFAULT_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return bool(
        np.all(np.abs(chain.couplings - chain.couplings[::-1]) <= tol)
        and np.all(np.abs(chain.fields - chain.fields[::-1]) <= tol)
    )


# -- JSON chain files ---------------------------------------------------------

def chain_to_dict(chain: ChainSpec) -> dict:
    return {
        "n_sites": chain.n_sites,
        "couplings": chain.couplings.tolist(),
        "fields": chain.fields.tolist(),
    }


def chain_from_dict(data: dict, allow_signed: bool = True) -> ChainSpec:
    """Inverse of :func:`chain_to_dict`.

    Signed couplings are accepted by default since deformed chains are a
    legitimate thing to store.
    """
    missing = [k for k in ("n_sites", "couplings", "fields") if k not in data]
    if missing:
        raise LengthMismatch(f"chain file is missing keys: {', '.join(missing)}")
    n_sites = data["n_sites"]
    if not isinstance(n_sites, int) or isinstance(n_sites, bool):
        raise LengthMismatch(f"n_sites must be an integer, got {n_sites!r}")
    couplings, fields = data["couplings"], data["fields"]
    if len(fields) != n_sites or len(couplings) != n_sites - 1:
        raise LengthMismatch(
            f"n_sites={n_sites} but got {len(couplings)} couplings and {len(fields)} fields"
        )
    return new_chain(couplings, fields, allow_signed=allow_signed)


def save_chain(chain: ChainSpec, path) -> None:
    # json writes floats with repr(), which round-trips bit-exactly.
    Path(path).write_text(json.dumps(chain_to_dict(chain), indent=2) + "\n")


def load_chain(path, allow_signed: bool = True) -> ChainSpec:
    return chain_from_dict(json.loads(Path(path).read_text()), allow_signed=allow_signed)
