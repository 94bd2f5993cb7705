"""XX spin chains: perfect state transfer, isospectral deformation and fractional revival."""

from .chain import ChainSpec, is_mirror_symmetric, new_chain, reflect, to_matrix
from .deformation import (
    build_Q,
    build_V,
    deform_closed_form,
    deform_conjugate,
    isospectral_residual,
    q_invariance_residual,
)
from .models import krawtchouk, shift_fields, shifted_krawtchouk, uniform
from .spectral import SpectralData, eigendecompose, evolve, propagator
from .transfer import (
    PstReport,
    RevivalReport,
    pst_report,
    revival_pattern_check,
    revival_report,
    transfer_probability_scan,
)

__version__ = "0.1.0"
