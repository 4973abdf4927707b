"""Numerical verification of the pair-exchange phase (-1)^(2s).

Arbitrary-spin rotation operators, pair exchange realized as two pi rotations
about a midpoint axis, (anti)symmetrization with determinant/permanent
amplitude kernels, the tilted spin basis, and radial region bookkeeping.
"""

from .errors import DegenerateGeometryError, IdenticalSetError, PhaseConsistencyError
from .exchange import (
    ExchangeReport,
    MultiParticleState,
    ParticleSet,
    Term,
    apply_exchange,
    exchange_phase,
    permanent_amplitude,
    product_state,
    slater_amplitude,
    symmetrize,
    transpose_slots,
    verify_eq1,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .orbital import (
    MidpointFrame,
    ShiftCheckResult,
    build_midpoint_frame,
    orbital_shift_check,
    rotate_about_frame_z,
)
from .region import RegionSignature, canonicalize, generic_equal, radial_order
from .spin_algebra import (
    SpinOperatorSet,
    SpinValue,
    UnitaryMatrix,
    exact_pi_z_rotation,
    generators,
    make_spin,
    rotation,
)
from .tilted import TiltedState, chi, theta_l, tilt_multi, tilted_gram, verify_tilt_transfer

__version__ = "0.1.0"

__all__ = [
    "DegenerateGeometryError",
    "IdenticalSetError",
    "PhaseConsistencyError",
    "ExchangeReport",
    "MultiParticleState",
    "ParticleSet",
    "Term",
    "apply_exchange",
    "exchange_phase",
    "permanent_amplitude",
    "product_state",
    "slater_amplitude",
    "symmetrize",
    "transpose_slots",
    "verify_eq1",
    "KERNEL_BACKEND",
    "MidpointFrame",
    "ShiftCheckResult",
    "build_midpoint_frame",
    "orbital_shift_check",
    "rotate_about_frame_z",
    "RegionSignature",
    "canonicalize",
    "generic_equal",
    "radial_order",
    "SpinOperatorSet",
    "SpinValue",
    "UnitaryMatrix",
    "exact_pi_z_rotation",
    "generators",
    "make_spin",
    "rotation",
    "TiltedState",
    "chi",
    "theta_l",
    "tilt_multi",
    "tilted_gram",
    "verify_tilt_transfer",
    "__version__",
]
