"""Tilted spin states chi(s, theta_l) = exp(i*theta_l*S_x) chi(s, 0) with
theta_l = l*pi/(2s), their Gram matrix, and the commuting multi-particle tilt
operators that transfer the exchange relation to unequal spin labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exchange import (
    ExchangeReport,
    MultiParticleState,
    ParticleSet,
    Term,
    _fit_ratio,
    product_state,
    scale,
    state_deviation,
    symmetrize,
    transpose_slots,
)
from .orbital import build_midpoint_frame
from .spin_algebra import SpinValue, rotation

__all__ = [
    "TiltedState",
    "theta_l",
    "chi",
    "tilted_gram",
    "tilt_multi",
    "verify_tilt_transfer",
]

X_AXIS = np.array([1.0, 0.0, 0.0])


@dataclass(frozen=True)
class TiltedState:
    spin: SpinValue
    l: int
    theta: float
    vector: np.ndarray


def theta_l(s: SpinValue, l: int) -> float:
    """Tilt angle l*pi/(2s); the spin-0 singleton gets theta = 0."""
    if isinstance(l, bool) or not isinstance(l, (int, np.integer)):
        raise ValueError(f"tilt index must be an integer, got {l!r}")
    if s.twice_spin == 0:
        if l != 0:
            raise ValueError("spin 0 admits only the tilt index l = 0")
        return 0.0
    if not 0 <= l <= s.twice_spin:
        raise ValueError(f"tilt index must satisfy 0 <= l <= {s.twice_spin}, got {l}")
    return l * math.pi / s.twice_spin


def _base_spinor(s: SpinValue) -> np.ndarray:
    # chi(s, 0): highest-weight state (1, 0, ..., 0)
    vec = np.zeros(s.dimension, dtype=complex)
    vec[0] = 1.0
    return vec


def _tilt_matrix(s: SpinValue, l: int) -> np.ndarray:
    return rotation(X_AXIS, theta_l(s, l), s).entries


def chi(s: SpinValue, l: int) -> TiltedState:
    """Tilted spin state exp(i*theta_l*S_x) applied to the highest-weight state."""
    theta = theta_l(s, l)
    vector = _tilt_matrix(s, l) @ _base_spinor(s)
    return TiltedState(spin=s, l=int(l), theta=theta, vector=vector)


def tilted_gram(s: SpinValue) -> tuple[np.ndarray, float]:
    """Gram matrix of the tilted family and the smallest singular value of the
    matrix whose columns are the tilted vectors (positive iff complete)."""
    vectors = np.column_stack([chi(s, l).vector for l in range(s.twice_spin + 1)])
    gram = vectors.conj().T @ vectors
    min_singular = float(np.linalg.svd(vectors, compute_uv=False)[-1])
    return gram, min_singular


def tilt_multi(state: MultiParticleState, l_list) -> MultiParticleState:
    """Apply exp(i*theta_{l_j}*S_x) to spinor j in every term.

    The operators act on distinct tensor factors, so the application order is
    immaterial.
    """
    l_list = list(l_list)
    if len(l_list) != state.n:
        raise ValueError(f"need one tilt index per particle ({state.n}), got {len(l_list)}")
    matrices = [_tilt_matrix(spin, l) for spin, l in zip(state.spins, l_list)]
    new_terms = [
        Term(
            t.coeff,
            t.positions,
            tuple(u @ v for u, v in zip(matrices, t.spinors)),
        )
        for t in state.terms
    ]
    return MultiParticleState(state.spins, new_terms, state.tags)


_TRANSFER_POINT_A = np.array([-1.0, 0.0, 0.0])
_TRANSFER_POINT_B = np.array([1.0, 0.0, 0.0])


def verify_tilt_transfer(
    s: SpinValue, la: int, lb: int, tol: float = 1e-10
) -> ExchangeReport:
    """Check that tilting a pair-exchange-symmetric state preserves the
    exchange relation once the tilt labels travel with the argument slots.

    A two-particle state with both spinors chi(s, 0) is symmetrized with the
    sign (-1)^(2s); applying tilts (la, lb) must then equal that sign times
    the slot-transposed state tilted with (lb, la).
    """
    sign = s.exchange_sign
    base_particles = [
        ParticleSet(_TRANSFER_POINT_A, s, _base_spinor(s)),
        ParticleSet(_TRANSFER_POINT_B, s, _base_spinor(s)),
    ]
    base = symmetrize(product_state(base_particles), sign)
    tilted_fwd = tilt_multi(base, [la, lb])
    tilted_rev_swapped = transpose_slots(tilt_multi(base, [lb, la]), 0, 1)
    residual = state_deviation(tilted_fwd, scale(tilted_rev_swapped, sign))
    measured = _fit_ratio(tilted_fwd, tilted_rev_swapped)
    return ExchangeReport(
        spin=s,
        measured_phase=measured,
        expected_phase=complex(sign),
        residual=residual,
        geometry=build_midpoint_frame(_TRANSFER_POINT_A, _TRANSFER_POINT_B),
        tolerance=tol,
        passed=residual < tol,
    )
