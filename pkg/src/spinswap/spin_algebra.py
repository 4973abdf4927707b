"""Spin generator matrices and rotation operators for arbitrary integer or
half-integer spin.

Spin is carried everywhere as the exact integer 2s, so parity decisions like
(-1)^(2s) never touch floating point.  Units use hbar = 1, and rotations
follow the convention R = exp(+i * angle * (axis . S)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpinValue",
    "SpinOperatorSet",
    "UnitaryMatrix",
    "make_spin",
    "generators",
    "rotation",
    "exact_pi_z_rotation",
]

AXIS_UNIT_TOL = 1e-8

Z_AXIS = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class SpinValue:
    """Spin quantum number stored as the integer 2s."""

    twice_spin: int

    def __post_init__(self) -> None:
        if isinstance(self.twice_spin, bool) or not isinstance(
            self.twice_spin, (int, np.integer)
        ):
            raise ValueError(f"twice_spin must be an integer, got {self.twice_spin!r}")
        if self.twice_spin < 0:
            raise ValueError(f"twice_spin must be non-negative, got {self.twice_spin}")
        object.__setattr__(self, "twice_spin", int(self.twice_spin))

    @property
    def dimension(self) -> int:
        return self.twice_spin + 1

    @property
    def is_fermion(self) -> bool:
        return self.twice_spin % 2 == 1

    @property
    def exchange_sign(self) -> int:
        """The sign (-1)^(2s): +1 for integer spin, -1 for half-integer spin."""
        return -1 if self.is_fermion else 1

    @property
    def as_float(self) -> float:
        return self.twice_spin / 2.0

    def m_values(self) -> np.ndarray:
        """Magnetic quantum numbers s, s-1, ..., -s in descending order."""
        return (self.twice_spin - 2 * np.arange(self.dimension)) / 2.0

    def __repr__(self) -> str:
        return f"SpinValue(twice_spin={self.twice_spin})"


@dataclass(frozen=True)
class SpinOperatorSet:
    """The three Hermitian generators S_x, S_y, S_z in dimension 2s+1."""

    spin: SpinValue
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray


@dataclass(frozen=True)
class UnitaryMatrix:
    """A rotation operator together with the axis and angle that generated it."""

    entries: np.ndarray
    generator_axis: np.ndarray
    angle: float

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]


def make_spin(twice_spin: int) -> SpinValue:
    """Validate and wrap the integer 2s."""
    return SpinValue(twice_spin)


def generators(s: SpinValue) -> SpinOperatorSet:
    """Build S_x, S_y, S_z by the standard ladder construction.

    The basis is ordered by descending magnetic number m = s, ..., -s, so S_z
    is diagonal with those entries and S_+ sits immediately above the
    diagonal with elements sqrt(s(s+1) - m(m+1)).
    """
    dim = s.dimension
    m = s.m_values()
    casimir = s.twice_spin * (s.twice_spin + 2) / 4.0  # s(s+1)

    s_plus = np.zeros((dim, dim), dtype=complex)
    for i in range(1, dim):
        # raises |m_i> (column i) to |m_i + 1> (row i-1)
        s_plus[i - 1, i] = np.sqrt(casimir - m[i] * (m[i] + 1.0))
    s_minus = s_plus.conj().T

    sx = 0.5 * (s_plus + s_minus)
    sy = -0.5j * (s_plus - s_minus)
    sz = np.diag(m).astype(complex)
    return SpinOperatorSet(spin=s, sx=sx, sy=sy, sz=sz)


def _axis_generator(axis: np.ndarray, ops: SpinOperatorSet) -> np.ndarray:
    return axis[0] * ops.sx + axis[1] * ops.sy + axis[2] * ops.sz


def rotation(
    axis,
    angle: float,
    s: SpinValue,
    ops: SpinOperatorSet | None = None,
) -> UnitaryMatrix:
    """Rotation operator exp(i * angle * (axis . S)) for spin s.

    The exponential is taken by diagonalizing the Hermitian generator, which
    keeps the result unitary to rounding.  `ops` overrides the generator
    matrices (they must act in the same dimension); by default the standard
    set from :func:`generators` is used.
    """
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,) or abs(np.linalg.norm(axis) - 1.0) > AXIS_UNIT_TOL:
        raise ValueError(f"rotation axis must be a unit 3-vector, got {axis!r}")
    if ops is None:
        ops = generators(s)
    elif ops.spin != s:
        raise ValueError(f"operator set is for {ops.spin}, not {s}")
    h = _axis_generator(axis, ops)
    w, v = np.linalg.eigh(h)
    entries = (v * np.exp(1j * angle * w)) @ v.conj().T
    return UnitaryMatrix(entries=entries, generator_axis=axis.copy(), angle=float(angle))


_QUARTER_TURN_PHASES = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


def exact_pi_z_rotation(s: SpinValue) -> UnitaryMatrix:
    """Fast path for exp(i*pi*S_z): diagonal phases e^{i*pi*m} = i^(2m).

    Each entry is read off the residue of 2m mod 4, so the matrix is exact in
    {1, i, -1, -i} with no transcendental evaluation.
    """
    twice_m = s.twice_spin - 2 * np.arange(s.dimension)
    phases = [_QUARTER_TURN_PHASES[tm % 4] for tm in twice_m]
    entries = np.diag(np.array(phases, dtype=complex))
    return UnitaryMatrix(entries=entries, generator_axis=Z_AXIS.copy(), angle=np.pi)
