"""Canonical ordering of quantum-number sets by distance from a center.

Particles numbered by ascending distance with strictly increasing radii make
up "Region A"; configurations are canonicalized into that order with the
permutation parity tracked, and multiset equality of configurations captures
the order-independence of the probability amplitude.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exchange import ParticleSet
from .orbital import as_point

__all__ = [
    "RegionSignature",
    "radial_order",
    "canonicalize",
    "generic_equal",
    "permutation_sign",
]

DEFAULT_CENTER = (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class RegionSignature:
    center: np.ndarray
    radii: tuple[float, ...]
    order: tuple[int, ...]
    parity: int
    in_region_a: bool


def permutation_sign(perm) -> int:
    """Sign of a permutation of 0..n-1 via its cycle decomposition."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _sort_key(particle: ParticleSet, radius: float):
    # ties in radius break lexicographically by coordinates, then tags
    x, y, z = particle.position
    return (radius, float(x), float(y), float(z), particle.tags)


def radial_order(config, center=DEFAULT_CENTER) -> RegionSignature:
    """Number the particles by distance from the center.

    `order[k]` is the original index of the k-th nearest particle; the parity
    is the sign of that permutation.  The configuration is in Region A only
    when it is already ordered and all radii are strictly increasing.
    """
    config = list(config)
    if not config:
        raise ValueError("configuration must not be empty")
    center = as_point(center)
    radii = tuple(float(np.linalg.norm(p.position - center)) for p in config)
    order = tuple(
        sorted(range(len(config)), key=lambda i: _sort_key(config[i], radii[i]))
    )
    sorted_radii = [radii[i] for i in order]
    strict = all(r1 < r2 for r1, r2 in zip(sorted_radii, sorted_radii[1:]))
    identity = order == tuple(range(len(config)))
    return RegionSignature(
        center=center,
        radii=radii,
        order=order,
        parity=permutation_sign(order),
        in_region_a=identity and strict,
    )


def canonicalize(config, center=DEFAULT_CENTER):
    """Reorder a configuration into Region-A order.

    Returns the reordered configuration and the sign of the permutation that
    produced it; canonicalizing the result again is the identity.
    """
    signature = radial_order(config, center)
    config = list(config)
    canonical = tuple(config[i] for i in signature.order)
    return canonical, signature.parity


def _particles_match(p1: ParticleSet, p2: ParticleSet, tol: float) -> bool:
    if p1.spin != p2.spin or p1.tags != p2.tags:
        return False
    if np.linalg.norm(p1.position - p2.position) > tol:
        return False
    return bool(np.linalg.norm(p1.spin_state - p2.spin_state) <= tol)


def _perfect_matching(feasible: list[list[bool]]) -> bool:
    """Backtracking search for a perfect matching in a small bipartite graph."""
    n = len(feasible)
    matched_cols: list[int | None] = [None] * n

    def try_row(row: int, visited: list[bool]) -> bool:
        for col in range(n):
            if feasible[row][col] and not visited[col]:
                visited[col] = True
                if matched_cols[col] is None or try_row(matched_cols[col], visited):
                    matched_cols[col] = row
                    return True
        return False

    for row in range(n):
        if not try_row(row, [False] * n):
            return False
    return True


def generic_equal(config1, config2, tol: float) -> bool:
    """Multiset equality of two configurations of quantum-number sets.

    Positions and spin states match within `tol`; spins and tags must be
    identical.  This is the order-free notion of "same arguments" that the
    probability amplitude depends on.
    """
    config1 = list(config1)
    config2 = list(config2)
    if len(config1) != len(config2):
        raise ValueError("configurations must have equal particle counts")
    feasible = [
        [_particles_match(p1, p2, tol) for p2 in config2] for p1 in config1
    ]
    return _perfect_matching(feasible)
