"""Seeded invariant suites for every module, driven by the verify-all command.

Each check returns its worst observed residual and a verdict.  Bounds pinned
by the invariants themselves (e.g. 1e-12 generator algebra, 1e-8 series path)
are fixed here; checks without a pinned bound use the caller's tolerance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import exchange as ex
from . import region as rg
from . import tilted as tb
from .orbital import build_midpoint_frame, orbital_shift_check, rotate_about_frame_z
from .spin_algebra import exact_pi_z_rotation, generators, make_spin, rotation

__all__ = [
    "CheckResult",
    "run_all",
    "SUITE_ORDER",
    "naive_permanent",
    "sample_point_pair",
    "random_unitary",
]

SUITE_ORDER = ("spin_algebra", "orbital", "exchange", "tilted", "region")

GENERATOR_TOL = 1e-12
SERIES_TOL = 1e-8
SPECTRAL_TOL = 1e-12
PERMANENT_REL_TOL = 1e-9
COMPLETENESS_FLOOR = 1e-8
THETA_ENDPOINT_TOL = 5e-16  # one ulp of pi; l*pi/l is not exact for every l

Y_AXIS = np.array([0.0, 1.0, 0.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class CheckResult:
    suite: str
    check: str
    residual: float
    passed: bool


def _check(suite: str, check: str, residual: float, bound: float) -> CheckResult:
    residual = float(residual)
    return CheckResult(suite=suite, check=check, residual=residual, passed=residual < bound)


# ----------------------------------------------------------------------
# shared random helpers


def sample_point_pair(rng, low=-2.0, high=2.0, min_separation=0.5):
    """Two well-separated random points; deterministic for a fixed generator."""
    a = rng.uniform(low, high, 3)
    b = rng.uniform(low, high, 3)
    while np.linalg.norm(b - a) < min_separation:
        b = rng.uniform(low, high, 3)
    return a, b


def _random_axis(rng) -> np.ndarray:
    v = rng.normal(size=3)
    norm = np.linalg.norm(v)
    while norm < 1e-6:
        v = rng.normal(size=3)
        norm = np.linalg.norm(v)
    return v / norm


def _random_spinor(rng, dim: int) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_unitary(rng, dim: int) -> np.ndarray:
    """Haar-style random unitary from the QR decomposition of a Gaussian matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def naive_permanent(a) -> complex:
    """Permanent as the explicit sum over all n! permutations (oracle path)."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    perms = np.array(list(itertools.permutations(range(n))))
    return complex(a[np.arange(n), perms].prod(axis=1).sum())


# ----------------------------------------------------------------------
# spin_algebra


def spin_algebra_suite(rng, tol: float) -> list[CheckResult]:
    suite = "spin_algebra"
    results = []

    worst = 0.0
    for _ in range(1000):
        ts = int(rng.integers(0, 11))
        axis = _random_axis(rng)
        angle = float(rng.uniform(-2.0 * np.pi, 2.0 * np.pi))
        u = rotation(axis, angle, make_spin(ts)).entries
        worst = max(worst, float(np.max(np.abs(u.conj().T @ u - np.eye(ts + 1)))))
    results.append(_check(suite, "unitarity_random_rotations", worst, tol))

    worst = 0.0
    for _ in range(200):
        ts = int(rng.integers(0, 11))
        s = make_spin(ts)
        axis = _random_axis(rng)
        alpha = float(rng.uniform(-np.pi, np.pi))
        beta = float(rng.uniform(-np.pi, np.pi))
        composed = rotation(axis, alpha, s).entries @ rotation(axis, beta, s).entries
        direct = rotation(axis, alpha + beta, s).entries
        worst = max(worst, float(np.max(np.abs(composed - direct))))
    results.append(_check(suite, "fixed_axis_composition", worst, tol))

    worst = 0.0
    for ts in range(11):
        s = make_spin(ts)
        u = rotation(Z_AXIS, 2.0 * np.pi, s).entries
        worst = max(worst, float(np.max(np.abs(u - s.exchange_sign * np.eye(ts + 1)))))
    results.append(_check(suite, "full_turn_is_exchange_sign", worst, tol))

    worst_comm = 0.0
    worst_casimir = 0.0
    for ts in range(11):
        s = make_spin(ts)
        ops = generators(s)
        pairs = ((ops.sx, ops.sy, ops.sz), (ops.sy, ops.sz, ops.sx), (ops.sz, ops.sx, ops.sy))
        for p, q, r in pairs:
            worst_comm = max(worst_comm, float(np.max(np.abs(p @ q - q @ p - 1j * r))))
        casimir = ts * (ts + 2) / 4.0
        total = ops.sx @ ops.sx + ops.sy @ ops.sy + ops.sz @ ops.sz
        worst_casimir = max(
            worst_casimir, float(np.max(np.abs(total - casimir * np.eye(ts + 1))))
        )
    results.append(_check(suite, "generator_commutators", worst_comm, GENERATOR_TOL))
    results.append(_check(suite, "generator_casimir", worst_casimir, GENERATOR_TOL))

    worst = 0.0
    for ts in range(11):
        s = make_spin(ts)
        fast = exact_pi_z_rotation(s).entries
        slow = rotation(Z_AXIS, np.pi, s).entries
        worst = max(worst, float(np.max(np.abs(fast - slow))))
    results.append(_check(suite, "exact_pi_fast_path", worst, GENERATOR_TOL))

    worst = 0.0
    for ts in range(11):
        s = make_spin(ts)
        # standard-convention half turn about y is exp(-i*pi*Sy) in this sign
        # convention; its closed form is the antidiagonal (-1)^(s-m)
        u = rotation(Y_AXIS, -np.pi, s).entries
        closed = np.zeros((ts + 1, ts + 1), dtype=complex)
        for col in range(ts + 1):
            closed[ts - col, col] = (-1.0) ** col
        worst = max(worst, float(np.max(np.abs(u - closed))))
    results.append(_check(suite, "pi_about_y_closed_form", worst, tol))

    return results


# ----------------------------------------------------------------------
# orbital


def orbital_suite(rng, tol: float) -> list[CheckResult]:
    suite = "orbital"
    results = []

    worst = 0.0
    for _ in range(50):
        a, b = sample_point_pair(rng)
        f1 = build_midpoint_frame(a, b)
        f2 = build_midpoint_frame(a, b)
        for v1, v2 in ((f1.origin, f2.origin), (f1.x_hat, f2.x_hat), (f1.z_hat, f2.z_hat)):
            worst = max(worst, float(np.max(np.abs(v1 - v2))))
    results.append(_check(suite, "frame_determinism", worst, tol))

    worst = 0.0
    for _ in range(50):
        a, b = sample_point_pair(rng)
        fab = build_midpoint_frame(a, b)
        fba = build_midpoint_frame(b, a)
        worst = max(worst, float(np.max(np.abs(fab.origin - fba.origin))))
        worst = max(worst, float(np.max(np.abs(fab.x_hat + fba.x_hat))))
        for frame in (fab, fba):
            worst = max(worst, float(np.linalg.norm(rotate_about_frame_z(frame, a, np.pi) - b)))
            worst = max(worst, float(np.linalg.norm(rotate_about_frame_z(frame, b, np.pi) - a)))
    results.append(_check(suite, "frame_swap_covariance", worst, tol))

    worst = 0.0
    for _ in range(100):
        a, b = sample_point_pair(rng)
        frame = build_midpoint_frame(a, b)
        p = rng.uniform(-3.0, 3.0, 3)
        angle = float(rng.uniform(-2.0 * np.pi, 2.0 * np.pi))
        q = p - frame.origin
        q_rot = rotate_about_frame_z(frame, p, angle) - frame.origin

        def axis_distance(v):
            return np.linalg.norm(v - np.dot(v, frame.z_hat) * frame.z_hat)

        worst = max(worst, abs(axis_distance(q) - axis_distance(q_rot)))
    results.append(_check(suite, "axis_distance_preserved", worst, GENERATOR_TOL))

    worst = 0.0
    for _ in range(50):
        a, b = sample_point_pair(rng)
        frame = build_midpoint_frame(a, b)
        p = rng.uniform(-3.0, 3.0, 3)
        twice = rotate_about_frame_z(frame, rotate_about_frame_z(frame, p, np.pi), np.pi)
        worst = max(worst, float(np.linalg.norm(twice - p)))
    results.append(_check(suite, "double_pi_returns_points", worst, tol))

    modes = list(range(-16, 17))
    spectral = 0.0
    series = 0.0
    for angle in (np.pi / 4.0, np.pi / 2.0, np.pi):
        res = orbital_shift_check(modes, angle)
        spectral = max(spectral, res.spectral_residual)
        series = max(series, res.series_residual)
    results.append(_check(suite, "shift_spectral_path", spectral, SPECTRAL_TOL))
    results.append(_check(suite, "shift_series_path", series, SERIES_TOL))

    return results


# ----------------------------------------------------------------------
# exchange


def _stretch_pair_state(s, a, b):
    frame = build_midpoint_frame(a, b)
    chi = ex.stretch_state(s, frame.z_hat)
    return ex.MultiParticleState(spins=(s, s), terms=[ex.Term(1.0 + 0.0j, (a, b), (chi, chi))])


def exchange_suite(rng, tol: float, trials: int) -> list[CheckResult]:
    suite = "exchange"
    results = []

    worst = 0.0
    sign_ok = True
    for ts in range(9):
        s = make_spin(ts)
        for _ in range(trials):
            a, b = sample_point_pair(rng)
            report = ex.exchange_phase(s, a, b, tol=tol)
            worst = max(worst, report.residual)
            sign_ok &= report.expected_phase == complex(s.exchange_sign)
    results.append(_check(suite, "exchange_phase_theorem", worst if sign_ok else 1.0, tol))

    worst = 0.0
    for _ in range(20):
        ts = int(rng.integers(0, 5))
        s = make_spin(ts)
        a, b = sample_point_pair(rng)
        state = ex.MultiParticleState(
            spins=(s, s),
            terms=[
                ex.Term(
                    complex(rng.normal() + 1j * rng.normal()),
                    (a, b),
                    (_random_spinor(rng, s.dimension), _random_spinor(rng, s.dimension)),
                )
            ],
        )
        exchanged = ex.apply_exchange(state, 0, 1)
        for before, after in zip(state.terms, exchanged.terms):
            mag_before = abs(before.coeff) * np.prod([np.linalg.norm(v) for v in before.spinors])
            mag_after = abs(after.coeff) * np.prod([np.linalg.norm(v) for v in after.spinors])
            worst = max(worst, abs(mag_before - mag_after))
    results.append(_check(suite, "term_magnitudes_invariant", worst, tol))

    worst = 0.0
    for ts in range(9):
        s = make_spin(ts)
        a, b = sample_point_pair(rng)
        state = _stretch_pair_state(s, a, b)
        exchanged = ex.apply_exchange(state, 0, 1)
        target = ex.scale(ex.transpose_slots(state, 0, 1), s.exchange_sign)
        worst = max(worst, ex.wavefunction_deviation(exchanged, target))
    results.append(_check(suite, "exchange_equals_signed_swap", worst, tol))

    worst = 0.0
    for ts in range(9):
        s = make_spin(ts)
        a, b = sample_point_pair(rng)
        chi = ex.stretch_state(s, build_midpoint_frame(a, b).z_hat)
        particles = [ex.ParticleSet(a, s, chi), ex.ParticleSet(b, s, chi)]
        sym = ex.symmetrize(ex.product_state(particles), s.exchange_sign)
        exchanged = ex.apply_exchange(sym, 0, 1)
        worst = max(worst, ex.wavefunction_deviation(exchanged, sym))
    results.append(_check(suite, "exchange_fixes_symmetrized_state", worst, tol))

    worst = 0.0
    for ts in range(9):
        s = make_spin(ts)
        a, b = sample_point_pair(rng)
        state = _stretch_pair_state(s, a, b)
        twice = ex.apply_exchange(ex.apply_exchange(state, 0, 1), 0, 1)
        for t0, t2 in zip(state.terms, twice.terms):
            for p0, p2 in zip(t0.positions, t2.positions):
                worst = max(worst, float(np.linalg.norm(p0 - p2)))
        ratio = ex._unique_term_ratio(twice, state, tol)
        worst = max(worst, abs(ratio - 1.0))
    results.append(_check(suite, "double_exchange_identity", worst, tol))

    worst = 0.0
    for ts in range(7):
        s = make_spin(ts)
        a, b = sample_point_pair(rng)
        reference = ex.exchange_phase(s, a, b, tol=tol).measured_phase
        base = generators(s)
        for _ in range(10):
            v = random_unitary(rng, s.dimension)
            conjugated = ex.SpinOperatorSet(
                spin=s,
                sx=v @ base.sx @ v.conj().T,
                sy=v @ base.sy @ v.conj().T,
                sz=v @ base.sz @ v.conj().T,
            )
            measured = ex.exchange_phase(s, a, b, tol=tol, ops=conjugated).measured_phase
            worst = max(worst, abs(measured - reference))
    results.append(_check(suite, "basis_independence", worst, tol))

    worst_idem = 0.0
    worst_eq1 = 0.0
    for n in range(2, 6):
        for ts in (1, 2):
            s = make_spin(ts)
            sign = s.exchange_sign
            particles = [
                ex.ParticleSet(rng.uniform(-2, 2, 3), s, _random_spinor(rng, s.dimension))
                for _ in range(n)
            ]
            sym = ex.symmetrize(ex.product_state(particles), sign)
            again = ex.symmetrize(sym, sign)
            worst_idem = max(worst_idem, ex.state_deviation(sym, again))
            for i, j in itertools.combinations(range(n), 2):
                worst_eq1 = max(worst_eq1, ex.verify_eq1(sym, i, j, tol).residual)
    results.append(_check(suite, "symmetrizer_idempotent", worst_idem, GENERATOR_TOL))
    results.append(_check(suite, "eq1_after_symmetrize", worst_eq1, tol))

    half = make_spin(1)
    up = np.array([1.0, 0.0], dtype=complex)
    same = ex.ParticleSet(np.array([0.3, -0.7, 1.1]), half, up)
    excluded = ex.symmetrize(ex.product_state([same, same]), -1)
    leftover = sum(abs(t.coeff) for t in excluded.terms)
    results.append(_check(suite, "exclusion_zero", leftover, tol))

    worst = 0.0
    for n in range(1, 9):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        fast = ex.permanent_amplitude(a)
        slow = naive_permanent(a)
        scale_ref = max(abs(slow), 1.0)
        worst = max(worst, abs(fast - slow) / scale_ref)
    results.append(_check(suite, "permanent_vs_naive_sum", worst, PERMANENT_REL_TOL))

    worst = 0.0
    for n in range(2, 9):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        swapped = a.copy()
        swapped[:, [0, 1]] = swapped[:, [1, 0]]
        det_ref = ex.slater_amplitude(a)
        per_ref = ex.permanent_amplitude(a)
        scale_det = max(abs(det_ref), 1.0)
        scale_per = max(abs(per_ref), 1.0)
        worst = max(worst, abs(ex.slater_amplitude(swapped) + det_ref) / scale_det)
        worst = max(worst, abs(ex.permanent_amplitude(swapped) - per_ref) / scale_per)
    results.append(_check(suite, "amplitude_column_swap", worst, PERMANENT_REL_TOL))

    return results


# ----------------------------------------------------------------------
# tilted


def tilted_suite(rng, tol: float) -> list[CheckResult]:
    suite = "tilted"
    results = []

    worst = abs(tb.theta_l(make_spin(0), 0))
    for ts in range(1, 11):
        s = make_spin(ts)
        worst = max(worst, abs(tb.theta_l(s, 0)), abs(tb.theta_l(s, ts) - math.pi))
    results.append(_check(suite, "theta_endpoints", worst, THETA_ENDPOINT_TOL))

    worst = 0.0
    for ts in range(11):
        s = make_spin(ts)
        for l in range(ts + 1):
            worst = max(worst, abs(np.linalg.norm(tb.chi(s, l).vector) - 1.0))
    results.append(_check(suite, "chi_unit_norm", worst, GENERATOR_TOL))

    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(2, 4))
        spins = tuple(make_spin(int(rng.integers(0, 5))) for _ in range(n))
        term = ex.Term(
            complex(rng.normal() + 1j * rng.normal()),
            tuple(rng.uniform(-2, 2, 3) for _ in range(n)),
            tuple(_random_spinor(rng, sp.dimension) for sp in spins),
        )
        state = ex.MultiParticleState(spins=spins, terms=[term])
        l_list = [int(rng.integers(0, sp.twice_spin + 1)) for sp in spins]
        forward = state
        for j in range(n):
            picks = [0] * n
            picks[j] = l_list[j]
            forward = tb.tilt_multi(forward, picks)
        backward = state
        for j in reversed(range(n)):
            picks = [0] * n
            picks[j] = l_list[j]
            backward = tb.tilt_multi(backward, picks)
        worst = max(worst, ex.state_deviation(forward, backward))
    results.append(_check(suite, "tilts_commute", worst, GENERATOR_TOL))

    # residual here is the smallest singular value itself; completeness of the
    # tilted family means it stays above the floor
    smallest = math.inf
    for ts in range(9):
        _, min_singular = tb.tilted_gram(make_spin(ts))
        smallest = min(smallest, min_singular)
    results.append(
        CheckResult(
            suite=suite,
            check="tilted_family_min_singular",
            residual=float(smallest),
            passed=smallest > COMPLETENESS_FLOOR,
        )
    )

    worst = 0.0
    for ts in range(5):
        s = make_spin(ts)
        for la in range(ts + 1):
            for lb in range(ts + 1):
                worst = max(worst, tb.verify_tilt_transfer(s, la, lb, tol).residual)
    results.append(_check(suite, "tilt_transfer", worst, tol))

    return results


# ----------------------------------------------------------------------
# region


def _random_config(rng, n: int):
    half = make_spin(1)
    return [
        ex.ParticleSet(rng.uniform(-3, 3, 3), half, _random_spinor(rng, 2)) for _ in range(n)
    ]


def region_suite(rng, tol: float) -> list[CheckResult]:
    suite = "region"
    results = []

    failures = 0.0
    for _ in range(20):
        config = _random_config(rng, int(rng.integers(2, 7)))
        canonical, _ = rg.canonicalize(config)
        again, parity = rg.canonicalize(canonical)
        if parity != 1 or any(p1 is not p2 for p1, p2 in zip(canonical, again)):
            failures += 1.0
    results.append(_check(suite, "canonicalize_idempotent", failures, 0.5))

    failures = 0.0
    for _ in range(20):
        config = _random_config(rng, 5)
        _, parity = rg.canonicalize(config)
        perm = tuple(rng.permutation(5))
        shuffled = [config[i] for i in perm]
        _, parity_shuffled = rg.canonicalize(shuffled)
        if parity_shuffled != rg.permutation_sign(perm) * parity:
            failures += 1.0
    results.append(_check(suite, "parity_multiplicative", failures, 0.5))

    failures = 0.0
    for _ in range(10):
        config = _random_config(rng, 4)
        if not rg.generic_equal(config, config, tol=1e-6):
            failures += 1.0
        nudged = list(config)
        nudged[0] = ex.ParticleSet(
            config[0].position + 1e-8, config[0].spin, config[0].spin_state
        )
        if not (
            rg.generic_equal(config, nudged, tol=1e-6)
            and rg.generic_equal(nudged, config, tol=1e-6)
        ):
            failures += 1.0
        far = list(config)
        far[0] = ex.ParticleSet(config[0].position + 1.0, config[0].spin, config[0].spin_state)
        if rg.generic_equal(config, far, tol=1e-6):
            failures += 1.0
        tagged = list(config)
        tagged[0] = ex.ParticleSet(
            config[0].position, config[0].spin, config[0].spin_state, (("charge", "-1"),)
        )
        if rg.generic_equal(config, tagged, tol=1e-6):
            failures += 1.0
    results.append(_check(suite, "generic_equal_discriminates", failures, 0.5))

    failures = 0.0
    for _ in range(10):
        config = _random_config(rng, 4)
        swapped = list(config)
        swapped[0], swapped[1] = swapped[1], swapped[0]
        if not rg.generic_equal(config, swapped, tol=1e-9):
            failures += 1.0
        if all(p1 is p2 for p1, p2 in zip(config, swapped)):
            failures += 1.0
    results.append(_check(suite, "pair_swap_preserves_multiset", failures, 0.5))

    return results


# ----------------------------------------------------------------------


def run_all(seed: int = 0, tol: float = 1e-10, trials: int = 20) -> list[CheckResult]:
    """Run every suite off one seeded generator; deterministic per seed."""
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []
    results.extend(spin_algebra_suite(rng, tol))
    results.extend(orbital_suite(rng, tol))
    results.extend(exchange_suite(rng, tol, trials))
    results.extend(tilted_suite(rng, tol))
    results.extend(region_suite(rng, tol))
    return results
