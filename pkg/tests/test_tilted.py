"""Tilted spin states, their Gram matrix, and the tilt-transfer argument."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from spinswap import (
    chi,
    generators,
    make_spin,
    theta_l,
    tilt_multi,
    tilted_gram,
    verify_tilt_transfer,
)
from spinswap.exchange import MultiParticleState, Term, state_deviation


def up_spinor(ts: int) -> np.ndarray:
    vec = np.zeros(ts + 1, dtype=complex)
    vec[0] = 1.0
    return vec


class TestThetaL:
    def test_half_spin_full_tilt(self):
        assert theta_l(make_spin(1), 1) == math.pi

    def test_spin_one_quarter(self):
        assert theta_l(make_spin(2), 1) == math.pi / 2.0

    def test_spin_zero_singleton(self):
        assert theta_l(make_spin(0), 0) == 0.0

    def test_formula_exact(self):
        for ts in range(1, 11):
            s = make_spin(ts)
            for l in range(ts + 1):
                assert theta_l(s, l) == l * math.pi / ts

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            theta_l(make_spin(2), 3)
        with pytest.raises(ValueError):
            theta_l(make_spin(2), -1)
        with pytest.raises(ValueError):
            theta_l(make_spin(0), 1)
        with pytest.raises(ValueError):
            theta_l(make_spin(2), 1.5)


class TestChi:
    def test_zero_tilt_is_highest_weight(self):
        state = chi(make_spin(1), 0)
        assert np.allclose(state.vector, [1.0, 0.0], atol=1e-14)

    def test_half_spin_full_tilt(self):
        # exp(i*pi*Sx) = i * sigma_x sends (1, 0) to (0, i)
        state = chi(make_spin(1), 1)
        assert np.allclose(state.vector, [0.0, 1j], atol=1e-12)

    def test_spin_one_full_tilt_reaches_lowest_weight(self):
        state = chi(make_spin(2), 2)
        oracle = expm(1j * math.pi * generators(make_spin(2)).sx) @ up_spinor(2)
        assert np.allclose(state.vector, oracle, atol=1e-12)
        assert abs(abs(state.vector[2]) - 1.0) < 1e-12
        assert np.linalg.norm(state.vector[:2]) < 1e-12

    def test_matches_exponential_oracle(self):
        for ts in range(7):
            s = make_spin(ts)
            sx = generators(s).sx
            for l in range(ts + 1):
                oracle = expm(1j * theta_l(s, l) * sx) @ up_spinor(ts)
                assert np.allclose(chi(s, l).vector, oracle, atol=1e-12)

    def test_unit_norm(self):
        for ts in range(11):
            s = make_spin(ts)
            for l in range(ts + 1):
                assert abs(np.linalg.norm(chi(s, l).vector) - 1.0) < 1e-12


class TestTiltedGram:
    def test_spin_zero(self):
        gram, min_singular = tilted_gram(make_spin(0))
        assert gram.shape == (1, 1)
        assert np.isclose(gram[0, 0], 1.0)
        assert np.isclose(min_singular, 1.0)

    def test_half_spin_states_orthogonal(self):
        gram, min_singular = tilted_gram(make_spin(1))
        assert np.allclose(gram, np.eye(2), atol=1e-12)
        assert min_singular > 1.0 - 1e-12

    def test_spin_one_overlaps(self):
        # adjacent quarter tilts overlap by exactly 1/2 for spin one
        gram, min_singular = tilted_gram(make_spin(2))
        assert np.isclose(gram[0, 1], 0.5, atol=1e-12)
        assert np.isclose(gram[1, 2].real, 0.5, atol=1e-12)
        assert abs(gram[0, 2]) < 1e-12
        assert min_singular > 1e-8

    def test_matches_exponential_oracle(self):
        for ts in (1, 2, 3):
            s = make_spin(ts)
            sx = generators(s).sx
            vectors = np.column_stack(
                [expm(1j * theta_l(s, l) * sx) @ up_spinor(ts) for l in range(ts + 1)]
            )
            gram, min_singular = tilted_gram(s)
            assert np.allclose(gram, vectors.conj().T @ vectors, atol=1e-12)
            oracle_min = np.linalg.svd(vectors, compute_uv=False)[-1]
            assert np.isclose(min_singular, oracle_min, atol=1e-12)

    def test_family_is_complete_for_small_spins(self):
        # recorded, not assumed: the smallest singular value stays well clear
        # of the 1e-8 floor for every spin checked
        for ts in range(9):
            _, min_singular = tilted_gram(make_spin(ts))
            assert min_singular > 1e-8


class TestTiltMulti:
    def _pair_state(self, ts: int) -> MultiParticleState:
        s = make_spin(ts)
        return MultiParticleState(
            spins=(s, s),
            terms=[
                Term(
                    1.0 + 0j,
                    (np.array([-1.0, 0, 0]), np.array([1.0, 0, 0])),
                    (up_spinor(ts), up_spinor(ts)),
                )
            ],
        )

    def test_zero_tilts_do_nothing(self):
        state = self._pair_state(2)
        out = tilt_multi(state, [0, 0])
        assert state_deviation(state, out) < 1e-14

    def test_single_particle_tilt(self):
        out = tilt_multi(self._pair_state(1), [1, 0])
        (term,) = out.terms
        assert np.allclose(term.spinors[0], [0.0, 1j], atol=1e-12)
        assert np.allclose(term.spinors[1], [1.0, 0.0], atol=1e-12)

    def test_orders_commute(self):
        state = self._pair_state(1)
        one_then_two = tilt_multi(tilt_multi(state, [1, 0]), [0, 1])
        two_then_one = tilt_multi(tilt_multi(state, [0, 1]), [1, 0])
        assert state_deviation(one_then_two, two_then_one) < 1e-12

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            tilt_multi(self._pair_state(1), [1])


class TestTiltTransfer:
    def test_base_case(self):
        report = verify_tilt_transfer(make_spin(1), 0, 0)
        assert report.passed
        assert abs(report.measured_phase - report.expected_phase) < 1e-12

    def test_half_spin_single_tilt(self):
        report = verify_tilt_transfer(make_spin(1), 1, 0)
        assert report.passed
        assert report.residual < 1e-10

    def test_spin_one_mixed_tilts(self):
        report = verify_tilt_transfer(make_spin(2), 2, 1)
        assert report.passed
        assert report.residual < 1e-10

    def test_all_pairs_small_spins(self):
        for ts in range(5):
            s = make_spin(ts)
            for la in range(ts + 1):
                for lb in range(ts + 1):
                    report = verify_tilt_transfer(s, la, lb)
                    assert report.passed, (ts, la, lb, report.residual)
                    assert report.residual < 1e-10

    def test_matches_explicit_tensor_oracle(self):
        # independent route: raw expm/kron arithmetic on the two-particle
        # spin space, positions tracked as labels
        for ts, la, lb in ((1, 1, 0), (2, 2, 1), (3, 3, 2), (4, 1, 4)):
            s = make_spin(ts)
            dim = ts + 1
            sign = s.exchange_sign
            sx = generators(s).sx
            ua = expm(1j * theta_l(s, la) * sx)
            ub = expm(1j * theta_l(s, lb) * sx)
            e00 = np.kron(up_spinor(ts), up_spinor(ts))
            base = {("A", "B"): 0.5 * e00, ("B", "A"): 0.5 * sign * e00}
            forward = {k: np.kron(ua, ub) @ v for k, v in base.items()}
            reverse = {k: np.kron(ub, ua) @ v for k, v in base.items()}
            swapped = {
                (k[1], k[0]): v.reshape(dim, dim).T.reshape(-1) for k, v in reverse.items()
            }
            for key, value in forward.items():
                assert np.allclose(value, sign * swapped[key], atol=1e-10)
            assert verify_tilt_transfer(s, la, lb).residual < 1e-10
