"""Amplitude kernels: Ryser permanent and LU determinant, both lanes."""

import numpy as np
import pytest

from spinswap import kernels, permanent_amplitude, slater_amplitude
from spinswap import _kernels_py
from spinswap.verify import naive_permanent


def random_complex_matrix(rng, n: int) -> np.ndarray:
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


class TestFrozenValues:
    def test_two_by_two(self):
        m = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=complex)
        assert np.isclose(slater_amplitude(m), -2.0)
        assert np.isclose(permanent_amplitude(m), 10.0)
        swapped = m[:, [1, 0]]
        assert np.isclose(slater_amplitude(swapped), 2.0)
        assert np.isclose(permanent_amplitude(swapped), 10.0)

    def test_identity_four(self):
        eye = np.eye(4, dtype=complex)
        assert np.isclose(slater_amplitude(eye), 1.0)
        assert np.isclose(permanent_amplitude(eye), 1.0)

    def test_all_ones_permanent_is_factorial(self):
        # permanent of the all-ones n x n matrix is n!
        assert np.isclose(permanent_amplitude(np.ones((3, 3))), 6.0)
        assert np.isclose(permanent_amplitude(np.ones((5, 5))), 120.0)

    def test_singular_determinant_is_zero(self):
        m = np.array([[1.0, 2.0], [2.0, 4.0]], dtype=complex)
        assert slater_amplitude(m) == 0.0


class TestOracleAgreement:
    def test_permanent_matches_naive_sum(self, rng):
        for n in range(1, 9):
            m = random_complex_matrix(rng, n)
            fast = permanent_amplitude(m)
            slow = naive_permanent(m)
            assert abs(fast - slow) <= 1e-9 * max(abs(slow), 1.0)

    def test_determinant_matches_numpy(self, rng):
        for n in range(1, 11):
            m = random_complex_matrix(rng, n)
            assert np.isclose(slater_amplitude(m), np.linalg.det(m), rtol=1e-9, atol=1e-12)

    def test_column_swap_signs(self, rng):
        for n in range(2, 9):
            m = random_complex_matrix(rng, n)
            swapped = m.copy()
            swapped[:, [0, 1]] = swapped[:, [1, 0]]
            det = slater_amplitude(m)
            per = permanent_amplitude(m)
            assert abs(slater_amplitude(swapped) + det) <= 1e-9 * max(abs(det), 1.0)
            assert abs(permanent_amplitude(swapped) - per) <= 1e-9 * max(abs(per), 1.0)


class TestBackends:
    def test_backend_reported(self):
        assert kernels.BACKEND in ("cython", "python")

    def test_pure_python_lane_matches_active_lane(self, rng):
        for n in range(1, 10):
            m = random_complex_matrix(rng, n)
            assert np.isclose(kernels.permanent(m), _kernels_py.permanent_ryser(m), rtol=1e-12)
            assert np.isclose(kernels.determinant(m), _kernels_py.det_lu(m), rtol=1e-12)

    @pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled lane not built")
    def test_compiled_lane_matches_pure_python(self, rng):
        from spinswap import _kernels

        for n in range(1, 11):
            m = np.ascontiguousarray(random_complex_matrix(rng, n))
            assert np.isclose(
                _kernels.permanent_ryser(m), _kernels_py.permanent_ryser(m), rtol=1e-12
            )
            assert np.isclose(_kernels.det_lu(m), _kernels_py.det_lu(m), rtol=1e-12)


class TestValidation:
    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            slater_amplitude(np.ones((2, 3)))
        with pytest.raises(ValueError):
            permanent_amplitude(np.ones((2, 3)))

    def test_permanent_cap(self):
        with pytest.raises(ValueError):
            permanent_amplitude(np.eye(13))
        # n = 12 is still inside the cap
        assert np.isclose(permanent_amplitude(np.eye(12)), 1.0)
