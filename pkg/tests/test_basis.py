import numpy as np
import pytest
from scipy.special import comb

from vc_ergm.basis import BasisSystem, auto_dimension, build_basis, evaluate
from vc_ergm.errors import BasisError

TIMES = np.arange(1.0, 51.0)


def affine_coefficients(basis, a, b):
    return a + b * basis.greville()


class TestDimension:
    def test_auto(self):
        assert auto_dimension(50) == 10
        assert auto_dimension(8) == 5
        assert auto_dimension(2) == 4
        assert build_basis(TIMES).q == 10

    def test_requested(self):
        basis = build_basis(TIMES, 6)
        assert basis.q == 6
        assert basis.interior_knots.shape == (2,)
        assert basis.knots.shape == (10,)

    @pytest.mark.parametrize("kwargs", [
        dict(q_requested=3),
        dict(order=1),
        dict(q_requested=20, dyad_total=3),
    ])
    def test_rejected(self, kwargs):
        with pytest.raises(BasisError):
            build_basis(np.arange(5.0), **kwargs)

    def test_bound_is_total_dyad_count(self):
        assert build_basis(np.arange(5.0), 6, dyad_total=6).q == 6
        with pytest.raises(BasisError):
            build_basis(np.arange(5.0), 7, dyad_total=6)

    @pytest.mark.parametrize("times", [[1.0], [0.0, 2.0, 1.0], [0.0, 0.0, 1.0]])
    def test_bad_times(self, times):
        with pytest.raises(BasisError):
            build_basis(times)


class TestEvaluation:
    def test_bernstein_without_interior_knots(self):
        basis = build_basis([0.0, 1.0], 4)
        u = np.linspace(0.0, 1.0, 11)
        values = basis.evaluate_unit(u)
        expected = np.stack([comb(3, l) * u ** l * (1 - u) ** (3 - l)
                             for l in range(4)], axis=1)
        assert np.allclose(values, expected, atol=1e-12)

    def test_two_times_partition(self):
        basis = build_basis([0.0, 1.0], 4)
        assert basis.evaluate(0.5).sum() == pytest.approx(1.0)

    def test_clamped_ends(self):
        basis = build_basis(TIMES)
        start, end = basis.evaluate(0.0), basis.evaluate(1.0)
        assert start[0] == pytest.approx(1.0)
        assert end[-1] == pytest.approx(1.0)
        assert np.allclose(start[1:], 0.0)
        assert np.allclose(end[:-1], 0.0)

    def test_partition_of_unity(self, rng):
        basis = build_basis(TIMES, 8)
        values = basis.evaluate_unit(rng.random(1000))
        assert np.all(values >= -1e-15)
        assert np.allclose(values.sum(axis=1), 1.0, atol=1e-12)

    def test_original_units(self):
        basis = build_basis(TIMES)
        assert np.array_equal(basis.evaluate_many(TIMES), basis.matrix())
        assert basis.domain == (1.0, 50.0)

    def test_outside_domain(self):
        basis = build_basis(TIMES)
        with pytest.raises(BasisError):
            basis.evaluate(1.5)
        with pytest.raises(BasisError):
            basis.evaluate_many([0.0])
        with pytest.raises(BasisError):
            basis.evaluate(np.nan)

    def test_greville_reproduces_affine(self, rng):
        basis = build_basis(TIMES, 7)
        u = rng.random(50)
        c = affine_coefficients(basis, 0.3, -1.7)
        assert np.allclose(basis.evaluate_unit(u) @ c, 0.3 - 1.7 * u,
                           atol=1e-12)

    def test_constant_basis(self):
        basis = BasisSystem.constant(TIMES)
        assert basis.q == 1
        assert np.array_equal(basis.matrix(), np.ones((50, 1)))
        assert np.array_equal(basis.omega, np.zeros((1, 1)))


class TestPenalty:
    @pytest.mark.parametrize("exact", [False, True])
    def test_symmetric_psd(self, exact):
        omega = build_basis(TIMES, 10, exact_penalty=exact).omega
        assert np.array_equal(omega, omega.T)
        eig = np.linalg.eigvalsh(omega)
        assert eig.min() >= -1e-10 * eig.max()

    @pytest.mark.parametrize("exact", [False, True])
    def test_affine_null_space(self, exact):
        basis = build_basis(TIMES, 9, exact_penalty=exact)
        scale = np.abs(basis.omega).max()
        for a, b in [(1.0, 0.0), (0.0, 1.0), (0.3, 0.7), (-2.0, 5.0)]:
            c = affine_coefficients(basis, a, b)
            assert abs(c @ basis.omega @ c) <= 1e-10 * scale * (c @ c)

    def test_rank_without_interior_knots(self):
        basis = build_basis([0.0, 0.5, 1.0], 4)
        assert np.linalg.matrix_rank(basis.omega) <= 2

    def test_exact_penalty_of_quadratic(self):
        # f(u) = u^2 has f'' = 2, so the integral of f''^2 is 4
        basis = build_basis([0.0, 1.0], 4, exact_penalty=True)
        c = np.array([0.0, 0.0, 1.0 / 3, 1.0])
        assert np.allclose(basis.evaluate_unit([0.2, 0.7]) @ c, [0.04, 0.49])
        assert c @ basis.omega @ c == pytest.approx(4.0)

    def test_low_order_has_no_penalty(self):
        basis = build_basis(TIMES, 5, order=2)
        assert not basis.omega.any()


def test_module_level_evaluate():
    basis = build_basis(TIMES)
    assert np.array_equal(evaluate(basis, 0.25), basis.evaluate(0.25))
