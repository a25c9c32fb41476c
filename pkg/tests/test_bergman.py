import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import qclose, quaternions, random_quaternions, units
from slicebergman.bergman import (
    KernelParams,
    basis_f,
    check_ball,
    kernel_alpha1,
    kernel_alpha1_conjugate,
    kernel_closed,
    kernel_hol,
    kernel_series,
    kernel_series_terms,
    kernel_via_representation,
    monomial_norm_sq,
    reproduce,
)
from slicebergman.errors import DomainError
from slicebergman.quadrature import build_disk, integrate_disk
from slicebergman.quaternion import ImaginaryUnit, Quaternion
from slicebergman.slicefun import SeriesFunction, evaluate, inner_product_coeffs, monomial

alphas = st.sampled_from([0.5, 1.0, 2.5, 4.0])
radii = st.sampled_from([1.0, 3.0])


def rel(a, b):
    return float((a - b).norm().max() / max(float(b.norm().max()), 1e-300))


class TestParams:
    @pytest.mark.parametrize("alpha,R", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0)])
    def test_invalid(self, alpha, R):
        with pytest.raises(ValueError):
            KernelParams(alpha, R)

    def test_check_ball(self):
        with pytest.raises(DomainError):
            check_ball(Quaternion(0.0, 1.0, 0.0, 0.0), 1.0)


class TestBasis:
    def test_f0(self):
        f0 = basis_f(0, KernelParams(2.0, 3.0))
        assert evaluate(f0, Quaternion(0.5, 1, 0, 0)) == Quaternion(1.0)

    def test_f1_coefficient(self):
        assert math.isclose(float(basis_f(1, KernelParams(1.0, 1.0)).coeffs[1].real), math.sqrt(2), rel_tol=1e-15)

    @pytest.mark.parametrize("alpha,R", [(1.0, 1.0), (0.5, 3.0), (4.0, 2.0)])
    def test_orthonormal(self, alpha, R):
        params = KernelParams(alpha, R)
        basis = [basis_f(n, params) for n in range(16)]
        for n in range(16):
            for m in range(16):
                value = inner_product_coeffs(basis[n], basis[m], alpha)
                assert abs(float(value.real) - (n == m)) <= 1e-13

    def test_monomial_norm(self):
        assert monomial_norm_sq(0, KernelParams(1.0, 1.0)) == 1.0
        assert math.isclose(monomial_norm_sq(1, KernelParams(1.0, 1.0)), 0.5)

    @pytest.mark.parametrize("alpha,R", [(1.0, 1.0), (2.5, 3.0)])
    def test_monomial_norm_quadrature(self, alpha, R):
        params = KernelParams(alpha, R)
        rule = build_disk(alpha, R, n_radial=16, n_angular=32)
        for n in range(13):
            value = integrate_disk(rule, lambda z: (z**n).norm_sq())
            assert math.isclose(float(value.real), monomial_norm_sq(n, params), rel_tol=1e-11)


class TestKernelForms:
    def test_p_zero(self):
        params = KernelParams(2.5, 3.0)
        q = Quaternion(0.4, 1.0, -0.5, 2.0)
        zero = Quaternion(0.0)
        assert kernel_series(q, zero, params) == Quaternion(1.0)
        assert qclose(kernel_closed(q, zero, params), Quaternion(1.0), 1e-15)
        assert qclose(kernel_alpha1(q, zero, 3.0), Quaternion(1.0), 1e-15)

    def test_real_example(self):
        value = kernel_series(Quaternion(0.5), Quaternion(0.5), KernelParams(1.0, 1.0))
        assert qclose(value, Quaternion(16 / 9), 1e-14)

    def test_terms_reported(self):
        _, terms = kernel_series_terms(Quaternion(0.5), Quaternion(0.5), KernelParams(1.0, 1.0))
        assert 10 < terms < 100

    @given(alphas, radii, st.integers(0, 2**32 - 1))
    def test_series_equals_closed(self, alpha, R, seed):
        rng = np.random.default_rng(seed)
        q, p = random_quaternions(rng, 10, 0.9 * R), random_quaternions(rng, 10, 0.9 * R)
        params = KernelParams(alpha, R)
        assert rel(kernel_closed(q, p, params), kernel_series(q, p, params)) <= 1e-9

    @given(radii, st.integers(0, 2**32 - 1))
    def test_alpha1_forms(self, R, seed):
        rng = np.random.default_rng(seed)
        q, p = random_quaternions(rng, 10, 0.9 * R), random_quaternions(rng, 10, 0.9 * R)
        series = kernel_series(q, p, KernelParams(1.0, R))
        assert rel(kernel_alpha1(q, p, R), series) <= 1e-10
        assert rel(kernel_alpha1_conjugate(q, p, R), series) <= 1e-10

    def test_rational_forms_unit_radius(self, rng):
        q, p = random_quaternions(rng, 100, 0.9), random_quaternions(rng, 100, 0.9)
        assert rel(kernel_alpha1(q, p, 1.0), kernel_alpha1_conjugate(q, p, 1.0)) <= 1e-12

    @given(alphas, radii, units(), st.floats(0, 0.9), st.floats(0, 6.3), st.floats(0, 0.9), st.floats(0, 6.3))
    def test_slice_restriction(self, alpha, R, I, r1, t1, r2, t2):
        cz, cw = R * r1 * np.exp(1j * t1), R * r2 * np.exp(1j * t2)
        z, w = I * cz.imag + cz.real, I * cw.imag + cw.real
        c = (1 - cz * np.conj(cw) / R**2) ** (-alpha - 1)
        classical = I * c.imag + c.real
        params = KernelParams(alpha, R)
        for form in (kernel_series(z, w, params), kernel_closed(z, w, params),
                     kernel_via_representation(z, w, params), kernel_hol(z, w, params)):
            assert rel(form, classical) <= 1e-10
        if alpha == 1.0:
            assert rel(kernel_alpha1(z, w, R), classical) <= 1e-10

    @given(alphas, radii, st.integers(0, 2**32 - 1))
    def test_representation_equals_closed(self, alpha, R, seed):
        rng = np.random.default_rng(seed)
        q, p = random_quaternions(rng, 10, 0.9 * R), random_quaternions(rng, 10, 0.9 * R)
        params = KernelParams(alpha, R)
        assert rel(kernel_via_representation(q, p, params), kernel_closed(q, p, params)) <= 1e-10

    def test_representation_real_q(self):
        params = KernelParams(2.5, 1.0)
        q, p = Quaternion(0.4), Quaternion(0.1, 0.3, -0.2, 0.5)
        assert rel(kernel_via_representation(q, p, params), kernel_series(q, p, params)) <= 1e-13

    def test_representation_real_p(self):
        params = KernelParams(1.5, 1.0)
        q, p = Quaternion(0.1, 0.3, -0.2, 0.5), Quaternion(-0.6)
        assert rel(kernel_via_representation(q, p, params), kernel_series(q, p, params)) <= 1e-13

    def test_representation_same_slice(self):
        params = KernelParams(0.5, 2.0)
        I = ImaginaryUnit(1, 2, 3)
        q, p = I * 0.5 + 0.3, I * -0.7 + 1.0
        assert qclose(kernel_via_representation(q, p, params), kernel_hol(q, p, params), 1e-14)

    @given(alphas, quaternions(0.9), quaternions(0.9))
    def test_hermitian(self, alpha, q, p):
        params = KernelParams(alpha, 1.0)
        assert rel(kernel_series(q, p, params), kernel_series(p, q, params).conj()) <= 1e-12

    def test_conjugated_q_series_disagrees(self, rng):
        # the series in conj(q) does not reproduce the closed form off the real axis
        from slicebergman.special import i_series

        params = KernelParams(1.0, 1.0)
        q, p = Quaternion(0.2, 0.5, 0.1, -0.3), Quaternion(0.1, -0.2, 0.6, 0.2)
        wrong = i_series(2.0, q.conj(), p.conj())
        assert rel(wrong, kernel_closed(q, p, params)) > 1e-3

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 4.0])
    def test_left_slice_regular_in_q(self, alpha):
        params = KernelParams(alpha, 1.0)
        I = ImaginaryUnit(0.3, 0.4, -0.5)
        p = Quaternion(0.2, -0.1, 0.3, 0.4)
        h = 1e-5
        for x, y in [(0.1, 0.2), (-0.3, 0.5), (0.4, -0.1)]:
            K = lambda a, b: kernel_series(I * b + a, p, params)
            dx = (K(x + h, y) - K(x - h, y)) * (0.5 / h)
            dy = (K(x, y + h) - K(x, y - h)) * (0.5 / h)
            residual = (dx + I * dy) * 0.5
            assert float(residual.norm()) <= 1e-7 * (1 + float(K(x, y).norm()))

    def test_outside_ball(self):
        params = KernelParams(1.0, 1.0)
        for fn in (kernel_series, kernel_closed, kernel_via_representation):
            with pytest.raises(DomainError):
                fn(Quaternion(1.5), Quaternion(0.0), params)
        with pytest.raises(DomainError):
            kernel_alpha1(Quaternion(0.0), Quaternion(0, 1, 0, 0), 1.0)


@pytest.fixture(scope="module")
def rule():
    return build_disk(1.0, 1.0)


class TestReproduce:
    params = KernelParams(1.0, 1.0)

    def test_constant(self, rule):
        c = Quaternion(1, -2, 0.5, 3)
        f = SeriesFunction.from_list([c], 1.0)
        assert qclose(reproduce(f, Quaternion(0.3, 0.2, 0.1, 0.0), self.params, rule), c, 1e-12)

    def test_cube(self, rule, rng):
        f = monomial(3, 1.0)
        for q in random_quaternions(rng, 3, 0.7):
            assert float((reproduce(f, q, self.params, rule) - q**3).norm()) <= 1e-9

    def test_right_linear(self, rule, rng):
        f = SeriesFunction(Quaternion.from_array(rng.standard_normal((4, 4))), 1.0)
        c = Quaternion(0.2, 0.3, -0.7, 1.1)
        q = Quaternion(0.1, 0.2, 0.3, -0.2)
        assert qclose(reproduce(f.right_mul(c), q, self.params, rule), reproduce(f, q, self.params, rule) * c, 1e-12)

    def test_basis_functions(self, rule, rng):
        p = Quaternion(0.2, -0.3, 0.1, 0.4)
        for n in range(11):
            f_n = basis_f(n, self.params)
            assert float((reproduce(f_n, p, self.params, rule) - evaluate(f_n, p)).norm()) <= 1e-9

    def test_kernel_coefficients_pair_with_basis(self):
        # K(., p) = sum_n f_n(.) conj(f_n(p)), so <K(., p), f_n> = f_n(p)
        p = Quaternion(0.2, -0.3, 0.1, 0.4)
        nmax = 60
        coeffs = np.zeros((nmax + 1, 4))
        for n in range(nmax + 1):
            c = basis_f(n, self.params).coeffs[n].real
            coeffs[n] = (evaluate(basis_f(n, self.params), p).conj() * c).array
        K = SeriesFunction(Quaternion.from_array(coeffs), 1.0)
        q = Quaternion(0.3, 0.1, 0.0, -0.2)
        assert rel(evaluate(K, q), kernel_series(q, p, self.params)) <= 1e-12
        for n in range(11):
            value = inner_product_coeffs(K, basis_f(n, self.params), 1.0)
            assert float((value - evaluate(basis_f(n, self.params), p)).norm()) <= 1e-9

    def test_mismatched_rule(self, rule):
        with pytest.raises(ValueError):
            reproduce(monomial(1, 2.0), Quaternion(0.1), KernelParams(1.0, 2.0), rule)
