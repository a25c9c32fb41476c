import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import qclose, quaternions, random_quaternions, units
from slicebergman.errors import DomainError
from slicebergman.quadrature import build_disk, integrate_disk
from slicebergman.quaternion import ONE, QI, QJ, QK, ImaginaryUnit, Quaternion
from slicebergman.slicefun import (
    SeriesFunction,
    evaluate,
    extend,
    inner_product_coeffs,
    monomial,
    norm_weights,
    representation_formula,
    split_value,
)


def random_series(rng, degree, radius=1.0):
    return SeriesFunction(Quaternion.from_array(rng.standard_normal((degree + 1, 4))), radius)


def direct(f, q):
    total = Quaternion(0.0)
    for n, a in enumerate(f.coeffs):
        total = total + (q**n) * a
    return total


class TestEvaluate:
    @given(quaternions(), quaternions(0.99))
    def test_constant(self, c, q):
        assert evaluate(SeriesFunction.from_list([c], 1.0), q) == c

    def test_monomial_at_j(self):
        assert qclose(evaluate(monomial(2, 2.0), QJ), -ONE, 1e-15)

    def test_left_powers_right_coefficients(self):
        f = SeriesFunction.from_list([0.0, QI], 2.0)
        assert qclose(evaluate(f, QJ), -QK, 1e-15)

    def test_against_direct_powers(self, rng):
        f = random_series(rng, 9, 2.0)
        q = random_quaternions(rng, 20, 1.9)
        assert qclose(evaluate(f, q), direct(f, q), 1e-12)

    def test_outside_ball(self):
        with pytest.raises(DomainError):
            evaluate(monomial(1, 1.0), Quaternion(1.0))

    def test_right_mul_and_add(self, rng):
        f, g = random_series(rng, 3), random_series(rng, 5)
        c = Quaternion(0.3, -1.0, 0.2, 0.5)
        q = Quaternion(0.2, 0.3, -0.1, 0.4)
        assert qclose(f.right_mul(c)(q), f(q) * c, 1e-13)
        assert qclose((f + g)(q), f(q) + g(q), 1e-13)
        with pytest.raises(ValueError):
            f + random_series(rng, 2, radius=2.0)

    def test_json(self, rng):
        f = random_series(rng, 4, 3.0)
        back = SeriesFunction.from_json(f.to_json())
        assert back.radius == 3.0 and back.coeffs == f.coeffs
        assert set(json.loads(f.to_json())) == {"radius", "coeffs"}

    @pytest.mark.parametrize("data", [{"radius": 1, "coeffs": []}, {"radius": 1, "coeffs": [[1, 2, 3]]},
                                      {"radius": 0, "coeffs": [[1, 0, 0, 0]]}])
    def test_bad_json(self, data):
        with pytest.raises(ValueError):
            SeriesFunction.from_dict(data)


class TestRepresentation:
    def test_same_unit(self):
        f = lambda z: z * z * Quaternion(0, 1, 2, 0)
        x, y = 0.3, 0.4
        assert qclose(representation_formula(f, x, y, QJ, QJ), f(QJ * y + x), 1e-15)

    def test_y_zero(self):
        f = lambda z: z**3 + QK
        assert qclose(representation_formula(f, 0.7, 0.0, QI, QJ), f(Quaternion(0.7)), 1e-15)

    def test_square_example(self):
        value = representation_formula(lambda z: z * z, 1.0, 2.0, QI, QJ)
        assert qclose(value, Quaternion(-3, 0, 4, 0), 1e-15)

    @given(st.floats(-0.6, 0.6), st.floats(-0.6, 0.6), units(), units(), st.integers(0, 2**32 - 1))
    def test_reproduces_evaluation(self, x, y, I, J, seed):
        f = random_series(np.random.default_rng(seed), 6)
        value = representation_formula(lambda z: evaluate(f, z), x, y, I, J)
        assert qclose(value, evaluate(f, J * y + x), 1e-12)


class TestExtend:
    def test_in_slice(self):
        h = lambda z: z * z + QJ
        q = QI * 0.4 + 0.2
        assert qclose(extend(h, QI, q), h(q), 1e-15)

    @given(quaternions())
    def test_constant(self, q):
        c = Quaternion(1, 2, 3, 4)
        assert qclose(extend(lambda z: c, QI, q), c, 1e-15)

    @given(quaternions(2.0))
    def test_cube(self, q):
        assert qclose(extend(lambda z: z**3, QI, q), q**3, 1e-12)

    @given(quaternions(0.95), units(), st.integers(0, 2**32 - 1))
    def test_extension_of_restriction(self, q, I, seed):
        f = random_series(np.random.default_rng(seed), 7)
        assert qclose(extend(lambda z: evaluate(f, z), I, q), evaluate(f, q), 1e-12)


class TestSplit:
    def test_example(self):
        F, G = split_value(Quaternion(1, 2, 3, 4), QI, QJ)
        assert F == Quaternion(1, 2, 0, 0) and G == Quaternion(3, 4, 0, 0)

    def test_in_slice(self):
        v = QI * 0.5 + 2.0
        F, G = split_value(v, QI, QJ)
        assert F == v and float(G.norm()) == 0.0

    @given(quaternions(), units(), st.floats(0, 6.28))
    def test_round_trip(self, v, I, phi):
        # a unit orthogonal to I
        a = np.cross(I.vector, [1.0, 0.0, 0.0])
        if np.linalg.norm(a) < 1e-3:
            a = np.cross(I.vector, [0.0, 1.0, 0.0])
        a = a / np.linalg.norm(a)
        b = np.cross(I.vector, a)
        J = ImaginaryUnit(*(np.cos(phi) * a + np.sin(phi) * b))
        F, G = split_value(v, I, J)
        for part in (F, G):
            assert np.linalg.norm(np.cross(part.vector, I.vector)) <= 1e-12 * (1 + float(v.norm()))
        assert qclose(F + G * J, v, 1e-13)

    def test_not_perpendicular(self):
        with pytest.raises(DomainError):
            split_value(Quaternion(1, 2, 3, 4), QI, ImaginaryUnit(1, 1, 0))


class TestInnerProduct:
    def test_disjoint_monomials(self):
        assert inner_product_coeffs(monomial(2, 1.0), monomial(3, 1.0), 1.0) == Quaternion(0.0)

    def test_e1_norm(self):
        value = inner_product_coeffs(monomial(1, 1.0), monomial(1, 1.0), 1.0)
        assert qclose(value, Quaternion(0.5), 1e-15)

    def test_norm_weights(self):
        assert np.allclose(norm_weights(3, 1.0, 2.0), [1, 4 / 2, 16 / 3, 64 / 4], rtol=1e-15)

    @pytest.mark.parametrize("alpha,R", [(1.0, 1.0), (0.5, 2.0), (3.0, 1.5)])
    def test_quadrature_oracle(self, rng, alpha, R):
        f, g = random_series(rng, 5, R), random_series(rng, 5, R)
        exact = inner_product_coeffs(f, g, alpha)
        for unit in (QI, ImaginaryUnit(0.3, -0.5, 0.8)):
            rule = build_disk(alpha, R, unit, n_radial=12, n_angular=24)
            value = integrate_disk(rule, lambda z: evaluate(f, z).conj() * evaluate(g, z))
            assert float((value - exact).norm()) <= 1e-10 * (1 + float(exact.norm()))

    def test_norm_real_nonnegative_and_slice_independent(self, rng):
        f = random_series(rng, 6, 1.0)
        exact = inner_product_coeffs(f, f, 2.0)
        assert float(exact.imag.norm()) <= 1e-14 * float(exact.real) and float(exact.real) > 0
        vals = []
        for unit in (QJ, ImaginaryUnit(1, 1, 1)):
            rule = build_disk(2.0, 1.0, unit, n_radial=10, n_angular=20)
            vals.append(integrate_disk(rule, lambda z: evaluate(f, z).norm_sq()))
        assert qclose(vals[0], vals[1], 1e-10)

    def test_conjugate_linear_left(self, rng):
        f, g = random_series(rng, 4), random_series(rng, 4)
        c = Quaternion(0.5, 1.0, -0.2, 0.3)
        assert qclose(inner_product_coeffs(f, g.right_mul(c), 1.0), inner_product_coeffs(f, g, 1.0) * c, 1e-13)
        assert qclose(inner_product_coeffs(f.right_mul(c), g, 1.0), c.conj() * inner_product_coeffs(f, g, 1.0), 1e-13)
