"""Quaternionic second Bargmann transform between the weighted half-line space
and the slice Bergman space, with its inverse and the kernel-kernel integral.

The transform kernel is

    A(t; q) = (1 - q/R)^{-alpha-1} exp(t q / (q - R)),

a generating function of the Laguerre polynomials:
``A(t; q) = sum_n (q/R)^n L_n^{(alpha)}(t)``.  It sends the orthonormal Laguerre
system ``phi_n`` to the Bergman basis ``f_n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .bergman import KernelParams, check_ball
from .quadrature import DiskRule, HalfLineRule, integrate_disk, integrate_halfline
from .quaternion import Quaternion, as_quaternion, slice_exp, slice_pow
from .slicefun import SeriesFunction, evaluate
from .special import gamma_ratios, laguerre_table

__all__ = [
    "LaguerreCoefficients",
    "basis_phi",
    "basis_phi_table",
    "kernel_A",
    "forward",
    "forward_coeffs",
    "inverse",
    "inverse_rule",
    "kernel_kernel_integral",
    "kernel_A_norm",
]


def basis_phi_table(nmax: int, alpha: float, t) -> np.ndarray:
    """``phi_n(t)`` for ``n = 0..nmax`` on a new last axis."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    return laguerre_table(nmax, alpha, t) / np.sqrt(gamma_ratios(nmax, alpha))


def basis_phi(n: int, alpha: float, t):
    """Orthonormal Laguerre function ``L_n^{(alpha)}(t) / sqrt(gamma_ratio(n, alpha))``."""
    vals = basis_phi_table(n, alpha, t)[..., n]
    return float(vals) if np.ndim(vals) == 0 else vals


@dataclass(frozen=True)
class LaguerreCoefficients:
    """``phi(t) = sum_n phi_n(t) c_n`` in the half-line space with parameter ``alpha``."""

    alpha: float
    coeffs: Quaternion

    def __post_init__(self):
        coeffs = as_quaternion(self.coeffs)
        if coeffs.ndim != 1 or len(coeffs) == 0:
            raise ValueError("coeffs must be a non-empty 1-d list of quaternions")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.coeffs.norm_sq())))

    def __call__(self, t) -> Quaternion:
        table = basis_phi_table(self.degree, self.alpha, t)
        return Quaternion.from_array(np.tensordot(table, self.coeffs.array, axes=(-1, 0)))

    def to_json(self) -> str:
        return json.dumps({"alpha": self.alpha, "coeffs": self.coeffs.to_list()})

    @classmethod
    def from_json(cls, text: str) -> "LaguerreCoefficients":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_dict(cls, data: dict) -> "LaguerreCoefficients":
        coeffs = np.array(data["coeffs"], dtype=float)
        if coeffs.ndim != 2 or coeffs.shape[1] != 4:
            raise ValueError("coeffs must be a list of [w,x,y,z] entries")
        return cls(float(data["alpha"]), Quaternion.from_array(coeffs))


def kernel_A(t, q, params: KernelParams) -> Quaternion:
    """``(1 - q/R)^{-alpha-1} exp(t q (q - R)^{-1})``, batched over ``t`` and ``q``."""
    q = as_quaternion(q)
    check_ball(q, params.R)
    t = np.asarray(t, dtype=float)
    R = params.R
    power = slice_pow(1.0 - q / R, -params.alpha - 1.0)
    expo = slice_exp((q * (q - R).inverse()) * t)
    return power * expo


def _check_alpha(*alphas: float) -> None:
    if len(set(alphas)) != 1:
        raise ValueError(f"mismatched alpha parameters {alphas}")


def forward(phi: LaguerreCoefficients, q, params: KernelParams, rule: HalfLineRule) -> Quaternion:
    """``integral A(t; q) phi(t) d mu_alpha(t)`` by Gauss-Laguerre quadrature."""
    _check_alpha(phi.alpha, params.alpha, rule.alpha)
    q = as_quaternion(q)
    check_ball(q, params.R)
    if q.shape:
        raise ValueError("forward evaluates one point at a time")
    return integrate_halfline(rule, lambda t: kernel_A(t, q, params) * phi(t))


def forward_coeffs(phi: LaguerreCoefficients, params: KernelParams) -> SeriesFunction:
    """Exact image ``sum_n f_n(q) c_n`` as monomial coefficients."""
    _check_alpha(phi.alpha, params.alpha)
    scale = np.sqrt(gamma_ratios(phi.degree, params.alpha)) / params.R ** np.arange(phi.degree + 1)
    return SeriesFunction(phi.coeffs * scale, params.R)


def inverse_rule(f: SeriesFunction, rule: DiskRule) -> DiskRule:
    """Disk rule actually used by :func:`inverse` for ``f``.

    The inverse kernel has an essential singularity at ``q = R`` on the
    boundary, so a uniform angular count aliases badly on the outer rings.
    The radial nodes are kept and each ring is refined (:meth:`DiskRule.graded`).
    """
    return rule.graded(min_degree=f.degree)


def inverse(f: SeriesFunction, t, params: KernelParams, rule: DiskRule, graded: bool = True) -> Quaternion:
    """``integral exp(t conj(q)/(conj(q) - R)) (1 - conj(q)/R)^{-alpha-1} f(q) d lambda(q)``.

    ``t`` may be a scalar or an array; the result has the shape of ``t``.  The
    density ``(1 - |q|^2/R^2)^{alpha-1} alpha / (pi R^2)`` is carried by the
    rule's weights and is not applied again here.  With ``graded=False`` the
    rule is used as given, which is only adequate when its outer ring is far
    from the boundary.
    """
    if f.radius != params.R:
        raise ValueError("f.radius must equal params.R")
    if (rule.alpha, rule.R) != (params.alpha, params.R):
        raise ValueError("quadrature rule built for different (alpha, R)")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    R = params.R
    use = inverse_rule(f, rule) if graded else rule
    flat_t = t.reshape(-1)

    def integrand(q: Quaternion) -> Quaternion:
        qb = q.conj()
        power_f = slice_pow(1.0 - qb / R, -params.alpha - 1.0) * evaluate(f, q)
        ratio = (qb * (qb - R).inverse()).reshape(-1, 1)
        expo = slice_exp(ratio * flat_t[None, :])
        return expo * power_f.reshape(-1, 1)

    return integrate_disk(use, integrand).reshape(t.shape)


def kernel_kernel_integral(q, q2, params: KernelParams, rule: HalfLineRule) -> Quaternion:
    """``integral A(t; q) conj(A(t; q2)) d mu_alpha(t)``; equals ``K(q, q2)``."""
    _check_alpha(params.alpha, rule.alpha)
    q, q2 = as_quaternion(q), as_quaternion(q2)
    return integrate_halfline(rule, lambda t: kernel_A(t, q, params) * kernel_A(t, q2, params).conj())


def kernel_A_norm(q, params: KernelParams, rule: HalfLineRule) -> float:
    """``||A(.; q)||`` in the half-line space."""
    return float(np.sqrt(kernel_kernel_integral(q, q, params, rule).real))
