"""The weighted slice hyperholomorphic Bergman space on the ball of radius R.

The reproducing kernel is available in four forms that must agree:

* :func:`kernel_series`: the basis expansion ``sum (alpha+1)_n/(n! R^2n) q^n conj(p)^n``;
* :func:`kernel_closed`: a terminating or convergent series in ``conj(q), conj(p)``
  multiplied on the right by a real power that lives in the slice of ``p``;
* :func:`kernel_alpha1`: the rational form for ``alpha = 1``;
* :func:`kernel_via_representation`: the one-slice kernel
  ``(1 - z conj(w)/R^2)^{-alpha-1}`` carried to other slices by the
  representation formula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import DiskRule, integrate_disk
from .quaternion import Quaternion, as_quaternion, decompose, slice_pow
from .slicefun import SeriesFunction, evaluate
from .special import DEFAULT_TRUNCATION, SeriesTruncation, gamma_ratio, i_series, i_series_terms

__all__ = [
    "KernelParams",
    "basis_f",
    "monomial_norm_sq",
    "kernel_series",
    "kernel_series_terms",
    "kernel_closed",
    "kernel_alpha1",
    "kernel_alpha1_conjugate",
    "kernel_hol",
    "kernel_via_representation",
    "reproduce",
    "check_ball",
]


@dataclass(frozen=True)
class KernelParams:
    alpha: float
    R: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.R > 0:
            raise ValueError("R must be positive")


def check_ball(q: Quaternion, R: float, name: str = "q") -> None:
    if np.any(q.norm() >= R):
        raise DomainError(f"{name} lies outside the ball of radius {R}")


def basis_f(n: int, params: KernelParams) -> SeriesFunction:
    """Orthonormal basis element ``sqrt(gamma_ratio(n, alpha)) (q/R)^n``."""
    a = np.zeros((n + 1, 4))
    a[n, 0] = np.sqrt(gamma_ratio(n, params.alpha)) / params.R**n
    return SeriesFunction(Quaternion.from_array(a), params.R)


def monomial_norm_sq(n: int, params: KernelParams) -> float:
    """``||q^n||^2 = n! R^{2n} Gamma(alpha+1) / Gamma(n+alpha+1)``."""
    return params.R ** (2 * n) / gamma_ratio(n, params.alpha)


def kernel_series_terms(q, p, params: KernelParams, trunc: SeriesTruncation = DEFAULT_TRUNCATION):
    q, p = as_quaternion(q), as_quaternion(p)
    check_ball(q, params.R, "q")
    check_ball(p, params.R, "p")
    return i_series_terms(params.alpha + 1.0, q / params.R, p.conj() / params.R, trunc)


def kernel_series(q, p, params: KernelParams, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> Quaternion:
    """``K(q, p) = sum_n (alpha+1)_n / (n! R^{2n}) q^n conj(p)^n``."""
    return kernel_series_terms(q, p, params, trunc)[0]


def _slice_factor(q: Quaternion, p: Quaternion, R: float) -> Quaternion:
    """``1 - 2 Re(q) conj(p)/R^2 + |q|^2 conj(p)^2/R^4``, an element of the slice of ``p``."""
    pb = p.conj()
    return 1.0 - pb * (2.0 * q.real / R**2) + (pb * pb) * (q.norm_sq() / R**4)


def kernel_closed(q, p, params: KernelParams, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> Quaternion:
    """``I^{-alpha-1}(conj(q)/R, conj(p)/R) * D^{-alpha-1}`` with ``D`` from :func:`_slice_factor`.

    For integer ``alpha`` the left factor is a polynomial.  ``D`` factors as
    ``(1 - z conj(p)/R^2)(1 - conj(z) conj(p)/R^2)`` with ``z`` in the slice of
    ``p``, so inside the ball it never meets the branch cut.
    """
    q, p = as_quaternion(q), as_quaternion(p)
    check_ball(q, params.R, "q")
    check_ball(p, params.R, "p")
    R = params.R
    left = i_series(-params.alpha - 1.0, q.conj() / R, p.conj() / R, trunc)
    right = slice_pow(_slice_factor(q, p, R), -params.alpha - 1.0)
    return left * right


def kernel_alpha1(q, p, R: float) -> Quaternion:
    """Rational kernel for ``alpha = 1``:
    ``(1 - 2q Re(p)/R^2 + q^2|p|^2/R^4)^{-2} (1 - 2qp/R^2 + q^2 p^2/R^4)``.
    """
    q, p = as_quaternion(q), as_quaternion(p)
    check_ball(q, R, "q")
    check_ball(p, R, "p")
    q2 = q * q
    first = 1.0 - q * (2.0 * p.real / R**2) + q2 * (p.norm_sq() / R**4)
    second = 1.0 - (q * p) * (2.0 / R**2) + (q2 * (p * p)) / R**4
    if np.any(first.norm() == 0.0):
        raise DomainError("singular factor in the alpha = 1 kernel")
    return slice_pow(first, -2) * second


def kernel_alpha1_conjugate(q, p, R: float) -> Quaternion:
    """Second rational form for ``alpha = 1``:
    ``(1 - 2 conj(q)conj(p)/R^2 + conj(q)^2 conj(p)^2/R^4) D^{-2}``.
    """
    q, p = as_quaternion(q), as_quaternion(p)
    check_ball(q, R, "q")
    check_ball(p, R, "p")
    qb, pb = q.conj(), p.conj()
    first = 1.0 - (qb * pb) * (2.0 / R**2) + ((qb * qb) * (pb * pb)) / R**4
    return first * slice_pow(_slice_factor(q, p, R), -2)


def kernel_hol(z, w, params: KernelParams) -> Quaternion:
    """One-slice kernel ``(1 - z conj(w)/R^2)^{-alpha-1}``; ``z`` and ``w`` must share a slice."""
    z, w = as_quaternion(z), as_quaternion(w)
    return slice_pow(1.0 - (z * w.conj()) / params.R**2, -params.alpha - 1.0)


def kernel_via_representation(q, p, params: KernelParams) -> Quaternion:
    """Kernel assembled from the one-slice kernel in the slice of ``p``.

    With ``q = x + I y`` and ``z_p = x + I_p y``:
    ``1/2 (K(z_p) + K(conj z_p)) + I I_p / 2 (K(conj z_p) - K(z_p))``.
    A real ``p`` uses the canonical unit ``i``.
    """
    q, p = as_quaternion(q), as_quaternion(p)
    check_ball(q, params.R, "q")
    check_ball(p, params.R, "p")
    dq = decompose(q)
    Ip = decompose(p).unit
    zp = Ip * dq.y + dq.x
    k_plus = kernel_hol(zp, p, params)
    k_minus = kernel_hol(zp.conj(), p, params)
    return (k_plus + k_minus) * 0.5 + (dq.unit * Ip) * (k_minus - k_plus) * 0.5


def reproduce(
    f: SeriesFunction,
    q,
    params: KernelParams,
    rule: DiskRule,
    trunc: SeriesTruncation = DEFAULT_TRUNCATION,
) -> Quaternion:
    """``integral K(q, z) f(z) d lambda(z)`` by disk quadrature (one point ``q``)."""
    q = as_quaternion(q)
    check_ball(q, params.R, "q")
    if (rule.alpha, rule.R) != (params.alpha, params.R):
        raise ValueError("quadrature rule built for different (alpha, R)")
    return integrate_disk(rule, lambda z: kernel_series(q, z, params, trunc) * evaluate(f, z))
