"""Slice regular functions on a ball as right-linear power series ``sum q^n a_n``.

Also houses the structural tools of slice analysis: the representation
formula, the extension of a one-slice holomorphic function, and the pointwise
splitting of a quaternion along two orthogonal units.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .quaternion import Quaternion, as_quaternion, decompose
from .special import gamma_ratios

__all__ = [
    "SeriesFunction",
    "monomial",
    "evaluate",
    "representation_formula",
    "extend",
    "split_value",
    "inner_product_coeffs",
    "norm_weights",
]

PERP_TOL = 1e-12


@dataclass(frozen=True)
class SeriesFunction:
    """Polynomial ``f(q) = sum_n q^n a_n`` on the ball of radius ``radius``.

    Coefficients sit to the right of the powers, matching the left slice
    regularity convention.
    """

    coeffs: Quaternion
    radius: float

    def __post_init__(self):
        coeffs = as_quaternion(self.coeffs)
        if coeffs.ndim != 1 or len(coeffs) == 0:
            raise ValueError("coeffs must be a non-empty 1-d list of quaternions")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "radius", float(self.radius))

    @classmethod
    def from_list(cls, coeffs, radius: float) -> "SeriesFunction":
        return cls(Quaternion.from_array([as_quaternion(c).array for c in coeffs]), radius)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, q) -> Quaternion:
        return evaluate(self, q)

    def right_mul(self, c) -> "SeriesFunction":
        """The function ``q -> f(q) c``."""
        return SeriesFunction(self.coeffs * as_quaternion(c), self.radius)

    def __add__(self, other: "SeriesFunction") -> "SeriesFunction":
        if not isinstance(other, SeriesFunction):
            return NotImplemented
        if other.radius != self.radius:
            raise ValueError("radius mismatch")
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros((n, 4))
        a[: len(self.coeffs)] += self.coeffs.array
        a[: len(other.coeffs)] += other.coeffs.array
        return SeriesFunction(Quaternion.from_array(a), self.radius)

    def to_json(self) -> str:
        return json.dumps({"radius": self.radius, "coeffs": self.coeffs.to_list()})

    @classmethod
    def from_json(cls, text: str) -> "SeriesFunction":
        data = json.loads(text)
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "SeriesFunction":
        coeffs = np.array(data["coeffs"], dtype=float)
        if coeffs.ndim != 2 or coeffs.shape[1] != 4:
            raise ValueError("coeffs must be a list of [w,x,y,z] entries")
        return cls(Quaternion.from_array(coeffs), float(data["radius"]))


def monomial(n: int, radius: float, coeff=1.0) -> SeriesFunction:
    """``q^n c`` as a :class:`SeriesFunction`."""
    a = np.zeros((n + 1, 4))
    a[n] = as_quaternion(coeff).array
    return SeriesFunction(Quaternion.from_array(a), radius)


def evaluate(f: SeriesFunction, q) -> Quaternion:
    """Horner evaluation ``a_0 + q (a_1 + q (a_2 + ...))``; ``q`` may be a batch."""
    q = as_quaternion(q)
    if np.any(q.norm() >= f.radius):
        raise DomainError(f"point outside the ball of radius {f.radius}")
    acc = Quaternion.from_array(np.broadcast_to(f.coeffs.array[-1], q.shape + (4,)))
    for a in f.coeffs.array[-2::-1]:
        acc = q * acc + Quaternion.from_array(a)
    return acc


def representation_formula(fI: Callable, x, y, I, J) -> Quaternion:
    """``f(x+yJ) = 1/2 (1 - JI) f(x+yI) + 1/2 (1 + JI) f(x-yI)``."""
    I = as_quaternion(I)
    J = as_quaternion(J)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    JI = J * I
    plus = as_quaternion(fI(I * y + x))
    minus = as_quaternion(fI(I * (-y) + x))
    return (1.0 - JI) * plus * 0.5 + (1.0 + JI) * minus * 0.5


def extend(h: Callable, I, q) -> Quaternion:
    """Unique slice regular extension of ``h`` given on the slice ``C_I``.

    ``ext(h)(x+yJ) = 1/2 [h(x+yI) + h(x-yI)] + JI/2 [h(x-yI) - h(x+yI)]``
    where ``(x, y, J)`` is the slice decomposition of ``q``.
    """
    I = as_quaternion(I)
    dec = decompose(q)
    plus = as_quaternion(h(I * dec.y + dec.x))
    minus = as_quaternion(h(I * (-dec.y) + dec.x))
    return (plus + minus) * 0.5 + (dec.unit * I) * (minus - plus) * 0.5


def split_value(v, I, J) -> tuple[Quaternion, Quaternion]:
    """Write ``v = F + G J`` with ``F, G`` in the slice ``C_I`` (``J`` orthogonal to ``I``)."""
    v = as_quaternion(v)
    I = as_quaternion(I)
    J = as_quaternion(J)
    if abs(float(np.dot(I.vector, J.vector))) > PERP_TOL:
        raise DomainError("J must be perpendicular to I")
    if abs(float(I.real)) > PERP_TOL or abs(float(J.real)) > PERP_TOL:
        raise DomainError("I and J must be purely imaginary")
    IJ = I * J
    a = v.real
    b = np.einsum("...i,i->...", v.vector, I.vector)
    c = np.einsum("...i,i->...", v.vector, J.vector)
    d = np.einsum("...i,i->...", v.vector, IJ.vector)
    return I * b + a, I * d + c


def norm_weights(nmax: int, alpha: float, radius: float) -> np.ndarray:
    """Squared monomial norms ``n! R^{2n} Gamma(alpha+1) / Gamma(n+alpha+1)``, ``n <= nmax``."""
    return radius ** (2.0 * np.arange(nmax + 1)) / gamma_ratios(nmax, alpha)


def inner_product_coeffs(f: SeriesFunction, g: SeriesFunction, alpha: float) -> Quaternion:
    """``<f, g> = sum_n ||e_n||^2 conj(a_n) b_n`` (conjugate-linear in ``f``)."""
    if f.radius != g.radius:
        raise ValueError("radius mismatch")
    n = min(len(f.coeffs), len(g.coeffs))
    w = norm_weights(n - 1, alpha, f.radius)
    terms = f.coeffs[:n].conj() * g.coeffs[:n]
    return Quaternion.from_array(np.sum(w[:, None] * terms.array, axis=0))
