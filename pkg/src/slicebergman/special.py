"""Special functions: Pochhammer symbols, Laguerre polynomials and the
two-variable quaternionic series ``I^a``, ``2F1*`` and the Fock kernel.

The quaternionic series all have the shape ``sum_n c_n q^n p^n`` with real
coefficients ``c_n``.  Because ``q`` and ``p`` need not commute, the powers are
accumulated separately and multiplied in that order for every term.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, TruncationError
from .quaternion import Quaternion, as_quaternion

__all__ = [
    "SeriesTruncation",
    "DEFAULT_TRUNCATION",
    "pochhammer",
    "gamma_ratio",
    "gamma_ratios",
    "laguerre",
    "laguerre_table",
    "i_series",
    "gauss_2f1_star",
    "fock_kernel",
    "bilinear_series",
]


@dataclass(frozen=True)
class SeriesTruncation:
    """Stopping rule for the quaternionic power series.

    Summation stops once a term is below ``rel_tol`` times the partial sum and
    the term magnitudes are decreasing; reaching ``max_terms`` first raises
    :class:`TruncationError`.
    """

    rel_tol: float = 1e-14
    max_terms: int = 512

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be a positive integer")


DEFAULT_TRUNCATION = SeriesTruncation()


def _is_nonpositive_integer(a: float) -> bool:
    return a <= 0 and float(a).is_integer()


def pochhammer(a: float, n: int) -> float:
    """Rising factorial ``(a)_n = a (a+1) ... (a+n-1)``, with ``(a)_0 = 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def gamma_ratio(n: int, alpha: float) -> float:
    """``Gamma(n+alpha+1) / (n! Gamma(alpha+1))`` as ``prod_{k<=n} (alpha+k)/k``."""
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1.0
    for k in range(1, n + 1):
        out *= (alpha + k) / k
    return out


def gamma_ratios(nmax: int, alpha: float) -> np.ndarray:
    """``gamma_ratio(n, alpha)`` for ``n = 0..nmax`` as an array."""
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    k = np.arange(1, nmax + 1, dtype=float)
    return np.concatenate([[1.0], np.cumprod((alpha + k) / k)])


def laguerre_table(nmax: int, alpha: float, t) -> np.ndarray:
    """Values ``L_n^{(alpha)}(t)`` for ``n = 0..nmax``, stacked on a new last axis.

    Uses ``(k+1) L_{k+1} = (2k+alpha+1-t) L_k - (k+alpha) L_{k-1}``.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty(t.shape + (nmax + 1,))
    out[..., 0] = 1.0
    if nmax >= 1:
        out[..., 1] = alpha + 1.0 - t
    for k in range(1, nmax):
        out[..., k + 1] = ((2 * k + alpha + 1.0 - t) * out[..., k] - (k + alpha) * out[..., k - 1]) / (k + 1)
    return out


def laguerre(n: int, alpha: float, t):
    """Generalized Laguerre polynomial ``L_n^{(alpha)}(t)`` (scalar or array ``t``)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    vals = laguerre_table(n, alpha, t)[..., n]
    return float(vals) if np.ndim(vals) == 0 else vals


def bilinear_series(
    ratio: Callable[[int], float],
    q,
    p,
    trunc: SeriesTruncation = DEFAULT_TRUNCATION,
    *,
    terminates: bool = False,
) -> tuple[Quaternion, int]:
    """Sum ``sum_n c_n q^n p^n`` with ``c_0 = 1`` and ``c_{n+1} = c_n * ratio(n)``.

    ``q`` and ``p`` broadcast against each other.  Returns the sum and the
    number of terms used.  With ``terminates`` set the caller guarantees some
    ``ratio(m) == 0`` so the sum is a polynomial and no tolerance test applies.
    """
    q = as_quaternion(q)
    p = as_quaternion(p)
    shape = np.broadcast_shapes(q.shape, p.shape)
    x = np.broadcast_to(q.norm() * p.norm(), shape)

    qn = Quaternion.from_array(np.broadcast_to(np.array([1.0, 0, 0, 0]), shape + (4,)))
    pn = qn
    total = qn
    coef = 1.0
    done = np.zeros(shape, dtype=bool)
    for n in range(trunc.max_terms):
        r = ratio(n)
        coef *= r
        if coef == 0.0:
            return total, n + 1
        qn = qn * q
        pn = pn * p
        term = (qn * pn) * coef
        total = total + term
        if terminates:
            continue
        small = term.norm() <= trunc.rel_tol * total.norm()
        decaying = abs(ratio(n + 1)) * x < 1.0
        done |= small & decaying
        if np.all(done):
            return total, n + 2
    if terminates:
        raise TruncationError(f"polynomial series longer than max_terms={trunc.max_terms}")
    raise TruncationError(f"series did not converge within max_terms={trunc.max_terms}")


def _check_radius(q: Quaternion, p: Quaternion) -> None:
    if np.any(q.norm() * p.norm() >= 1.0):
        raise DomainError("|q||p| >= 1: outside the radius of convergence")


def i_series(a: float, q, p, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> Quaternion:
    """``I^a(q, p) = sum_n (a)_n / n! q^n p^n`` with ``q^n`` left of ``p^n``."""
    value, _ = i_series_terms(a, q, p, trunc)
    return value


def i_series_terms(a: float, q, p, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> tuple[Quaternion, int]:
    """:func:`i_series` together with the number of terms summed."""
    q, p = as_quaternion(q), as_quaternion(p)
    finite = _is_nonpositive_integer(a)
    if not finite:
        _check_radius(q, p)
    return bilinear_series(lambda n: (a + n) / (n + 1), q, p, trunc, terminates=finite)


def gauss_2f1_star(a: float, b: float, c: float, q, p, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> Quaternion:
    """Left-sided ``2F1*``: ``sum_n q^n p^n / n! (a)_n (b)_n / (c)_n``.

    When ``b == c`` the ratio ``(b)_n/(c)_n`` is cancelled symbolically, which
    also covers the degenerate ``b = c = 0``.
    """
    q, p = as_quaternion(q), as_quaternion(p)
    if b == c:
        return i_series(a, q, p, trunc)
    if _is_nonpositive_integer(c):
        raise DomainError("(c)_n vanishes for nonpositive integer c unless b == c")
    finite = _is_nonpositive_integer(a) or _is_nonpositive_integer(b)
    if not finite:
        _check_radius(q, p)
    value, _ = bilinear_series(
        lambda n: (a + n) * (b + n) / ((c + n) * (n + 1)), q, p, trunc, terminates=finite
    )
    return value


def fock_kernel(nu: float, q, p, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> Quaternion:
    """Bargmann-Fock kernel ``sum_n nu^n q^n conj(p)^n / n!`` (entire)."""
    if not nu > 0:
        raise ValueError("nu must be positive")
    q, p = as_quaternion(q), as_quaternion(p)
    value, _ = bilinear_series(lambda n: nu / (n + 1), q, p.conj(), trunc)
    return value
