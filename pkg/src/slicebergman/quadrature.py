"""Gaussian quadrature for the half-line Laguerre measure and the weighted disk.

Half-line measure: ``t^alpha e^{-t} / Gamma(alpha+1) dt`` on ``[0, inf)``.
Disk measure: ``(alpha / pi R^2) (1 - |z|^2/R^2)^{alpha-1} dx dy`` on the disk
of radius ``R`` inside one slice ``C_I``.  Both are probability measures.

Nodes come from the symmetric tridiagonal Jacobi matrix of the associated
orthogonal polynomials (Golub-Welsch).  Eigenvalues are found by implicit-shift
QL, then polished by Newton steps on the orthonormal recurrence.  The weight of
a node is the squared first component of its normalized eigenvector.  That
eigenvector is ``(p_0(x), ..., p_{n-1}(x))`` up to scale, so the weight equals
``1 / sum_k p_k(x)^2``.  This closed form keeps full relative accuracy for the
exponentially small weights at large Laguerre nodes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable

import numpy as np

from .errors import ConvergenceError
from .quaternion import ImaginaryUnit, Quaternion

__all__ = [
    "HalfLineRule",
    "DiskRule",
    "build_halfline",
    "build_disk",
    "integrate_halfline",
    "integrate_disk",
    "tridiagonal_eigenvalues",
    "halfline_moment_errors",
    "disk_moment_table",
    "disk_moment_errors",
    "MAX_SWEEPS",
]

MAX_SWEEPS = 64
_EPS = np.finfo(float).eps


def tridiagonal_eigenvalues(diag, offdiag, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL.

    ``offdiag[k]`` couples rows ``k`` and ``k+1``.  Raises
    :class:`ConvergenceError` when one eigenvalue needs more than
    ``max_sweeps`` QL sweeps.  Returned in ascending order.
    """
    d = [float(v) for v in diag]
    n = len(d)
    if len(offdiag) < n - 1:
        raise ValueError("offdiag must have at least len(diag) - 1 entries")
    e = [float(v) for v in offdiag[: n - 1]] + [0.0]
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= _EPS * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise ConvergenceError(f"QL iteration exceeded {max_sweeps} sweeps for eigenvalue {l}")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(np.array(d))


def _orthonormal_scan(x: np.ndarray, diag: np.ndarray, off: np.ndarray):
    """Run the orthonormal three-term recurrence at points ``x``.

    ``off[k]`` is ``b_{k+1}`` with ``b_{k+1} p_{k+1} = (x - a_k) p_k - b_k p_{k-1}``.
    Returns ``(p_n, p_n', log sum_{k<n} p_k^2)`` where the first two share an
    unknown positive scale (only their ratio is meaningful).
    """
    n = len(diag)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    dp_prev = np.zeros_like(x)
    dp = np.zeros_like(x)
    acc = np.zeros_like(x)  # running sum of squares, in units of exp(2*logscale)
    logscale = np.zeros_like(x)
    b_prev = 0.0
    for k in range(n):
        acc = acc + p * p
        b = off[k]
        p_next = ((x - diag[k]) * p - b_prev * p_prev) / b
        dp_next = (p + (x - diag[k]) * dp - b_prev * dp_prev) / b
        p_prev, p, dp_prev, dp = p, p_next, dp, dp_next
        b_prev = b
        big = np.maximum(np.abs(p), np.abs(p_prev))
        rescale = big > 1e100
        if np.any(rescale):
            f = np.where(rescale, 1e-100, 1.0)
            p, p_prev, dp, dp_prev = p * f, p_prev * f, dp * f, dp_prev * f
            acc = acc * f * f
            logscale = logscale - np.log(f)
    return p, dp, np.log(acc) + 2.0 * logscale


def _gauss_from_recurrence(diag: np.ndarray, off: np.ndarray, newton_steps: int = 2):
    """Nodes and weights (measure of total mass 1) from recurrence coefficients.

    ``off`` has ``len(diag)`` entries: the matrix off-diagonal plus ``b_n``,
    which the Newton polish needs to evaluate ``p_n``.
    """
    x = tridiagonal_eigenvalues(diag, off[:-1])
    for _ in range(newton_steps):
        pn, dpn, _ = _orthonormal_scan(x, diag, off)
        x = x - pn / dpn
    _, _, logsum = _orthonormal_scan(x, diag, off)
    return x, np.exp(-logsum)


@dataclass(frozen=True)
class HalfLineRule:
    """Gauss rule for ``t^alpha e^{-t} / Gamma(alpha+1) dt`` on ``[0, inf)``."""

    alpha: float
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return len(self.nodes)

    def to_json(self) -> str:
        return json.dumps({"alpha": self.alpha, "nodes": self.nodes.tolist(), "weights": self.weights.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "HalfLineRule":
        data = json.loads(text)
        return cls(float(data["alpha"]), np.array(data["nodes"], dtype=float), np.array(data["weights"], dtype=float))


@lru_cache(maxsize=64)
def _halfline_cached(alpha: float, n: int) -> HalfLineRule:
    k = np.arange(n, dtype=float)
    diag = 2.0 * k + alpha + 1.0
    kk = np.arange(1, n + 1, dtype=float)
    off = np.sqrt(kk * (kk + alpha))
    nodes, weights = _gauss_from_recurrence(diag, off)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return HalfLineRule(alpha, nodes, weights)


def build_halfline(alpha: float, n: int = 128) -> HalfLineRule:
    """Generalized Gauss-Laguerre rule with ``n`` nodes for the normalized weight."""
    if not alpha > -1:
        raise ValueError("alpha must exceed -1")
    if n < 1:
        raise ValueError("n must be at least 1")
    return _halfline_cached(float(alpha), int(n))


def _jacobi_unit_interval(n: int, a: float) -> tuple[np.ndarray, np.ndarray]:
    """Recurrence coefficients for the weight ``(1-t)^a`` on ``[0, 1]``.

    Computed for ``(1-x)^a (1+x)^0`` on ``[-1, 1]`` and mapped by ``t = (x+1)/2``.
    """
    b = 0.0
    k = np.arange(n, dtype=float)
    s = 2.0 * k + a + b
    with np.errstate(divide="ignore", invalid="ignore"):
        diag = (b * b - a * a) / (s * (s + 2.0))
    diag[0] = (b - a) / (a + b + 2.0)
    kk = np.arange(1, n + 1, dtype=float)
    s = 2.0 * kk + a + b
    with np.errstate(divide="ignore", invalid="ignore"):
        beta = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (s * s * (s + 1.0) * (s - 1.0))
    beta[0] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) ** 2 * (3.0 + a + b))
    return (diag + 1.0) / 2.0, np.sqrt(beta) / 2.0


@lru_cache(maxsize=64)
def _jacobi_cached(alpha: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    diag, off = _jacobi_unit_interval(n, alpha - 1.0)
    nodes, weights = _gauss_from_recurrence(diag, off)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


@dataclass(frozen=True)
class DiskRule:
    """Tensor rule for the normalized weighted disk measure on the slice ``C_unit``.

    Sample points are ``R sqrt(t) (cos theta + unit sin theta)`` with ``t`` a
    radial Gauss-Jacobi node (weight ``(1-t)^{alpha-1}``) and ``theta``
    equispaced.  ``ring_counts`` optionally overrides ``angular_count`` ring by
    ring (see :meth:`graded`).
    """

    alpha: float
    R: float
    unit: Quaternion
    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    angular_count: int
    ring_counts: tuple[int, ...] | None = field(default=None)

    def counts(self) -> tuple[int, ...]:
        if self.ring_counts is not None:
            return self.ring_counts
        return (self.angular_count,) * len(self.radial_nodes)

    @property
    def size(self) -> int:
        return int(sum(self.counts()))

    def points(self) -> tuple[Quaternion, np.ndarray]:
        """Flattened sample points (shape ``(M,)``) and their weights."""
        return self._grid

    @cached_property
    def _grid(self) -> tuple[Quaternion, np.ndarray]:
        radii, angles, weights = [], [], []
        for t, w, m in zip(self.radial_nodes, self.radial_weights, self.counts()):
            radii.append(np.full(m, self.R * math.sqrt(t)))
            angles.append(2.0 * np.pi * np.arange(m) / m)
            weights.append(np.full(m, w / m))
        r = np.concatenate(radii)
        th = np.concatenate(angles)
        return self.unit * (r * np.sin(th)) + r * np.cos(th), np.concatenate(weights)

    def graded(self, min_degree: int = 0, alias_tol: float = 1e-17) -> "DiskRule":
        """Same radial nodes, angular count raised ring by ring.

        Ring ``j`` of radius ``r_j`` gets at least
        ``log(alias_tol) / log(r_j / R) + min_degree + 1`` points.  Angular
        aliasing of the frequency-``m`` component is then suppressed by
        ``(r_j/R)^m``.  Integrands with a singularity on the boundary circle,
        such as the inverse-transform kernel, need this.
        """
        key = (int(min_degree), float(alias_tol))
        cache = self.__dict__.setdefault("_graded_cache", {})
        if key not in cache:
            cache[key] = self._build_graded(*key)
        return cache[key]

    def _build_graded(self, min_degree: int, alias_tol: float) -> "DiskRule":
        counts = []
        for t, base in zip(self.radial_nodes, self.counts()):
            rho = math.sqrt(t)
            need = math.ceil(math.log(alias_tol) / math.log(rho)) + min_degree + 1
            counts.append(max(base, need))
        return DiskRule(
            self.alpha, self.R, self.unit, self.radial_nodes, self.radial_weights, self.angular_count, tuple(counts)
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "alpha": self.alpha,
                "R": self.R,
                "unit": self.unit.to_list(),
                "radial_nodes": self.radial_nodes.tolist(),
                "radial_weights": self.radial_weights.tolist(),
                "angular_count": self.angular_count,
                "ring_counts": list(self.ring_counts) if self.ring_counts is not None else None,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "DiskRule":
        data = json.loads(text)
        rc = data.get("ring_counts")
        return cls(
            float(data["alpha"]),
            float(data["R"]),
            ImaginaryUnit.from_quaternion(data["unit"]),
            np.array(data["radial_nodes"], dtype=float),
            np.array(data["radial_weights"], dtype=float),
            int(data["angular_count"]),
            tuple(int(c) for c in rc) if rc is not None else None,
        )


def build_disk(alpha: float, R: float, unit=None, n_radial: int = 64, n_angular: int = 128) -> DiskRule:
    """Tensor Gauss-Jacobi x trapezoid rule for the normalized disk measure."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if not R > 0:
        raise ValueError("R must be positive")
    if n_radial < 1 or n_angular < 2:
        raise ValueError("need n_radial >= 1 and n_angular >= 2")
    unit = ImaginaryUnit(1.0, 0.0, 0.0) if unit is None else ImaginaryUnit.from_quaternion(unit)
    nodes, weights = _jacobi_cached(float(alpha), int(n_radial))
    return DiskRule(float(alpha), float(R), unit, nodes, weights, int(n_angular))


def _weighted_sum(values, weights: np.ndarray):
    if isinstance(values, Quaternion):
        arr = values.array
        w = weights.reshape(weights.shape + (1,) * (arr.ndim - 1))
        return Quaternion.from_array(np.sum(w * arr, axis=0))
    values = np.asarray(values, dtype=float)
    w = weights.reshape(weights.shape + (1,) * (values.ndim - 1))
    return Quaternion(np.sum(w * values, axis=0))


def integrate_halfline(rule: HalfLineRule, f: Callable) -> Quaternion:
    """``sum_k w_k f(t_k)``.

    ``f`` receives the node array (shape ``(N,)``) and returns a Quaternion or
    real array whose leading axis runs over the nodes.
    """
    return _weighted_sum(f(rule.nodes), rule.weights)


def integrate_disk(rule: DiskRule, f: Callable) -> Quaternion:
    """Weighted sum of ``f`` over the disk sample points.

    ``f`` receives a Quaternion of shape ``(M,)`` and returns values whose
    leading axis runs over the points.
    """
    pts, wts = rule.points()
    return _weighted_sum(f(pts), wts)


def halfline_moment_errors(rule: HalfLineRule, kmax: int | None = None) -> np.ndarray:
    """Relative errors of ``sum w t^k`` against ``(alpha+1)_k`` for ``k = 0..kmax``.

    ``kmax`` defaults to ``2N - 1``, the exactness degree.  Moments are compared
    in log space since ``t^k`` overflows long before ``k = 2N - 1`` at ``N = 128``.
    """
    n = len(rule)
    kmax = 2 * n - 1 if kmax is None else kmax
    k = np.arange(kmax + 1, dtype=float)
    logw = np.log(rule.weights)[:, None]
    logt = np.log(rule.nodes)[:, None]
    terms = logw + k[None, :] * logt
    top = terms.max(axis=0)
    approx = top + np.log(np.sum(np.exp(terms - top), axis=0))
    exact = np.array([math.lgamma(rule.alpha + 1.0 + kk) - math.lgamma(rule.alpha + 1.0) for kk in k])
    return np.abs(np.expm1(approx - exact))


def disk_moment_table(rule: DiskRule, nmax: int) -> np.ndarray:
    """Complex matrix ``M[n, m] = integral conj(z)^n z^m d lambda`` on the rule's slice.

    Entries are the slice coordinates ``x + i y`` of values ``x + unit y``;
    computed from polar coordinates, independently of quaternion arithmetic.
    """
    nn = np.arange(nmax + 1)
    table = np.zeros((nmax + 1, nmax + 1), dtype=complex)
    for t, w, m in zip(rule.radial_nodes, rule.radial_weights, rule.counts()):
        theta = 2.0 * np.pi * np.arange(m) / m
        rho = rule.R * math.sqrt(t)
        v = rho ** nn[None, :] * np.exp(1j * np.outer(theta, nn))
        table += (w / m) * (v.conj().T @ v)
    return table


def disk_moment_errors(rule: DiskRule, nmax: int) -> np.ndarray:
    """``|M - diag(h_n)| / sqrt(h_n h_m)`` with ``h_n = n! R^{2n} Gamma(alpha+1) / Gamma(n+alpha+1)``."""
    nn = np.arange(nmax + 1)
    logh = np.array(
        [math.lgamma(n + 1) + 2 * n * math.log(rule.R) + math.lgamma(rule.alpha + 1) - math.lgamma(n + rule.alpha + 1)
         for n in nn]
    )
    h = np.exp(logh)
    scale = np.exp(0.5 * (logh[:, None] + logh[None, :]))
    return np.abs(disk_moment_table(rule, nmax) - np.diag(h)) / scale
