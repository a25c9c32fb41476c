"""Large-radius limits of the Bergman theory with ``alpha = nu R^2``.

As ``R`` grows the weighted measure, the orthonormal basis and the reproducing
kernel of the ball converge pointwise to their slice Bargmann-Fock
counterparts.  The functions here measure the pointwise gaps so the decay can be
tabulated over a sweep of radii.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from .bergman import KernelParams, basis_f, kernel_series
from .errors import DomainError
from .quaternion import Quaternion, as_quaternion
from .slicefun import evaluate
from .special import DEFAULT_TRUNCATION, SeriesTruncation, fock_kernel

__all__ = [
    "LimitSweep",
    "SweepRow",
    "DEFAULT_RADII",
    "density_limit_error",
    "basis_limit_error",
    "binet_ratio",
    "kernel_limit_error",
    "run_sweep",
    "sweep_csv",
    "empirical_orders",
]

DEFAULT_RADII = (5.0, 10.0, 20.0, 40.0, 80.0)
CSV_HEADER = "R,density_err,basis0_err,basis1_err,basis2_err,basis3_err,kernel_err"


def _norm(q) -> float:
    return float(as_quaternion(q).norm())


def density_limit_error(nu: float, q, R: float) -> float:
    """``|(1 - |q|^2/R^2)^{nu R^2} - exp(-nu |q|^2)|``."""
    r2 = _norm(q) ** 2
    if r2 >= R * R:
        raise DomainError("q lies outside the ball")
    return abs(math.exp(nu * R * R * math.log1p(-r2 / (R * R))) - math.exp(-nu * r2))


def basis_limit_error(nu: float, n: int, q, R: float) -> float:
    """``|f_n(q) - (nu^n/n!)^{1/2} q^n|`` for the basis with ``alpha = nu R^2``."""
    q = as_quaternion(q)
    f_n = evaluate(basis_f(n, KernelParams(nu * R * R, R)), q)
    e_n = (q**n) * math.sqrt(nu**n / math.factorial(n))
    return float((f_n - e_n).norm())


def binet_ratio(x: float, a: float, b: float) -> float:
    """``Gamma(x+a) / (x^{a-b} Gamma(x+b))`` through log-Gamma differences."""
    if not (x + a > 0 and x + b > 0):
        raise DomainError("need x + a > 0 and x + b > 0")
    if a == b:
        return 1.0
    return math.exp(math.lgamma(x + a) - math.lgamma(x + b) - (a - b) * math.log(x))


def kernel_limit_error(nu: float, q, p, R: float, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> float:
    """``|K_R(q, p) - e_*(nu q, conj p)|`` with ``alpha = nu R^2``."""
    bergman = kernel_series(q, p, KernelParams(nu * R * R, R), trunc)
    return float((bergman - fock_kernel(nu, q, p, trunc)).norm())


@dataclass(frozen=True)
class LimitSweep:
    nu: float
    probe_q: Quaternion
    probe_p: Quaternion
    radii: tuple[float, ...] = field(default=DEFAULT_RADII)

    def __post_init__(self):
        if not self.nu > 0:
            raise ValueError("nu must be positive")
        radii = tuple(float(r) for r in self.radii)
        if not radii:
            raise ValueError("need at least one radius")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("radii must be strictly increasing")
        q, p = as_quaternion(self.probe_q), as_quaternion(self.probe_p)
        bound = 2.0 * max(_norm(q), _norm(p))
        if radii[0] <= bound:
            raise DomainError(f"every radius must exceed twice the probe size ({bound})")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "probe_q", q)
        object.__setattr__(self, "probe_p", p)


@dataclass(frozen=True)
class SweepRow:
    R: float
    density_err: float
    basis_err: tuple[float, float, float, float]
    kernel_err: float


def run_sweep(sweep: LimitSweep, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> list[SweepRow]:
    """One row of pointwise limit errors per radius, ascending in ``R``."""
    rows = []
    for R in sweep.radii:
        rows.append(
            SweepRow(
                R=R,
                density_err=density_limit_error(sweep.nu, sweep.probe_q, R),
                basis_err=tuple(basis_limit_error(sweep.nu, n, sweep.probe_q, R) for n in range(4)),
                kernel_err=kernel_limit_error(sweep.nu, sweep.probe_q, sweep.probe_p, R, trunc),
            )
        )
    return rows


def sweep_csv(rows: list[SweepRow]) -> str:
    """Render rows as CSV with six significant digits in scientific notation."""
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for row in rows:
        values = [row.R, row.density_err, *row.basis_err, row.kernel_err]
        out.write(",".join(f"{v:.5e}" for v in values) + "\n")
    return out.getvalue()


def empirical_orders(radii, errors) -> np.ndarray:
    """``log(e_k / e_{k+1}) / log(R_{k+1} / R_k)`` for consecutive sweep rows."""
    radii = np.asarray(radii, dtype=float)
    errors = np.asarray(errors, dtype=float)
    return np.log(errors[:-1] / errors[1:]) / np.log(radii[1:] / radii[:-1])
