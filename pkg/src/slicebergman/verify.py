"""Seeded numerical verification suites.

Each suite returns a list of :class:`Check` records holding the worst residual
seen and the tolerance it is held to.  The suites back both the ``verify``
subcommand and the acceptance tests.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .asymptotics import DEFAULT_RADII, LimitSweep, empirical_orders, run_sweep
from .bergman import (
    KernelParams,
    basis_f,
    kernel_alpha1,
    kernel_alpha1_conjugate,
    kernel_closed,
    kernel_hol,
    kernel_series,
    kernel_via_representation,
    reproduce,
)
from .quadrature import (
    build_disk,
    build_halfline,
    disk_moment_errors,
    halfline_moment_errors,
)
from .quaternion import Quaternion
from .slicefun import SeriesFunction, evaluate, inner_product_coeffs
from .special import SeriesTruncation
from .transform import (
    LaguerreCoefficients,
    basis_phi,
    basis_phi_table,
    forward,
    forward_coeffs,
    inverse,
    kernel_kernel_integral,
)

__all__ = [
    "Check",
    "RunConfig",
    "SUITES",
    "run_suite",
    "random_ball",
    "random_unit",
    "random_slice_pair",
    "suite_identity",
    "suite_ortho",
    "suite_isometry",
    "suite_reproduce",
    "suite_kkintegral",
    "suite_asymptotic",
]

IDENTITY_ALPHAS = (0.5, 1.0, 2.5, 4.0)
IDENTITY_RADII = (1.0, 3.0)
ASYMPTOTIC_NUS = (0.5, 1.0)


@dataclass(frozen=True)
class RunConfig:
    alpha: float = 1.0
    R: float = 1.0
    nu: float = 1.0
    halfline_nodes: int = 128
    radial_nodes: int = 64
    angular_nodes: int = 128
    rel_tol: float = 1e-14
    max_terms: int = 512
    seed: int = 0

    def __post_init__(self):
        for name in ("alpha", "R", "nu", "halfline_nodes", "radial_nodes", "angular_nodes", "rel_tol", "max_terms"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.angular_nodes < 2:
            raise ValueError("angular_nodes must be at least 2")

    @property
    def params(self) -> KernelParams:
        return KernelParams(self.alpha, self.R)

    @property
    def trunc(self) -> SeriesTruncation:
        return SeriesTruncation(self.rel_tol, self.max_terms)

    def rng(self, stream: int) -> np.random.Generator:
        """Independent generator per check so suites do not depend on run order."""
        return np.random.default_rng([self.seed, stream])


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float
    samples: int
    passed: bool = field(init=False)

    def __post_init__(self):
        self.residual = float(self.residual)
        self.passed = bool(np.isfinite(self.residual) and self.residual <= self.tolerance)

    def to_dict(self) -> dict:
        return asdict(self)


# -- random inputs -----------------------------------------------------------


def random_unit(rng: np.random.Generator, size: int) -> Quaternion:
    v = rng.standard_normal((size, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return Quaternion(0.0, v[:, 0], v[:, 1], v[:, 2])


def random_ball(rng: np.random.Generator, size: int, radius: float) -> Quaternion:
    """Points uniform in the 4-ball of the given radius."""
    v = rng.standard_normal((size, 4))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    r = radius * rng.random(size) ** 0.25
    return Quaternion.from_array(v * r[:, None])


def _random_disk(rng: np.random.Generator, size: int, radius: float) -> np.ndarray:
    r = radius * np.sqrt(rng.random(size))
    return r * np.exp(2j * np.pi * rng.random(size))


def random_slice_pair(rng: np.random.Generator, size: int, radius: float):
    """Pairs ``(z, w)`` sharing a random slice ``C_I``, with ``I`` and the complex coordinates."""
    unit = random_unit(rng, size)
    cz, cw = _random_disk(rng, size, radius), _random_disk(rng, size, radius)
    z = unit * cz.imag + cz.real
    w = unit * cw.imag + cw.real
    return z, w, unit, cz, cw


def _rel(a: Quaternion, b: Quaternion) -> np.ndarray:
    return (a - b).norm() / np.maximum(b.norm(), np.finfo(float).tiny)


def _complex_to_slice(c: np.ndarray, unit: Quaternion) -> Quaternion:
    return unit * np.imag(c) + np.real(c)


def _grid(values, extra) -> tuple:
    return tuple(sorted(set(values) | {float(extra)}))


# -- suites ------------------------------------------------------------------


def suite_identity(cfg: RunConfig, pairs: int = 200, small: int = 100) -> list[Check]:
    """Kernel forms against each other and against the classical one-slice kernel.

    The grids of ``alpha`` and ``R`` always include ``cfg.alpha`` and ``cfg.R``.
    """
    alphas = _grid(IDENTITY_ALPHAS, cfg.alpha)
    radii = _grid(IDENTITY_RADII, cfg.R)
    trunc = cfg.trunc
    grid = [(a, R) for a in alphas for R in radii]
    worst = {"closed": 0.0, "slice": 0.0, "repr": 0.0}
    count = {"closed": 0, "slice": 0, "repr": 0}
    for idx, (a, R) in enumerate(grid):
        params = KernelParams(a, R)
        rng = cfg.rng(100 + idx)
        per = -(-pairs // len(grid))
        q, p = random_ball(rng, per, 0.9 * R), random_ball(rng, per, 0.9 * R)
        series = kernel_series(q, p, params, trunc)
        worst["closed"] = max(worst["closed"], _rel(kernel_closed(q, p, params, trunc), series).max())
        count["closed"] += per

        per_small = -(-small // len(grid))
        q, p = random_ball(rng, per_small, 0.9 * R), random_ball(rng, per_small, 0.9 * R)
        closed = kernel_closed(q, p, params, trunc)
        worst["repr"] = max(worst["repr"], _rel(kernel_via_representation(q, p, params), closed).max())
        count["repr"] += per_small

        z, w, unit, cz, cw = random_slice_pair(rng, per_small, 0.9 * R)
        classical = _complex_to_slice((1.0 - cz * np.conj(cw) / R**2) ** (-a - 1.0), unit)
        forms = [
            kernel_series(z, w, params, trunc),
            kernel_closed(z, w, params, trunc),
            kernel_via_representation(z, w, params),
            kernel_hol(z, w, params),
        ]
        if a == 1.0:
            forms += [kernel_alpha1(z, w, R), kernel_alpha1_conjugate(z, w, R)]
        for form in forms:
            worst["slice"] = max(worst["slice"], _rel(form, classical).max())
        count["slice"] += per_small

    rng = cfg.rng(150)
    a1 = {"alpha1": 0.0, "rational": 0.0}
    for R in radii:
        q, p = random_ball(rng, small, 0.9 * R), random_ball(rng, small, 0.9 * R)
        series = kernel_series(q, p, KernelParams(1.0, R), trunc)
        a1["alpha1"] = max(a1["alpha1"], _rel(kernel_alpha1(q, p, R), series).max())
    q, p = random_ball(rng, small, 0.9), random_ball(rng, small, 0.9)
    a1["rational"] = _rel(kernel_alpha1(q, p, 1.0), kernel_alpha1_conjugate(q, p, 1.0)).max()
    return [
        Check("identity.series_vs_closed", worst["closed"], 1e-9, count["closed"]),
        Check("identity.alpha1_vs_series", a1["alpha1"], 1e-10, small * len(radii)),
        Check("identity.alpha1_rational_forms", a1["rational"], 1e-12, small),
        Check("identity.slice_restriction", worst["slice"], 1e-10, count["slice"]),
        Check("identity.representation_vs_closed", worst["repr"], 1e-10, count["repr"]),
    ]


def suite_ortho(cfg: RunConfig, nmax: int = 15) -> list[Check]:
    """Gram matrices of both orthonormal bases and the quadrature exactness tables."""
    params = cfg.params
    hl = build_halfline(cfg.alpha, cfg.halfline_nodes)
    table = basis_phi_table(nmax, cfg.alpha, hl.nodes)
    gram_phi = table.T @ (hl.weights[:, None] * table)
    err_phi = np.abs(gram_phi - np.eye(nmax + 1)).max()

    disk = build_disk(cfg.alpha, cfg.R, n_radial=cfg.radial_nodes, n_angular=cfg.angular_nodes)
    pts, wts = disk.points()
    vals = np.stack([evaluate(basis_f(n, params), pts).array for n in range(nmax + 1)])
    # <f_n, f_m> = sum_k w_k conj(f_n(z_k)) f_m(z_k); f_n are real multiples of z^n
    gram_f = np.zeros((nmax + 1, nmax + 1, 4))
    for n in range(nmax + 1):
        left = Quaternion.from_array(vals[n]).conj()
        for m in range(nmax + 1):
            gram_f[n, m] = np.sum(wts[:, None] * (left * Quaternion.from_array(vals[m])).array, axis=0)
    eye = np.zeros_like(gram_f)
    eye[np.arange(nmax + 1), np.arange(nmax + 1), 0] = 1.0
    err_f = np.abs(gram_f - eye).max()

    hl_exact = halfline_moment_errors(hl).max()
    degree = min(2 * cfg.radial_nodes - 1, cfg.angular_nodes - 1)
    disk_exact = disk_moment_errors(disk, degree).max()
    return [
        Check("ortho.laguerre_gram", err_phi, 1e-8, (nmax + 1) ** 2),
        Check("ortho.bergman_gram", err_f, 1e-8, (nmax + 1) ** 2),
        Check("ortho.halfline_moments", hl_exact, 1e-11, 2 * cfg.halfline_nodes),
        Check("ortho.disk_moments", disk_exact, 1e-11, (degree + 1) ** 2),
    ]


def suite_isometry(cfg: RunConfig, nmax_forward: int = 12, points: int = 20, vectors: int = 50, degree: int = 10,
                   nmax_inverse: int = 8, times=(0.1, 1.0, 5.0)) -> list[Check]:
    """Forward transform of the Laguerre basis, norm preservation and the inverse."""
    params = cfg.params
    hl = build_halfline(cfg.alpha, cfg.halfline_nodes)
    rng = cfg.rng(300)
    qs = random_ball(rng, points, 0.7 * cfg.R)
    fwd = 0.0
    for n in range(nmax_forward + 1):
        coeffs = np.zeros((n + 1, 4))
        coeffs[n, 0] = 1.0
        phi = LaguerreCoefficients(cfg.alpha, Quaternion.from_array(coeffs))
        f_n = basis_f(n, params)
        for q in qs:
            fwd = max(fwd, float((forward(phi, q, params, hl) - evaluate(f_n, q)).norm()))

    iso = 0.0
    for _ in range(vectors):
        phi = LaguerreCoefficients(cfg.alpha, Quaternion.from_array(rng.standard_normal((degree + 1, 4))))
        f = forward_coeffs(phi, params)
        norm_f = np.sqrt(float(inner_product_coeffs(f, f, cfg.alpha).real))
        iso = max(iso, abs(norm_f - phi.norm()))

    disk = build_disk(cfg.alpha, cfg.R, n_radial=cfg.radial_nodes, n_angular=cfg.angular_nodes)
    t = np.asarray(times, dtype=float)
    inv = 0.0
    for n in range(nmax_inverse + 1):
        vals = inverse(basis_f(n, params), t, params, disk)
        expect = basis_phi(n, cfg.alpha, t)
        inv = max(inv, float(np.max((vals - Quaternion(expect)).norm())))
    return [
        Check("isometry.forward_basis", fwd, 1e-7, (nmax_forward + 1) * points),
        Check("isometry.norm", iso, 1e-10, vectors),
        Check("isometry.inverse_basis", inv, 1e-5, (nmax_inverse + 1) * len(t)),
    ]


def suite_reproduce(cfg: RunConfig, points: int = 20, degree: int = 10) -> list[Check]:
    """``integral K(q, z) f(z) d lambda(z) = f(q)`` for random polynomials."""
    params = cfg.params
    disk = build_disk(cfg.alpha, cfg.R, n_radial=cfg.radial_nodes, n_angular=cfg.angular_nodes)
    rng = cfg.rng(400)
    qs = random_ball(rng, points, 0.7 * cfg.R)
    worst = 0.0
    for q in qs:
        coeffs = Quaternion.from_array(rng.standard_normal((degree + 1, 4)) / cfg.R ** np.arange(degree + 1)[:, None])
        f = SeriesFunction(coeffs, cfg.R)
        worst = max(worst, float((reproduce(f, q, params, disk, cfg.trunc) - evaluate(f, q)).norm()))
    return [Check("reproduce.polynomials", worst, 1e-8, points)]


def suite_kkintegral(cfg: RunConfig, pairs: int = 50) -> list[Check]:
    """``integral A(t; q) conj(A(t; q2)) d mu(t) = K(q, q2)``."""
    params = cfg.params
    hl = build_halfline(cfg.alpha, cfg.halfline_nodes)
    rng = cfg.rng(500)
    q, q2 = random_ball(rng, pairs, 0.5 * cfg.R), random_ball(rng, pairs, 0.5 * cfg.R)
    worst = 0.0
    for a, b in zip(q, q2):
        value = kernel_kernel_integral(a, b, params, hl)
        worst = max(worst, float((value - kernel_series(a, b, params, cfg.trunc)).norm()))
    return [Check("kkintegral.kernel", worst, 1e-6, pairs)]


def suite_asymptotic(cfg: RunConfig, probes: int = 4) -> list[Check]:
    """Monotone decay of every limit error and the order of the kernel error.

    Runs for ``nu`` in ``{0.5, 1, cfg.nu}``.  Residuals are counts of violations
    (non-decreasing steps) and the largest distance of an empirical order from
    ``[1.5, 2.5]``.
    """
    nus = _grid(ASYMPTOTIC_NUS, cfg.nu)
    rng = cfg.rng(600)
    violations = {"density": 0, "basis": 0, "kernel": 0}
    order_gap = 0.0
    samples = 0
    for nu in nus:
        qs, ps = random_ball(rng, probes, 1.0), random_ball(rng, probes, 1.0)
        for q, p in zip(qs, ps):
            rows = run_sweep(LimitSweep(nu, q, p, DEFAULT_RADII), cfg.trunc)
            samples += 1
            dens = np.array([r.density_err for r in rows])
            basis = np.array([r.basis_err for r in rows])
            kern = np.array([r.kernel_err for r in rows])
            violations["density"] += int(np.sum(np.diff(dens) >= 0))
            # f_0 = e_0 = 1 exactly, so the n = 0 column is identically zero
            violations["basis"] += int(np.sum(np.diff(basis[:, 1:], axis=0) >= 0))
            violations["kernel"] += int(np.sum(np.diff(kern) >= 0))
            orders = empirical_orders(DEFAULT_RADII, kern)
            gap = np.maximum(1.5 - orders, orders - 2.5).max()
            order_gap = max(order_gap, float(np.nan_to_num(gap, nan=np.inf)), 0.0)
    return [
        Check("asymptotic.density_decreasing", violations["density"], 0, samples),
        Check("asymptotic.basis_decreasing", violations["basis"], 0, samples),
        Check("asymptotic.kernel_decreasing", violations["kernel"], 0, samples),
        Check("asymptotic.kernel_order", order_gap, 0.0, samples),
    ]


SUITES = {
    "identity": suite_identity,
    "ortho": suite_ortho,
    "isometry": suite_isometry,
    "reproduce": suite_reproduce,
    "kkintegral": suite_kkintegral,
    "asymptotic": suite_asymptotic,
}


def run_suite(name: str, cfg: RunConfig) -> list[Check]:
    if name == "all":
        return [check for suite in SUITES.values() for check in suite(cfg)]
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](cfg)
