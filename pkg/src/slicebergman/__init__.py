"""Numerics for weighted slice hyperholomorphic Bergman spaces on the quaternionic ball."""

from .asymptotics import LimitSweep, run_sweep, sweep_csv
from .bergman import (
    KernelParams,
    basis_f,
    kernel_alpha1,
    kernel_closed,
    kernel_series,
    kernel_via_representation,
    reproduce,
)
from .errors import ConvergenceError, DomainError, TruncationError
from .quadrature import DiskRule, HalfLineRule, build_disk, build_halfline, integrate_disk, integrate_halfline
from .quaternion import ImaginaryUnit, Quaternion, decompose, slice_exp, slice_pow
from .slicefun import SeriesFunction, evaluate
from .special import SeriesTruncation, fock_kernel, gauss_2f1_star, i_series
from .transform import LaguerreCoefficients, forward, forward_coeffs, inverse

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DiskRule",
    "DomainError",
    "HalfLineRule",
    "ImaginaryUnit",
    "KernelParams",
    "LaguerreCoefficients",
    "LimitSweep",
    "Quaternion",
    "SeriesFunction",
    "SeriesTruncation",
    "TruncationError",
    "basis_f",
    "build_disk",
    "build_halfline",
    "decompose",
    "evaluate",
    "fock_kernel",
    "forward",
    "forward_coeffs",
    "gauss_2f1_star",
    "i_series",
    "integrate_disk",
    "integrate_halfline",
    "inverse",
    "kernel_alpha1",
    "kernel_closed",
    "kernel_series",
    "kernel_via_representation",
    "reproduce",
    "run_sweep",
    "slice_exp",
    "slice_pow",
    "sweep_csv",
]
