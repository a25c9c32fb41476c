"""Quaternion arithmetic, slice decomposition and slice-wise transcendental functions.

A :class:`Quaternion` wraps a float array whose trailing axis holds the four
components ``(w, x, y, z)`` of ``w + x i + y j + z k``.  Leading axes are batch
axes and broadcast like numpy arrays, so a single object can carry a whole
quadrature grid.  Real numbers and real arrays act as real quaternions.

Every quaternion ``q`` lies in at least one slice ``C_I = R + R I``; writing
``q = x + I y`` with ``y = |Im q| >= 0`` lets the exponential and real powers be
computed as in the complex plane and mapped back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Integral, Real

import numpy as np

from .errors import DomainError

__all__ = [
    "Quaternion",
    "ImaginaryUnit",
    "SliceDecomposition",
    "as_quaternion",
    "mul",
    "conj",
    "decompose",
    "recompose",
    "slice_exp",
    "slice_pow",
    "ONE",
    "QI",
    "QJ",
    "QK",
    "REAL_TOL",
]

# |Im q| <= REAL_TOL * (1 + |q|) counts as a real quaternion for branch decisions.
REAL_TOL = 1e-14


def _hamilton(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a0, a1, a2, a3 = np.moveaxis(a, -1, 0)
    b0, b1, b2, b3 = np.moveaxis(b, -1, 0)
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


class Quaternion:
    """Array of quaternions with Hamilton multiplication.

    ``Quaternion(w, x, y, z)`` broadcasts its four arguments; use
    :meth:`from_array` for an existing ``(..., 4)`` array.
    """

    __slots__ = ("_q",)
    __array_priority__ = 1000  # make ndarray * Quaternion defer to __rmul__

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        parts = np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in (w, x, y, z)))
        q = np.stack(parts, axis=-1)
        q.flags.writeable = False
        self._q = q

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Quaternion":
        # arr must be a fresh float array owned by the caller
        obj = Quaternion.__new__(Quaternion)
        arr.flags.writeable = False
        obj._q = arr
        return obj

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        arr = np.array(arr, dtype=float)
        if arr.shape[-1:] != (4,):
            raise ValueError(f"expected trailing axis of length 4, got shape {arr.shape}")
        obj = cls.__new__(cls)
        arr.flags.writeable = False
        obj._q = arr
        return obj

    @classmethod
    def parse(cls, text: str) -> "Quaternion":
        """Parse ``"w,x,y,z"``; a single number is read as a real quaternion."""
        fields = [s.strip() for s in text.split(",")]
        if len(fields) not in (1, 4) or any(not s for s in fields):
            raise ValueError(f"cannot parse quaternion from {text!r}")
        values = [float(s) for s in fields]
        if not all(math.isfinite(v) for v in values):
            raise ValueError(f"non-finite quaternion component in {text!r}")
        return cls(*values)

    # -- structure ---------------------------------------------------------
    @property
    def array(self) -> np.ndarray:
        return self._q

    @property
    def shape(self) -> tuple[int, ...]:
        return self._q.shape[:-1]

    @property
    def ndim(self) -> int:
        return self._q.ndim - 1

    def __len__(self) -> int:
        if not self.shape:
            raise TypeError("len() of a single quaternion")
        return self.shape[0]

    def __getitem__(self, idx) -> "Quaternion":
        if not isinstance(idx, tuple):
            idx = (idx,)
        return Quaternion.from_array(self._q[idx + (Ellipsis, slice(None))])

    def __iter__(self):
        for k in range(len(self)):
            yield self[k]

    def reshape(self, *shape) -> "Quaternion":
        if len(shape) == 1 and isinstance(shape[0], tuple):
            shape = shape[0]
        return Quaternion.from_array(self._q.reshape(tuple(shape) + (4,)))

    @property
    def w(self) -> np.ndarray:
        return self._q[..., 0]

    @property
    def x(self) -> np.ndarray:
        return self._q[..., 1]

    @property
    def y(self) -> np.ndarray:
        return self._q[..., 2]

    @property
    def z(self) -> np.ndarray:
        return self._q[..., 3]

    @property
    def real(self) -> np.ndarray:
        return self._q[..., 0]

    @property
    def imag(self) -> "Quaternion":
        v = self._q.copy()
        v[..., 0] = 0.0
        return Quaternion.from_array(v)

    @property
    def vector(self) -> np.ndarray:
        return self._q[..., 1:]

    def to_list(self) -> list:
        return self._q.tolist()

    # -- algebra -----------------------------------------------------------
    def conj(self) -> "Quaternion":
        return Quaternion._wrap(self._q * np.array([1.0, -1.0, -1.0, -1.0]))

    def norm_sq(self) -> np.ndarray:
        return np.einsum("...i,...i->...", self._q, self._q)

    def norm(self) -> np.ndarray:
        # scaled to avoid overflow in the squares
        scale = np.max(np.abs(self._q), axis=-1)
        safe = np.where(scale > 0, scale, 1.0)
        return scale * np.sqrt(np.einsum("...i,...i->...", self._q / safe[..., None], self._q / safe[..., None]))

    def __abs__(self) -> np.ndarray:
        return self.norm()

    def inverse(self) -> "Quaternion":
        n2 = self.norm_sq()
        if np.any(n2 == 0.0):
            raise ZeroDivisionError("quaternion inverse of zero")
        return Quaternion._wrap(self.conj()._q / n2[..., None])

    def __neg__(self) -> "Quaternion":
        return Quaternion._wrap(-self._q)

    def __pos__(self) -> "Quaternion":
        return self

    def __add__(self, other) -> "Quaternion":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion._wrap(self._q + other._q)

    __radd__ = __add__

    def __sub__(self, other) -> "Quaternion":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion._wrap(self._q - other._q)

    def __rsub__(self, other) -> "Quaternion":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion._wrap(other._q - self._q)

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, Quaternion):
            return Quaternion._wrap(_hamilton(self._q, other._q))
        scal = _real_array(other)
        if scal is None:
            return NotImplemented
        return Quaternion._wrap(self._q * scal[..., None])

    def __rmul__(self, other) -> "Quaternion":
        scal = _real_array(other)
        if scal is None:
            return NotImplemented
        return Quaternion._wrap(self._q * scal[..., None])

    def __truediv__(self, other) -> "Quaternion":
        """Right division ``self * other^{-1}``."""
        if isinstance(other, Quaternion):
            return self * other.inverse()
        scal = _real_array(other)
        if scal is None:
            return NotImplemented
        return Quaternion._wrap(self._q / scal[..., None])

    def __rtruediv__(self, other) -> "Quaternion":
        scal = _real_array(other)
        if scal is None:
            return NotImplemented
        return self.inverse() * scal

    def __pow__(self, n) -> "Quaternion":
        if not isinstance(n, Integral):
            return NotImplemented
        return _int_pow(self, int(n))

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return bool(np.array_equal(*np.broadcast_arrays(self._q, other._q)))

    __hash__ = None

    def allclose(self, other, rtol: float = 1e-12, atol: float = 0.0) -> bool:
        other = as_quaternion(other)
        return bool(np.allclose(self._q, other._q, rtol=rtol, atol=atol))

    def __repr__(self) -> str:
        if not self.shape:
            w, x, y, z = self._q
            return f"Quaternion({w!r}, {x!r}, {y!r}, {z!r})"
        return f"Quaternion(shape={self.shape})"

    def __str__(self) -> str:
        if not self.shape:
            return ",".join(repr(float(c)) for c in self._q)
        return repr(self)


def _real_array(value):
    if isinstance(value, (Real, np.integer, np.floating)):
        return np.asarray(float(value))
    if isinstance(value, np.ndarray) and np.issubdtype(value.dtype, np.number):
        if np.iscomplexobj(value):
            return None
        return value.astype(float)
    return None


def _coerce(value):
    if isinstance(value, Quaternion):
        return value
    scal = _real_array(value)
    if scal is None:
        return None
    return Quaternion(scal)


def as_quaternion(value) -> Quaternion:
    """Convert a quaternion-like value.

    Accepts a :class:`Quaternion`, a real number or real array (as real
    quaternions), or a length-4 sequence ``[w, x, y, z]``.
    """
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (list, tuple)):
        return Quaternion.from_array(value)
    q = _coerce(value)
    if q is None:
        raise TypeError(f"cannot interpret {type(value).__name__} as a quaternion")
    return q


ONE = Quaternion(1.0)
QI = Quaternion(0.0, 1.0)
QJ = Quaternion(0.0, 0.0, 1.0)
QK = Quaternion(0.0, 0.0, 0.0, 1.0)


class ImaginaryUnit(Quaternion):
    """A purely imaginary unit quaternion ``I`` with ``I**2 == -1``.

    The vector ``(x, y, z)`` is normalized on construction; a zero vector is
    rejected.
    """

    __slots__ = ()

    def __init__(self, x=1.0, y=0.0, z=0.0):
        v = np.stack(np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in (x, y, z))), axis=-1)
        n = np.linalg.norm(v, axis=-1)
        if np.any(n == 0.0) or not np.all(np.isfinite(n)):
            raise ValueError("imaginary unit needs a nonzero finite vector")
        v = v / n[..., None]
        q = np.concatenate([np.zeros(v.shape[:-1] + (1,)), v], axis=-1)
        q.flags.writeable = False
        self._q = q

    @classmethod
    def from_quaternion(cls, q) -> "ImaginaryUnit":
        q = as_quaternion(q)
        return cls(q.x, q.y, q.z)


@dataclass(frozen=True)
class SliceDecomposition:
    """``q = x + unit * y`` with ``y = |Im q| >= 0``."""

    x: np.ndarray
    y: np.ndarray
    unit: Quaternion

    def recompose(self) -> Quaternion:
        return recompose(self.x, self.y, self.unit)


def mul(p, q) -> Quaternion:
    """Hamilton product ``p q``."""
    return as_quaternion(p) * as_quaternion(q)


def conj(q) -> Quaternion:
    return as_quaternion(q).conj()


def decompose(q) -> SliceDecomposition:
    """Split ``q`` as ``x + I y`` with ``y >= 0``; real entries get ``I = i``."""
    q = as_quaternion(q)
    v = q.vector
    y = q.imag.norm()
    canonical = np.broadcast_to(np.array([1.0, 0.0, 0.0]), v.shape)
    safe_y = np.where(y > 0.0, y, 1.0)
    u = np.where((y > 0.0)[..., None], v / safe_y[..., None], canonical)
    unit = Quaternion.from_array(np.concatenate([np.zeros(u.shape[:-1] + (1,)), u], axis=-1))
    return SliceDecomposition(np.array(q.real, dtype=float), y, unit)


def recompose(x, y, unit) -> Quaternion:
    return as_quaternion(unit) * np.asarray(y, dtype=float) + np.asarray(x, dtype=float)


def _is_real(q: Quaternion, dec: SliceDecomposition) -> np.ndarray:
    return dec.y <= REAL_TOL * (1.0 + q.norm())


def slice_exp(q) -> Quaternion:
    """``e^x (cos y + I sin y)`` for ``q = x + I y``."""
    q = as_quaternion(q)
    dec = decompose(q)
    ex = np.exp(dec.x)
    return dec.unit * (ex * np.sin(dec.y)) + ex * np.cos(dec.y)


def _int_pow(q: Quaternion, m: int) -> Quaternion:
    if m < 0:
        return _int_pow(q.inverse(), -m)
    result = Quaternion.from_array(np.broadcast_to(ONE.array, q.array.shape))
    base = q
    while m:
        if m & 1:
            result = result * base
        m >>= 1
        if m:
            base = base * base
    return result


def slice_pow(q, s: float) -> Quaternion:
    """Principal real power ``q**s`` computed inside the slice of ``q``.

    Integer exponents use repeated multiplication (and inversion for negative
    exponents), so every ``q`` except zero-to-a-negative-power is accepted.
    Otherwise ``|q|^s (cos s*theta + I sin s*theta)`` with
    ``theta = atan2(y, x)`` in ``[0, pi)``; nonpositive reals are on the cut
    and raise :class:`DomainError`.
    """
    q = as_quaternion(q)
    s = float(s)
    if s.is_integer() and abs(s) < 2**31:
        m = int(s)
        if m < 0 and np.any(q.norm_sq() == 0.0):
            raise DomainError("zero raised to a negative power")
        return _int_pow(q, m)
    dec = decompose(q)
    on_cut = _is_real(q, dec) & (dec.x <= 0.0)
    if np.any(on_cut):
        raise DomainError(f"non-integer power {s} of a nonpositive real quaternion")
    r = np.hypot(dec.x, dec.y)
    theta = np.arctan2(dec.y, dec.x)
    rs = r**s
    return dec.unit * (rs * np.sin(s * theta)) + rs * np.cos(s * theta)
