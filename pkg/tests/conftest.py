import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from slicebergman.quaternion import ImaginaryUnit, Quaternion

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

finite = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)


@st.composite
def quaternions(draw, radius=None):
    q = Quaternion(draw(finite), draw(finite), draw(finite), draw(finite))
    if radius is not None:
        n = float(q.norm())
        if n >= radius:
            q = q * (draw(st.floats(0.0, 0.95)) * radius / n)
    return q


@st.composite
def units(draw):
    v = np.array([draw(finite) for _ in range(3)])
    if np.linalg.norm(v) < 1e-3:
        v = np.array([0.0, 0.0, 1.0])
    return ImaginaryUnit(*v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_quaternions(rng, size, radius=1.0):
    v = rng.standard_normal((size, 4))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return Quaternion.from_array(v * (radius * rng.random(size) ** 0.25)[:, None])


def qclose(a, b, tol=1e-12):
    """Relative closeness for quaternions (scaled by ``1 + |b|``)."""
    a, b = Quaternion.from_array(np.asarray(a.array)), Quaternion.from_array(np.asarray(b.array))
    return bool(np.all((a - b).norm() <= tol * (1.0 + b.norm())))


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    report = getattr(module, "REPORT", None)
    if report:
        terminalreporter.section("acceptance criteria")
        for number in sorted(report):
            terminalreporter.write_line(report[number])
