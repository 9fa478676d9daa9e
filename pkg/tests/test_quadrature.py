import numpy as np
import pytest

from bvpkit import (DIRICHLET, IntegrandSpec, MaxDepthExceeded, NonFiniteIntegrand,
                    dk_dt, integrate)


def test_linear_monomial():
    spec = IntegrandSpec(lambda s: s, tol=1e-12)
    assert integrate(spec, 0, 1) == pytest.approx(0.5, abs=1e-12)


def test_inverse_sqrt_singularity():
    spec = IntegrandSpec(lambda s: 1.0 / np.sqrt(s), singular_left=True, tol=1e-10)
    assert integrate(spec, 0, 1) == pytest.approx(2.0, abs=1e-10)


def test_kernel_derivative_row_with_breakpoint():
    # closed form: t**2/2 + (1-t)**2/2 at t = 0.5
    spec = IntegrandSpec(lambda s: np.abs(dk_dt(DIRICHLET, 0.5, s)),
                         breakpoints=(0.5,), tol=1e-12)
    assert integrate(spec, 0, 1) == pytest.approx(0.25, abs=1e-12)


def test_additivity():
    fn = lambda s: np.exp(s) * np.sin(5 * s)
    tol = 1e-11
    whole = integrate(IntegrandSpec(fn, tol=tol), 0, 1)
    for c in (0.3, 0.5, 0.7123):
        parts = integrate(IntegrandSpec(fn, tol=tol), 0, c) \
            + integrate(IntegrandSpec(fn, tol=tol), c, 1)
        assert parts == pytest.approx(whole, abs=2 * tol)


def test_linearity():
    f1 = lambda s: np.cos(3 * s)
    f2 = lambda s: s ** 3
    a, b = 2.5, -1.75
    tol = 1e-11
    lhs = integrate(IntegrandSpec(lambda s: a * f1(s) + b * f2(s), tol=tol), 0, 1)
    rhs = a * integrate(IntegrandSpec(f1, tol=tol), 0, 1) \
        + b * integrate(IntegrandSpec(f2, tol=tol), 0, 1)
    assert lhs == pytest.approx(rhs, abs=2 * tol)


def test_polynomial_exactness_single_panel():
    # degree <= 15: both panel rules are exact, so the first estimate is final
    rng = np.random.default_rng(3)
    coeffs = rng.uniform(-1, 1, size=16)
    exact = sum(c / (j + 1) for j, c in enumerate(coeffs))
    spec = IntegrandSpec(lambda s: sum(c * s ** j for j, c in enumerate(coeffs)),
                         tol=1e-6)
    assert integrate(spec, 0, 1) == pytest.approx(exact, abs=5e-15)


def test_singular_tolerance_without_depth_failure():
    spec = IntegrandSpec(lambda s: s ** -0.5, singular_left=True, tol=1e-10)
    integrate(spec, 0, 1)  # must not raise


def test_divergent_integrand_hits_depth_cap():
    spec = IntegrandSpec(lambda s: 1.0 / s, singular_left=True, tol=1e-10)
    with pytest.raises(MaxDepthExceeded):
        integrate(spec, 0, 1)


def test_undeclared_singularity_hits_depth_cap():
    spec = IntegrandSpec(lambda s: 1.0 / np.sqrt(s), singular_left=False, tol=1e-10)
    with pytest.raises(MaxDepthExceeded):
        integrate(spec, 0, 1)


def test_non_finite_integrand_reported():
    def fn(s):
        return np.where(s > 0.5, np.nan, 1.0)

    with pytest.raises(NonFiniteIntegrand):
        integrate(IntegrandSpec(fn, tol=1e-9), 0, 1)


def test_breakpoints_outside_range_ignored():
    spec = IntegrandSpec(lambda s: s, breakpoints=(0.0, 0.2, 0.9, 1.0), tol=1e-12)
    assert integrate(spec, 0.3, 0.6) == pytest.approx((0.36 - 0.09) / 2, abs=1e-12)


def test_empty_interval():
    assert integrate(IntegrandSpec(lambda s: s, tol=1e-12), 0.5, 0.5) == 0.0


def test_bad_bounds_rejected():
    with pytest.raises(ValueError):
        integrate(IntegrandSpec(lambda s: s, tol=1e-9), 0.7, 0.2)


def test_bad_tol_rejected():
    with pytest.raises(ValueError):
        IntegrandSpec(lambda s: s, tol=0.0)


def test_matches_scipy_on_piecewise_integrand():
    from scipy.integrate import quad

    def fn(s):
        return np.where(s < 0.37, np.sin(8 * s), np.cos(3 * s) + 1.0)

    ours = integrate(IntegrandSpec(fn, breakpoints=(0.37,), tol=1e-11), 0, 1)
    ref = quad(lambda s: float(fn(np.asarray(s))), 0, 1, points=[0.37], limit=200)[0]
    assert ours == pytest.approx(ref, abs=1e-9)
