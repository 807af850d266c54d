"""Weierstrass layer: invariants, discriminant identity, lattice periods, and
the reduction-based evaluation engine."""

import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest
import scipy.integrate
from hypothesis import given, settings
from hypothesis import strategies as st

from fermatlab.errors import DegenerateLatticeError, PoleProximityError
from fermatlab.scalars import RationalComplex
from fermatlab.series import wp_series
from fermatlab.wp import (
    Invariants,
    WeierstrassEngine,
    discriminant_of_tau,
    engine_for,
    invariants_from_case,
    invariants_from_tau,
    periods_from_invariants,
    second_derivative_constant,
    tau_cubic_coefficients,
    tau_is_degenerate,
)

OMEGA1_01 = 1.5299540370571931
OMEGA1_0_432 = 0.5564563372611526

small = st.fractions(min_value=-3, max_value=3, max_denominator=8)
gaussian_taus = st.builds(RationalComplex, small, small).filter(
    lambda t: not tau_is_degenerate(t)
)


# -- invariants --------------------------------------------------------------


def test_case_invariants():
    for case in ("II", "III"):
        inv = invariants_from_case(case)
        assert (inv.g2, inv.g3) == (0, 1)
    inv4 = invariants_from_case("IV")
    assert (inv4.g2, inv4.g3) == (Fraction(-1, 12), Fraction(-1, 6))
    with pytest.raises(ValueError):
        invariants_from_case("V")


def test_degenerate_tau_detection():
    assert tau_is_degenerate(Fraction(-1))
    # the two non-real cube roots of -1 are only reachable as floats
    assert tau_is_degenerate(cmath.exp(1j * math.pi / 3))
    assert not tau_is_degenerate(Fraction(0))
    assert not tau_is_degenerate(Fraction(2))
    with pytest.raises(DegenerateLatticeError):
        invariants_from_tau(Fraction(-1))


def test_cubic_coefficients_consistent_with_invariants():
    """The exact cubic lives in the rescaled variable U = 4^(1/3) wp, so
    g2 = -4^(1/3) k while g3 = -l on the nose."""
    tau = Fraction(1)
    k, l = tau_cubic_coefficients(tau)
    inv = invariants_from_tau(tau)
    assert abs(inv.g2 + complex(k) * 4 ** (1 / 3)) < 1e-10 * abs(inv.g2)
    assert abs(inv.g3 + complex(l)) < 1e-10 * abs(inv.g3)
    with pytest.raises(ValueError, match="exact"):
        tau_cubic_coefficients(0.5)


# -- discriminant identity ---------------------------------------------------


def test_discriminant_anchor_values():
    d1 = discriminant_of_tau(Fraction(1))
    assert d1.exact and d1.brace_form == d1.factored_form
    assert (d1.brace_form + 40310784).is_zero

    d0 = discriminant_of_tau(0)
    assert (d0.factored_form + 5038848).is_zero

    dm1 = discriminant_of_tau(Fraction(-1))
    assert dm1.factored_form.is_zero and dm1.brace_form.is_zero


@given(gaussian_taus)
@settings(max_examples=50, deadline=None)
def test_discriminant_brace_equals_factored_exactly(tau):
    d = discriminant_of_tau(tau)
    assert d.exact
    assert d.difference.is_zero


def test_discriminant_inexact_tau():
    d = discriminant_of_tau(0.3 + 0.2j)
    assert not d.exact
    assert abs(d.difference) < 1e-6 * (1 + abs(d.brace_form))


def test_discriminant_matches_classical_formula():
    """The brace form is g2^3 - 27 g3^2 of the tau-family invariants; cubing
    kills the real cube root, so the float evaluation must agree."""
    for tau in (Fraction(1, 3), 0.7 - 0.4j):
        inv = invariants_from_tau(tau)
        classical = complex(inv.g2) ** 3 - 27 * complex(inv.g3) ** 2
        d = discriminant_of_tau(tau)
        assert abs(complex(d.brace_form) - classical) < 1e-9 * (1 + abs(classical))
    # tau = 0 has exact invariants (0, 432): the check is exact there
    d0 = discriminant_of_tau(0)
    assert (d0.brace_form - (0 - 27 * Fraction(432) ** 2)).is_zero


# -- periods -----------------------------------------------------------------


def quadrature_real_half_period(g2: float, g3: float, e1: float) -> float:
    """omega1 = int_{e1}^inf dt / sqrt(4 t^3 - g2 t - g3) via scipy, with the
    branch-point singularity removed by t = e1 + x^2 (dt = 2x dx)."""

    def integrand(x):
        if x == 0.0:
            return 2.0 / math.sqrt(12 * e1 * e1 - g2)
        t = e1 + x * x
        return 2.0 * x / math.sqrt(4 * t**3 - g2 * t - g3)

    val, _ = scipy.integrate.quad(integrand, 0.0, np.inf, limit=200)
    return val


def test_real_half_period_against_quadrature():
    e1 = 0.25 ** (1.0 / 3.0)  # largest root of 4t^3 - 1
    ref = quadrature_real_half_period(0.0, 1.0, e1)
    hp = periods_from_invariants(Invariants(0, 1))
    assert abs(hp.omega1 - OMEGA1_01) < 1e-12
    assert abs(hp.omega1.real - ref) < 1e-7


def test_half_period_scaling_law():
    """Scaling w -> c w maps (g2, g3) -> (g2/c^4, g3/c^6), omega -> c omega.
    (0, 432) is (0, 1) scaled by c = 432**(-1/6)."""
    hp = periods_from_invariants(Invariants(0, 432))
    assert abs(hp.omega1 - OMEGA1_0_432) < 1e-12
    assert abs(hp.omega1 * 432 ** (1 / 6) - OMEGA1_01) < 1e-10


def test_half_period_value_is_branch_point():
    eng = engine_for(Invariants(0, 432))
    hp = periods_from_invariants(Invariants(0, 432))
    p, pp, _ = eng.eval_scalar(hp.omega1)
    assert abs(p - 108 ** (1 / 3)) < 1e-10
    assert abs(pp) < 1e-9


def test_degenerate_invariants_rejected():
    with pytest.raises(DegenerateLatticeError):
        periods_from_invariants(Invariants(3, 1))  # g2^3 = 27 g3^2


# -- evaluation engine -------------------------------------------------------


@pytest.fixture(scope="module")
def eng01():
    return engine_for(Invariants(0, 1))


def test_engine_cache_returns_same_object(eng01):
    assert engine_for(Invariants(0, 1)) is eng01


def test_engine_matches_series_near_origin(eng01):
    series = wp_series(0, 1, 40).to_float()
    rng = np.random.default_rng(7)
    for _ in range(25):
        z = complex(*rng.uniform(-0.2, 0.2, 2))
        if abs(z) < 0.05:
            continue
        p, _, _ = eng01.eval_scalar(z)
        assert abs(p - series.evaluate(z)) < 1e-10 * (1 + abs(p))


def test_engine_parity(eng01):
    rng = np.random.default_rng(11)
    for _ in range(20):
        z = eng01.cell_point(rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9))
        p1, pp1, ppp1 = eng01.eval_scalar(z)
        p2, pp2, ppp2 = eng01.eval_scalar(-z)
        scale = 1 + abs(p1)
        assert abs(p1 - p2) < 1e-9 * scale
        assert abs(pp1 + pp2) < 1e-9 * (1 + abs(pp1))
        assert abs(ppp1 - ppp2) < 1e-9 * (1 + abs(ppp1))


def test_engine_periodicity(eng01):
    v1, v2 = eng01.basis
    rng = np.random.default_rng(13)
    for _ in range(20):
        z = eng01.cell_point(rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9))
        p0, _, _ = eng01.eval_scalar(z)
        for shift in (v1, v2, 2 * v1 - v2):
            p1, _, _ = eng01.eval_scalar(z + shift)
            assert abs(p1 - p0) < 1e-7 * (1 + abs(p0))


def test_engine_ode_residual(eng01):
    rng = np.random.default_rng(17)
    pts = np.array(
        [eng01.cell_point(x, y) for x, y in rng.uniform(0.1, 0.9, (50, 2))]
    )
    res = eng01.ode_residual(pts)
    assert np.nanmax(np.abs(res)) < 1e-8


def test_engine_second_derivative_constant():
    tau = Fraction(1)
    eng = engine_for(invariants_from_tau(tau))
    const = second_derivative_constant(tau)
    k, _ = tau_cubic_coefficients(tau)
    assert abs(const - complex(k) * 4 ** (1 / 3) / 2) < 1e-10 * (1 + abs(const))
    rng = np.random.default_rng(19)
    for _ in range(10):
        z = eng.cell_point(rng.uniform(0.15, 0.85), rng.uniform(0.15, 0.85))
        p, _, ppp = eng.eval_scalar(z)
        assert abs(ppp - 6 * p * p - const) < 1e-7 * (1 + abs(ppp))


def test_eval_masks_lattice_points(eng01):
    v1, v2 = eng01.basis
    p, pp, ppp, mask = eng01.eval(np.array([0.0, 0.4 + 0.2j, v1 + v2]))
    assert mask.tolist() == [True, False, True]
    assert np.isnan(p[0].real) and not np.isnan(p[1].real)


def test_eval_scalar_raises_at_pole(eng01):
    with pytest.raises(PoleProximityError):
        eng01.eval_scalar(0.0)
    v1, _ = eng01.basis
    with pytest.raises(PoleProximityError):
        eng01.eval_scalar(3 * v1)


def test_reduce_idempotent_and_periodic(eng01):
    v1, v2 = eng01.basis
    rng = np.random.default_rng(23)
    zs = np.array([eng01.cell_point(x, y) for x, y in rng.uniform(-0.4, 1.4, (30, 2))])
    red = eng01.reduce(zs)
    again = eng01.reduce(red + 3 * v1 - 2 * v2)
    assert np.max(np.abs(again - red)) < 1e-9
    # reduced points are never longer than the points they came from
    assert np.all(np.abs(red) <= np.abs(zs) + 1e-12)


def test_eval_unreduced_agrees_far_from_origin(eng01):
    v1, v2 = eng01.basis
    z = eng01.cell_point(0.3, 0.6)
    far = z + 5 * v1 - 3 * v2
    p0, pp0, _ = eng01.eval_scalar(z)
    p1, pp1 = eng01.eval_unreduced(far)
    assert abs(p1 - p0) < 1e-6 * (1 + abs(p0))
    assert abs(pp1 - pp0) < 1e-6 * (1 + abs(pp0))


def test_basis_lengths_for_equianharmonic(eng01):
    v1, v2 = eng01.basis
    # hexagonal lattice: both generators have the same length 2 * omega1
    assert abs(abs(v1) - 2 * OMEGA1_01) < 1e-9
    assert abs(abs(v2) - 2 * OMEGA1_01) < 1e-9
