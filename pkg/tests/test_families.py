"""Catalog of explicit solution families and the exact adjudicator verdicts."""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermatlab.errors import DegenerateLatticeError
from fermatlab.exprs import ONE, Exp, W, differentiate, evaluate
from fermatlab.families import (
    FAMILY_IDS,
    adjudicate,
    build_family,
    quadratic_printed_derivatives,
    swapped,
)
from fermatlab.scalars import RationalComplex

#: family_id -> (verdict, route) with default parameters
EXPECTED_VERDICTS = {
    "case1": ("ZERO", "poly"),
    "case2": ("ZERO", "ring"),
    "case3": ("ZERO", "ring"),
    "case4": ("NONZERO", "ring"),
    "case5": ("ZERO", "ring"),
    "case6": ("NONZERO", "ring"),
    "quadratic": ("ZERO", "series"),
    "cubic": ("ZERO", "ring"),
    "unit-unit": ("ZERO", "series"),
    "m-one": ("ZERO", "series"),
    "picard-pair": ("UNAVAILABLE", "none"),
    "corollary": ("ZERO", "series"),
}

CASE4_COEFFS = ["44/3", "-4", "0", "1/36", "1/12"]

SAMPLE_POINTS = (0.37 + 0.41j, -0.52 + 0.18j, 0.05 - 0.73j)


def catalog_residual(family, z):
    fv = evaluate(family.f, z)
    gv = evaluate(family.g, z)
    return fv**family.m + gv**family.n - 1


# -- registry-wide checks ----------------------------------------------------


def test_registry_is_exhaustive():
    assert set(EXPECTED_VERDICTS) == set(FAMILY_IDS)


@pytest.mark.parametrize("family_id", FAMILY_IDS)
def test_default_build_and_adjudicate(family_id):
    fam = build_family(family_id)
    assert fam.family_id == family_id
    verdict = adjudicate(fam)
    want_verdict, want_route = EXPECTED_VERDICTS[family_id]
    assert verdict.verdict == want_verdict
    assert verdict.route == want_route
    assert verdict.is_zero == (want_verdict == "ZERO")


@pytest.mark.parametrize("family_id", FAMILY_IDS)
def test_certified_families_satisfy_identity_numerically(family_id):
    if family_id == "quadratic":
        return  # carries a 2 rho f g cross term; covered by its own tests
    fam = build_family(family_id)
    if EXPECTED_VERDICTS[family_id][0] == "NONZERO":
        return
    for z in SAMPLE_POINTS:
        assert abs(catalog_residual(fam, z)) < 1e-10


@pytest.mark.parametrize("family_id", ["case4", "case6"])
def test_refuted_families_miss_identity_numerically(family_id):
    fam = build_family(family_id)
    vals = [abs(catalog_residual(fam, z)) for z in SAMPLE_POINTS]
    assert max(vals) > 1e-4


def test_unknown_family_rejected():
    with pytest.raises(ValueError, match="unknown family"):
        build_family("case7")


# -- exact refutation detail -------------------------------------------------


@pytest.mark.parametrize(
    "family_id,variant", [("case4", 1), ("case4", 2), ("case6", 1), ("case6", 2)]
)
def test_refuted_ring_residual_coefficients(family_id, variant):
    verdict = adjudicate(build_family(family_id, variant=variant))
    assert verdict.verdict == "NONZERO"
    assert verdict.even_coeffs_desc == CASE4_COEFFS
    assert verdict.odd_coeffs_desc == []


def test_quadratic_minus_sign_leading_series():
    verdict = adjudicate(build_family("quadratic", sign="minus"))
    assert verdict.verdict == "NONZERO"
    assert verdict.series_leading == [
        [1, "-20/3"],
        [2, "100/9"],
        [3, "-40/9"],
        [4, "100/27"],
    ]


# -- variant invariance ------------------------------------------------------


@pytest.mark.parametrize("family_id", ["case2", "case3", "case5"])
@pytest.mark.parametrize("eta_index", [0, 1, 2])
def test_eta_rotations_stay_certified(family_id, eta_index):
    verdict = adjudicate(build_family(family_id, eta_index=eta_index))
    assert verdict.verdict == "ZERO"


@pytest.mark.parametrize("zeta_index", [0, 1, 2, 3])
def test_zeta_rotations_stay_refuted(zeta_index):
    verdict = adjudicate(build_family("case4", zeta_index=zeta_index))
    assert verdict.verdict == "NONZERO"
    assert verdict.even_coeffs_desc == CASE4_COEFFS


@pytest.mark.parametrize("slot", ["w", "exp"])
def test_composition_slots(slot):
    fam = build_family("case2", slot=slot)
    assert fam.params.slot == ("w" if slot == "w" else "e^w")
    assert adjudicate(fam).verdict == "ZERO"
    for z in SAMPLE_POINTS:
        assert abs(catalog_residual(fam, z)) < 1e-10


def test_swapped_preserves_verdict():
    fam = build_family("case3")
    sw = swapped(fam, "case3-swapped")
    assert (sw.m, sw.n) == (fam.n, fam.m)
    assert sw.family_id == "case3-swapped"
    assert adjudicate(sw).verdict == "ZERO"
    for z in SAMPLE_POINTS:
        assert abs(catalog_residual(sw, z)) < 1e-10


# -- quadratic family --------------------------------------------------------


def test_quadratic_plus_identity_with_cross_term():
    rho = Fraction(5, 4)
    fam = build_family("quadratic", rho=rho, sign="plus")
    for z in SAMPLE_POINTS:
        fv = evaluate(fam.f, z)
        gv = evaluate(fam.g, z)
        assert abs(fv * fv + 2 * float(rho) * fv * gv + gv * gv - 1) < 1e-12


@given(st.fractions(min_value=Fraction(1, 8), max_value=4, max_denominator=12))
@settings(max_examples=25, deadline=None)
def test_quadratic_pythagorean_rhos_certify(t):
    """rho = (t^2 + 1) / 2t makes rho^2 - 1 a rational square for every
    rational t, so the exact series route is always available."""
    if t == 1:  # rho would be 1, which the family excludes
        return
    rho = (t * t + 1) / (2 * t)
    verdict = adjudicate(build_family("quadratic", rho=rho, sign="plus"))
    assert verdict.verdict == "ZERO"


def test_quadratic_irrational_square_root_is_unavailable():
    fam = build_family("quadratic", rho=Fraction(2))
    assert adjudicate(fam).verdict == "UNAVAILABLE"


def test_quadratic_rho_one_excluded():
    with pytest.raises(ValueError, match="excluded"):
        build_family("quadratic", rho=Fraction(1))


def test_quadratic_bad_sign():
    with pytest.raises(ValueError, match="plus.*minus"):
        build_family("quadratic", sign="pm")


def test_quadratic_printed_derivatives_match_autodiff():
    for rho in (Fraction(5, 4), Fraction(13, 12)):
        fam = build_family("quadratic", rho=rho)
        fp, gp = quadratic_printed_derivatives(rho)
        dfa = differentiate(fam.f)
        dga = differentiate(fam.g)
        for z in SAMPLE_POINTS:
            ref_f = evaluate(dfa, z)
            ref_g = evaluate(dga, z)
            assert abs(evaluate(fp, z) - ref_f) < 1e-10 * (1 + abs(ref_f))
            assert abs(evaluate(gp, z) - ref_g) < 1e-10 * (1 + abs(ref_g))


# -- cubic family ------------------------------------------------------------


@pytest.mark.parametrize(
    "tau",
    [
        Fraction(0),
        Fraction(1),
        Fraction(3, 7),
        Fraction(-2, 5),
        RationalComplex(Fraction(1, 3), Fraction(1, 2)),
    ],
)
def test_cubic_exact_taus_certify(tau):
    verdict = adjudicate(build_family("cubic", tau=tau))
    assert verdict.verdict == "ZERO"
    assert verdict.route == "ring"


def test_cubic_float_tau_is_unavailable_but_checks_numerically():
    fam = build_family("cubic", tau=0.3 + 0.2j)
    assert adjudicate(fam).verdict == "UNAVAILABLE"
    tau = 0.3 + 0.2j
    for z in SAMPLE_POINTS:
        fv = evaluate(fam.f, z)
        gv = evaluate(fam.g, z)
        res = fv**3 - 3 * tau * fv * gv + gv**3 - 1
        assert abs(res) < 1e-9


def test_cubic_degenerate_tau_raises():
    with pytest.raises(DegenerateLatticeError):
        build_family("cubic", tau=Fraction(-1))


def test_cubic_cross_term_identity():
    """The cubic family solves f^3 - 3 tau f g + g^3 = 1, not the pure
    three-term equation (unless tau = 0)."""
    tau = Fraction(1)
    fam = build_family("cubic", tau=tau)
    for z in SAMPLE_POINTS:
        fv = evaluate(fam.f, z)
        gv = evaluate(fam.g, z)
        assert abs(fv**3 - 3 * fv * gv + gv**3 - 1) < 1e-9
        assert abs(fv**3 + gv**3 - 1) > 1e-3


# -- small-exponent families -------------------------------------------------


def test_unit_unit_identity():
    fam = build_family("unit-unit")
    assert (fam.m, fam.n) == (1, 1)
    for z in SAMPLE_POINTS:
        assert abs(evaluate(fam.f, z) + evaluate(fam.g, z) - 1) < 1e-13


@pytest.mark.parametrize("m", [2, 3, 5])
def test_m_one_identity(m):
    fam = build_family("m-one", m=m)
    assert (fam.m, fam.n) == (m, 1)
    for z in SAMPLE_POINTS:
        assert abs(evaluate(fam.f, z) ** m + evaluate(fam.g, z) - 1) < 1e-12
    assert adjudicate(fam).verdict == "ZERO"


# -- picard pair -------------------------------------------------------------


def test_picard_default_constants():
    fam = build_family("picard-pair")
    for z in SAMPLE_POINTS:
        assert abs(catalog_residual(fam, z)) < 1e-12
    assert adjudicate(fam).verdict == "UNAVAILABLE"


def test_picard_custom_constants():
    fam = build_family("picard-pair", gamma=math.log(0.3), delta=math.log(0.7))
    for z in SAMPLE_POINTS:
        assert abs(catalog_residual(fam, z)) < 1e-12


def test_picard_invalid_constants_rejected():
    with pytest.raises(ValueError, match="e\\^gamma \\+ e\\^delta = 1"):
        build_family("picard-pair", gamma=0.1, delta=0.1)


# -- corollary witness -------------------------------------------------------


def test_corollary_witness_identity():
    fam = build_family("corollary")
    assert fam.h is not None and fam.ell == 1
    df = differentiate(fam.f)
    for z in SAMPLE_POINTS:
        fv = evaluate(fam.f, z)
        hv = evaluate(fam.h, z)
        dv = evaluate(df, z)
        assert abs(fv * fv + hv * hv * dv * dv - 1) < 1e-12


def test_corollary_other_ell_rejected():
    with pytest.raises(ValueError, match="ell = 1 witness"):
        build_family("corollary", ell=2)


# -- trig structure of case1 -------------------------------------------------


def test_case1_is_rational_point_on_the_circle():
    """The pair is the classical tangent-half-angle parametrization of the
    unit circle, driven by t = e^w: ((1-t^2)/(1+t^2), 2t/(1+t^2))."""
    fam = build_family("case1")
    for z in SAMPLE_POINTS:
        t = cmath.exp(z)
        fv = evaluate(fam.f, z)
        gv = evaluate(fam.g, z)
        assert abs(fv * fv + gv * gv - 1) < 1e-12
        assert abs(fv - (1 - t * t) / (1 + t * t)) < 1e-12
        assert abs(gv - 2 * t / (1 + t * t)) < 1e-12
