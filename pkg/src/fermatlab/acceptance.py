"""The acceptance gate: ten independently checkable criteria.

Each criterion exercises a different slice of the package -- exact series
certificates, the lattice engine, symbolic adjudication, numeric scans, the
zero analyzer, diagnostics, and report determinism -- with hard-coded
tolerances.  ``run_all`` executes them in order and reports a structured
summary; any corruption of the underlying constants or algorithms should
flip at least one criterion to failed.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from .exprs import differentiate
from .families import adjudicate, build_family
from .reports import canonical_json, points_csv, scan_payload
from .scalars import RationalComplex
from .series import ode_residual_series
from .verify import (
    ScanWindow,
    derivative_identity_scan,
    diagnostic_h1,
    diagnostic_h2,
    residual_scan,
    second_derivative_offset_scan,
    zero_scan,
    zero_set_compare,
)
from .wp import (
    Invariants,
    discriminant_of_tau,
    engine_for,
    periods_from_invariants,
)

#: independently frozen value of the real half-period for invariants (0, 1),
#: from the quadrature below (also reproduced by scipy in the test suite)
OMEGA1_EQUIANHARMONIC = 1.5299540370571931


@dataclass(frozen=True)
class CriterionResult:
    cid: int
    label: str
    passed: bool
    elapsed: float
    details: dict

    def to_dict(self) -> dict:
        return {
            "criterion": self.cid,
            "label": self.label,
            "passed": self.passed,
            "elapsed_seconds": self.elapsed,
            "details": dict(self.details),
        }


@dataclass(frozen=True)
class SuiteResult:
    results: tuple
    total_elapsed: float

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "tool_version": __version__,
            "all_passed": self.all_passed,
            "total_elapsed_seconds": self.total_elapsed,
            "criteria": [r.to_dict() for r in self.results],
        }


# ---------------------------------------------------------------------------
# Individual criteria.  Each returns (passed, details).
# ---------------------------------------------------------------------------


def _c1_exact_ode_series():
    """Exact cubic-law residual series vanishes through order 40 for the
    three stock invariant pairs."""
    pairs = [(0, 1), (Fraction(-1, 12), Fraction(-1, 6)), (0, 432)]
    checked = []
    ok = True
    for g2, g3 in pairs:
        res = ode_residual_series(g2, g3, order=40)
        zero = res.is_zero_through(40)
        ok = ok and zero
        checked.append({"g2": str(g2), "g3": str(g3), "zero_through_40": zero})
    return ok, {"pairs": checked}


def _omega1_quadrature() -> float:
    """Real half-period for invariants (0, 1) by composite Gauss-Legendre.

    With e1 the real root of 4 t^3 = 1 and t = e1 + x^2, the period integral
    from e1 to infinity of dt / sqrt(4 t^3 - 1) becomes the integral over
    x >= 0 of dx / sqrt(x^4 + 3 e1 x^2 + 3 e1^2); x = s/(1-s) maps it to the
    unit interval."""
    e1 = 0.25 ** (1.0 / 3.0)
    nodes, weights = np.polynomial.legendre.leggauss(60)
    total = 0.0
    for k in range(8):
        a, b = k / 8.0, (k + 1) / 8.0
        s = 0.5 * (b - a) * nodes + 0.5 * (a + b)
        x = s / (1.0 - s)
        f = 1.0 / (np.sqrt(x**4 + 3.0 * e1 * x**2 + 3.0 * e1**2) * (1.0 - s) ** 2)
        total += 0.5 * (b - a) * float(np.sum(weights * f))
    return total


def _c2_engine_checks():
    """Engine for (0, 1): cubic-law residual < 1e-8 and periodicity deviation
    < 1e-7 at 200 random cell points; half-period matches an independent
    quadrature to 1e-4."""
    eng = engine_for(Invariants(0, 1))
    rng = np.random.default_rng(20260825)
    x = rng.uniform(0.1, 0.9, 200)
    y = rng.uniform(0.1, 0.9, 200)
    z = eng.cell_point(x, y)
    ode_max = float(np.max(eng.ode_residual(z)))
    v1, v2 = eng.basis
    p0, _, _, _ = eng.eval(z)
    p1, _, _, _ = eng.eval(z + v1)
    p2, _, _, _ = eng.eval(z + v2)
    period_max = float(
        max(np.max(np.abs(p1 - p0)), np.max(np.abs(p2 - p0)))
    )
    omega_engine = periods_from_invariants(Invariants(0, 1)).omega1
    omega_quad = _omega1_quadrature()
    dev_frozen = abs(omega_engine - OMEGA1_EQUIANHARMONIC)
    dev_quad = abs(omega_engine - omega_quad)
    ok = (
        ode_max < 1e-8
        and period_max < 1e-7
        and dev_frozen < 1e-4
        and dev_quad < 1e-4
    )
    return ok, {
        "ode_max": ode_max,
        "periodicity_max": period_max,
        "omega1_engine": complex(omega_engine),
        "omega1_quadrature": omega_quad,
        "points": 200,
    }


def _zero_family_specs():
    """(family_id, kwargs) for every catalog entry expected to adjudicate ZERO."""
    specs = [("case1", {})]
    specs += [("case2", {"eta_index": e}) for e in range(3)]
    specs += [("case3", {"eta_index": e}) for e in range(3)]
    specs += [
        ("quadratic", {}),
        ("cubic", {}),
        ("unit-unit", {}),
        ("m-one", {}),
        ("corollary", {}),
    ]
    return specs


def _c3_zero_families_certify_and_scan():
    """Every ZERO family: symbolic verdict ZERO and residual scan PASS at
    1e-8 on the standard window, in both composition slots."""
    rows = []
    ok = True
    for fid, kwargs in _zero_family_specs():
        fam = build_family(fid, **kwargs)
        verdict = adjudicate(fam)
        row = {"family": fid, **{k: str(v) for k, v in kwargs.items()}}
        row["verdict"] = verdict.verdict
        for slot in ("w", "exp"):
            rep = residual_scan(build_family(fid, slot=slot, **kwargs))
            row[f"scan_{slot}"] = rep.verdict
            row[f"p95_{slot}"] = rep.p95_residual
            ok = ok and rep.verdict == "PASS"
        ok = ok and verdict.is_zero
        rows.append(row)
    return ok, {"families": rows}


_CASE4_COEFFS = ("44/3", "-4", "0", "1/36", "1/12")


def _c4_nonzero_families():
    """Both fourth-power variants: NONZERO with the exact normalized residual
    coefficients for degrees [4,3,2,1,0], and scan FAIL; the opposite-sign
    quadratic equation: NONZERO and scan FAIL."""
    rows = []
    ok = True
    for variant in (1, 2):
        fam = build_family("case4", variant=variant)
        verdict = adjudicate(fam)
        rep = residual_scan(fam)
        coeffs = tuple(verdict.even_coeffs_desc or ())
        good = (
            verdict.verdict == "NONZERO"
            and coeffs == _CASE4_COEFFS
            and not (verdict.odd_coeffs_desc or ())
            and rep.verdict == "FAIL"
        )
        ok = ok and good
        rows.append(
            {
                "family": "case4",
                "variant": variant,
                "verdict": verdict.verdict,
                "coeffs": list(coeffs),
                "scan": rep.verdict,
            }
        )
    fam = build_family("quadratic", sign="minus")
    verdict = adjudicate(fam)
    rep = residual_scan(fam)
    ok = ok and verdict.verdict == "NONZERO" and rep.verdict == "FAIL"
    rows.append(
        {"family": "quadratic", "sign": "minus", "verdict": verdict.verdict,
         "scan": rep.verdict}
    )
    return ok, {"families": rows}


def _c5_discriminant_identity():
    """Brace-form and factored discriminants agree exactly for 20 random
    Gaussian-rational parameters; the two anchor values are exact."""
    rng = random.Random(20260825)
    ok = True
    samples = []
    for k in range(20):
        re = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        if k % 2:
            tau = RationalComplex(re, Fraction(rng.randint(-40, 40), rng.randint(1, 12)))
        else:
            tau = re
        d = discriminant_of_tau(tau)
        diff = d.difference
        exact_zero = diff.is_zero if isinstance(diff, RationalComplex) else diff == 0
        ok = ok and d.exact and exact_zero
        samples.append(str(tau))
    d0 = discriminant_of_tau(0)
    dm1 = discriminant_of_tau(-1)
    anchor0 = (d0.factored_form + 5038848).is_zero and (d0.brace_form + 5038848).is_zero
    anchor1 = dm1.factored_form.is_zero and dm1.brace_form.is_zero
    ok = ok and anchor0 and anchor1
    return ok, {
        "samples": samples,
        "delta_at_0": str(d0.factored_form),
        "delta_at_-1": str(dm1.factored_form),
    }


def _c6_derivative_identity_scans():
    """Differentiated-equation scan passes at 1e-8 for every ZERO family of
    power-sum kind."""
    rows = []
    ok = True
    for fid, kwargs in _zero_family_specs():
        fam = build_family(fid, **kwargs)
        if fam.kind not in ("fermat", "corollary"):
            continue
        rep = derivative_identity_scan(fam)
        ok = ok and rep.verdict == "PASS"
        rows.append(
            {"family": fid, **{k: str(v) for k, v in kwargs.items()},
             "scan": rep.verdict, "p95": rep.p95_residual}
        )
    return ok, {"families": rows}


def _c7_second_derivative_offset():
    """wp'' - 6 wp^2 equals the predicted constant to 1e-8 at 50 random cell
    points for three parameter values, using finite differences of wp'."""
    rows = []
    ok = True
    for tau in (0, 0.3 + 0.2j, 1):
        rep = second_derivative_offset_scan(tau)
        ok = ok and rep.max_dev < 1e-8
        rows.append({"tau": str(tau), "max_dev": rep.max_dev})
    return ok, {"cases": rows}


def _c8_derivative_zero_sets():
    """For the derivative-coupled witness pair: f' has no zeros in the tall
    window, g' has exactly {0, +-i pi, +-2 i pi}, all simple, and the zero
    sets form a proper subset relation counting multiplicity."""
    fam = build_family("corollary")
    window = ScanWindow(-1.0, 1.0, -7.0, 7.0)
    rf = zero_scan(differentiate(fam.f), window)
    rg = zero_scan(differentiate(fam.g), window)
    expected = sorted((0.0, k * math.pi) for k in (-2, -1, 0, 1, 2))
    # sort by the rounded location: the raw real parts are ~1e-14 noise
    got = sorted(
        ((z.re, z.im) for z in rg.zeros),
        key=lambda t: (round(t[0], 6), round(t[1], 6)),
    )
    locations_ok = len(got) == len(expected) and all(
        abs(a - c) < 1e-9 and abs(b - d) < 1e-9
        for (a, b), (c, d) in zip(got, expected)
    )
    simple = all(z.multiplicity == 1 for z in rg.zeros)
    cmp = zero_set_compare(rf, rg, relation="subset", mode="counting")
    ok = (
        len(rf.zeros) == 0
        and rf.reconciled
        and rg.reconciled
        and locations_ok
        and simple
        and cmp.verdict is True
        and cmp.proper is True
    )
    return ok, {
        "f_prime_zeros": len(rf.zeros),
        "g_prime_zeros": [(z.re, z.im, z.multiplicity) for z in rg.zeros],
        "subset_counting": cmp.verdict,
        "proper": cmp.proper,
        "witnesses": [(w["re"], w["im"]) for w in cmp.proper_witnesses],
    }


def _c9_pole_diagnostics():
    """Near-origin diagnostic ratios approach their predicted limits within
    1e-2 for two parameter values."""
    rows = []
    ok = True
    for tau in (0, 0.3 + 0.2j):
        r1 = diagnostic_h1(tau)
        r2 = diagnostic_h2(tau)
        ok = ok and r1.max_dev < 1e-2 and r2.max_dev < 1e-2
        rows.append({"tau": str(tau), "h1_dev": r1.max_dev, "h2_dev": r2.max_dev})
    return ok, {"cases": rows}


def _c10_determinism():
    """Two independent runs of the same scan serialize to byte-identical JSON
    and CSV."""
    cmd = "acceptance determinism probe"
    texts = []
    csvs = []
    for _ in range(2):
        rep = residual_scan(build_family("case2"), keep_samples=True)
        texts.append(canonical_json(scan_payload(rep, __version__, cmd)))
        csvs.append(points_csv(rep.samples))
    ok = texts[0] == texts[1] and csvs[0] == csvs[1]
    return ok, {
        "json_bytes": len(texts[0].encode()),
        "csv_bytes": len(csvs[0].encode()),
        "identical": ok,
    }


_CRITERIA = (
    (1, "exact cubic-law series vanish (three invariant pairs)", _c1_exact_ode_series),
    (2, "lattice engine: residual, periodicity, half-period", _c2_engine_checks),
    (3, "ZERO families certify and scan clean in both slots", _c3_zero_families_certify_and_scan),
    (4, "NONZERO families: exact coefficients and failing scans", _c4_nonzero_families),
    (5, "discriminant brace form equals factored form exactly", _c5_discriminant_identity),
    (6, "differentiated-equation scans pass for ZERO families", _c6_derivative_identity_scans),
    (7, "second-derivative offset constant to 1e-8", _c7_second_derivative_offset),
    (8, "derivative zero sets and proper subset relation", _c8_derivative_zero_sets),
    (9, "near-origin diagnostic ratios reach their limits", _c9_pole_diagnostics),
    (10, "byte-identical reports and < 60 s wall time", _c10_determinism),
)

RUNTIME_BUDGET_SECONDS = 60.0


def run_all(only=None) -> SuiteResult:
    """Run the acceptance criteria (all, or the ids in ``only``) and collect
    results.  Criterion 10 additionally requires the whole run to finish
    inside the runtime budget."""
    t_start = time.perf_counter()
    results = []
    for cid, label, fn in _CRITERIA:
        if only is not None and cid not in only:
            continue
        t0 = time.perf_counter()
        try:
            passed, details = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            passed, details = False, {"error": f"{type(exc).__name__}: {exc}"}
        results.append(
            CriterionResult(cid, label, passed, time.perf_counter() - t0, details)
        )
    total = time.perf_counter() - t_start
    for i, res in enumerate(results):
        if res.cid == 10:
            within = total <= RUNTIME_BUDGET_SECONDS
            details = dict(res.details)
            details["total_elapsed_seconds"] = total
            details["runtime_budget_seconds"] = RUNTIME_BUDGET_SECONDS
            results[i] = CriterionResult(
                res.cid, res.label, res.passed and within, res.elapsed, details
            )
    return SuiteResult(tuple(results), total)
