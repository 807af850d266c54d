"""Numeric verification: pole-aware residual scans and zero-set analysis.

Scans never let a near-pole sample masquerade as evidence: samples are
excluded (with a recorded reason) when any denominator magnitude drops below
the window's soft-exclusion level, when an elliptic atom exceeds a magnitude
ceiling, or when evaluation produced a non-finite value.  A scan whose
exclusion fraction exceeds the budget refuses to certify and reports
INCONCLUSIVE instead of PASS/FAIL.

The zero analyzer works on the cleared-denominator numerator of the target
expression, certifies every reported multiplicity by a small-circle winding
number, refines each location by the winding centroid, and reconciles the
interior count (zeros minus elliptic pole orders) against an independently
computed boundary winding.  Any ambiguity -- near-boundary zeros,
unresolvable phase tracking, count mismatch -- raises AnalyzerError rather
than guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import AnalyzerError
from .exprs import (
    Const,
    Exp,
    Expr,
    W,
    Wp,
    WpPrime,
    as_fraction,
    denominators,
    differentiate,
    evaluate,
    evaluate_many,
    wp_nodes,
)
from .families import SolutionFamily
from .scalars import CBRT4
from .wp import engine_for, invariants_from_tau, second_derivative_constant

# Below this separation, double precision cannot tell two zeros of a
# multiplicity >= 3 cluster apart from one zero: accepted Newton iterates
# scatter across the cancellation basin of radius ~ (eps * scale)^(1/k).
_CANCELLATION_MERGE_RADIUS = 2.5e-4


# ---------------------------------------------------------------------------
# Windows and grids.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanWindow:
    """Axis-aligned rectangle with sampling density (points per unit length)
    and the soft-exclusion magnitude for denominators."""

    re_min: float = -2.0
    re_max: float = 2.0
    im_min: float = -2.0
    im_max: float = 2.0
    grid_density: float = 20.0
    soft_exclusion: float = 0.05

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("window must have positive extent")
        if self.grid_density < 4:
            raise ValueError("grid density must be at least 4 points per unit")
        if self.soft_exclusion <= 0:
            raise ValueError("soft exclusion must be positive")

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min

    def axis_counts(self) -> tuple[int, int]:
        n_re = max(2, int(math.ceil(self.width * self.grid_density)) + 1)
        n_im = max(2, int(math.ceil(self.height * self.grid_density)) + 1)
        return n_re, n_im

    def grid(self) -> np.ndarray:
        """Row-major grid, imaginary axis slow, real axis fast."""
        n_re, n_im = self.axis_counts()
        re = np.linspace(self.re_min, self.re_max, n_re)
        im = np.linspace(self.im_min, self.im_max, n_im)
        return (re[None, :] + 1j * im[:, None]).ravel()

    def contains(self, z) -> np.ndarray:
        z = np.asarray(z)
        return (
            (z.real >= self.re_min)
            & (z.real <= self.re_max)
            & (z.imag >= self.im_min)
            & (z.imag <= self.im_max)
        )

    def boundary_distance(self, z) -> np.ndarray:
        """Distance to the rectangle's boundary curve (inside or outside)."""
        z = np.asarray(z)
        x, y = z.real, z.imag
        dx_out = np.maximum(np.maximum(self.re_min - x, x - self.re_max), 0.0)
        dy_out = np.maximum(np.maximum(self.im_min - y, y - self.im_max), 0.0)
        outside = np.hypot(dx_out, dy_out)
        inside = np.minimum(
            np.minimum(x - self.re_min, self.re_max - x),
            np.minimum(y - self.im_min, self.im_max - y),
        )
        return np.where(outside > 0, outside, np.maximum(inside, 0.0))

    def boundary_nodes(self, per_unit: float = 32.0) -> np.ndarray:
        """Closed counterclockwise polyline (last node equals the first)."""
        corners = [
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        ]
        pts = []
        for a, b in zip(corners, corners[1:] + corners[:1]):
            n = max(16, int(math.ceil(abs(b - a) * per_unit)))
            pts.append(a + (b - a) * np.arange(n) / n)
        return np.concatenate(pts + [np.array([corners[0]])])

    def to_dict(self) -> dict:
        return {
            "re_min": self.re_min,
            "re_max": self.re_max,
            "im_min": self.im_min,
            "im_max": self.im_max,
            "grid_density": self.grid_density,
            "soft_exclusion": self.soft_exclusion,
        }


# ---------------------------------------------------------------------------
# Residual scanning.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanReport:
    check: str
    family_id: str
    params: dict
    verdict: str  # PASS | FAIL | INCONCLUSIVE
    tolerance: float
    p95_residual: float
    max_residual: float
    points_total: int
    points_excluded: int
    exclusion_reasons: dict
    window: dict
    grid: dict
    failures: tuple = ()
    samples: Optional[tuple] = None  # (z_re, z_im, abs, rel, excluded) rows

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    @property
    def excluded_fraction(self) -> float:
        return self.points_excluded / self.points_total if self.points_total else 0.0

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "family": self.family_id,
            "params": dict(self.params),
            "verdict": self.verdict,
            "tolerance": self.tolerance,
            "p95_residual": self.p95_residual,
            "max_residual": self.max_residual,
            "points_total": self.points_total,
            "points_excluded": self.points_excluded,
            "exclusion_reasons": dict(self.exclusion_reasons),
            "window": dict(self.window),
            "grid": dict(self.grid),
            "failures": [dict(f) for f in self.failures],
        }


def _p95(sorted_vals: np.ndarray) -> float:
    n = sorted_vals.size
    if n == 0:
        return float("nan")
    k = min(n - 1, int(math.floor(0.95 * n)))
    return float(sorted_vals[k])


def _exclusion_masks(z, value_arrays, den_values, wp_values, den_floor, wp_ceiling):
    """(excluded, counts) with reasons counted by priority:
    nonfinite > denominator > pole-magnitude."""
    nonfinite = np.zeros(z.shape, dtype=bool)
    for arr in value_arrays:
        nonfinite |= ~np.isfinite(arr)
    den_small = np.zeros(z.shape, dtype=bool)
    for arr in den_values:
        den_small |= ~np.isfinite(arr) | (np.abs(arr) < den_floor)
    wp_big = np.zeros(z.shape, dtype=bool)
    for arr in wp_values:
        wp_big |= ~np.isfinite(arr) | (np.abs(arr) > wp_ceiling)
    excluded = nonfinite | den_small | wp_big
    counts = {
        "nonfinite": int(np.count_nonzero(nonfinite)),
        "denominator": int(np.count_nonzero(den_small & ~nonfinite)),
        "pole-magnitude": int(np.count_nonzero(wp_big & ~nonfinite & ~den_small)),
    }
    return excluded, counts


def _family_params(family: SolutionFamily) -> dict:
    out = {"m": family.m, "n": family.n, "kind": family.kind}
    out.update(family.params.to_dict())
    return out


def _relative_scan(
    check: str,
    family: SolutionFamily,
    residual: Expr,
    scale_terms: Sequence[tuple[Expr, float]],
    window: ScanWindow,
    tol: float,
    pole_ceiling: float,
    exclusion_budget: float,
    keep_samples: bool,
) -> ScanReport:
    """Shared core: rel = |residual| / (1 + sum |term|^power) over the grid."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    z = window.grid()
    n_re, n_im = window.axis_counts()
    denos = denominators(residual)
    wps = wp_nodes(residual)
    terms = [t for t, _ in scale_terms]
    vals = evaluate_many([residual] + terms + denos + wps, z)
    rv = vals[0]
    term_vals = vals[1 : 1 + len(terms)]
    den_vals = vals[1 + len(terms) : 1 + len(terms) + len(denos)]
    wp_vals = vals[1 + len(terms) + len(denos) :]

    excluded, counts = _exclusion_masks(
        z, [rv] + term_vals, den_vals, wp_vals, window.soft_exclusion, pole_ceiling
    )
    scale = np.ones(z.shape, dtype=float)
    for tv, power in zip(term_vals, [p for _, p in scale_terms]):
        scale = scale + np.abs(tv) ** power
    with np.errstate(invalid="ignore", over="ignore"):
        rel = np.abs(rv) / scale
    bad_rel = ~np.isfinite(rel) & ~excluded
    if np.any(bad_rel):
        counts["nonfinite"] += int(np.count_nonzero(bad_rel))
        excluded = excluded | bad_rel

    n = z.size
    n_exc = int(np.count_nonzero(excluded))
    valid_rel = rel[~excluded]
    p95 = _p95(np.sort(valid_rel))
    max_rel = float(np.max(valid_rel)) if valid_rel.size else float("nan")
    if n_exc / n > exclusion_budget or valid_rel.size == 0:
        verdict = "INCONCLUSIVE"
    elif p95 < tol:
        verdict = "PASS"
    else:
        verdict = "FAIL"

    valid_idx = np.flatnonzero(~excluded)
    order = valid_idx[np.argsort(-rel[valid_idx], kind="stable")]
    failures = tuple(
        {"z_re": float(z[i].real), "z_im": float(z[i].imag), "residual_rel": float(rel[i])}
        for i in order[:20]
    )
    samples = None
    if keep_samples:
        samples = tuple(
            (
                float(z[i].real),
                float(z[i].imag),
                float(np.abs(rv[i])) if np.isfinite(rv[i]) else float("nan"),
                float(rel[i]) if np.isfinite(rel[i]) else float("nan"),
                int(excluded[i]),
            )
            for i in range(n)
        )
    return ScanReport(
        check=check,
        family_id=family.family_id,
        params=_family_params(family),
        verdict=verdict,
        tolerance=tol,
        p95_residual=p95,
        max_residual=max_rel,
        points_total=n,
        points_excluded=n_exc,
        exclusion_reasons=counts,
        window=window.to_dict(),
        grid={"n_re": n_re, "n_im": n_im, "density": window.grid_density},
        failures=failures,
        samples=samples,
    )


def residual_scan(
    family: SolutionFamily,
    window: ScanWindow = ScanWindow(),
    tol: float = 1e-8,
    pole_ceiling: float = 1e8,
    exclusion_budget: float = 0.20,
    keep_samples: bool = False,
) -> ScanReport:
    """Grid scan of the family's defining-equation residual, relative to
    1 + |f|^m + |g|^n."""
    return _relative_scan(
        "residual",
        family,
        family.residual_expr(),
        [(family.f, float(family.m)), (family.g, float(family.n))],
        window,
        tol,
        pole_ceiling,
        exclusion_budget,
        keep_samples,
    )


def derivative_identity_scan(
    family: SolutionFamily,
    window: ScanWindow = ScanWindow(),
    tol: float = 1e-8,
    pole_ceiling: float = 1e8,
    exclusion_budget: float = 0.20,
    keep_samples: bool = False,
) -> ScanReport:
    """Scan of m f^(m-1) f' + n g^(n-1) g', the derivative of the defining
    equation, relative to 1 + |f|^m + |g|^n.  Only meaningful for families
    whose equation is f^m + g^n = 1."""
    if family.kind not in ("fermat", "corollary"):
        raise ValueError(
            "derivative identity scan applies to f^m + g^n = 1 families only"
        )
    return _relative_scan(
        "derivative-identity",
        family,
        family.derivative_identity_expr(),
        [(family.f, float(family.m)), (family.g, float(family.n))],
        window,
        tol,
        pole_ceiling,
        exclusion_budget,
        keep_samples,
    )


# ---------------------------------------------------------------------------
# Zero analysis.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroRecord:
    re: float
    im: float
    multiplicity: int

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    def to_dict(self) -> dict:
        return {"re": self.re, "im": self.im, "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class ZeroReport:
    window: dict
    zeros: tuple  # ZeroRecord, zeros of the expression itself
    cancelled: tuple  # numerator zeros coinciding with denominator zeros
    poles: tuple  # (re, im, order) of elliptic-atom poles inside the window
    interior_total: int  # numerator zeros minus pole orders, with multiplicity
    boundary_total: int  # boundary winding of the numerator
    n_seeds: int

    @property
    def reconciled(self) -> bool:
        return self.interior_total == self.boundary_total

    def to_dict(self) -> dict:
        return {
            "window": dict(self.window),
            "zeros": [r.to_dict() for r in self.zeros],
            "cancelled": [r.to_dict() for r in self.cancelled],
            "poles": [{"re": p[0], "im": p[1], "order": p[2]} for p in self.poles],
            "interior_total": self.interior_total,
            "boundary_total": self.boundary_total,
            "reconciled": self.reconciled,
            "seeds": self.n_seeds,
        }


def _phase_track(num: Expr, nodes: np.ndarray, floor: float, max_passes: int = 12):
    """Winding of num along a closed polyline by phase tracking with adaptive
    refinement; returns (winding_float, nodes, values)."""
    z = np.asarray(nodes, dtype=complex)
    v = evaluate(num, z)
    for _ in range(max_passes):
        if np.any(~np.isfinite(v)) or np.any(np.abs(v) <= floor):
            raise AnalyzerError(
                "numerator vanishes or is singular on the contour; "
                "a zero or pole sits too close to it"
            )
        step = np.angle(v[1:] / v[:-1])
        bad = np.abs(step) > 0.5 * math.pi
        if not np.any(bad):
            return float(np.sum(step) / (2.0 * math.pi)), z, v
        mids = 0.5 * (z[:-1][bad] + z[1:][bad])
        mv = evaluate(num, mids)
        idx = np.flatnonzero(bad) + 1
        z = np.insert(z, idx, mids)
        v = np.insert(v, idx, mv)
    raise AnalyzerError("phase tracking failed to stabilize on the contour")


def _circle_winding(
    num: Expr, dnum: Expr, center: complex, radius: float, nodes: int
) -> tuple[int, complex]:
    """(winding, centroid) about a circle: winding by phase tracking, centroid
    from (1/2 pi i) contour-integral of z num'/num divided by the winding.

    The centroid integral uses the parametrized trapezoid rule on the uniform
    angle nodes (dz = i (z - center) d theta), which is spectrally accurate
    for the circle; a chord-based rule would be ~1e-3 off at this radius."""
    theta = 2.0 * math.pi * np.arange(nodes + 1) / nodes
    circ = center + radius * np.exp(1j * theta)
    raw, _, _ = _phase_track(num, circ, 0.0)
    nearest = round(raw)
    if abs(raw - nearest) > 0.1:
        raise AnalyzerError(
            f"winding about {complex(center):.6g} is not close to an integer ({raw:.4f})"
        )
    w = int(nearest)
    if w == 0:
        return 0, complex(center)
    zs = circ[:-1]
    vs, ds = evaluate_many([num, dnum], zs)
    integral = np.sum(zs * (ds / vs) * (zs - center)) / nodes
    return w, complex(integral / w)


def _expr_pole_points(num: Expr, window: ScanWindow):
    """Pole candidates of the numerator inside the window: the lattice points
    of every elliptic atom.  Atoms must be evaluated at the bare variable;
    composed arguments have no enumerable pole set here."""
    engines = []
    for node in wp_nodes(num):
        if node.arg is not W:
            raise AnalyzerError(
                "cannot enumerate poles of an elliptic atom with a composed argument"
            )
        if all(node.engine is not e for e in engines):
            engines.append(node.engine)
    pts: list[complex] = []
    for eng in engines:
        v1, v2 = eng.basis
        corners = [
            complex(window.re_min, window.im_min),
            complex(window.re_max, window.im_min),
            complex(window.re_max, window.im_max),
            complex(window.re_min, window.im_max),
        ]
        det = v1.real * v2.imag - v1.imag * v2.real
        a_vals, b_vals = [], []
        for c in corners:
            a_vals.append((c.real * v2.imag - c.imag * v2.real) / det)
            b_vals.append((v1.real * c.imag - v1.imag * c.real) / det)
        a_lo, a_hi = int(math.floor(min(a_vals))) - 1, int(math.ceil(max(a_vals))) + 1
        b_lo, b_hi = int(math.floor(min(b_vals))) - 1, int(math.ceil(max(b_vals))) + 1
        for a in range(a_lo, a_hi + 1):
            for b in range(b_lo, b_hi + 1):
                p = a * v1 + b * v2
                if window.contains(p) and all(abs(p - q) > 1e-9 for q in pts):
                    pts.append(complex(p))
    pts.sort(key=lambda p: (round(p.real, 9), round(p.imag, 9)))
    return pts


def _supported_atoms_or_raise(num: Expr):
    """The analyzer needs the numerator meromorphic with an enumerable pole
    set: elliptic atoms at the bare variable, exponential atoms with
    division-free arguments."""

    def walk(node: Expr):
        if isinstance(node, Exp):
            if denominators(node.arg):
                raise AnalyzerError(
                    "exponential atom with a rational argument has essential "
                    "singularities; zero accounting is not supported"
                )
            walk(node.arg)
        elif isinstance(node, (Wp, WpPrime)):
            if node.arg is not W:
                raise AnalyzerError(
                    "cannot enumerate poles of an elliptic atom with a composed argument"
                )
        elif hasattr(node, "lhs"):
            walk(node.lhs)
            walk(node.rhs)
        elif hasattr(node, "base"):
            walk(node.base)

    walk(num)


def _cluster(points: np.ndarray, radius: float) -> list[complex]:
    order = np.lexsort((np.round(points.imag, 9), np.round(points.real, 9)))
    clusters: list[list[complex]] = []
    for idx in order:
        p = points[idx]
        for cluster in clusters:
            if abs(p - cluster[0]) < radius:
                cluster.append(p)
                break
        else:
            clusters.append([p])
    return [complex(np.mean(np.asarray(c))) for c in clusters]


def zero_scan(
    expr: Expr,
    window: ScanWindow = ScanWindow(),
    newton_steps: int = 50,
    step_tol: float = 1e-12,
    dedupe_radius: float = 1e-7,
    min_spacing: float = 5e-3,
    mult_radius: float = 1e-3,
    mult_nodes: int = 256,
    boundary_margin: float = 1e-6,
) -> ZeroReport:
    """Locate and certify the zero set of ``expr`` inside ``window``.

    Newton iteration runs on the cleared-denominator numerator from every
    grid seed; a root is accepted when the step collapses below step_tol or
    the numerator drops below a floor tied to the grid magnitude (the floor
    is what makes high-multiplicity roots, with their slow linear Newton
    rate, detectable).  Duplicates merge at dedupe_radius and once more at
    the double-precision cancellation radius; each certified location is the
    winding centroid of its circle, accurate far beyond the raw iterates.
    """
    num, den = as_fraction(expr)
    _supported_atoms_or_raise(num)
    dnum = differentiate(num)

    seeds = window.grid()
    nv0 = evaluate(num, seeds)
    finite0 = np.abs(nv0[np.isfinite(nv0)])
    grid_scale = float(np.max(finite0)) if finite0.size else 1.0
    res_floor = 1e-24 * (1.0 + grid_scale)
    loose_floor = 1e-6 * (1.0 + grid_scale)

    z = seeds.astype(complex).copy()
    step_abs = np.full(z.shape, np.inf)
    for _ in range(newton_steps):
        nv, dv = evaluate_many([num, dnum], z)
        with np.errstate(all="ignore"):
            step = nv / dv
        ok = np.isfinite(step)
        step = np.where(ok, step, 0.0)
        z = z - step
        step_abs = np.where(ok, np.abs(step), np.inf)
    nv = evaluate(num, z)
    finite = np.isfinite(z) & np.isfinite(nv)
    by_step = (step_abs < step_tol) & (np.abs(nv) <= loose_floor)
    by_floor = np.abs(nv) <= res_floor
    converged = finite & (by_step | by_floor)

    roots_raw = z[converged]
    near = roots_raw[window.boundary_distance(roots_raw) < boundary_margin]
    if near.size:
        raise AnalyzerError(
            f"zero within {boundary_margin:g} of the window boundary at "
            f"{complex(near[0]):.9g}; shift the window"
        )
    roots_raw = roots_raw[window.contains(roots_raw)]

    fine = _cluster(roots_raw, dedupe_radius)
    roots = _cluster(np.asarray(fine, dtype=complex), _CANCELLATION_MERGE_RADIUS) if fine else []
    roots.sort(key=lambda r: (round(r.real, 9), round(r.imag, 9)))

    poles = _expr_pole_points(num, window)
    for p in poles:
        if window.boundary_distance(np.asarray(p)) < boundary_margin:
            raise AnalyzerError(
                f"elliptic pole within {boundary_margin:g} of the window "
                f"boundary at {complex(p):.9g}; shift the window"
            )

    special = roots + poles
    for i in range(len(special)):
        for j in range(i + 1, len(special)):
            if abs(special[i] - special[j]) < min_spacing:
                raise AnalyzerError(
                    f"zeros/poles closer than {min_spacing:g} near "
                    f"{complex(special[i]):.6g}; multiplicities cannot be isolated"
                )

    den_grid = evaluate(den, seeds)
    den_finite = np.abs(den_grid[np.isfinite(den_grid)])
    den_scale = float(np.max(den_finite)) if den_finite.size else 1.0
    den_floor = 1e-9 * (1.0 + den_scale)

    zero_records = []
    cancelled_records = []
    interior = 0
    for r in roots:
        mult, refined = _circle_winding(num, dnum, r, mult_radius, mult_nodes)
        if mult < 1:
            raise AnalyzerError(f"winding {mult} at claimed zero {complex(r):.6g}")
        if abs(refined - r) > 0.5 * mult_radius:
            raise AnalyzerError(
                f"centroid {refined:.6g} strayed from cluster {complex(r):.6g}"
            )
        interior += mult
        dv = evaluate(den, np.asarray([refined]))[0]
        den_zero = (not np.isfinite(dv)) or abs(dv) <= den_floor
        rec = ZeroRecord(float(refined.real), float(refined.imag), int(mult))
        (cancelled_records if den_zero else zero_records).append(rec)

    pole_records = []
    for p in poles:
        w, _ = _circle_winding(num, dnum, p, mult_radius, mult_nodes)
        if w > 0:
            raise AnalyzerError(
                f"positive winding {w} at an expected pole {complex(p):.6g}"
            )
        interior += w
        if w < 0:
            pole_records.append((float(p.real), float(p.imag), int(-w)))

    b_floor = 1e-12 * (1.0 + grid_scale)
    raw, nodes_z, vv = _phase_track(num, window.boundary_nodes(), b_floor)
    nearest = round(raw)
    if abs(raw - nearest) > 0.1:
        raise AnalyzerError(f"boundary winding {raw:.4f} is not close to an integer")
    # cross-check with a trapezoid quadrature of the logarithmic derivative
    dv = evaluate(dnum, nodes_z)
    w_ld = dv / vv
    integral = np.sum(0.5 * (w_ld[:-1] + w_ld[1:]) * np.diff(nodes_z)) / (2j * math.pi)
    if abs(integral.real - raw) > 0.1 or abs(integral.imag) > 0.1:
        raise AnalyzerError(
            f"boundary winding cross-check failed: phase {raw:.4f} vs "
            f"quadrature {integral:.4f}"
        )
    boundary_total = int(nearest)
    if interior != boundary_total:
        raise AnalyzerError(
            f"argument-principle mismatch: interior {interior} vs boundary "
            f"{boundary_total}; seeds likely missed a zero"
        )
    zero_records.sort(key=lambda r: (round(r.re, 9), round(r.im, 9)))
    cancelled_records.sort(key=lambda r: (round(r.re, 9), round(r.im, 9)))
    return ZeroReport(
        window=window.to_dict(),
        zeros=tuple(zero_records),
        cancelled=tuple(cancelled_records),
        poles=tuple(pole_records),
        interior_total=interior,
        boundary_total=boundary_total,
        n_seeds=int(seeds.size),
    )


@dataclass(frozen=True)
class ZeroComparison:
    relation: str  # subset | superset | equal
    mode: str  # counting | ignoring
    verdict: bool
    proper: Optional[bool]  # for subset/superset: proper inclusion?
    matched: tuple
    violations: tuple
    proper_witnesses: tuple

    def to_dict(self) -> dict:
        return {
            "relation": self.relation,
            "mode": self.mode,
            "verdict": self.verdict,
            "proper": self.proper,
            "matched": [dict(m) for m in self.matched],
            "violations": [dict(v) for v in self.violations],
            "proper_witnesses": [dict(w) for w in self.proper_witnesses],
        }


def _containment(za, zb, mode: str, radius: float):
    """Is every zero of A also one of B (counting: with at least the same
    multiplicity)?  Returns (ok, violations, matched)."""
    violations = []
    matched = []
    for a in za:
        hits = [b for b in zb if abs(b.z - a.z) <= radius]
        if len(hits) > 1:
            raise AnalyzerError(
                f"ambiguous match: zero {a.z:.9g} pairs with several zeros "
                f"within {radius:g}"
            )
        if not hits:
            violations.append(
                {"re": a.re, "im": a.im, "multiplicity": a.multiplicity,
                 "reason": "no matching zero"}
            )
            continue
        b = hits[0]
        entry = {
            "re": a.re,
            "im": a.im,
            "multiplicity": a.multiplicity,
            "matched_multiplicity": b.multiplicity,
        }
        if mode == "counting" and b.multiplicity < a.multiplicity:
            entry["reason"] = "multiplicity drop"
            violations.append(entry)
        else:
            matched.append(entry)
    return not violations, violations, matched


def zero_set_compare(
    a,
    b,
    relation: str = "subset",
    mode: str = "counting",
    window: ScanWindow = ScanWindow(),
    strict: bool = False,
    match_radius: float = 1e-6,
    **scan_kwargs,
) -> ZeroComparison:
    """Compare the zero sets of ``a`` and ``b`` (expressions or precomputed
    ZeroReports) under subset/superset/equal, counting or ignoring
    multiplicity.  For subset/superset the result also says whether the
    inclusion is proper, with the extra zeros as witnesses.  ``strict``
    escalates a False verdict to AnalyzerError.
    """
    if relation not in ("subset", "superset", "equal"):
        raise ValueError("relation must be 'subset', 'superset' or 'equal'")
    if mode not in ("counting", "ignoring"):
        raise ValueError("mode must be 'counting' or 'ignoring'")
    ra = a if isinstance(a, ZeroReport) else zero_scan(a, window, **scan_kwargs)
    rb = b if isinstance(b, ZeroReport) else zero_scan(b, window, **scan_kwargs)
    ok_ab, viol_ab, match_ab = _containment(ra.zeros, rb.zeros, mode, match_radius)
    ok_ba, viol_ba, match_ba = _containment(rb.zeros, ra.zeros, mode, match_radius)
    if relation == "subset":
        verdict, proper = ok_ab, ok_ab and not ok_ba
        matched, violations, proper_wit = match_ab, viol_ab, viol_ba if ok_ab else []
    elif relation == "superset":
        verdict, proper = ok_ba, ok_ba and not ok_ab
        matched, violations, proper_wit = match_ba, viol_ba, viol_ab if ok_ba else []
    else:
        verdict, proper = ok_ab and ok_ba, None
        matched = match_ab
        violations = [dict(v, side="A") for v in viol_ab] + [
            dict(v, side="B") for v in viol_ba
        ]
        proper_wit = []
    if strict and not verdict:
        first = violations[0]
        raise AnalyzerError(
            f"zero-set {relation} ({mode}) violated at "
            f"{first['re']:.9g}{first['im']:+.9g}i"
        )
    return ZeroComparison(
        relation=relation,
        mode=mode,
        verdict=verdict,
        proper=proper,
        matched=tuple(matched),
        violations=tuple(violations),
        proper_witnesses=tuple(proper_wit),
    )


# ---------------------------------------------------------------------------
# Attainment and diagnostics.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AttainmentReport:
    window: dict
    n_points: int
    floors: tuple

    def to_dict(self) -> dict:
        return {
            "window": dict(self.window),
            "points": self.n_points,
            "floors": [dict(f) for f in self.floors],
        }


def value_attainment_scan(
    expr: Expr,
    targets: Sequence[complex],
    window: ScanWindow = ScanWindow(),
    newton_steps: int = 50,
) -> AttainmentReport:
    """Observed distance floors min |expr(z) - c| over the grid, one record
    per target, each refined by Newton on expr - c from the best grid seed.
    Refinements that leave the window are discarded: the floor stays the
    observed one, never a presumed zero."""
    z = window.grid()
    vals = evaluate(expr, z)
    finite = np.isfinite(vals)
    dexpr = differentiate(expr)
    floors = []
    for c in targets:
        c = complex(c)
        if not np.any(finite):
            floors.append(
                {"target_re": c.real, "target_im": c.imag, "min_abs": float("nan"),
                 "at_re": float("nan"), "at_im": float("nan"), "refined": False}
            )
            continue
        d = np.where(finite, np.abs(vals - c), np.inf)
        i = int(np.argmin(d))
        best_z, best_d = complex(z[i]), float(d[i])
        refined = False
        zz = best_z
        for _ in range(newton_steps):
            ev = evaluate(expr, zz)
            dv = evaluate(dexpr, zz)
            if not (np.isfinite(ev) and np.isfinite(dv)) or dv == 0:
                break
            step = (ev - c) / dv
            zz = zz - step
            if abs(step) < 1e-12:
                break
        if np.isfinite(zz) and window.contains(zz):
            ev = evaluate(expr, zz)
            if np.isfinite(ev) and abs(ev - c) < best_d:
                best_z, best_d, refined = complex(zz), float(abs(ev - c)), True
        floors.append(
            {
                "target_re": c.real,
                "target_im": c.imag,
                "min_abs": best_d,
                "at_re": best_z.real,
                "at_im": best_z.imag,
                "refined": refined,
            }
        )
    return AttainmentReport(
        window=window.to_dict(), n_points=int(z.size), floors=tuple(floors)
    )


@dataclass(frozen=True)
class BoundednessReport:
    family_id: str
    window: dict
    max_abs: float
    p95_abs: float
    median_abs: float
    n_valid: int
    excluded_fraction: float

    def to_dict(self) -> dict:
        return {
            "family": self.family_id,
            "window": dict(self.window),
            "max_abs": self.max_abs,
            "p95_abs": self.p95_abs,
            "median_abs": self.median_abs,
            "valid_points": self.n_valid,
            "excluded_fraction": self.excluded_fraction,
        }


def diagnostic_h0(
    family: SolutionFamily,
    window: ScanWindow = ScanWindow(),
    pole_ceiling: float = 1e8,
) -> BoundednessReport:
    """Boundedness statistics for f' (g')^2 / ((f^m - 1)(g^n - 1))."""
    fp = differentiate(family.f)
    gp = differentiate(family.g)
    h0 = (fp * gp**2) / (
        (family.f**family.m - Const(1)) * (family.g**family.n - Const(1))
    )
    z = window.grid()
    denos = denominators(h0)
    wps = wp_nodes(h0)
    vals = evaluate_many([h0] + denos + wps, z)
    hv = vals[0]
    den_vals = vals[1 : 1 + len(denos)]
    wp_vals = vals[1 + len(denos) :]
    excluded, _ = _exclusion_masks(
        z, [hv], den_vals, wp_vals, window.soft_exclusion, pole_ceiling
    )
    good = np.abs(hv[~excluded])
    good = np.sort(good[np.isfinite(good)])
    return BoundednessReport(
        family_id=family.family_id,
        window=window.to_dict(),
        max_abs=float(good[-1]) if good.size else float("nan"),
        p95_abs=_p95(good),
        median_abs=float(np.median(good)) if good.size else float("nan"),
        n_valid=int(good.size),
        excluded_fraction=float(np.count_nonzero(excluded) / z.size),
    )


@dataclass(frozen=True)
class LimitReport:
    label: str
    target_re: float
    target_im: float
    max_dev: float
    radius: float
    n_points: int

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "target_re": self.target_re,
            "target_im": self.target_im,
            "max_dev": self.max_dev,
            "radius": self.radius,
            "points": self.n_points,
        }


def _tau_engine_and_coeffs(tau):
    tc = complex(tau)
    k = 27.0 * tc * CBRT4 * (8.0 - tc**3)
    l = 54.0 * (tc**6 + 20.0 * tc**3 - 8.0)
    return tc, k, l, engine_for(invariants_from_tau(tau))


def diagnostic_h1(tau, radius: float = 1e-2, n_points: int = 64) -> LimitReport:
    """Near-origin ratio of {4 wp^3 + k wp + l - 9(-tau 4^(1/3) wp + 12 + 3 tau^3)^2}
    to wp^3; approaches 4."""
    tc, k, l, eng = _tau_engine_and_coeffs(tau)
    theta = 2.0 * math.pi * np.arange(n_points) / n_points
    p, _, _, _ = eng.eval(radius * np.exp(1j * theta))
    h1 = 4.0 * p**3 + k * p + l - 9.0 * (-tc * CBRT4 * p + 12.0 + 3.0 * tc**3) ** 2
    return LimitReport(
        "h1/wp^3", 4.0, 0.0, float(np.max(np.abs(h1 / p**3 - 4.0))), radius, n_points
    )


def diagnostic_h2(tau, radius: float = 1e-2, n_points: int = 64) -> LimitReport:
    """Near-origin ratio of
    [{c wp'^2 - (c wp + 9 tau^2) wp''}^2 - {36 c (tau^3 + 1) wp'}^2] to wp^6,
    c = 4^(1/3); approaches 4 c^2."""
    tc, _, _, eng = _tau_engine_and_coeffs(tau)
    theta = 2.0 * math.pi * np.arange(n_points) / n_points
    p, pp, ppp, _ = eng.eval(radius * np.exp(1j * theta))
    c = CBRT4
    bracket = c * pp**2 - (c * p + 9.0 * tc**2) * ppp
    h2 = bracket**2 - (36.0 * c * (tc**3 + 1.0) * pp) ** 2
    target = 4.0 * c * c
    return LimitReport(
        "h2/wp^6", target, 0.0, float(np.max(np.abs(h2 / p**6 - target))), radius,
        n_points,
    )


def h1_cell_min_modulus(tau, n_per_axis: int = 60, margin: float = 0.08) -> float:
    """Minimum |H1| over the interior of the fundamental cell (poles excluded
    by the margin); positive values support the never-vanishing behavior."""
    tc, k, l, eng = _tau_engine_and_coeffs(tau)
    t = np.linspace(margin, 1.0 - margin, n_per_axis)
    x, y = np.meshgrid(t, t)
    z = eng.cell_point(x.ravel(), y.ravel())
    p, _, _, _ = eng.eval(z)
    h1 = 4.0 * p**3 + k * p + l - 9.0 * (-tc * CBRT4 * p + 12.0 + 3.0 * tc**3) ** 2
    vals = np.abs(h1[np.isfinite(h1)])
    return float(np.min(vals)) if vals.size else float("nan")


@dataclass(frozen=True)
class OffsetReport:
    expected_re: float
    expected_im: float
    max_dev: float
    n_points: int

    def to_dict(self) -> dict:
        return {
            "expected_re": self.expected_re,
            "expected_im": self.expected_im,
            "max_dev": self.max_dev,
            "points": self.n_points,
        }


def second_derivative_offset_scan(
    tau, n_points: int = 50, fd_step: float = 4e-3, seed: int = 20260825,
    margin: float = 0.2,
) -> OffsetReport:
    """Check that wp'' - 6 wp^2 is the constant (27/2) tau 4^(1/3) (8 - tau^3).

    wp'' comes from a two-level Richardson extrapolation of central
    differences of wp', so constancy is measured against the engine's first
    derivative rather than the algebraic second-derivative formula.  The
    sample points keep ``margin`` away from the cell edges: closer to the
    poles, derivative growth pushes the finite-difference error above 1e-8.
    """
    expected = second_derivative_constant(tau)
    eng = engine_for(invariants_from_tau(tau))
    rng = np.random.default_rng(seed)
    x = rng.uniform(margin, 1.0 - margin, n_points)
    y = rng.uniform(margin, 1.0 - margin, n_points)
    z = eng.cell_point(x, y)

    def dpp(step):
        _, pp_plus, _, _ = eng.eval(z + step)
        _, pp_minus, _, _ = eng.eval(z - step)
        return (pp_plus - pp_minus) / (2.0 * step)

    def richardson(step):
        return (4.0 * dpp(step / 2.0) - dpp(step)) / 3.0

    second = (16.0 * richardson(fd_step / 2.0) - richardson(fd_step)) / 15.0
    p, _, _, _ = eng.eval(z)
    offset = second - 6.0 * p**2
    return OffsetReport(
        expected_re=float(np.real(expected)),
        expected_im=float(np.imag(expected)),
        max_dev=float(np.max(np.abs(offset - expected))),
        n_points=n_points,
    )
