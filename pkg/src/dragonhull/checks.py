"""The inequality ledger: every numeric condition behind the hull
construction and the separation argument as a named, evaluable residual
of the coupled parameters, plus threshold recovery and sampling-based
set verification.

Sign convention: a positive residual means the condition holds.  Each
condition records the q-interval on which it is claimed to hold and the
rounding slack of that claim, so a grid regression can re-check the
claimed sign pattern without tripping over the quote's rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .params import AngleParams, params_from_alpha
from .polygon import generate_recursive, make_pi0, make_pi1
from .hull import build_hull, boundary_polyline, hull_margin, transform_hull

Q_AT_90 = math.sqrt(2.0) / 2.0
Q_AT_108 = (math.sqrt(5.0) - 1.0) / 2.0
GRID_Q = (0.524, Q_AT_90)  # regression grid for the claimed sign patterns


@dataclass(frozen=True)
class Condition:
    """A named inequality with residual > 0 meaning 'holds'.

    claim_q is the closed q-interval on which the condition is claimed to
    hold, claim_slack the absolute q-rounding of that claim.  quoted is
    the human-readable form of the claim; alpha_bracket, when set, is a
    default bisection bracket (degrees) enclosing the genuine threshold.
    """

    id: str
    description: str
    evaluate: Callable[[AngleParams], float]
    claim_q: tuple[float, float]
    claim_slack: float
    quoted: str
    alpha_bracket: Optional[tuple[float, float]] = None


@dataclass(frozen=True)
class ThresholdResult:
    condition_id: str
    critical_q: float
    critical_alpha_deg: float
    bracket_width: float
    iterations: int
    alpha_lo: float
    alpha_hi: float


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    alpha_deg: float
    samples: int
    min_margin: float
    worst_point: tuple[float, float]
    passed: bool
    details: dict = field(default_factory=dict)


def _w(q: float) -> float:
    """Amplitude of the inner spirals: 1 - q^2/(1 - q^4)."""
    return 1.0 - q**2 / (1.0 - q**4)


def _qp(p: AngleParams, exponent: float) -> float:
    return p.q**exponent


def condition_catalog() -> list[Condition]:
    """All catalogued conditions, in presentation order."""
    window = (Q_AT_108, Q_AT_90)

    def c(cid, description, fn, claim, slack, quoted, bracket=None):
        return Condition(cid, description, fn, claim, slack, quoted, bracket)

    return [
        c("L5a", "point at distance q on the base segment lies in the head strip:"
                 " inner(180) <= 1-q <= outer(180) about the end point",
          lambda p: min((1.0 - p.q) - _w(p.q) * p.q**2,
                        p.q**2 / (1.0 - p.q**4) - (1.0 - p.q)),
          window, 1e-6, "holds on the whole window"),
        c("L5b", "head-spiral endpoint lies in the start strip:"
                 " b(lam) <= |H| <= a(lam) at lam = -arctan(sqrt(4q^2-1)/(1-2q^4))",
          _l5b_residual,
          window, 1e-6, "holds on the whole window"),
        c("L6a", "closing arc clears the base segment:"
                 " 1 - 4q^2 - 2q^4 + 12q^6 + q^8 - 4q^10 < 0",
          lambda p: -(1.0 - 4.0 * p.q**2 - 2.0 * p.q**4 + 12.0 * p.q**6
                      + p.q**8 - 4.0 * p.q**10),
          (0.524, 0.724), 1.5e-3, "holds for 0.524 <= q <= 0.724"),
        c("L6b", "tangent climbs steeper than the half-complement:"
                 " beta/ln(2 cos beta) > tan beta",
          lambda p: p.beta_rad / math.log(2.0 * math.cos(p.beta_rad))
                    - math.tan(p.beta_rad),
          (0.51, 0.99), 1e-6, "holds for all 0 < beta < 45"),
        c("P1a-d1", "first inner-image winding stays outside the inner spiral:"
                    " w*q + w*q^2 <= q",
          lambda p: (p.q - _w(p.q) * p.q**2) - _w(p.q) * p.q,
          (0.57, Q_AT_90), 2e-3, "holds for q > 0.57",
          bracket=(118.0, 128.0)),
        c("P1b-d2", "second inner-image winding fits inside the closing arc:"
                    " w*q^2 <= q^3/(1-q^4)",
          lambda p: p.q**3 / (1.0 - p.q**4) - _w(p.q) * p.q**2,
          (0.57, Q_AT_90), 2e-3, "holds for q > 0.57",
          bracket=(118.0, 128.0)),
        c("L9-n2", "second-level segment clears the inner spiral:"
                   " 1 - q - q^2 - q^4 + q^5 < 0",
          lambda p: -(1.0 - p.q - p.q**2 - p.q**4 + p.q**5),
          (0.6, Q_AT_90), 6e-3, "holds for 0.6 < q < 1",
          bracket=(108.0, 120.0)),
        c("L9-perp", "foot of the perpendicular beats the inner amplitude:"
                     " sqrt(4q^2-1)(1-q^2-q^4+q^6) - 2(q^2-q^4-q^6) > 0",
          lambda p: math.sqrt(4.0 * p.q**2 - 1.0)
                    * (1.0 - p.q**2 - p.q**4 + p.q**6)
                    - 2.0 * (p.q**2 - p.q**4 - p.q**6),
          (0.599, Q_AT_90), 1.5e-3, "holds for q > 0.599 (alpha <= 113)",
          bracket=(108.0, 118.0)),
        c("P3-main", "outer image-spiral stays inside the opposite inner one:"
                     " 1 - q^2 - q^4 - q^(alpha/beta) > 0",
          lambda p: 1.0 - p.q**2 - p.q**4 - _qp(p, p.alpha_over_beta),
          (GRID_Q[0], 0.6615289), 1e-5,
          "zero crossing inside [0.6615289, 0.6615339] in q (alpha near 98.195)",
          bracket=(95.0, 100.0)),
        c("P3-case1", "start-strip images separate:"
                      " q^2/(1-q^4) < 1 - q^(alpha/beta+3)/(1-q^4)",
          lambda p: (1.0 - _qp(p, p.alpha_over_beta + 3.0) / (1.0 - p.q**4))
                    - p.q**2 / (1.0 - p.q**4),
          GRID_Q, 1e-6, "holds for q <= sqrt(2)/2"),
        c("P3-case2", "start strip vs head strip:"
                      " q^(alpha/beta+4)/(1-q^4) < q - q^3/(1-q^4)",
          lambda p: (p.q - p.q**3 / (1.0 - p.q**4))
                    - _qp(p, p.alpha_over_beta + 4.0) / (1.0 - p.q**4),
          GRID_Q, 1e-6, "holds for q <= sqrt(2)/2"),
        c("P3-case4", "head strip vs sector image:"
                      " q^2 < q - q^(alpha/beta+2)/(1-q^4)",
          lambda p: (p.q - _qp(p, p.alpha_over_beta + 2.0) / (1.0 - p.q**4))
                    - p.q**2,
          (GRID_Q[0], 0.67), 5e-3, "holds for q < 0.67",
          bracket=(94.0, 99.0)),
        c("P3-case5a", "deep start-strip windings separate (first case):"
                       " q^5/(1-q^4) < q - q^(2 alpha/beta+5)/(1-q^4)",
          lambda p: (p.q - _qp(p, 2.0 * p.alpha_over_beta + 5.0) / (1.0 - p.q**4))
                    - p.q**5 / (1.0 - p.q**4),
          GRID_Q, 1e-6, "holds for q <= sqrt(2)/2"),
        c("P3-case5b", "deep start-strip windings separate (second case):"
                       " q^(alpha/beta+7)/(1-q^4) < q - q^(alpha/beta+3)/(1-q^4)",
          lambda p: (p.q - _qp(p, p.alpha_over_beta + 3.0) / (1.0 - p.q**4))
                    - _qp(p, p.alpha_over_beta + 7.0) / (1.0 - p.q**4),
          GRID_Q, 1e-6, "holds for q <= sqrt(2)/2"),
        c("P3-case6", "annular-sector image vs head strip:"
                      " q^5/(1-q^4) < q - q^2",
          lambda p: (p.q - p.q**2) - p.q**5 / (1.0 - p.q**4),
          (GRID_Q[0], 0.69), 1e-2, "holds for q < 0.69",
          bracket=(90.3, 94.0)),
        c("P3-case8", "sector image vs head strip:"
                      " q^5/(1-q^4) < q^2 - q^4/(1-q^4)",
          lambda p: (p.q**2 - p.q**4 / (1.0 - p.q**4)) - p.q**5 / (1.0 - p.q**4),
          (GRID_Q[0], 0.68), 8e-3, "holds for q < 0.68",
          bracket=(92.0, 97.0)),
        c("P3-case9", "start-strip image vs far sector image:"
                      " q^4/(1-q^4) < 1 - q^2 - q^(alpha/beta+3)/(1-q^4)",
          lambda p: (1.0 - p.q**2 - _qp(p, p.alpha_over_beta + 3.0) / (1.0 - p.q**4))
                    - p.q**4 / (1.0 - p.q**4),
          (GRID_Q[0], 0.69), 8e-3, "holds for q < 0.69",
          bracket=(90.3, 94.0)),
        c("P3-case7-d1c2", "interleaved winding chain stays ordered:"
                          " 1 - q^2 - q^4 - q^(alpha/beta+4) > 0",
          lambda p: 1.0 - p.q**2 - p.q**4 - _qp(p, p.alpha_over_beta + 4.0),
          GRID_Q, 1e-6, "holds for q <= sqrt(2)/2"),
        c("L11", "contracted hulls clear the level-four gap:"
                 " q^3/(1-q^4) (q^(alpha/beta) + q^2) < 2(cos beta + cos 3 beta)",
          _l11_residual,
          (GRID_Q[0], 0.6715462), 1e-5,
          "flips between alpha = 96.240 and 96.241",
          bracket=(95.0, 97.0)),
    ]


def _l5b_residual(p: AngleParams) -> float:
    q = p.q
    lam = math.degrees(math.atan(math.sqrt(4.0 * q**2 - 1.0) / (1.0 - 2.0 * q**4)))
    h_len = q * math.sqrt(1.0 - q**2 + q**6) / (1.0 - q**4)
    outer = q ** (lam / p.beta_deg) / (1.0 - q**4)
    inner = _w(q) * q ** (lam / p.beta_deg)
    return min(outer - h_len, h_len - inner)


def _l11_residual(p: AngleParams) -> float:
    lhs, rhs = lemma11_sides(p)
    return rhs - lhs


def lemma11_sides(p: AngleParams) -> tuple[float, float]:
    """Left and right side of the gap-clearance inequality."""
    q, beta = p.q, p.beta_rad
    lhs = q**3 / (1.0 - q**4) * (q**p.alpha_over_beta + q**2)
    rhs = 2.0 * (math.cos(beta) + math.cos(3.0 * beta))
    return lhs, rhs


_CATALOG_BY_ID: dict[str, Condition] | None = None


def _catalog_index() -> dict[str, Condition]:
    global _CATALOG_BY_ID
    if _CATALOG_BY_ID is None:
        _CATALOG_BY_ID = {cond.id: cond for cond in condition_catalog()}
    return _CATALOG_BY_ID


def evaluate_condition(condition_id: str, params: AngleParams) -> float:
    """Signed residual of one condition (positive = holds)."""
    try:
        cond = _catalog_index()[condition_id]
    except KeyError:
        raise KeyError(f"unknown condition id {condition_id!r}") from None
    return cond.evaluate(params)


def find_threshold(condition_id: str, bracket: tuple[float, float],
                   tol: float = 1e-6) -> ThresholdResult:
    """Recover the critical angle of a condition by bisection on alpha.

    The residual must change sign across the bracket (degrees); the
    search stops when the bracket is narrower than tol.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    f_lo = evaluate_condition(condition_id, params_from_alpha(lo))
    f_hi = evaluate_condition(condition_id, params_from_alpha(hi))
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise ValueError(
            f"no sign change for {condition_id} on [{lo}, {hi}]: "
            f"residuals {f_lo:.3e}, {f_hi:.3e}")
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = evaluate_condition(condition_id, params_from_alpha(mid))
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        iterations += 1
    critical_alpha = 0.5 * (lo + hi)
    return ThresholdResult(
        condition_id=condition_id,
        critical_q=params_from_alpha(critical_alpha).q,
        critical_alpha_deg=critical_alpha,
        bracket_width=hi - lo,
        iterations=iterations,
        alpha_lo=lo,
        alpha_hi=hi,
    )


# ----------------------------------------------------------------------
# sampling-based set verification


def verify_hull_invariance(params: AngleParams, samples_per_turn: int = 720,
                           tol: float = 1e-9, min_radius: float = 1e-10) -> VerificationReport:
    """Check that both generating maps send the hull into itself.

    The hull boundary is sampled (windings down to min_radius times the
    hull scale), every sample is mapped by both maps, and the membership
    margin of each image is required to stay above -tol.
    """
    hull = build_hull(params)
    boundary = boundary_polyline(hull, samples_per_turn, min_radius)
    images = np.vstack([make_pi0(params).apply(boundary),
                        make_pi1(params).apply(boundary)])
    margins = hull_margin(hull, images)
    worst = int(np.argmin(margins))
    min_margin = float(margins[worst])
    return VerificationReport(
        subject="hull-invariance",
        alpha_deg=params.alpha_deg,
        samples=len(images),
        min_margin=min_margin,
        worst_point=(float(images[worst, 0]), float(images[worst, 1])),
        passed=min_margin >= -tol,
        details={"samples_per_turn": samples_per_turn, "min_radius": min_radius},
    )


def verify_polygon_in_hull(n: int, params: AngleParams,
                           samples_per_segment: int = 9, tol: float = 1e-9,
                           include_end_segments: bool = False) -> VerificationReport:
    """Check that the level-n polygon lies inside the hull.

    Every vertex must be a member; every segment except the first and the
    last is sampled at samples_per_segment interior points which must be
    members too.  The two end segments genuinely leave the hull, so they
    are only included on request (expected to fail).
    """
    if n < 2:
        raise ValueError("containment verification needs level n >= 2")
    poly = generate_recursive(n, params)
    hull = build_hull(params)
    v = poly.vertices
    lo = 0 if include_end_segments else 1
    hi = len(v) - 1 if include_end_segments else len(v) - 2
    starts, ends = v[lo:hi], v[lo + 1:hi + 1]
    t = (np.arange(1, samples_per_segment + 1) / (samples_per_segment + 1.0))[:, None, None]
    interior = ((1.0 - t) * starts[None] + t * ends[None]).reshape(-1, 2)
    pts = np.vstack([v, interior])
    margins = hull_margin(hull, pts)
    worst = int(np.argmin(margins))
    min_margin = float(margins[worst])
    return VerificationReport(
        subject="polygon-containment",
        alpha_deg=params.alpha_deg,
        samples=len(pts),
        min_margin=min_margin,
        worst_point=(float(pts[worst, 0]), float(pts[worst, 1])),
        passed=min_margin >= -tol,
        details={"level": n, "samples_per_segment": samples_per_segment,
                 "include_end_segments": include_end_segments},
    )


def verify_separation(params: AngleParams, samples_per_turn: int = 720,
                      tol: float = 1e-9, min_radius: float = 1e-10,
                      exclusion: float = 1e-6) -> VerificationReport:
    """Check that the two hull images only share the single junction point.

    The boundary of each image is sampled and required to stay outside
    the other image; a disc of radius exclusion*q around the junction is
    skipped.  The reported margin is the separation margin (positive =
    safely outside), so the report passes when min_margin >= -tol.
    """
    hull = build_hull(params)
    images = (transform_hull(hull, make_pi0(params)),
              transform_hull(hull, make_pi1(params)))
    junction = hull.anchors["P11"]
    min_margin = math.inf
    worst_point = (math.nan, math.nan)
    total = 0
    for own, other in (images, images[::-1]):
        boundary = boundary_polyline(own, samples_per_turn, min_radius)
        keep = np.hypot(*(boundary - junction).T) > exclusion * params.q
        pts = boundary[keep]
        total += len(pts)
        sep = -hull_margin(other, pts)
        worst = int(np.argmin(sep))
        if float(sep[worst]) < min_margin:
            min_margin = float(sep[worst])
            worst_point = (float(pts[worst, 0]), float(pts[worst, 1]))
    return VerificationReport(
        subject="separation",
        alpha_deg=params.alpha_deg,
        samples=total,
        min_margin=min_margin,
        worst_point=worst_point,
        passed=min_margin >= -tol,
        details={"samples_per_turn": samples_per_turn, "min_radius": min_radius,
                 "exclusion": exclusion},
    )


# ----------------------------------------------------------------------
# the gap table and its geometry


LEMMA11_ALPHAS = tuple(round(96.235 + 0.001 * i, 3) for i in range(11))


def lemma11_table(alpha_list=None) -> list[dict]:
    """Rows of the gap-clearance table: alpha, beta, q, both sides, and
    whether the clearance inequality is satisfied."""
    rows = []
    for alpha in (LEMMA11_ALPHAS if alpha_list is None else alpha_list):
        p = params_from_alpha(alpha)
        lhs, rhs = lemma11_sides(p)
        rows.append({
            "alpha_deg": alpha,
            "beta_deg": p.beta_deg,
            "q": p.q,
            "lhs": lhs,
            "rhs": rhs,
            "satisfied": lhs < rhs,
        })
    return rows


def lemma11_geometry(params: AngleParams) -> dict:
    """Closed-form pieces of the level-four gap argument.

    gap_length is the distance bridged by the loop between vertices 7 and
    11 of the level-4 polygon; s3_reach and s4_reach are how far the two
    contracted hulls protrude into the gap from either side.
    """
    q, beta = params.q, params.beta_rad
    gap_length = 2.0 * q**4 * (math.cos(beta) + math.cos(3.0 * beta))
    s3_reach = q**4 / (1.0 - q**4) * q ** (params.alpha_over_beta + 3.0)
    s4_reach = q**4 / (1.0 - q**4) * q**5
    return {"gap_length": gap_length, "s3_reach": s3_reach, "s4_reach": s4_reach}
