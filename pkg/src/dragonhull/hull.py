"""The spiral hull enclosing every folded polygon.

The hull is the union of four regions tied to three centers: a spiral
strip about the start point (between an outer and an inner logarithmic
spiral), an annular sector closing it, a second spiral strip about the
end point, and a spiral-bounded sector about the first refinement vertex.
All five boundary spirals share the base q**(1/beta), so a similarity
maps spirals to spirals by scaling the amplitude and shifting the phase.

Angles are unwrapped degrees: the spirals wind clockwise (decreasing
polar angle) infinitely into their centers, so membership tests must
search branch angles theta - 360k.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .params import AngleParams
from .polygon import Similarity, make_pi0, make_pi1

_CENTER_EPS = 1e-12  # below this relative radius a point counts as the center
# Radial slacks are normalised by the local spiral radius, floored at this
# fraction of the hull scale: absolute coordinates carry ~1e-16 noise, so
# relative statements finer than that are vacuous below the floor.
_SCALE_FLOOR = 1e-6
_DEG = math.pi / 180.0


def _wrap_deg(angle: float) -> float:
    """Wrap to [-180, 180)."""
    return (angle + 180.0) % 360.0 - 180.0


def _direction(phi_deg):
    phi = np.deg2rad(phi_deg)
    return np.stack([np.cos(phi), np.sin(phi)], axis=-1)


class SpiralDomainError(ValueError):
    """Polar angle outside the (possibly extended) domain of a spiral."""


@dataclass(frozen=True)
class Spiral:
    """Logarithmic spiral radius(phi) = amplitude * q**(-(phi - phase)/beta).

    The radius grows with phi; one full turn toward the center contracts
    it by q**(360/beta).  `phi_min`/`phi_max` bound the working domain
    (phi_min may be -inf); `ext_min`/`ext_max` give the extended domain
    used by a few constructions and must enclose the working one.
    """

    center: tuple[float, float]
    amplitude: float
    phase_deg: float
    params: AngleParams
    phi_min: float
    phi_max: float
    ext_min: float | None = None
    ext_max: float | None = None

    @property
    def extended_min(self) -> float:
        return self.phi_min if self.ext_min is None else self.ext_min

    @property
    def extended_max(self) -> float:
        return self.phi_max if self.ext_max is None else self.ext_max

    def radius_raw(self, phi_deg):
        """Radius formula without any domain check (vector friendly)."""
        exponent = -(np.asarray(phi_deg, dtype=float) - self.phase_deg) / self.params.beta_deg
        return self.amplitude * np.exp(exponent * math.log(self.params.q))

    def radius(self, phi_deg: float, extended: bool = False) -> float:
        lo, hi = (self.extended_min, self.extended_max) if extended else (self.phi_min, self.phi_max)
        if not lo <= phi_deg <= hi:
            raise SpiralDomainError(
                f"polar angle {phi_deg} outside domain [{lo}, {hi}]"
                f"{'' if extended else ' (extension not allowed)'}"
            )
        return float(self.radius_raw(phi_deg))

    def point(self, phi_deg: float, extended: bool = False) -> np.ndarray:
        r = self.radius(phi_deg, extended=extended)
        return np.asarray(self.center) + r * _direction(phi_deg)

    def transformed(self, sim: Similarity, rotation_deg: float | None = None) -> "Spiral":
        """Image under a similarity: amplitude scales, phase and domain
        shift by the rotation.  A caller may pass a wrapped rotation;
        shifting phase and domain together leaves the point set unchanged."""
        rho = sim.rotation_deg if rotation_deg is None else rotation_deg
        cx, cy = sim.apply(self.center)
        return Spiral(
            center=(float(cx), float(cy)),
            amplitude=self.amplitude * sim.scale,
            phase_deg=self.phase_deg + rho,
            params=self.params,
            phi_min=self.phi_min + rho,
            phi_max=self.phi_max + rho,
            ext_min=None if self.ext_min is None else self.ext_min + rho,
            ext_max=None if self.ext_max is None else self.ext_max + rho,
        )


def spiral_radius(spiral: Spiral, phi_deg: float, extended: bool = False) -> float:
    """Radius of a spiral at an unwrapped polar angle (degrees)."""
    return spiral.radius(phi_deg, extended=extended)


def spiral_tangent_angle(params: AngleParams) -> float:
    """Constant angle (degrees) between the radius and the tangent of the
    boundary spirals: arctan(beta_rad / ln(2 cos beta))."""
    return math.degrees(math.atan(params.beta_rad / math.log(2.0 * math.cos(params.beta_rad))))


REGION_TAGS = ("S1", "S2", "S3", "S4", "T1", "T2")


@dataclass(frozen=True)
class HullModel:
    """The hull for one parameter set, possibly mapped by a similarity.

    `scale` and `rotation_deg` record the similarity relative to the base
    hull anchored on the unit segment.  Anchors are the five reference
    vertices (start, end, and the images of the first refinement vertex);
    `points` holds the named boundary points.
    """

    params: AngleParams
    scale: float
    rotation_deg: float
    anchors: dict[str, np.ndarray]
    spirals: dict[str, Spiral]
    points: dict[str, np.ndarray]
    arc_radius: float


@dataclass(frozen=True)
class MembershipResult:
    tags: frozenset[str]
    margin: float
    margins: dict[str, float]

    @property
    def inside(self) -> bool:
        return self.margin >= 0.0


def build_hull(params: AngleParams, warn_outside_window: bool = True) -> HullModel:
    """Construct the base hull for the unit segment.

    The region decomposition is only proved to enclose the polygons for
    90 <= alpha <= 108; outside that window the model is still built but
    a warning is emitted.
    """
    alpha, beta, q = params.alpha_deg, params.beta_deg, params.q
    if warn_outside_window and not 90.0 <= alpha <= 108.0:
        warnings.warn(
            f"alpha={alpha} outside the validity window [90, 108]; "
            "hull containment is not guaranteed",
            stacklevel=2,
        )

    one_minus_q4 = 1.0 - q**4
    amp_outer = 1.0 / one_minus_q4
    amp_inner = 1.0 - q**2 / one_minus_q4

    p00 = np.array([0.0, 0.0])
    p01 = np.array([1.0, 0.0])
    p11 = q * _direction(-beta)
    p21 = q**2 * _direction(-2.0 * beta)
    p23 = np.array([1.0 - q**2, 0.0])

    spiral_a = Spiral((0.0, 0.0), amp_outer, 0.0, params, -math.inf, -beta)
    spiral_b = Spiral((0.0, 0.0), amp_inner, 0.0, params, -math.inf, 0.0)
    # images of a and b about the end point; the outer one is extended to
    # -alpha - beta for the construction of the head region
    spiral_c = Spiral((1.0, 0.0), amp_outer, -alpha, params, -math.inf, -180.0,
                      ext_max=-alpha - beta)
    spiral_d = Spiral((1.0, 0.0), amp_inner, -alpha, params, -math.inf, -alpha - beta)
    # gap-closing arc about p11; the primed extension covers one more half turn
    spiral_e = Spiral((float(p11[0]), float(p11[1])), amp_outer, 4.0 * beta, params,
                      -beta, beta, ext_min=-180.0 - beta)

    arc_radius = q**3 / one_minus_q4

    point_a = spiral_a.point(-beta)
    point_e = spiral_a.point(-180.0 - beta)
    point_b = spiral_b.point(-beta)
    point_c = spiral_d.point(-alpha - beta)
    point_d = np.array([q, 0.0])
    point_f = np.array([float(amp_inner), 0.0])
    point_h = spiral_c.point(-alpha - beta, extended=True)

    # G: second intersection of the tangent to the inner spiral at B with
    # the circle of radius arc_radius about p11 (B itself lies on it)
    tau = math.radians(spiral_tangent_angle(params))
    radial = _direction(-beta)
    azimuthal = np.array([-radial[1], radial[0]])
    tangent_dir = math.cos(tau) * radial + math.sin(tau) * azimuthal
    s = -2.0 * float(tangent_dir @ (point_b - p11))
    point_g = point_b + s * tangent_dir

    return HullModel(
        params=params,
        scale=1.0,
        rotation_deg=0.0,
        anchors={"P00": p00, "P01": p01, "P11": p11, "P21": p21, "P23": p23},
        spirals={"a": spiral_a, "b": spiral_b, "c": spiral_c, "d": spiral_d, "e": spiral_e},
        points={"A": point_a, "B": point_b, "C": point_c, "D": point_d,
                "E": point_e, "F": point_f, "G": point_g, "H": point_h},
        arc_radius=arc_radius,
    )


def transform_hull(hull: HullModel, sim: Similarity) -> HullModel:
    """Image of a hull under a similarity.

    The rotation is wrapped to [-180, 180) before shifting spiral phases;
    since phases and domains shift together the described point sets are
    unchanged by the wrap.
    """
    rho = _wrap_deg(sim.rotation_deg)
    return HullModel(
        params=hull.params,
        scale=hull.scale * sim.scale,
        rotation_deg=_wrap_deg(hull.rotation_deg + rho),
        anchors={k: sim.apply(v) for k, v in hull.anchors.items()},
        spirals={k: v.transformed(sim, rotation_deg=rho) for k, v in hull.spirals.items()},
        points={k: sim.apply(v) for k, v in hull.points.items()},
        arc_radius=hull.arc_radius * sim.scale,
    )


def segment_map(n: int, k: int, params: AngleParams) -> Similarity:
    """The unique composition of the two generating maps carrying the unit
    segment onto segment k of the level-n polygon.

    Binary descent: the first half of a level is the 0-map image of the
    previous level, the second half the 1-map image with reversed segment
    order (segment k comes from segment 2**n - 1 - k)."""
    if not 0 <= k <= (1 << n) - 1 or n < 0:
        raise IndexError(f"segment (n={n}, k={k}) out of range")
    pi0, pi1 = make_pi0(params), make_pi1(params)
    sim = Similarity(0.0, 1.0)
    while n > 0:
        half = 1 << (n - 1)
        if k < half:
            sim = sim.compose(pi0)
        else:
            sim = sim.compose(pi1)
            k = (1 << n) - 1 - k
        n -= 1
    return sim


def hull_for_segment(n: int, k: int, params: AngleParams,
                     base: HullModel | None = None) -> HullModel:
    """The contracted hull copy anchored to segment k of the level-n
    polygon (the whole-composition route, one phase shift per spiral)."""
    if base is None:
        base = build_hull(params, warn_outside_window=False)
    return transform_hull(base, segment_map(n, k, params))


# ----------------------------------------------------------------------
# membership


def _polar_about(pts: np.ndarray, center) -> tuple[np.ndarray, np.ndarray]:
    rel = pts - np.asarray(center)
    d = np.hypot(rel[:, 0], rel[:, 1])
    theta = np.degrees(np.arctan2(rel[:, 1], rel[:, 0]))
    return d, theta


def _strip_margin(pts, outer: Spiral, inner: Spiral, phi_hi: float,
                  center_is_limit: bool, scale: float) -> np.ndarray:
    """Margin for a spiral strip  inner(phi) <= d <= outer(phi), phi <= phi_hi.

    For each point the branch angles theta - 360k, k >= 0 are searched and
    the best (largest) margin kept.  Radial slacks are normalised by the
    outer radius of the branch, angular slack is taken in radians.  The
    search stops once the outer radius falls below the point's distance,
    after which every deeper branch is radially hopeless.
    """
    d, theta = _polar_about(pts, outer.center)
    at_center = d <= _CENTER_EPS * scale
    ln_q = math.log(outer.params.q)
    turn_decay = -360.0 / outer.params.beta_deg * ln_q  # > 0
    d_floor = max(float(np.min(d[~at_center], initial=np.inf)), _CENTER_EPS * scale)
    start_radius = float(np.max(outer.radius_raw(theta), initial=0.0))
    if start_radius > 0.0 and np.isfinite(d_floor):
        jmax = int(math.ceil(max(math.log(start_radius / d_floor), 0.0) / turn_decay)) + 2
    else:
        jmax = 1
    best = np.full(len(pts), -np.inf)
    for j in range(jmax):
        phi = theta - 360.0 * j
        up = outer.radius_raw(phi)
        lo = inner.radius_raw(phi)
        s = np.maximum(up, _SCALE_FLOOR * scale)
        margin = np.minimum((up - d) / s, (d - lo) / s)
        margin = np.minimum(margin, (phi_hi - phi) * _DEG)
        best = np.maximum(best, margin)
    if center_is_limit:
        best[at_center] = 0.0
    return best


def _window_margin(pts, center, upper, lo_deg: float, hi_deg: float,
                   scale: float, inner: Spiral | None = None) -> np.ndarray:
    """Margin for a bounded angular window [lo_deg, hi_deg] with radius
    between a lower bound (zero or an inner spiral) and an upper bound
    (a spiral or a constant).  Only the branches nearest the window can
    win, so three candidate branch indices are tested."""
    d, theta = _polar_about(pts, center)
    mid = 0.5 * (lo_deg + hi_deg)
    j0 = np.round((theta - mid) / 360.0)
    best = np.full(len(pts), -np.inf)
    for dj in (-1.0, 0.0, 1.0):
        phi = theta - 360.0 * (j0 + dj)
        up = upper.radius_raw(phi) if isinstance(upper, Spiral) else np.full_like(d, upper)
        s = np.maximum(up, _SCALE_FLOOR * scale)
        lo_r = inner.radius_raw(phi) if inner is not None else np.zeros_like(d)
        margin = np.minimum((up - d) / s, (d - lo_r) / s)
        margin = np.minimum(margin, (hi_deg - phi) * _DEG)
        margin = np.minimum(margin, (phi - lo_deg) * _DEG)
        best = np.maximum(best, margin)
    return best


def region_margins(hull: HullModel, pts) -> dict[str, np.ndarray]:
    """Signed membership margin of each region for an (N, 2) point array.

    Positive means inside with room to spare, zero on the boundary; the
    value is relative to the local spiral scale, so it is comparable
    across windings and across transformed hulls.
    """
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    params, scale, rho = hull.params, hull.scale, hull.rotation_deg
    beta, alpha, q = params.beta_deg, params.alpha_deg, params.q
    sp = hull.spirals

    out = {
        "S1": _strip_margin(pts, sp["a"], sp["b"], -beta + rho, True, scale),
        "S2": _window_margin(pts, sp["b"].center, q * scale, -beta + rho, rho,
                             scale, inner=sp["b"]),
        "S3": _strip_margin(pts, sp["c"], sp["d"], -alpha - beta + rho, True, scale),
        "S4": _window_margin(pts, sp["e"].center, sp["e"], -beta + rho, beta + rho, scale),
        "T1": _window_margin(pts, sp["e"].center, sp["e"], -180.0 - beta + rho,
                             -beta + rho, scale),
    }

    # T2: disc sector of the closing arc, cut by the tangent line at B
    sector = _window_margin(pts, sp["e"].center, hull.arc_radius,
                            -180.0 - beta - alpha + rho, -180.0 - beta + rho, scale)
    b_pt = hull.points["B"]
    g_pt = hull.points["G"]
    p11 = np.asarray(sp["e"].center)
    tangent = g_pt - b_pt
    tangent /= np.hypot(*tangent)
    normal = np.array([-tangent[1], tangent[0]])
    side_sign = math.copysign(1.0, float(normal @ (p11 - b_pt)))
    side = side_sign * ((pts - b_pt) @ normal) / hull.arc_radius
    out["T2"] = np.minimum(sector, side)
    return out


def hull_margin(hull: HullModel, pts) -> np.ndarray:
    """Margin of membership in the hull (max over the four regions)."""
    margins = region_margins(hull, pts)
    return np.maximum.reduce([margins[t] for t in ("S1", "S2", "S3", "S4")])


def membership(hull: HullModel, point, tol: float = 1e-9) -> MembershipResult:
    """Region tags containing a single point, with signed margins."""
    pts = np.asarray(point, dtype=float).reshape(1, 2)
    margins = {tag: float(values[0]) for tag, values in region_margins(hull, pts).items()}
    tags = frozenset(tag for tag, m in margins.items() if m >= -tol)
    overall = max(margins[t] for t in ("S1", "S2", "S3", "S4"))
    return MembershipResult(tags=tags, margin=overall, margins=margins)


# ----------------------------------------------------------------------
# boundary tracing


def _spiral_samples(spiral: Spiral, phi_start: float, step: float,
                    cutoff: float) -> np.ndarray:
    """Sample a spiral from phi_start winding inward until the radius
    drops below cutoff."""
    turns = math.log(cutoff / spiral.radius_raw(phi_start)) / (
        -360.0 / spiral.params.beta_deg * math.log(spiral.params.q))
    count = max(int(math.ceil(-turns * 360.0 / step)), 1) + 1
    phis = phi_start - step * np.arange(count)
    radii = spiral.radius_raw(phis)
    keep = radii >= cutoff
    phis, radii = phis[keep], radii[keep]
    return np.asarray(spiral.center) + radii[:, None] * _direction(phis)


def boundary_polyline(hull: HullModel, samples_per_turn: int = 360,
                      min_radius: float = 1e-12) -> np.ndarray:
    """Closed polyline tracing the five boundary pieces in order: outer
    spiral in, inner spiral out, head outer spiral in, head inner spiral
    out, closing arc.  The azimuthal step is 360/samples_per_turn scaled
    by the tangent inclination, so chord spacing stays near
    radius * 2*pi/samples_per_turn.  Windings stop below min_radius
    (relative to the hull scale); the centers themselves are inserted so
    the trace stays closed.
    """
    if samples_per_turn < 8:
        raise ValueError("samples_per_turn must be at least 8")
    params, rho = hull.params, hull.rotation_deg
    beta, alpha = params.beta_deg, params.alpha_deg
    sp = hull.spirals
    step = 360.0 / samples_per_turn * math.sin(math.radians(spiral_tangent_angle(params)))
    cutoff = min_radius * hull.scale

    part_a = _spiral_samples(sp["a"], -beta + rho, step, cutoff)
    part_b = _spiral_samples(sp["b"], rho, step, cutoff)[::-1]
    part_c = _spiral_samples(sp["c"], -180.0 + rho, step, cutoff)
    part_d = _spiral_samples(sp["d"], -alpha - beta + rho, step, cutoff)[::-1]
    arc_count = max(int(math.ceil(2.0 * beta / step)), 2) + 1
    arc_phis = np.linspace(beta + rho, -beta + rho, arc_count)
    part_e = np.asarray(sp["e"].center) + sp["e"].radius_raw(arc_phis)[:, None] * _direction(arc_phis)

    center_a = np.asarray(sp["a"].center)[None, :]
    center_c = np.asarray(sp["c"].center)[None, :]
    return np.vstack([part_a, center_a, part_b, part_c, center_c, part_d, part_e])
