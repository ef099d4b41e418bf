"""Self-contact detection for folded polygons at scale.

All segments of a level-n polygon have the same length q**n, so a
uniform spatial grid with that cell size is the natural index: each
segment's (slightly inflated) bounding box covers at most four cells,
and candidate pairs only ever share a cell.  Orientation tests run in
plain floats with a rounding-error bound; results inside the bound are
re-evaluated exactly with rational arithmetic on the binary values.

Contacts are classified per pair with a fixed priority: coincident
endpoints first, then an endpoint resting on the other segment's
interior, then proper transversal crossings (collinear overlap of
positive length also counts as proper).
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .params import AngleParams, params_from_alpha
from .polygon import FoldPolygon, MAX_LEVEL, generate_recursive, make_pi0, make_pi1
from .hull import build_hull, boundary_polyline, transform_hull

PROPER_CROSSING = "proper_crossing"
ENDPOINT_ON_INTERIOR = "endpoint_on_interior"
VERTEX_COINCIDENCE = "vertex_coincidence"
CONTACT_KINDS = (PROPER_CROSSING, ENDPOINT_ON_INTERIOR, VERTEX_COINCIDENCE)

_ORIENT_EPS = 3.3306690738754716e-16  # (3 + 16 eps) eps, Shewchuk's bound


@dataclass(frozen=True)
class ContactEvent:
    kind: str
    seg_i: int
    seg_j: int
    location: tuple[float, float]
    separation: float


@dataclass
class CrossingReport:
    level: int
    alpha_deg: float
    counts: dict[str, int]
    events: list[ContactEvent]
    wall_time: float
    truncated: bool = False

    @property
    def proper_crossings(self) -> int:
        return self.counts[PROPER_CROSSING]


def _orient(ax, ay, bx, by, cx, cy) -> int:
    """Sign of the turn a->b->c, exact.

    The float determinant is trusted outside its rounding-error bound;
    inside it the sign is recomputed with Fractions, which represent the
    binary inputs exactly.
    """
    detleft = (bx - ax) * (cy - ay)
    detright = (by - ay) * (cx - ax)
    det = detleft - detright
    if abs(det) >= _ORIENT_EPS * (abs(detleft) + abs(detright)):
        return 1 if det > 0.0 else (-1 if det < 0.0 else 0)
    exact = ((Fraction(bx) - Fraction(ax)) * (Fraction(cy) - Fraction(ay))
             - (Fraction(by) - Fraction(ay)) * (Fraction(cx) - Fraction(ax)))
    return (exact > 0) - (exact < 0)


def _point_segment_distance(px, py, ax, ay, bx, by):
    """Distance from p to segment ab and the projection parameter."""
    vx, vy = bx - ax, by - ay
    length2 = vx * vx + vy * vy
    t = ((px - ax) * vx + (py - ay) * vy) / length2
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    dx, dy = px - (ax + t * vx), py - (ay + t * vy)
    return math.hypot(dx, dy), t


def _classify_pair(p, q, r, s, eps):
    """Contact event data for one non-adjacent segment pair, or None.

    p,q are the endpoints of the first segment, r,s of the second; eps is
    the absolute coincidence tolerance.
    """
    # endpoint-endpoint coincidence
    best = None
    for e1 in (p, q):
        for e2 in (r, s):
            d = math.hypot(e1[0] - e2[0], e1[1] - e2[1])
            if d <= eps and (best is None or d < best[0]):
                best = (d, e1, e2)
    if best is not None:
        d, e1, e2 = best
        mid = (0.5 * (e1[0] + e2[0]), 0.5 * (e1[1] + e2[1]))
        return VERTEX_COINCIDENCE, mid, d

    # endpoint on the other segment's interior
    best = None
    for point, (a, b) in ((p, (r, s)), (q, (r, s)), (r, (p, q)), (s, (p, q))):
        d, _t = _point_segment_distance(point[0], point[1], a[0], a[1], b[0], b[1])
        if d <= eps and (best is None or d < best[0]):
            best = (d, point)
    if best is not None:
        d, point = best
        return ENDPOINT_ON_INTERIOR, (point[0], point[1]), d

    o1 = _orient(p[0], p[1], q[0], q[1], r[0], r[1])
    o2 = _orient(p[0], p[1], q[0], q[1], s[0], s[1])
    o3 = _orient(r[0], r[1], s[0], s[1], p[0], p[1])
    o4 = _orient(r[0], r[1], s[0], s[1], q[0], q[1])

    if o1 == 0 and o2 == 0:
        # collinear; report overlap of positive length as a proper crossing
        vx, vy = q[0] - p[0], q[1] - p[1]
        tr = ((r[0] - p[0]) * vx + (r[1] - p[1]) * vy)
        ts = ((s[0] - p[0]) * vx + (s[1] - p[1]) * vy)
        length2 = vx * vx + vy * vy
        lo, hi = max(0.0, min(tr, ts) / length2), min(1.0, max(tr, ts) / length2)
        overlap = (hi - lo) * math.sqrt(length2)
        if overlap > eps:
            mid_t = 0.5 * (lo + hi)
            return PROPER_CROSSING, (p[0] + mid_t * vx, p[1] + mid_t * vy), -overlap
        return None

    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        # transversal crossing; depth proxy = closest endpoint-to-line gap
        d1 = abs((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))
        d2 = abs((q[0] - p[0]) * (s[1] - p[1]) - (q[1] - p[1]) * (s[0] - p[0]))
        len_pq = math.hypot(q[0] - p[0], q[1] - p[1])
        d3 = abs((s[0] - r[0]) * (p[1] - r[1]) - (s[1] - r[1]) * (p[0] - r[0]))
        d4 = abs((s[0] - r[0]) * (q[1] - r[1]) - (s[1] - r[1]) * (q[0] - r[0]))
        len_rs = math.hypot(s[0] - r[0], s[1] - r[1])
        depth = min(d1 / len_pq, d2 / len_pq, d3 / len_rs, d4 / len_rs)
        denom = ((q[0] - p[0]) * (s[1] - r[1]) - (q[1] - p[1]) * (s[0] - r[0]))
        t = ((r[0] - p[0]) * (s[1] - r[1]) - (r[1] - p[1]) * (s[0] - r[0])) / denom
        return PROPER_CROSSING, (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])), -depth
    return None


def _candidate_pairs(poly: FoldPolygon, eps: float) -> set[tuple[int, int]]:
    """Non-adjacent segment pairs sharing a grid cell.

    Cell size equals the segment length, and boxes are inflated by eps,
    so any two segments within eps of each other land in a common cell.
    """
    v = poly.vertices
    cell = poly.params.q ** poly.level
    inv = 1.0 / cell
    x0 = np.floor((np.minimum(v[:-1, 0], v[1:, 0]) - eps) * inv).astype(np.int64)
    x1 = np.floor((np.maximum(v[:-1, 0], v[1:, 0]) + eps) * inv).astype(np.int64)
    y0 = np.floor((np.minimum(v[:-1, 1], v[1:, 1]) - eps) * inv).astype(np.int64)
    y1 = np.floor((np.maximum(v[:-1, 1], v[1:, 1]) + eps) * inv).astype(np.int64)
    cells: dict[tuple[int, int], list[int]] = {}
    for i in range(len(x0)):
        for cx in range(x0[i], x1[i] + 1):
            for cy in range(y0[i], y1[i] + 1):
                cells.setdefault((cx, cy), []).append(i)
    pairs: set[tuple[int, int]] = set()
    for members in cells.values():
        if len(members) > 1:
            for i, j in itertools.combinations(members, 2):
                if j > i + 1:
                    pairs.add((i, j))
    return pairs


def _all_pairs(poly: FoldPolygon) -> itertools.chain:
    n = poly.num_segments
    return ((i, j) for i in range(n) for j in range(i + 2, n))


def find_contacts(poly: FoldPolygon, tol: float = 1e-9, method: str = "grid",
                  max_events: int | None = None) -> CrossingReport:
    """All contacts between non-adjacent segments of a polygon.

    tol scales with the segment length: endpoints within tol*q**n are
    coincident, and an endpoint within that distance of another segment
    rests on it.  method 'brute' checks all pairs (the oracle used to
    validate the grid).  Events are sorted by segment indices; counts are
    always complete even when the stored events are truncated.
    """
    if poly.level > MAX_LEVEL:
        raise ValueError(f"refusing more than 2**{MAX_LEVEL} segments")
    if tol < 0.0:
        raise ValueError("tol must be nonnegative")
    start = time.perf_counter()
    eps = tol * poly.params.q ** poly.level
    if method == "grid":
        pairs = sorted(_candidate_pairs(poly, eps))
    elif method == "brute":
        pairs = _all_pairs(poly)
    else:
        raise ValueError(f"unknown method {method!r}")

    v = poly.vertices
    vx, vy = v[:, 0], v[:, 1]
    counts = {kind: 0 for kind in CONTACT_KINDS}
    events: list[ContactEvent] = []
    for i, j in pairs:
        # cheap box reject before the full classifier
        if (min(vx[i], vx[i + 1]) - eps > max(vx[j], vx[j + 1])
                or min(vx[j], vx[j + 1]) - eps > max(vx[i], vx[i + 1])
                or min(vy[i], vy[i + 1]) - eps > max(vy[j], vy[j + 1])
                or min(vy[j], vy[j + 1]) - eps > max(vy[i], vy[i + 1])):
            continue
        hit = _classify_pair(
            (vx[i], vy[i]), (vx[i + 1], vy[i + 1]),
            (vx[j], vy[j]), (vx[j + 1], vy[j + 1]), eps)
        if hit is None:
            continue
        kind, location, separation = hit
        counts[kind] += 1
        events.append(ContactEvent(kind, i, j, (float(location[0]), float(location[1])),
                                   float(separation)))
    events.sort(key=lambda e: (e.seg_i, e.seg_j))
    truncated = max_events is not None and len(events) > max_events
    if truncated:
        events = events[:max_events]
    return CrossingReport(
        level=poly.level,
        alpha_deg=poly.params.alpha_deg,
        counts=counts,
        events=events,
        wall_time=time.perf_counter() - start,
        truncated=truncated,
    )


@dataclass(frozen=True)
class CriticalAngleBracket:
    alpha_lo: float
    alpha_hi: float
    level: int
    iterations: int


def empirical_critical_angle(n: int, bracket: tuple[float, float],
                             tol: float = 0.01, contact_tol: float = 1e-9) -> CriticalAngleBracket:
    """Bisect for the angle at which level-n proper crossings disappear.

    The low end of the bracket must produce at least one proper crossing
    and the high end none; vertex coincidences do not count as crossings.
    """

    def has_crossing(alpha: float) -> bool:
        poly = generate_recursive(n, params_from_alpha(alpha))
        return find_contacts(poly, contact_tol, max_events=0).proper_crossings > 0

    lo, hi = float(bracket[0]), float(bracket[1])
    if lo >= hi:
        raise ValueError(f"invalid bracket [{lo}, {hi}]")
    if not has_crossing(lo):
        raise ValueError(f"no crossing at the low end alpha={lo} (level {n})")
    if has_crossing(hi):
        raise ValueError(f"still crossing at the high end alpha={hi} (level {n})")
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if has_crossing(mid):
            lo = mid
        else:
            hi = mid
        iterations += 1
    return CriticalAngleBracket(alpha_lo=lo, alpha_hi=hi, level=n, iterations=iterations)


@dataclass(frozen=True)
class Theorem1Report:
    level: int
    alpha_deg: float
    start_clearance: float
    end_clearance: float
    chord_slack: float
    radial_bound_slack: float
    passed: bool


def theorem1_boundary_checks(n: int, params: AngleParams,
                             samples_per_turn: int = 360) -> Theorem1Report:
    """Direct numeric checks of the four special-segment arguments.

    1/2: a circle of radius q**n around either base endpoint stays clear
    of the other map's hull image (sampled boundary).  3: the chord bound
    q - q**n > q**n.  4: the radial bound q**4 q**(alpha/beta) / (1-q**4) < 1.
    All four are reported as positive slacks.
    """
    if n < 4:
        raise ValueError("boundary checks are stated for n >= 4")
    q, r = params.q, params.q**n
    hull = build_hull(params)
    image1 = transform_hull(hull, make_pi1(params))
    image0 = transform_hull(hull, make_pi0(params))
    boundary1 = boundary_polyline(image1, samples_per_turn, 1e-9)
    boundary0 = boundary_polyline(image0, samples_per_turn, 1e-9)
    start_clear = float(np.min(np.hypot(*(boundary1 - hull.anchors["P00"]).T))) - r
    end_clear = float(np.min(np.hypot(*(boundary0 - hull.anchors["P01"]).T))) - r
    chord = (q - r) - r
    radial = 1.0 - q**4 * q**params.alpha_over_beta / (1.0 - q**4)
    return Theorem1Report(
        level=n,
        alpha_deg=params.alpha_deg,
        start_clearance=start_clear,
        end_clearance=end_clear,
        chord_slack=chord,
        radial_bound_slack=radial,
        passed=min(start_clear, end_clear, chord, radial) > 0.0,
    )
