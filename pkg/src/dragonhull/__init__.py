"""Folded polygons for arbitrary unfolding angles, the logarithmic-spiral
hull that contains them, numeric verification of every condition behind
the critical angles 95.126 / 96.241 / 98.195 degrees, and self-contact
detection at scale."""

__version__ = "0.1.0"

from .params import AngleParams, params_from_alpha, params_from_q
from .sequence import L, R, complement, prefix, sigma, sigma_reflection
from .polygon import (
    FoldPolygon,
    Similarity,
    check_collinearity_left,
    check_collinearity_right,
    collinear_chain_left,
    collinear_chain_right,
    edge_lengths,
    generate_inflation,
    generate_recursive,
    interior_angles_deg,
    make_pi0,
    make_pi1,
    turn_symbols,
)
from .hull import (
    HullModel,
    MembershipResult,
    Spiral,
    SpiralDomainError,
    boundary_polyline,
    build_hull,
    hull_for_segment,
    hull_margin,
    membership,
    region_margins,
    segment_map,
    spiral_radius,
    spiral_tangent_angle,
    transform_hull,
)
from .checks import (
    Condition,
    ThresholdResult,
    VerificationReport,
    condition_catalog,
    evaluate_condition,
    find_threshold,
    lemma11_geometry,
    lemma11_sides,
    lemma11_table,
    verify_hull_invariance,
    verify_polygon_in_hull,
    verify_separation,
)
from .intersect import (
    ContactEvent,
    CriticalAngleBracket,
    CrossingReport,
    Theorem1Report,
    empirical_critical_angle,
    find_contacts,
    theorem1_boundary_checks,
)

__all__ = [name for name in dir() if not name.startswith("_")]
