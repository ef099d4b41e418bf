import numpy as np
import pytest

from dragonhull.params import params_from_alpha, params_from_q
from dragonhull.polygon import generate_recursive
from dragonhull.hull import build_hull, hull_for_segment, transform_hull
from dragonhull.polygon import make_pi0, make_pi1
from dragonhull.checks import (
    GRID_Q,
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

# Reference values of the gap-clearance table, frozen at 7 decimals;
# the clearance flips between the sixth and seventh row.
GAP_TABLE = [
    (96.235, 0.6715777, 0.3238188, 0.3234373, False),
    (96.236, 0.6715724, 0.3238001, 0.3234915, False),
    (96.237, 0.6715672, 0.3237814, 0.3235457, False),
    (96.238, 0.6715619, 0.3237627, 0.3235999, False),
    (96.239, 0.6715567, 0.3237439, 0.3236541, False),
    (96.240, 0.6715514, 0.3237252, 0.3237083, False),
    (96.241, 0.6715462, 0.3237065, 0.3237625, True),
    (96.242, 0.6715409, 0.3236878, 0.3238167, True),
    (96.243, 0.6715357, 0.3236691, 0.3238709, True),
    (96.244, 0.6715304, 0.3236504, 0.3239251, True),
    (96.245, 0.6715252, 0.3236317, 0.3239793, True),
]


# ----------------------------------------------------------------------
# catalog


def test_catalog_size_and_required_ids():
    catalog = condition_catalog()
    assert len(catalog) >= 14
    ids = {c.id for c in catalog}
    required = {"L5a", "L5b", "L6a", "L6b", "P1a-d1", "P1b-d2", "L9-n2",
                "L9-perp", "P3-main", "P3-case4", "P3-case6", "P3-case8",
                "P3-case9", "L11"}
    assert required <= ids


def test_unknown_condition():
    with pytest.raises(KeyError):
        evaluate_condition("no-such-condition", params_from_alpha(100.0))


def test_main_condition_signs():
    assert evaluate_condition("P3-main", params_from_q(0.66)) > 0.0
    assert evaluate_condition("P3-main", params_from_q(0.70)) < 0.0


def test_gap_condition_flip():
    assert evaluate_condition("L11", params_from_alpha(96.240)) < 0.0
    assert evaluate_condition("L11", params_from_alpha(96.241)) > 0.0


def test_tangent_condition_positive_everywhere():
    for beta in np.linspace(1.0, 44.9, 60):
        p = params_from_alpha(180.0 - 2.0 * beta)
        assert evaluate_condition("L6b", p) > 0.0


def test_every_condition_matches_its_claim_on_a_grid():
    grid = np.linspace(GRID_Q[0], GRID_Q[1], 100)
    for cond in condition_catalog():
        lo, hi = cond.claim_q
        slack = cond.claim_slack
        for q in grid:
            residual = cond.evaluate(params_from_q(float(q)))
            if lo + slack <= q <= hi - slack:
                assert residual >= 0.0, (cond.id, q, residual)
            elif cond.alpha_bracket is not None and (q < lo - slack or q > hi + slack):
                assert residual < 0.0, (cond.id, q, residual)


def test_arc_condition_fails_outside_claim():
    # sign really flips just outside the claimed polynomial window
    assert evaluate_condition("L6a", params_from_q(0.51)) < 0.0
    assert evaluate_condition("L6a", params_from_q(0.74)) < 0.0


# ----------------------------------------------------------------------
# thresholds


def test_main_threshold():
    result = find_threshold("P3-main", (95.0, 100.0), 1e-4)
    assert 0.6615289 <= result.critical_q <= 0.6615339
    assert result.critical_alpha_deg == pytest.approx(98.195, abs=2e-3)
    assert result.bracket_width <= 1e-4
    # residual changes sign across the reported bracket
    assert (evaluate_condition("P3-main", params_from_alpha(result.alpha_lo))
            * evaluate_condition("P3-main", params_from_alpha(result.alpha_hi))) < 0.0


def test_gap_threshold():
    result = find_threshold("L11", (95.0, 97.0), 1e-4)
    assert 96.240 < result.critical_alpha_deg < 96.241


def test_perpendicular_threshold():
    result = find_threshold("L9-perp", (108.0, 118.0), 1e-4)
    assert result.critical_alpha_deg == pytest.approx(113.0, abs=0.5)


def test_threshold_requires_sign_change():
    with pytest.raises(ValueError):
        find_threshold("P3-main", (99.0, 105.0), 1e-4)


def test_threshold_bracket_monotone():
    wide = find_threshold("P3-main", (95.0, 100.0), 2e-5)
    narrow = find_threshold("P3-main", (95.0, 100.0), 1e-5)
    assert narrow.bracket_width <= 0.5 * wide.bracket_width + 1e-12
    assert abs(narrow.iterations - (wide.iterations + 1)) <= 1


# ----------------------------------------------------------------------
# the gap table


def test_gap_table_matches_reference_rows():
    rows = lemma11_table()
    assert len(rows) == len(GAP_TABLE)
    for row, (alpha, q, lhs, rhs, satisfied) in zip(rows, GAP_TABLE):
        assert row["alpha_deg"] == pytest.approx(alpha, abs=1e-12)
        assert row["q"] == pytest.approx(q, abs=5e-7)
        assert row["lhs"] == pytest.approx(lhs, abs=5e-7)
        assert row["rhs"] == pytest.approx(rhs, abs=5e-7)
        assert row["satisfied"] == satisfied


def test_gap_table_custom_angles():
    rows = lemma11_table([96.0, 97.0])
    assert [r["alpha_deg"] for r in rows] == [96.0, 97.0]
    assert not rows[0]["satisfied"] and rows[1]["satisfied"]


def test_gap_geometry_against_polygon_coordinates():
    for alpha in (96.241, 100.0, 104.0):
        p = params_from_alpha(alpha)
        geometry = lemma11_geometry(p)
        poly = generate_recursive(4, p)
        gap = np.hypot(*(poly.vertices[11] - poly.vertices[7]))
        assert geometry["gap_length"] == pytest.approx(gap, abs=1e-9)
        lhs, rhs = lemma11_sides(p)
        assert geometry["gap_length"] == pytest.approx(rhs * p.q**4, rel=1e-12)
        assert geometry["s3_reach"] + geometry["s4_reach"] == pytest.approx(
            lhs * p.q**4, rel=1e-12)


def test_gap_closes_exactly_at_right_angle():
    p = params_from_alpha(90.0)
    assert lemma11_geometry(p)["gap_length"] == pytest.approx(0.0, abs=1e-15)
    poly = generate_recursive(4, p)
    assert np.hypot(*(poly.vertices[11] - poly.vertices[7])) < 1e-15


def test_gap_reaches_match_segment_hulls():
    # the transformed spirals carry the rotation in their phase, so the
    # protrusion angles are evaluated as stated, without re-rotating
    p = params_from_alpha(96.241)
    geometry = lemma11_geometry(p)
    h46 = hull_for_segment(4, 6, p)
    reach3 = h46.spirals["c"].radius_raw(-360.0 + p.beta_deg)
    assert reach3 == pytest.approx(geometry["s3_reach"], abs=1e-9)
    h410 = hull_for_segment(4, 10, p)
    reach4 = h410.spirals["c"].radius_raw(-180.0 + p.beta_deg)
    assert reach4 == pytest.approx(geometry["s4_reach"], abs=1e-9)


# ----------------------------------------------------------------------
# interleaved winding chain (separation case ordering)


def test_winding_chain_strictly_ordered():
    for alpha in (99.0, 103.0, 108.0):
        p = params_from_alpha(alpha)
        h = build_hull(p)
        c1 = transform_hull(h, make_pi0(p)).spirals["c"]
        d1 = transform_hull(h, make_pi0(p)).spirals["d"]
        c2 = transform_hull(h, make_pi1(p)).spirals["c"]
        d2 = transform_hull(h, make_pi1(p)).spirals["d"]
        for phi in np.arange(-180.0 - p.alpha_deg, -1500.0, -7.0):
            values = (c2.radius_raw(phi), d2.radius_raw(phi),
                      c1.radius_raw(phi), d1.radius_raw(phi),
                      c2.radius_raw(phi - 360.0))
            assert all(a > b for a, b in zip(values, values[1:])), (alpha, phi)


# ----------------------------------------------------------------------
# sampling verifications (smaller densities here; the stated densities
# run in the acceptance suite)


def test_hull_invariance_reports():
    for alpha in (90.0, 100.0, 108.0):
        report = verify_hull_invariance(params_from_alpha(alpha), samples_per_turn=180)
        assert report.passed, report
        assert report.subject == "hull-invariance"
        assert report.samples > 0
        assert report.passed == (report.min_margin >= -1e-9)


def test_containment_reports():
    report = verify_polygon_in_hull(8, params_from_alpha(100.0))
    assert report.passed
    assert report.samples == (2**8 + 1) + 9 * (2**8 - 2)


def test_containment_requires_level_two():
    with pytest.raises(ValueError):
        verify_polygon_in_hull(1, params_from_alpha(100.0))


def test_containment_level_two_interior_segments():
    # the two segments meeting the junction vertex are the level-2 base case
    report = verify_polygon_in_hull(2, params_from_alpha(108.0))
    assert report.passed
    assert report.samples == 5 + 9 * 2


def test_containment_end_segments_expected_failure():
    # the first and last segments genuinely leave the hull near the centers
    report = verify_polygon_in_hull(12, params_from_alpha(100.0),
                                    include_end_segments=True)
    assert not report.passed
    assert report.min_margin < -1e-3


def test_separation_reports():
    assert verify_separation(params_from_alpha(99.0), samples_per_turn=180).passed
    assert verify_separation(params_from_alpha(108.0), samples_per_turn=180).passed
    report = verify_separation(params_from_alpha(97.0), samples_per_turn=180)
    assert not report.passed
    assert report.min_margin < -1e-3
