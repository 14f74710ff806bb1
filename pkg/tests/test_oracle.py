"""Independent enumeration oracles: lattice segments and basis vertex scans.

Segment sizes below were frozen from runs of this module and are kept as
regression pins; the dual-route membership assert inside enumerate_segment
checks every point twice on every run.
"""

import os
from fractions import Fraction

import pytest

from dantzigfig.oracle import (
    DEFAULT_POINT_CAP,
    BudgetExceeded,
    UnboundedSuspected,
    _simplex_points,
    enumerate_segment,
    facet_irredundancy,
    hull_vertices_by_basis,
    verify_hull_equivalence,
    worker_count,
)
from dantzigfig.orders import OrderKind
from dantzigfig.polytope_core import HRep
from dantzigfig.grlex_family import grlex_hrep, grlex_vertices, make_grlex
from dantzigfig.grevlex_family import (
    grevlex_hrep,
    grevlex_vertices,
    make_grevlex,
)

F = Fraction

SEGMENT_SIZES = {
    # theta -> (grlex size, grevlex size)
    (2, 2, 2): (72, 69),
    (3, 1, 2): (71, 70),
    (1, 1, 1): (16, 15),
    (2, 3, 2, 1): (394, 432),
    (1, 1, 1, 1): (56, 50),
    (5, 5, 5): (756, 741),
    (2, 2, 2, 2, 2): (2605, 2401),
}


# ----------------------------------------------------------- segments


def test_simplex_points_colex_head():
    pts = list(_simplex_points(2, 2))
    assert pts[:4] == [(0, 0), (1, 0), (2, 0), (0, 1)]
    assert len(pts) == 6  # C(4,2)


def test_simplex_points_cover_and_order():
    pts = list(_simplex_points(3, 3))
    assert len(pts) == len(set(pts)) == 20  # C(6,3)
    assert all(sum(p) <= 3 for p in pts)
    # colex: last coordinate is the slowest index
    lasts = [p[-1] for p in pts]
    assert lasts == sorted(lasts)


@pytest.mark.parametrize("theta,sizes", sorted(SEGMENT_SIZES.items()))
def test_segment_sizes_frozen(theta, sizes):
    p = enumerate_segment(OrderKind.GRLEX, theta)
    q = enumerate_segment(OrderKind.GREVLEX, theta)
    assert (len(p), len(q)) == sizes


def test_segment_membership_protocol():
    seg = enumerate_segment(OrderKind.GRLEX, (2, 2, 2))
    assert (0, 0, 0) in seg
    assert (2, 2, 2) in seg
    assert (0, 0, 6) not in seg  # degree 6 but lex-greater than theta
    assert (6, 0, 0) in seg  # degree 6 and lex-smaller
    assert (0, 0, 7) not in seg


def test_segment_top_levels_partition():
    # at top degree b, grlex keeps the lex-smaller points and grevlex the
    # rest plus theta itself: sizes add up to one full level plus 1
    theta = (2, 2, 2)
    b, d = sum(theta), len(theta)
    level = [x for x in _simplex_points(d, b) if sum(x) == b]
    p = enumerate_segment(OrderKind.GRLEX, theta)
    q = enumerate_segment(OrderKind.GREVLEX, theta)
    p_top = sum(1 for x in p.points if sum(x) == b)
    q_top = sum(1 for x in q.points if sum(x) == b)
    assert p_top + q_top == len(level) + 1


def test_segment_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_segment(OrderKind.GRLEX, (50, 50, 50, 50, 50), point_cap=1000)
    assert DEFAULT_POINT_CAP == 2_000_000


# --------------------------------------------------------- basis scan


def unit_square_h():
    return HRep([((-1, 0), 0), ((0, -1), 0), ((1, 0), 1), ((0, 1), 1)])


def test_basis_scan_square():
    out = hull_vertices_by_basis(unit_square_h())
    assert out.coordinate_set() == {
        (0, 0),
        (1, 0),
        (0, 1),
        (1, 1),
    }
    for coords, rows in zip(out.coords, out.tight_rows):
        assert len(rows) >= 2


def test_basis_scan_cube():
    rows = []
    for i in range(3):
        lo, hi = [0, 0, 0], [0, 0, 0]
        lo[i], hi[i] = -1, 1
        rows.append((tuple(lo), 0))
        rows.append((tuple(hi), 1))
    out = hull_vertices_by_basis(HRep(rows))
    assert len(out) == 8
    assert all(set(c) <= {0, 1} for c in out.coordinate_set())


def test_basis_scan_degenerate_apex():
    # square pyramid: apex (0,0,2) lies on 4 facets, so many bases hit it
    rows = [
        ((0, 0, -1), 0),
        ((2, 0, 1), 2),
        ((-2, 0, 1), 2),
        ((0, 2, 1), 2),
        ((0, -2, 1), 2),
    ]
    out = hull_vertices_by_basis(HRep(rows))
    assert len(out) == 5
    assert (0, 0, 2) in out.coordinate_set()
    apex_rows = out.tight_rows[out.coords.index((F(0), F(0), F(2)))]
    assert len(apex_rows) == 4  # all four slanted facets tight


def test_basis_scan_unbounded():
    with pytest.raises(UnboundedSuspected):
        hull_vertices_by_basis(HRep([((-1, 0), 0), ((0, -1), 0)]))


def test_basis_scan_without_structural_certificate():
    # the cube has no all-positive row, so the quick certificate fails;
    # the axis-ray probe also fails, and the scan proceeds to the answer
    rows = []
    for i in range(2):
        lo, hi = [0, 0], [0, 0]
        lo[i], hi[i] = -1, 1
        rows.append((tuple(lo), 0))
        rows.append((tuple(hi), 1))
    out = hull_vertices_by_basis(HRep(rows))
    assert len(out) == 4


def test_basis_scan_workers_smoke(monkeypatch):
    monkeypatch.setenv("DANTZIG_SEED_THREADS", "2")
    assert worker_count() == 2
    inst = make_grlex((2, 2, 2))
    out = hull_vertices_by_basis(grlex_hrep(inst))
    assert out.coordinate_set() == grlex_vertices(inst).coordinate_set()


def test_worker_count_default(monkeypatch):
    monkeypatch.delenv("DANTZIG_SEED_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("DANTZIG_SEED_THREADS", "junk")
    assert worker_count() == 1


# ------------------------------------------------------ equivalence


@pytest.mark.parametrize("theta", [(2, 2, 2), (1, 2, 3), (3, 1, 2)])
def test_hull_equivalence_grlex(theta):
    inst = make_grlex(theta)
    seg = enumerate_segment(OrderKind.GRLEX, theta)
    report = verify_hull_equivalence(seg, grlex_hrep(inst), grlex_vertices(inst))
    assert report["pass"], report


@pytest.mark.parametrize("theta", [(2, 2, 2), (1, 1, 1), (2, 1, 3, 1)])
def test_hull_equivalence_grevlex(theta):
    inst = make_grevlex(theta)
    seg = enumerate_segment(OrderKind.GREVLEX, theta)
    report = verify_hull_equivalence(
        seg, grevlex_hrep(inst), grevlex_vertices(inst)
    )
    assert report["pass"], report


def test_hull_equivalence_detects_mismatch():
    # feeding the grevlex segment to the grlex hull must fail check (a)
    inst = make_grlex((2, 2, 2))
    seg = enumerate_segment(OrderKind.GREVLEX, (2, 2, 2))
    report = verify_hull_equivalence(seg, grlex_hrep(inst), grlex_vertices(inst))
    assert not report["segment_in_hrep"]
    assert not report["pass"]


def test_hull_equivalence_detects_wrong_vrep():
    from dantzigfig.polytope_core import VRep

    h = unit_square_h()
    seg_like = enumerate_segment(OrderKind.GRLEX, (1, 1))
    bad_v = VRep([("a", (0, 0)), ("b", (1, 0)), ("c", (0, 1)), ("d", (2, 2))])
    report = verify_hull_equivalence(seg_like, h, bad_v)
    assert not report["basis_equals_closed_form"]
    assert not report["pass"]


# --------------------------------------------------- irredundancy


def test_facet_irredundancy_family_hreps():
    for make, hrep in (
        (make_grlex, grlex_hrep),
        (make_grevlex, grevlex_hrep),
    ):
        rows = facet_irredundancy(hrep(make((2, 2, 2))))
        assert all(r["changed"] for r in rows)


def test_facet_irredundancy_flags_redundant_row():
    h = HRep(
        [
            ((-1, 0), 0),
            ((0, -1), 0),
            ((1, 0), 1),
            ((0, 1), 1),
            ((1, 1), 5),  # slack everywhere
        ]
    )
    rows = facet_irredundancy(h)
    assert [r["changed"] for r in rows] == [True, True, True, True, False]
