from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wedgedyn import (
    BFGroup,
    Endomorphism,
    NotExpanding,
    TightMap,
    VERTEX,
    cover_from_coords,
    cover_point,
    deck,
    graph_point,
    iota,
    psi,
)

F = Fraction


def test_graph_point_canonicalization():
    assert graph_point(0, F(0)) == VERTEX
    assert graph_point(1, F(1)) == VERTEX
    assert graph_point(1, F(1, 3)).edge == 1
    with pytest.raises(ValueError):
        graph_point(0, F(5, 4))


def test_iota_and_inverse_roundtrip():
    cp = cover_point(1, F(2, 5), (3, -1))
    assert iota(cp) == (F(3), F(-3, 5))
    assert cover_from_coords(iota(cp)) == cp
    v = cover_point(0, F(0), (2, 2))
    assert cover_from_coords((2, 2)) == v
    assert deck(v, (1, 1)).base == (3, 3)
    # t = 1 canonicalizes onto the next lattice point
    assert cover_point(0, F(1), (0, 0)) == cover_point(1, F(0), (1, 0))


def test_eval_slots(phi2):
    # psi(a) = aaab at speed 4: t in [0, 1/4) runs along a from 0
    assert phi2.eval(graph_point(0, F(1, 8))) == graph_point(0, F(1, 2))
    assert phi2.eval(graph_point(0, F(1, 4))) == graph_point(0, F(0)) == VERTEX
    assert phi2.eval(graph_point(0, F(7, 8))) == graph_point(1, F(1, 2))
    assert phi2.eval(VERTEX) == VERTEX


def test_eval_orientation_reversal(phi1):
    # psi(a) = aabAB: 4th letter A traverses a backwards
    p = phi1.eval(graph_point(0, F(13, 20)))  # slot 3, u = 1/4
    assert p == graph_point(0, F(3, 4))


def test_lift_equivariance(phi2):
    a = phi2.A
    for cp in [cover_point(0, F(1, 8), (0, 0)), cover_point(1, F(5, 7), (2, -3))]:
        for n in [(1, 0), (-2, 5)]:
            lhs = phi2.lift_eval(deck(cp, n))
            rhs = deck(phi2.lift_eval(cp), a.apply(n))
            assert lhs == rhs


def test_lift_projects_to_eval(phi3):
    cp = cover_point(0, F(3, 14), (1, 1))
    assert phi3.lift_eval(cp).point == phi3.eval(cp.point)


def test_sigma_reports(phi2, phi3):
    r2 = phi2.sigma_report()
    assert r2.c_sup == F(3, 4)
    assert r2.q2max == F(9, 16)
    assert r2.c == F(3, 4)
    assert r2.lam == 2
    assert r2.delta == F(3, 4)
    r3 = phi3.sigma_report()
    assert r3.c == F(3, 7) and r3.lam == 5 and r3.delta == F(3, 28)
    s2 = phi2.sigma_report(norm="sup")
    assert s2.c == F(3, 4) and s2.lam == 2


def test_sigma_report_not_expanding(phi1):
    with pytest.raises(NotExpanding):
        phi1.sigma_report()


def test_fixed_points_phi2(phi2):
    pts = phi2.periodic_points(1)
    coords = [(p.point.edge, p.point.t) for p in pts]
    assert coords == [(0, F(0)), (0, F(1, 3)), (0, F(2, 3)), (1, F(1, 3)), (1, F(2, 3))]
    by_coord = {(p.point.edge, p.point.t): p for p in pts}
    assert by_coord[(0, F(1, 3))].translation == (1, 0)
    assert by_coord[(0, F(2, 3))].translation == (2, 0)
    assert by_coord[(1, F(1, 3))].translation == (0, 1)
    assert by_coord[(1, F(2, 3))].translation == (0, 2)
    for p in pts:
        assert phi2.eval(p.point) == p.point
        assert p.period == 1 and p.least_period == 1


def test_fixed_point_count_law(phi2):
    for k in range(1, 7):
        n1 = 1 if k % 2 else 3
        pts = phi2.periodic_points(k)
        assert len(pts) == 2 ** k + 4 ** k - n1
        for p in pts:
            assert phi2.eval_iter(p.point, k) == p.point


def test_least_period_divides(phi2):
    pts = phi2.periodic_points(2)
    fixed = [p for p in pts if p.least_period == 1]
    assert len(fixed) == 5
    for p in pts:
        assert p.period == 2
        if p.least_period == 1:
            assert phi2.eval(p.point) == p.point
        else:
            assert p.least_period == 2
            assert phi2.eval(p.point) != p.point


def test_displacements_and_alpha(phi2, a2):
    g = BFGroup(a2, 1)
    pts = phi2.periodic_points(1)
    by_coord = {(p.point.edge, p.point.t): p for p in pts}
    da13 = by_coord[(0, F(1, 3))].displacement
    da23 = by_coord[(0, F(2, 3))].displacement
    db13 = by_coord[(1, F(1, 3))].displacement
    db23 = by_coord[(1, F(2, 3))].displacement
    assert da13 == g.reduce((1, 0)) == g.reduce((0, 1)) == db13
    assert da23 == g.reduce((2, 0)) == g.reduce((0, 2)) == db23
    assert da13 != da23
    assert len({p.displacement for p in pts}) == 3
    assert by_coord[(0, F(1, 3))].alpha_image.coords == (F(2, 3), F(2, 3))
    assert by_coord[(0, F(2, 3))].alpha_image.coords == (F(1, 3), F(1, 3))
    # alpha = psi of the displacement class
    for p in pts:
        assert p.alpha_image == psi(p.displacement)


def test_displacement_set_covers_group(phi2, a2):
    classes = phi2.displacement_set(1)
    assert len(classes) == 3  # all of BF_1(A_2)
    assert len(list(BFGroup(a2, 1).elements())) == 3


def test_orbit_relation(phi2, a2):
    """D_k(f x) = A D_k(x): the translation of the iterate, recomputed from
    a fresh base-0 lift, lands in the expected coset."""
    for k in range(1, 5):
        g = BFGroup(a2, k)
        for p in phi2.periodic_points(k):
            if p.displacement is None:
                continue
            fx = phi2.eval(p.point)
            fx_img = phi2.lift_iter(cover_point(fx.edge, fx.t, (0, 0)), k)
            assert g.reduce(fx_img.base) == g.reduce(a2.apply(p.translation))


def test_shadowing_classes(phi2):
    classes = phi2.shadowing_classes(1)
    # {vertex}, {(a,1/3),(b,1/3)}, {(a,2/3),(b,2/3)} grouped by alpha
    assert len(classes) == 3
    sizes = sorted(len(pts) for _, pts in classes)
    assert sizes == [1, 2, 2]
    for torus_pt, pts in classes:
        for p in pts:
            assert p.alpha_image == torus_pt


def test_translation_matches_lift(phi2):
    for p in phi2.periodic_points(2):
        img = phi2.lift_iter(cover_point(p.point.edge, p.point.t, (0, 0)), 2)
        assert img.point == p.point
        assert img.base == p.translation


_PHI2 = TightMap(Endomorphism.from_strings(2, "aaab", "bbba"))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 1), st.fractions(min_value=0, max_value=1, max_denominator=64))
def test_eval_iter_composes(e, t):
    p = graph_point(e, t)
    assert _PHI2.eval_iter(p, 2) == _PHI2.eval(_PHI2.eval(p))
    assert _PHI2.eval_iter(p, 0) == p
