from fractions import Fraction
from itertools import product

import pytest

from wedgedyn import (
    BudgetExceeded,
    Endomorphism,
    NontrivialHomologyAction,
    NotEigenvectorOne,
    TightMap,
    concatenate,
    eigen_rotation_number,
    hull_vertices,
    minimal_loops,
    periodic_rotation_vector,
    point_in_hull,
    rotation_set,
    transition_matrix,
)

F = Fraction


def test_transition_entries_phi1(phi1):
    g = transition_matrix(phi1)
    assert set(g.vectors(0, 0)) == {(0, 0), (1, 0), (1, 1)}
    assert set(g.vectors(1, 0)) == {(1, 0), (2, 0)}
    assert set(g.vectors(0, 1)) == {(-1, -1), (-1, 1)}
    assert set(g.vectors(1, 1)) == {(0, -1), (-1, 0), (-1, -1)}
    assert g.column_cardinality(0) == 5
    assert g.column_cardinality(1) == 5


def test_transition_requires_trivial_action(phi2):
    with pytest.raises(NontrivialHomologyAction):
        transition_matrix(phi2)


def test_transition_identity_map():
    ident = TightMap(Endomorphism.from_strings(2, "a", "b"))
    g = transition_matrix(ident)
    assert g.vectors(0, 0) == ((0, 0),)
    assert g.vectors(1, 1) == ((0, 0),)
    assert g.vectors(0, 1) == ()
    loops = minimal_loops(g)
    assert len(loops) == 2
    assert all(l.length == 1 for l in loops)


def test_minimal_loops_phi1(phi1):
    loops = minimal_loops(transition_matrix(phi1))
    assert len(loops) == 10
    lengths = sorted(l.length for l in loops)
    assert lengths == [1] * 6 + [2] * 4
    length1 = {l.rotation_vector() for l in loops if l.length == 1}
    assert length1 == {(F(0), F(0)), (F(1), F(0)), (F(1), F(1)),
                       (F(0), F(-1)), (F(-1), F(0)), (F(-1), F(-1))}
    length2 = {l.rotation_vector() for l in loops if l.length == 2}
    assert length2 == {(F(0), F(-1, 2)), (F(0), F(1, 2)),
                       (F(1, 2), F(-1, 2)), (F(1, 2), F(1, 2))}


def test_minimal_loops_budget(phi1):
    with pytest.raises(BudgetExceeded):
        minimal_loops(transition_matrix(phi1), budget=3)


def test_rotation_set_phi1(phi1):
    rep = rotation_set(phi1)
    assert rep.hull_vertices == ((-1, -1), (0, -1), (1, 0), (1, 1), (-1, 0))
    assert len(rep.loop_vectors) == 10
    assert set(rep.fixed_point_vectors) == {
        (F(0), F(0)), (F(1), F(0)), (F(1), F(1)),
        (F(0), F(-1)), (F(-1), F(0)), (F(-1), F(-1))}
    assert set(rep.period2_vectors) == {
        (F(0), F(-1, 2)), (F(0), F(1, 2)), (F(1, 2), F(-1, 2)), (F(1, 2), F(1, 2))}
    for _, v in rep.loop_vectors:
        assert point_in_hull(v, rep.hull_vertices)


def test_hull_simple_cases():
    sq = [(F(0), F(0)), (F(1), F(0)), (F(0), F(1)), (F(1), F(1)), (F(1, 2), F(1, 2))]
    assert set(hull_vertices(sq)) == {(0, 0), (1, 0), (1, 1), (0, 1)}
    assert hull_vertices([(F(2), F(2))]) == ((2, 2),)
    # collinear points collapse to the two ends
    line = [(F(0), F(0)), (F(1), F(1)), (F(2), F(2))]
    assert set(hull_vertices(line)) == {(0, 0), (2, 2)}


def test_point_in_hull():
    hull = ((-1, -1), (0, -1), (1, 0), (1, 1), (-1, 0))
    assert point_in_hull((F(0), F(0)), hull)
    assert point_in_hull((F(1), F(1)), hull)  # vertex
    assert point_in_hull((F(1, 2), F(0)), hull)  # edge
    assert not point_in_hull((F(2), F(0)), hull)
    assert not point_in_hull((F(0), F(3, 4)), hull)


def test_concatenate_farey(phi1):
    loops = minimal_loops(transition_matrix(phi1))
    for l1 in loops:
        for l2 in loops:
            start1 = l1.transitions[0][0]
            if not any(t[0] == start1 for t in l2.transitions):
                continue
            joined = concatenate(l1, l2)
            assert joined.length == l1.length + l2.length
            v1, v2, vj = l1.rotation_vector(), l2.rotation_vector(), joined.rotation_vector()
            for i in range(2):
                assert vj[i] * (l1.length + l2.length) == v1[i] * l1.length + v2[i] * l2.length


def test_closed_walk_oracle(phi1):
    """Brute-force closed walks up to length 5 give vectors inside the hull."""
    g = transition_matrix(phi1)
    rep = rotation_set(phi1)
    occ = {
        (i, j): g.vectors(i, j) for i in range(2) for j in range(2)
    }
    for length in range(1, 6):
        for nodes in product(range(2), repeat=length):
            path_nodes = nodes + (nodes[0],)
            choices = [occ[(path_nodes[s + 1], path_nodes[s])] for s in range(length)]
            if any(not c for c in choices):
                continue
            for combo in product(*choices):
                total = [sum(v[i] for v in combo) for i in range(2)]
                vec = (F(total[0], length), F(total[1], length))
                assert point_in_hull(vec, rep.hull_vertices)


def test_periodic_rotation_vector(phi1, phi2):
    pts = phi1.periodic_points(1)
    for p in pts:
        v = periodic_rotation_vector(phi1, p)
        assert v == tuple(F(x) for x in p.translation)
        assert point_in_hull(v, rotation_set(phi1).hull_vertices)
    with pytest.raises(NontrivialHomologyAction):
        periodic_rotation_vector(phi2, phi2.periodic_points(1)[0])


def test_periodic_vectors_inside_hull(phi1):
    hull = rotation_set(phi1).hull_vertices
    for k in range(1, 5):
        for p in phi1.periodic_points(k):
            v = tuple(F(x, k) for x in p.translation)
            assert point_in_hull(v, hull)


def test_eigen_rotation_number(phi1, phi2):
    p = phi1.periodic_points(1)[1]
    v = (1, 0)
    rho = eigen_rotation_number(phi1, p, v)
    assert rho == p.translation[0]
    with pytest.raises(NotEigenvectorOne):
        eigen_rotation_number(phi2, phi2.periodic_points(1)[0], (1, 0))
