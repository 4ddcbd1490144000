from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from overlapnum.constructions import best_lower
from overlapnum.errors import ParseError, PreconditionError
from overlapnum.exact import exact_phi
from overlapnum.families import complete, cube, cycle, gen_quadrangulation, path, planar_embedding, wheel
from overlapnum.graph import Graph
from overlapnum.model import RepKind, verify
from overlapnum.planar import (
    PlaneGraph,
    format_rotation,
    is_quadrangulation,
    parse_rotation,
    plan_decompose,
    planar_phi_upper,
    planar_pure_rep,
    subdivide_face,
    trace_faces,
)


@st.composite
def plane_graphs(draw, min_n: int = 3, max_n: int = 11):
    """Random planar graphs: a stacked triangulation minus random edges."""
    n = draw(st.integers(max(min_n, 4), max_n))
    edges = {(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)}
    faces = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    for v in range(4, n):
        a, b, c = faces.pop(draw(st.integers(0, len(faces) - 1)))
        edges |= {(a, v), (b, v), (c, v)}
        faces += [(a, b, v), (a, c, v), (b, c, v)]
    edges = sorted(edges)
    keep = draw(st.lists(st.sampled_from([True, True, True, False]), min_size=len(edges), max_size=len(edges)))
    G = Graph(n, [e for e, k in zip(edges, keep) if k])
    PG = planar_embedding(G)
    assert PG is not None
    return PG


def test_face_examples():
    assert sorted(map(len, trace_faces(planar_embedding(complete(4))))) == [3, 3, 3, 3]
    assert sorted(map(len, trace_faces(cube()))) == [4] * 6
    assert sorted(map(len, trace_faces(planar_embedding(cycle(6))))) == [6, 6]


@given(plane_graphs())
def test_face_lengths_sum_to_twice_the_edges(PG):
    assert sum(PG.face_lengths()) == 2 * PG.graph.m
    assert PG.euler_defects() == []


def test_bad_rotations_are_rejected():
    with pytest.raises(PreconditionError):
        PlaneGraph(cycle(3), [[1, 2], [0, 2]])
    with pytest.raises(PreconditionError):
        PlaneGraph(cycle(3), [[1, 2], [0, 2], [0]])
    # reversing the cyclic order at one cube vertex breaks Euler's formula
    PG = cube()
    rot = [list(r) for r in PG.rotation]
    rot[0][0], rot[0][1] = rot[0][1], rot[0][0]
    with pytest.raises(PreconditionError):
        PlaneGraph(PG.graph, rot)


def test_subdivide_face_keeps_a_plane_graph():
    PG = planar_embedding(complete(4))
    face = PG.facial_triangles()[0]
    P1 = subdivide_face(PG, face)
    assert P1.n == 5 and P1.graph.m == 6 - 3 + 3
    assert P1.euler_defects() == []


def test_quadrangulation_predicate():
    assert is_quadrangulation(cube())
    assert not is_quadrangulation(wheel(4))
    assert is_quadrangulation(planar_embedding(path(3)))


def test_k4_decomposition():
    D = plan_decompose(planar_embedding(complete(4)))
    assert (D.n_edges, D.n_triangles) == (3, 1)


@pytest.mark.parametrize("n", [8, 12, 16])
def test_quadrangulations_use_only_edges(n):
    PG = gen_quadrangulation(n)
    D = plan_decompose(PG)
    assert D.n_triangles == 0 and len(D) == 2 * n - 4


@pytest.mark.parametrize("k, parts", [(3, 4), (4, 4), (5, 6), (6, 6), (7, 8)])
def test_wheel_decompositions(k, parts):
    PG = wheel(k)
    D = plan_decompose(PG)
    assert len(D) == parts
    if k >= 4:
        assert len(D) <= 2 * PG.n - 5


def test_avoid_hint_keeps_the_edge_alone():
    PG = planar_embedding(complete(4))
    D = plan_decompose(PG, avoid=(0, 1))
    assert frozenset((0, 1)) in {p.vertices for p in D.parts if p.kind == "edge"}


@settings(max_examples=150)
@given(plane_graphs())
def test_decomposition_obeys_the_trichotomy(PG):
    D = plan_decompose(PG)
    D.validate(PG)
    n = PG.n
    assert (
        len(D) <= 2 * n - 5
        or (is_quadrangulation(PG) and len(D) == 2 * n - 4)
        or (n == 4 and PG.graph.is_complete())
    )


@settings(max_examples=100)
@given(plane_graphs())
def test_pure_rep_verifies(PG):
    rep = planar_pure_rep(PG)
    assert verify(PG.graph, rep, RepKind.PURE).ok
    if PG.graph.min_degree() >= 3:
        assert rep.t <= 2 * PG.n - 4


@settings(max_examples=100)
@given(plane_graphs(min_n=5))
def test_planar_upper_bound(PG):
    cert = planar_phi_upper(PG)
    assert cert.check(PG.graph)
    assert cert.value <= 2 * PG.n - 5


def test_planar_examples():
    assert planar_phi_upper(cube()).value == 11 == best_lower(cube().graph).value
    W5 = wheel(5)
    assert planar_phi_upper(W5).value <= 7
    P = gen_quadrangulation(16)
    assert planar_phi_upper(P).value == 27 == best_lower(P.graph).value


@settings(max_examples=25)
@given(plane_graphs(min_n=5, max_n=6))
def test_planar_upper_is_at_least_exact(PG):
    assert planar_phi_upper(PG).value >= exact_phi(PG.graph).value


@given(plane_graphs())
def test_rotation_round_trip(PG):
    text = format_rotation(PG)
    again = parse_rotation(text)
    assert again == PG and format_rotation(again) == text


@pytest.mark.parametrize("text", ["", "x\n", "3\n0 1 2\n", "3\n0: 1\n1: 0 2\n2: 1 7\n"])
def test_bad_rotation_text(text):
    with pytest.raises((ParseError, PreconditionError)):
        parse_rotation(text)
