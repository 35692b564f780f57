"""
Tests for words, gain triangulations and length functions
"""

import pytest

from domcert.core.errors import ConfigError, LengthFunctionError, TriangulationError
from domcert.core.schema import EdgeSpec, ExplicitTriangulation, FaceSideSpec
from domcert.surface.lengths import LengthFunction, face_slack, flatten_report
from domcert.surface.triangulation import GainTriangulation, build_triangulation, riemann_triangulation, validate
from domcert.surface.words import (
    cyclic_reduce,
    format_word,
    free_reduce,
    invert,
    is_trivial_in_surface_group,
    multiply,
    parse_word,
    surface_generator_names,
    surface_relator,
    tree_generator_names,
)

NAMES = surface_generator_names(2)


def explicit_spec(t: GainTriangulation) -> ExplicitTriangulation:
    """Write a triangulation back in the explicit config form"""
    return ExplicitTriangulation(
        vertices=list(t.vertex_names),
        edges=[
            EdgeSpec(
                name=e.name,
                tail=t.vertex_names[e.tail],
                head=t.vertex_names[e.head],
                gain=format_word(e.gain, t.generator_names),
            )
            for e in t.edges
        ],
        faces=[[FaceSideSpec(edge=t.edges[h.edge].name, forward=h.forward) for h in f.sides] for f in t.faces],
    )


def test_free_reduce_cancels_adjacent_inverses():
    """Adjacent inverse letters cancel, repeatedly"""
    assert free_reduce([1, 2, -2, -1, 3]) == (3,)
    assert free_reduce([1, -1]) == ()
    assert multiply((1, 2), invert((1, 2))) == ()


def test_parse_and_format_words():
    """Words parse with exponents and format back"""
    assert parse_word("a1 b1 a1^-1 b1^-1", NAMES) == (1, 2, -1, -2)
    assert parse_word("xy^-1", tree_generator_names(2)) == (1, -2)
    assert parse_word("a2^3", NAMES) == (3, 3, 3)
    assert parse_word("e", NAMES) == ()
    assert format_word((3, 3, -4), NAMES) == "a2^2 b2^-1"
    assert format_word((), NAMES) == "e"


def test_parse_rejects_unknown_generators():
    """Unknown generator names are a config error"""
    with pytest.raises(ConfigError):
        parse_word("a1 c7", NAMES)


def test_tree_generator_names():
    """Small ranks use letters, larger ranks numbered names"""
    assert tree_generator_names(3) == ["x", "y", "z"]
    assert tree_generator_names(4) == ["g1", "g2", "g3", "g4"]


def test_cyclic_reduce_splits_conjugator():
    """u w u^-1 splits into the conjugator and the cyclic core"""
    u, core = cyclic_reduce((2, 1, 1, -2))
    assert u == (2,)
    assert core == (1, 1)


def test_relator_and_its_conjugates_are_trivial():
    """Cyclic conjugates of the relator and its inverse are trivial"""
    relator = surface_relator(2)
    assert relator == (1, 2, -1, -2, 3, 4, -3, -4)
    assert is_trivial_in_surface_group(relator[3:] + relator[:3], 2)
    assert is_trivial_in_surface_group(invert(relator), 2)
    assert is_trivial_in_surface_group((5, 1, -1, -5), 2)
    assert not is_trivial_in_surface_group((1, 2, -1), 2)


def test_riemann_triangulation_counts():
    """Genus 2 gives one vertex, nine edges and six faces"""
    t = riemann_triangulation(2)
    assert t.counts == (1, 9, 6)
    diagnostics = validate(t)
    assert diagnostics.ok
    assert diagnostics.euler_characteristic == -2


@pytest.mark.parametrize("genus", [2, 3, 4])
def test_riemann_triangulation_valid_for_every_genus(genus):
    """The one-vertex triangulation is valid in every genus"""
    t = riemann_triangulation(genus)
    assert t.counts == (1, 6 * genus - 3, 4 * genus - 2)
    diagnostics = validate(t)
    assert diagnostics.violations == []
    assert diagnostics.ok


@pytest.mark.parametrize("genus", [2, 3])
def test_closing_face_walks_the_last_letters_backward(genus):
    """The last fan face closes through the inverse generators a_g and b_g"""
    t = riemann_triangulation(genus)
    closing = t.faces[-1]
    a, b = 2 * genus - 1, 2 * genus
    assert [(h.edge, h.forward, h.gain) for h in closing.sides[1:]] == [(a - 1, False, (-a,)), (b - 1, False, (-b,))]
    for edge in t.edges:
        directions = sorted(h.forward for face in t.faces for h in face.sides if h.edge == edge.index)
        assert directions == [False, True]


def test_riemann_triangulation_needs_genus_two():
    """Genus below two is rejected"""
    with pytest.raises(TriangulationError):
        riemann_triangulation(1)


def test_link_cycle_visits_every_corner(genus2):
    """The link of the single vertex is one cycle through all corners"""
    cycle = genus2.link_cycle(0)
    assert len(cycle) == 18
    assert len(set(cycle)) == 18
    assert len(genus2.star(0)) == 18


def test_adjacent_shift_is_symmetric(genus2):
    """Crossing an edge and back returns the identity shift"""
    for face in genus2.faces:
        for slot in range(3):
            other, other_slot, shift = genus2.adjacent_shift(face.index, slot)
            back, back_slot, back_shift = genus2.adjacent_shift(other, other_slot)
            assert (back, back_slot) == (face.index, slot)
            assert multiply(shift, back_shift) == ()


def test_explicit_triangulation_round_trip(genus2):
    """An explicit copy of the Riemann triangulation is valid"""
    t = build_triangulation(2, explicit_spec(genus2))
    assert t.counts == genus2.counts
    assert validate(t).ok


def test_missing_face_is_reported(genus2):
    """Dropping a face breaks edge multiplicity and the Euler characteristic"""
    spec = explicit_spec(genus2)
    spec = spec.model_copy(update={"faces": spec.faces[:-1]})
    codes = {v.code for v in validate(build_triangulation(2, spec)).violations}
    assert "edge_multiplicity" in codes
    assert "euler_characteristic" in codes


def test_unknown_edge_in_explicit_face(genus2):
    """Faces naming unknown edges are rejected"""
    spec = explicit_spec(genus2)
    faces = [list(f) for f in spec.faces]
    faces[0][0] = FaceSideSpec(edge="nope")
    with pytest.raises(TriangulationError):
        build_triangulation(2, spec.model_copy(update={"faces": faces}))


def test_face_sides_order(genus2):
    """face_sides returns (|v0 v1|, |v0 v2|, |v1 v2|)"""
    lengths = LengthFunction([float(i + 1) for i in range(9)])
    face = genus2.faces[2]
    e0, e1, e2 = (h.edge for h in face.sides)
    assert lengths.face_sides(face) == (e0 + 1.0, e2 + 1.0, e1 + 1.0)


def test_negative_length_rejected():
    """Lengths must be nonnegative"""
    with pytest.raises(LengthFunctionError):
        LengthFunction([1.0, -0.5])


def test_flatten_report_finds_flat_faces_and_edges(genus2):
    """Zero edges are flat edges and faces with a = b + c are flat faces"""
    lengths = LengthFunction([1.0] * 9)
    assert flatten_report(genus2, lengths).is_empty
    face = genus2.faces[0]
    e0, e1, e2 = (h.edge for h in face.sides)
    values = [1.0] * 9
    values[e0] = 2.0
    flat = LengthFunction(values)
    report = flatten_report(genus2, flat)
    assert 0 in report.flat_faces
    assert report.flat_edges == []
    assert face_slack(flat.face_sides(face)) == pytest.approx(0.0)


def test_flatten_report_rejects_triangle_violations(genus2):
    """A face violating the triangle inequality is not a length function"""
    values = [1.0] * 9
    values[genus2.faces[0].sides[0].edge] = 3.0
    with pytest.raises(LengthFunctionError):
        flatten_report(genus2, LengthFunction(values))


def test_lengths_report_by_edge_name(genus2):
    """Lengths are reported under their edge names in edge order"""
    lengths = LengthFunction([0.5 + i for i in range(9)])
    named = lengths.to_dict(genus2)
    assert named["a1"] == 0.5
    assert list(named) == [e.name for e in genus2.edges]
    assert list(named.values()) == lengths.lengths
