"""Quotient triangulations with group-element gains on edges.

The universal cover is never built. A lifted vertex is a pair (gamma, v)
standing for gamma . v~, and a lifted face is the face's three corners
translated by the face lift elements c0 = e, c1 = g(h0), c2 = g(h0) g(h1).
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from domcert.core.errors import TriangulationError
from domcert.core.schema import (
    ExplicitTriangulation,
    TriangulationDiagnostics,
    TriangulationViolation,
)
from domcert.surface.words import (
    IDENTITY,
    Word,
    format_word,
    free_reduce,
    invert,
    is_trivial_in_surface_group,
    multiply,
    parse_word,
    surface_generator_names,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    index: int
    tail: int
    head: int
    gain: Word
    name: str


@dataclass(frozen=True)
class HalfEdge:
    """An edge as traversed by a face boundary.

    `gain` is the gain in the direction of travel. For a well-formed
    triangulation it equals the edge gain when `forward` and its inverse
    otherwise.
    """

    edge: int
    forward: bool
    gain: Word


@dataclass(frozen=True)
class Face:
    index: int
    sides: Tuple[HalfEdge, HalfEdge, HalfEdge]


@dataclass(frozen=True)
class Corner:
    face: int
    slot: int


@dataclass(frozen=True)
class StarEntry:
    """A neighbor of a quotient vertex in the cover: element . F(vertex)."""

    vertex: int
    element: Word
    edge: int


class GainTriangulation:
    """A triangulation T of the closed genus-g surface with edge gains."""

    def __init__(
        self,
        genus: int,
        vertex_names: Sequence[str],
        edges: Sequence[Edge],
        faces: Sequence[Face],
    ):
        self.genus = genus
        self.vertex_names = list(vertex_names)
        self.edges = list(edges)
        self.faces = list(faces)
        self.generator_names = surface_generator_names(genus)
        self._link_cache: Dict[int, List[Corner]] = {}

    def __repr__(self) -> str:
        v, e, f = self.counts
        return f"GainTriangulation(genus={self.genus}, V={v}, E={e}, F={f})"

    @property
    def counts(self) -> Tuple[int, int, int]:
        return len(self.vertex_names), len(self.edges), len(self.faces)

    @property
    def vertices(self) -> range:
        return range(len(self.vertex_names))

    # --- half-edge bookkeeping -------------------------------------------

    def tail(self, h: HalfEdge) -> int:
        e = self.edges[h.edge]
        return e.tail if h.forward else e.head

    def head(self, h: HalfEdge) -> int:
        e = self.edges[h.edge]
        return e.head if h.forward else e.tail

    def face_vertices(self, face: Face) -> Tuple[int, int, int]:
        return tuple(self.tail(h) for h in face.sides)  # type: ignore[return-value]

    def lift_elements(self, face: Face) -> Tuple[Word, Word, Word]:
        h0, h1, _ = face.sides
        return IDENTITY, free_reduce(h0.gain), multiply(h0.gain, h1.gain)

    def side_edges(self, face: Face) -> Tuple[int, int, int]:
        """Edges joining corners (0,1), (1,2), (2,0)."""
        return tuple(h.edge for h in face.sides)  # type: ignore[return-value]

    def occurrences(self, edge: int) -> List[Tuple[int, int]]:
        """(face, slot) pairs where the edge appears as a side."""
        return [(f.index, j) for f in self.faces for j, h in enumerate(f.sides) if h.edge == edge]

    def tail_slot(self, face: Face, slot: int) -> int:
        """Corner index of the face at which the edge of side `slot` starts (edge orientation)."""
        return slot if face.sides[slot].forward else (slot + 1) % 3

    def adjacent_shift(self, face_index: int, slot: int) -> Tuple[int, int, Word]:
        """The face across side `slot` and the element placing its lift next to ours.

        Returns:
            (other face index, other slot, h) where h . (lift of other face)
            shares the side with the lift of this face.
        """
        face = self.faces[face_index]
        edge = face.sides[slot].edge
        others = [(f, j) for f, j in self.occurrences(edge) if (f, j) != (face_index, slot)]
        if len(others) != 1:
            raise TriangulationError(f"edge {self.edges[edge].name} does not border exactly two corners")
        other_face, other_slot = others[0]
        mine = self.lift_elements(face)[self.tail_slot(face, slot)]
        theirs = self.lift_elements(self.faces[other_face])[self.tail_slot(self.faces[other_face], other_slot)]
        return other_face, other_slot, multiply(mine, invert(theirs))

    # --- stars and links -------------------------------------------------

    def star(self, vertex: int) -> List[StarEntry]:
        """Neighbors of the base lift of `vertex`, one per edge end at the vertex."""
        entries: List[StarEntry] = []
        for e in self.edges:
            if e.tail == vertex:
                entries.append(StarEntry(e.head, e.gain, e.index))
            if e.head == vertex:
                entries.append(StarEntry(e.tail, invert(e.gain), e.index))
        return entries

    def corner_neighbors(self, corner: Corner) -> Tuple[StarEntry, StarEntry]:
        """The two other corners of a face seen from the base lift of the corner's vertex.

        Returns:
            (next, prev): the head of the outgoing side and the tail of the
            incoming side.
        """
        face = self.faces[corner.face]
        out_side = face.sides[corner.slot]
        in_side = face.sides[(corner.slot - 1) % 3]
        nxt = StarEntry(self.head(out_side), free_reduce(out_side.gain), out_side.edge)
        prv = StarEntry(self.tail(in_side), invert(in_side.gain), in_side.edge)
        return nxt, prv

    def corners_at(self, vertex: int) -> List[Corner]:
        return [Corner(f.index, k) for f in self.faces for k in range(3) if self.tail(f.sides[k]) == vertex]

    def next_corner(self, corner: Corner) -> Corner:
        """Rotate around the vertex across the incoming side of the corner."""
        slot = (corner.slot - 1) % 3
        other_face, other_slot, _ = self.adjacent_shift(corner.face, slot)
        return Corner(other_face, other_slot)

    def link_cycle(self, vertex: int) -> List[Corner]:
        """Corners at the vertex in cyclic order around its lift."""
        if vertex in self._link_cache:
            return self._link_cache[vertex]
        corners = self.corners_at(vertex)
        if not corners:
            raise TriangulationError(f"vertex {self.vertex_names[vertex]} has no corners")
        cycle = [corners[0]]
        while True:
            nxt = self.next_corner(cycle[-1])
            if nxt == cycle[0]:
                break
            if nxt in cycle or len(cycle) > len(corners):
                raise TriangulationError(f"link of vertex {self.vertex_names[vertex]} is not a single cycle")
            cycle.append(nxt)
        if len(cycle) != len(corners):
            raise TriangulationError(
                f"link of vertex {self.vertex_names[vertex]} covers {len(cycle)} of {len(corners)} corners"
            )
        self._link_cache[vertex] = cycle
        return cycle

    # --- construction ----------------------------------------------------

    @classmethod
    def from_explicit(cls, genus: int, spec: ExplicitTriangulation) -> "GainTriangulation":
        names = surface_generator_names(genus)
        vertex_index = {name: i for i, name in enumerate(spec.vertices)}
        if len(vertex_index) != len(spec.vertices):
            raise TriangulationError("duplicate vertex names in triangulation")
        edges: List[Edge] = []
        edge_index: Dict[str, int] = {}
        for i, e in enumerate(spec.edges):
            name = e.name or f"e{i}"
            for end in (e.tail, e.head):
                if end not in vertex_index:
                    raise TriangulationError(f"edge {name} references unknown vertex {end!r}")
            edges.append(Edge(i, vertex_index[e.tail], vertex_index[e.head], parse_word(e.gain, names), name))
            edge_index[name] = i
            edge_index.setdefault(str(i), i)
        faces: List[Face] = []
        for i, sides in enumerate(spec.faces):
            half_edges = []
            for side in sides:
                if side.edge not in edge_index:
                    raise TriangulationError(f"face {i} references unknown edge {side.edge!r}")
                edge = edges[edge_index[side.edge]]
                half_edges.append(HalfEdge(edge.index, side.forward, edge.gain if side.forward else invert(edge.gain)))
            faces.append(Face(i, tuple(half_edges)))  # type: ignore[arg-type]
        return cls(genus, spec.vertices, edges, faces)


def polygon_labels(genus: int) -> List[int]:
    """Boundary labels a1 b1 a1^-1 b1^-1 ... of the 4g-gon."""
    labels: List[int] = []
    for k in range(1, genus + 1):
        a, b = 2 * k - 1, 2 * k
        labels.extend([a, b, -a, -b])
    return labels


def riemann_triangulation(genus: int) -> GainTriangulation:
    """One-vertex triangulation: the fan from corner P0 of the folded 4g-gon.

    Edges are the 2g generator loops followed by the diagonals P0 P_j
    (j = 2 .. 4g - 2) whose gains are the boundary prefixes. Face j is
    (P0, P_j, P_{j+1}) for j = 1 .. 4g - 2.
    """
    if genus < 2:
        raise TriangulationError(f"genus must be at least 2, got {genus}")
    names = surface_generator_names(genus)
    labels = polygon_labels(genus)
    n = 4 * genus
    prefixes: List[Word] = [IDENTITY]
    for letter in labels:
        prefixes.append(multiply(prefixes[-1], (letter,)))

    edges: List[Edge] = []
    for g in range(1, 2 * genus + 1):
        edges.append(Edge(g - 1, 0, 0, (g,), names[g - 1]))
    diagonal: Dict[int, int] = {}
    for j in range(2, n - 1):
        diagonal[j] = len(edges)
        edges.append(Edge(len(edges), 0, 0, prefixes[j], f"d{j}"))

    def generator_side(letter: int) -> HalfEdge:
        return HalfEdge(abs(letter) - 1, letter > 0, (letter,))

    faces: List[Face] = []
    for j in range(1, n - 1):
        h0 = generator_side(labels[0]) if j == 1 else HalfEdge(diagonal[j], True, prefixes[j])
        h1 = generator_side(labels[j])
        if j == n - 2:
            h2 = generator_side(labels[n - 1])
        else:
            h2 = HalfEdge(diagonal[j + 1], False, invert(prefixes[j + 1]))
        faces.append(Face(j - 1, (h0, h1, h2)))
    triangulation = GainTriangulation(genus, ["x0"], edges, faces)
    logger.debug(f"Built Riemann triangulation {triangulation!r}")
    return triangulation


def validate(t: GainTriangulation) -> TriangulationDiagnostics:
    """Check the combinatorial invariants and list every violation found."""
    violations: List[TriangulationViolation] = []
    v, e, f = t.counts

    def flag(code: str, detail: str) -> None:
        violations.append(TriangulationViolation(code=code, detail=detail))

    for edge in t.edges:
        for end in (edge.tail, edge.head):
            if not 0 <= end < v:
                flag("unknown_vertex", f"edge {edge.name} references vertex {end}")

    uses: Counter = Counter()
    orientations: Dict[int, List[bool]] = defaultdict(list)
    for face in t.faces:
        for h in face.sides:
            if not 0 <= h.edge < e:
                flag("dangling_edge", f"face {face.index} uses missing edge {h.edge}")
                continue
            uses[h.edge] += 1
            orientations[h.edge].append(h.forward)
            edge = t.edges[h.edge]
            expected = edge.gain if h.forward else invert(edge.gain)
            if free_reduce(h.gain) != free_reduce(expected):
                flag(
                    "reversed_gain",
                    f"face {face.index} traverses {edge.name} {'forward' if h.forward else 'backward'} "
                    f"with gain {format_word(h.gain, t.generator_names)}, "
                    f"expected {format_word(expected, t.generator_names)}",
                )
        if any(not 0 <= h.edge < e for h in face.sides):
            continue
        for k in range(3):
            if t.head(face.sides[k]) != t.tail(face.sides[(k + 1) % 3]):
                flag("face_not_closed", f"face {face.index} breaks between sides {k} and {(k + 1) % 3}")
                break
        else:
            word = multiply(*(h.gain for h in face.sides))
            if not is_trivial_in_surface_group(word, t.genus):
                flag(
                    "face_word_nontrivial",
                    f"face {face.index} boundary word {format_word(word, t.generator_names)} is not trivial",
                )

    for edge in t.edges:
        count = uses.get(edge.index, 0)
        if count == 0:
            flag("dangling_edge", f"edge {edge.name} borders no face")
        elif count != 2:
            flag("edge_multiplicity", f"edge {edge.name} borders {count} face corners, expected 2")
        elif sorted(orientations[edge.index]) != [False, True]:
            flag("inconsistent_orientation", f"edge {edge.name} is traversed twice in the same direction")

    chi = v - e + f
    if chi != 2 - 2 * t.genus:
        flag("euler_characteristic", f"V - E + F = {chi}, expected {2 - 2 * t.genus}")
    if 3 * f != 2 * e:
        flag("euler_characteristic", f"3F = {3 * f} differs from 2E = {2 * e}")

    diagnostics = TriangulationDiagnostics(
        vertices=v, edges=e, faces=f, euler_characteristic=chi, violations=violations
    )
    if violations:
        logger.debug(f"Triangulation has {len(violations)} violations: {[x.code for x in violations]}")
    return diagnostics


def build_triangulation(genus: int, spec: Optional[ExplicitTriangulation] = None) -> GainTriangulation:
    if spec is None:
        return riemann_triangulation(genus)
    return GainTriangulation.from_explicit(genus, spec)
