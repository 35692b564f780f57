"""Cayley tree of a free group as a target.

Vertices are reduced words of F_rank; the edge between w and w s has
length L(s). The group acts by left multiplication. A point is stored on
an edge (base, letter) with base the end nearer the identity, at an
offset measured from the base.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from domcert.core.errors import ConfigError, GeometryError
from domcert.surface.words import (
    IDENTITY,
    Word,
    cyclic_reduce,
    format_word,
    free_reduce,
    invert,
    multiply,
    parse_word,
    tree_generator_names,
)
from domcert.targets.base import BaseTarget

logger = logging.getLogger(__name__)

WALK_TOLERANCE = 1e-15
WALK_MAX_STEPS = 100000

# a germ at an interior point is ("e", +1 | -1); at a vertex it is ("v", letter)
Germ = Tuple[str, int]


@dataclass(frozen=True)
class TreePoint:
    base: Word
    letter: int = 0
    offset: float = 0.0

    @property
    def is_vertex(self) -> bool:
        return self.letter == 0


@dataclass(frozen=True)
class Segment:
    """Part of the edge (base, letter) traversed from offset `start` to `stop`."""

    base: Word
    letter: int
    start: float
    stop: float

    @property
    def length(self) -> float:
        return abs(self.stop - self.start)


class TreeSpace(BaseTarget):
    kind = "tree"
    display_name = "Free-group tree"

    def __init__(self, rank: int, edge_lengths: Optional[Dict[str, float]] = None):
        if rank < 1:
            raise ConfigError(f"tree rank must be at least 1, got {rank}")
        self.rank = rank
        self.names = tree_generator_names(rank)
        lengths = dict(edge_lengths or {})
        unknown = set(lengths) - set(self.names)
        if unknown:
            raise ConfigError(f"edge lengths given for unknown generators {sorted(unknown)}")
        self.lengths = [float(lengths.get(name, 1.0)) for name in self.names]
        if any(not length > 0.0 for length in self.lengths):
            raise ConfigError("tree edge lengths must be positive")

    def __repr__(self) -> str:
        return f"TreeSpace(rank={self.rank}, lengths={self.lengths})"

    # --- points -----------------------------------------------------------

    def edge_length(self, letter: int) -> float:
        return self.lengths[abs(letter) - 1]

    def word_length(self, word: Sequence[int]) -> float:
        return float(sum(self.edge_length(s) for s in word))

    def vertex(self, word: Sequence[int]) -> TreePoint:
        return TreePoint(free_reduce(word))

    def make_point(self, base: Sequence[int], letter: int, offset: float) -> TreePoint:
        """Canonical form of the point at `offset` from `base` toward base * letter."""
        base = free_reduce(base)
        if letter == 0 or offset <= 0.0:
            return TreePoint(base)
        length = self.edge_length(letter)
        if offset >= length:
            return TreePoint(multiply(base, (letter,)))
        if base and base[-1] == -letter:
            return TreePoint(base[:-1], -letter, length - offset)
        return TreePoint(base, letter, float(offset))

    def parse_point(self, text: str) -> TreePoint:
        return self.vertex(parse_word(text, self.names))

    def _anchors(self, p: TreePoint) -> List[Tuple[Word, float, Optional[Segment]]]:
        if p.is_vertex:
            return [(p.base, 0.0, None)]
        length = self.edge_length(p.letter)
        return [
            (p.base, p.offset, Segment(p.base, p.letter, p.offset, 0.0)),
            (p.base + (p.letter,), length - p.offset, Segment(p.base, p.letter, p.offset, length)),
        ]

    def vertex_distance(self, u: Word, w: Word) -> float:
        k = 0
        while k < min(len(u), len(w)) and u[k] == w[k]:
            k += 1
        return self.word_length(u[k:]) + self.word_length(w[k:])

    def vertex_path(self, u: Word, w: Word) -> List[Segment]:
        k = 0
        while k < min(len(u), len(w)) and u[k] == w[k]:
            k += 1
        segments: List[Segment] = []
        for i in range(len(u), k, -1):
            letter = u[i - 1]
            segments.append(Segment(u[: i - 1], letter, self.edge_length(letter), 0.0))
        for i in range(k, len(w)):
            letter = w[i]
            segments.append(Segment(w[:i], letter, 0.0, self.edge_length(letter)))
        return segments

    def route(self, p: TreePoint, q: TreePoint) -> List[Segment]:
        """Segments of the geodesic from p to q."""
        if not p.is_vertex and not q.is_vertex and (p.base, p.letter) == (q.base, q.letter):
            if p.offset == q.offset:
                return []
            return [Segment(p.base, p.letter, p.offset, q.offset)]
        best = None
        for u, du, seg_p in self._anchors(p):
            for w, dw, seg_q in self._anchors(q):
                total = du + self.vertex_distance(u, w) + dw
                if best is None or total < best[0]:
                    best = (total, u, seg_p, w, seg_q)
        _, u, seg_p, w, seg_q = best
        segments: List[Segment] = []
        if seg_p is not None and seg_p.length > 0.0:
            segments.append(seg_p)
        segments.extend(self.vertex_path(u, w))
        if seg_q is not None and seg_q.length > 0.0:
            segments.append(Segment(seg_q.base, seg_q.letter, seg_q.stop, seg_q.start))
        return segments

    # --- metric -----------------------------------------------------------

    def distance(self, p: TreePoint, q: TreePoint) -> float:
        if not p.is_vertex and not q.is_vertex and (p.base, p.letter) == (q.base, q.letter):
            return abs(p.offset - q.offset)
        return min(
            du + self.vertex_distance(u, w) + dw for u, du, _ in self._anchors(p) for w, dw, _ in self._anchors(q)
        )

    def geodesic_point(self, p: TreePoint, q: TreePoint, t: float) -> TreePoint:
        if t <= 0.0:
            return p
        if t >= 1.0:
            return q
        segments = self.route(p, q)
        remaining = t * sum(s.length for s in segments)
        for seg in segments:
            if remaining <= seg.length:
                direction = 1.0 if seg.stop >= seg.start else -1.0
                return self.make_point(seg.base, seg.letter, seg.start + direction * remaining)
            remaining -= seg.length
        return q

    def germ(self, apex: TreePoint, q: TreePoint) -> Germ:
        """Direction at `apex` of the geodesic toward q."""
        segments = self.route(apex, q)
        if not segments:
            raise GeometryError("undefined direction: points coincide")
        first = segments[0]
        if not apex.is_vertex:
            return ("e", 1 if first.stop > first.start else -1)
        if first.start == 0.0:
            return ("v", first.letter)
        return ("v", -first.letter)

    def angle(self, apex: TreePoint, u: TreePoint, v: TreePoint) -> float:
        return 0.0 if self.germ(apex, u) == self.germ(apex, v) else math.pi

    # --- isometries -------------------------------------------------------

    def apply(self, iso: Word, p: TreePoint) -> TreePoint:
        if not iso:
            return p
        return self.make_point(multiply(iso, p.base), p.letter, p.offset)

    def compose(self, g: Word, h: Word) -> Word:
        return multiply(g, h)

    def inverse(self, g: Word) -> Word:
        return invert(g)

    def identity(self) -> Word:
        return IDENTITY

    def identity_deviation(self, g: Word) -> float:
        return self.word_length(free_reduce(g))

    def translation_length(self, g: Word) -> float:
        """Weighted length of the cyclic reduction of g."""
        _, core = cyclic_reduce(g)
        return self.word_length(core)

    def translation_axis_sample(self, g: Word, probe: TreePoint, max_steps: int = 10000) -> Tuple[float, TreePoint]:
        """Minimise x -> d(x, g x) by descent over vertices starting near `probe`.

        Returns:
            (minimal displacement, a vertex realising it)
        """
        current = min(self._anchors(probe), key=lambda a: a[1])[0]
        value = self.vertex_distance(current, multiply(g, current))
        for _ in range(max_steps):
            best = None
            for letter in [s for k in range(1, self.rank + 1) for s in (k, -k)]:
                candidate = multiply(current, (letter,))
                d = self.vertex_distance(candidate, multiply(g, candidate))
                if d < value - 1e-12 and (best is None or d < best[0]):
                    best = (d, candidate)
            if best is None:
                break
            value, current = best
        closed = self.translation_length(g)
        if abs(value - closed) > 1e-9:
            logger.warning(f"Axis descent found {value} but the cyclic reduction gives {closed}")
        return value, TreePoint(current)

    # --- probes and sampling ----------------------------------------------

    def base_point(self) -> TreePoint:
        return TreePoint(IDENTITY)

    def probe_points(self) -> List[TreePoint]:
        other = 2 if self.rank >= 2 else -1
        return [
            TreePoint(IDENTITY),
            TreePoint((1,)),
            TreePoint((other,)),
            self.make_point(IDENTITY, 1, 0.5 * self.edge_length(1)),
            self.vertex((1, other)),
        ]

    def random_point(self, rng: np.random.Generator, spread: float = 1.0) -> TreePoint:
        letters = [s for k in range(1, self.rank + 1) for s in (k, -k)]
        depth = int(rng.integers(0, max(1, int(math.ceil(spread))) + 1))
        word: List[int] = []
        while len(word) < depth:
            s = int(rng.choice(letters))
            if word and word[-1] == -s:
                continue
            word.append(s)
        letter = int(rng.choice(letters))
        return self.make_point(tuple(word), letter, float(rng.random()) * self.edge_length(letter))

    # --- barycenters and criticality --------------------------------------

    def _germ_sums(
        self, point: TreePoint, neighbors: Sequence[TreePoint], weights: Sequence[float]
    ) -> Tuple[Dict[Germ, float], float, Dict[Germ, List[float]]]:
        """Per germ: weighted sum of distances of the neighbors in it; plus the total."""
        sums: Dict[Germ, float] = {}
        reach: Dict[Germ, List[float]] = {}
        total = 0.0
        for w, y in zip(weights, neighbors):
            d = self.distance(point, y)
            if d <= 0.0:
                continue
            g = self.germ(point, y)
            sums[g] = sums.get(g, 0.0) + w * d
            reach.setdefault(g, []).append(d)
            total += w * d
        return sums, total, reach

    def _step_along(self, point: TreePoint, germ: Germ, s: float) -> TreePoint:
        if germ[0] == "e":
            return self.make_point(point.base, point.letter, point.offset + germ[1] * s)
        return self.make_point(point.base, germ[1], s)

    def _room(self, point: TreePoint, germ: Germ) -> float:
        """Distance to the next vertex along the germ."""
        if germ[0] == "e":
            length = self.edge_length(point.letter)
            return length - point.offset if germ[1] > 0 else point.offset
        return self.edge_length(germ[1])

    def barycenter(
        self,
        points: Sequence[TreePoint],
        weights: Optional[Sequence[float]] = None,
        start: Optional[TreePoint] = None,
    ) -> TreePoint:
        """Exact minimisation of the convex piecewise-quadratic sum by walking edges.

        From `start`, repeatedly moves along the germ with the most negative
        directional derivative to the minimiser of the quadratic piece or
        the next breakpoint, whichever is nearer. Flat directions are never
        taken, so ties resolve to the minimiser nearest the start.
        """
        if not points:
            raise GeometryError("barycenter of an empty set")
        w = list(weights) if weights is not None else [1.0] * len(points)
        total_weight = float(sum(w))
        z = start if start is not None else points[0]
        for _ in range(WALK_MAX_STEPS):
            sums, total, reach = self._germ_sums(z, points, w)
            if not sums:
                break
            # derivative along germ g is 2 * (total - 2 * sums[g])
            germ, inside = max(sums.items(), key=lambda kv: (kv[1], kv[0]))
            pull = 2.0 * inside - total
            if pull <= WALK_TOLERANCE * max(1.0, total):
                break
            s = min(pull / total_weight, self._room(z, germ), min(reach[germ]))
            if s <= 0.0:
                break
            z = self._step_along(z, germ, s)
        return z

    def criticality_residual(self, point: TreePoint, neighbors: Sequence[TreePoint]) -> float:
        """max over germs v of sum_i |x y_i| cos angle(v, y_i), clamped at 0."""
        sums, total, _ = self._germ_sums(point, neighbors, [1.0] * len(neighbors))
        if not sums:
            return 0.0
        return max(0.0, max(2.0 * inside - total for inside in sums.values()))

    def germs_at(self, point: TreePoint) -> List[Germ]:
        if not point.is_vertex:
            return [("e", 1), ("e", -1)]
        return [("v", s) for k in range(1, self.rank + 1) for s in (k, -k)]

    def directional_sums(
        self, point: TreePoint, neighbors: Sequence[TreePoint], rng: np.random.Generator, n_directions: int
    ) -> List[float]:
        sums, total, _ = self._germ_sums(point, neighbors, [1.0] * len(neighbors))
        return [2.0 * sums.get(g, 0.0) - total for g in self.germs_at(point)]

    # --- codecs -----------------------------------------------------------

    def point_to_json(self, p: TreePoint) -> Any:
        if p.is_vertex:
            return format_word(p.base, self.names, separator="")
        return {
            "base": format_word(p.base, self.names, separator=""),
            "toward": format_word((p.letter,), self.names),
            "offset": p.offset,
        }

    def point_from_json(self, data: Any) -> TreePoint:
        if isinstance(data, str):
            return self.parse_point(data)
        if isinstance(data, dict) and "base" in data:
            base = parse_word(str(data["base"]), self.names)
            toward = data.get("toward")
            if toward is None:
                return TreePoint(base)
            letter = parse_word(str(toward), self.names)
            if len(letter) != 1:
                raise ConfigError(f"tree point direction must be a single letter, got {toward!r}")
            offset = float(data.get("offset", 0.0))
            if not 0.0 <= offset <= self.edge_length(letter[0]):
                raise ConfigError(f"tree point offset {offset} is outside its edge")
            return self.make_point(base, letter[0], offset)
        raise ConfigError(f"cannot read a tree point from {data!r}")

    def isometry_from_json(self, data: Any) -> Word:
        if not isinstance(data, str):
            raise ConfigError(f"tree generator images must be words, got {data!r}")
        return parse_word(data, self.names)

    def isometry_to_json(self, g: Word) -> str:
        return format_word(g, self.names, separator="")
