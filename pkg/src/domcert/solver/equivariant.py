"""Equivariant maps, stored as one image per quotient vertex."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Sequence, Union

import numpy as np

from domcert.core.errors import ConfigError
from domcert.surface.triangulation import GainTriangulation
from domcert.targets.representation import Representation


@dataclass
class EquivariantMap:
    """F on the base lift of each quotient vertex; F(gamma v~) = rho(gamma) F(v~)."""

    images: Dict[int, Any] = field(default_factory=dict)

    def __getitem__(self, vertex: int) -> Any:
        return self.images[vertex]

    def copy(self) -> "EquivariantMap":
        return EquivariantMap(dict(self.images))

    def lift(self, rep: Representation, vertex: int, element: Sequence[int]) -> Any:
        return rep.act(element, self.images[vertex])

    def to_json(self, t: GainTriangulation, rep: Representation) -> Dict[str, Any]:
        return {t.vertex_names[v]: rep.target.point_to_json(p) for v, p in sorted(self.images.items())}

    @classmethod
    def from_json(
        cls, t: GainTriangulation, rep: Representation, data: Mapping[str, Any]
    ) -> "EquivariantMap":
        index = {name: i for i, name in enumerate(t.vertex_names)}
        images: Dict[int, Any] = {}
        for name, value in data.items():
            if name not in index:
                raise ConfigError(f"initial map names unknown vertex {name!r}")
            images[index[name]] = rep.target.point_from_json(value)
        missing = [t.vertex_names[v] for v in t.vertices if v not in images]
        if missing:
            raise ConfigError(f"initial map is missing vertices {missing}")
        return cls(images)


def constant_map(t: GainTriangulation, point: Any) -> EquivariantMap:
    return EquivariantMap({v: point for v in t.vertices})


def random_map(
    t: GainTriangulation, rep: Representation, rng: Union[np.random.Generator, int], spread: float = 1.0
) -> EquivariantMap:
    generator = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    return EquivariantMap({v: rep.target.random_point(generator, spread) for v in t.vertices})


def star_images(t: GainTriangulation, rep: Representation, f: EquivariantMap, vertex: int) -> List[Any]:
    """Images of the neighbors of the base lift of `vertex`, with multiplicity."""
    return [f.lift(rep, entry.vertex, entry.element) for entry in t.star(vertex)]
