"""Representations of the surface group into the isometries of a target."""

import logging
from typing import Any, Dict, List, Sequence, Tuple

from domcert.core.errors import ConfigError, RepresentationError
from domcert.core.schema import RelatorCheck, RepresentationSpec
from domcert.surface.words import (
    Word,
    free_reduce,
    surface_generator_names,
    surface_relator,
)
from domcert.targets.base import BaseTarget
from domcert.targets.hyperbolic import H2Target

logger = logging.getLogger(__name__)

RELATOR_TOLERANCE = 1e-8


class Representation:
    """rho: Gamma_g -> Isom(X), stored by generator images."""

    def __init__(self, target: BaseTarget, genus: int, images: Dict[int, Any]):
        self.target = target
        self.genus = genus
        self.names = surface_generator_names(genus)
        self.images = {g: images.get(g, target.identity()) for g in range(1, 2 * genus + 1)}
        self._inverses = {g: target.inverse(img) for g, img in self.images.items()}
        self._cache: Dict[Word, Any] = {}

    def __repr__(self) -> str:
        return f"Representation(target={self.target.kind}, genus={self.genus})"

    @classmethod
    def from_spec(cls, target: BaseTarget, genus: int, spec: RepresentationSpec) -> "Representation":
        names = surface_generator_names(genus)
        images: Dict[int, Any] = {}
        for name, data in spec.images.items():
            if name not in names:
                raise ConfigError(f"unknown surface generator {name!r}; expected one of {names}")
            images[names.index(name) + 1] = target.isometry_from_json(data)
        return cls(target, genus, images)

    def to_spec(self) -> RepresentationSpec:
        return RepresentationSpec(
            images={self.names[g - 1]: self.target.isometry_to_json(img) for g, img in self.images.items()}
        )

    def letter_image(self, letter: int) -> Any:
        return self.images[letter] if letter > 0 else self._inverses[-letter]

    def evaluate_word(self, word: Sequence[int]) -> Any:
        """rho(w) as the product of generator images in order."""
        key = tuple(word)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        result = self.target.identity()
        for letter in key:
            result = self.target.compose(result, self.letter_image(letter))
        self._cache[key] = result
        return result

    def act(self, word: Sequence[int], point: Any) -> Any:
        if not word:
            return point
        return self.target.apply(self.evaluate_word(word), point)

    def relator_check(self) -> RelatorCheck:
        relator_image = self.evaluate_word(surface_relator(self.genus))
        displacements = [self.target.displacement(relator_image, p) for p in self.target.probe_points()]
        worst = max(displacements)
        deviation = self.target.identity_deviation(relator_image)
        passed = worst < RELATOR_TOLERANCE and deviation < RELATOR_TOLERANCE
        if not passed:
            logger.debug(f"Relator check failed: probe displacement {worst}, identity deviation {deviation}")
        return RelatorCheck(passed=passed, max_probe_displacement=worst, identity_deviation=deviation)

    def require_relator(self) -> RelatorCheck:
        check = self.relator_check()
        if not check.passed:
            logger.error(f"Representation violates the surface relator (displacement {check.max_probe_displacement})")
            raise RepresentationError(
                f"relator check failed: probe displacement {check.max_probe_displacement:.3e}, "
                f"identity deviation {check.identity_deviation:.3e}"
            )
        return check


def deform_representation(rep: Representation, twists: Sequence[Tuple[float, float]]) -> Representation:
    """Relator-preserving twist deformation, handle by handle.

    For handle k with images (A, B) and twist (s, t) this applies
    (A, B) -> (A, B A^s) and then (A, B) -> (A B^t, B). Both moves keep
    [A, B] unchanged. Real exponents need a hyperbolic-plane target.
    """
    if len(twists) > rep.genus:
        raise ConfigError(f"{len(twists)} twists given for genus {rep.genus}")
    target = rep.target
    images = dict(rep.images)
    for k, (s, t) in enumerate(twists, start=1):
        a_key, b_key = 2 * k - 1, 2 * k
        a, b = images[a_key], images[b_key]
        b = target.compose(b, _power(target, a, s))
        a = target.compose(a, _power(target, b, t))
        images[a_key], images[b_key] = a, b
    return Representation(target, rep.genus, images)


def _power(target: BaseTarget, g: Any, exponent: float) -> Any:
    if exponent == 0:
        return target.identity()
    if isinstance(target, H2Target):
        return g.power(exponent)
    if float(exponent) != int(exponent):
        raise ConfigError(f"tree isometries only have integer powers, got {exponent}")
    n = int(exponent)
    word: List[int] = list(g if n > 0 else target.inverse(g)) * abs(n)
    return free_reduce(word)


def identity_representation(target: BaseTarget, genus: int) -> Representation:
    return Representation(target, genus, {})
