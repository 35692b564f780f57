"""
Target registry for domcert
Maps the target kinds used in configs to target classes
"""

import logging
from typing import Dict, List, Type

from domcert.core.errors import ConfigError
from domcert.core.schema import TargetSpec
from domcert.targets.base import BaseTarget
from domcert.targets.hyperbolic import H2Target
from domcert.targets.tree import TreeSpace

logger = logging.getLogger(__name__)


class TargetRegistry:
    """
    Registry of all target spaces
    """

    # Dictionary mapping target kinds to target classes
    _TARGETS: Dict[str, Type[BaseTarget]] = {
        "h2": H2Target,
        "tree": TreeSpace,
    }

    @classmethod
    def get_supported_targets(cls) -> List[str]:
        return list(cls._TARGETS.keys())

    @classmethod
    def create(cls, spec: TargetSpec) -> BaseTarget:
        """
        Build the target described by a config section

        Args:
            spec: target section of a pipeline config

        Returns:
            BaseTarget: target instance

        Raises:
            ConfigError: if the kind is unknown
        """
        target_class = cls._TARGETS.get(spec.kind)
        if target_class is None:
            raise ConfigError(f"unknown target kind {spec.kind!r}; supported: {cls.get_supported_targets()}")
        if target_class is TreeSpace:
            return TreeSpace(spec.rank or 1, spec.edge_lengths)
        if spec.edge_lengths:
            logger.warning(f"Ignoring edge lengths for target kind {spec.kind!r}")
        return target_class()
