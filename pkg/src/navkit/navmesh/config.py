"""Build-time configuration for navmesh construction."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class BuildConfig:
    """Agent and rasterization constraints for navmesh builds.

    Distances are meters. ``terrain_sample_size`` is accepted and carried
    through serialization but does not influence the build (it configures
    engine-side terrain sampling that has no analog here).
    """

    cell_size: float = 0.1
    cell_height: float = 0.1
    walkable_height: float = 2.0
    walkable_climb: float = 0.5
    agent_radius: float = 0.5
    max_slope_deg: float = 30.0
    max_border_edge_length: float = 20.0
    terrain_sample_size: int = 3

    def __post_init__(self):
        for name in (
            "cell_size",
            "cell_height",
            "walkable_height",
            "walkable_climb",
            "agent_radius",
            "max_border_edge_length",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"BuildConfig.{name} must be positive")
        if not (0.0 < self.max_slope_deg < 90.0):
            raise ValueError("max_slope_deg must be in (0, 90)")
        if self.walkable_climb >= self.walkable_height:
            raise ValueError("walkable_climb must be below walkable_height")
        if self.terrain_sample_size <= 0:
            raise ValueError("terrain_sample_size must be positive")

    @property
    def climb_cells(self) -> int:
        return int(math.floor(self.walkable_climb / self.cell_height + 1e-6))

    @property
    def erosion_cells(self) -> int:
        return int(math.ceil(self.agent_radius / self.cell_size - 1e-6))
