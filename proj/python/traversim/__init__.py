"""Terrain traversability simulation and dataset tooling."""

from traversim._core import (
    Error,
    PrimitiveSpec,
    RobotConfig,
    TerrainParams,
    action_space,
    evaluate,
    generate_map,
    intrp,
    list_presets,
    map_seed,
    noise2,
    preset_map,
    preset_params,
    rasterize,
    read_emap,
    read_sbt,
    scores,
    simulate,
    waypoints,
    write_emap,
)

__version__ = "0.1.0"

__all__ = [
    "Error",
    "PrimitiveSpec",
    "RobotConfig",
    "TerrainParams",
    "action_space",
    "evaluate",
    "generate_map",
    "intrp",
    "list_presets",
    "map_seed",
    "noise2",
    "preset_map",
    "preset_params",
    "rasterize",
    "read_emap",
    "read_sbt",
    "scores",
    "simulate",
    "waypoints",
    "write_emap",
]
