"""Superpixel/supervoxel decomposition with linear-path color and contour
features, plus a decomposition-quality evaluation suite."""

from ._accel import active_backend, set_backend
from .clustering import (ClusterState, DecompositionState, PathDistanceMemo,
                         contour_weight, decompose, enforce_connectivity,
                         init_grid, path_color_distance,
                         path_color_distance_memo, run_scalp,
                         spatial_distance, total_distance)
from .contour_prior import (boundary_map, load_contour_map,
                            multiscale_boundary_average,
                            multiscale_boundary_prior)
from .core import (ScalpParams, add_gaussian_noise, is_partition, lab_to_rgb,
                   rgb_to_lab)
from .hard_constraint import (RegionPartition, merge_small_regions,
                              partition_regions, run_scalp_hc,
                              threshold_regions)
from .linear_path import linear_path, linear_path_3d
from .metrics import (PRCurve, asa, boundary_recall, contour_density,
                      evaluate, pr_curve, shape_regularity)
from .neighborhood import (MomentImages, color_distance_o1,
                           point_distance_field, precompute_moments)
from .supervoxel import asa_3d, run_scalp_3d

__version__ = "0.1.0"

__all__ = [
    "ClusterState", "DecompositionState", "MomentImages", "PRCurve",
    "RegionPartition", "ScalpParams", "active_backend", "add_gaussian_noise",
    "asa", "asa_3d", "boundary_map", "boundary_recall", "color_distance_o1",
    "contour_density", "contour_weight", "decompose", "enforce_connectivity",
    "evaluate", "init_grid", "is_partition", "lab_to_rgb", "linear_path",
    "linear_path_3d", "load_contour_map", "merge_small_regions",
    "multiscale_boundary_average", "multiscale_boundary_prior",
    "PathDistanceMemo", "partition_regions", "path_color_distance",
    "path_color_distance_memo", "point_distance_field",
    "pr_curve", "precompute_moments", "rgb_to_lab", "run_scalp",
    "run_scalp_3d", "run_scalp_hc", "set_backend", "shape_regularity",
    "spatial_distance", "threshold_regions", "total_distance",
]
