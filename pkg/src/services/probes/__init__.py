"""Geometric probes on concrete members and systems."""

from src.services.probes.map_degree import map_rank_and_degree
from src.services.probes.secant import veronese_secant_dim
from src.services.probes.singularity import (
    common_zero_over,
    jacobian_rank,
    node_check,
    plane_sing_finite,
    singularity_report,
    space_sing_probe,
    square_detect,
)

__all__ = [
    "common_zero_over",
    "jacobian_rank",
    "map_rank_and_degree",
    "node_check",
    "plane_sing_finite",
    "singularity_report",
    "space_sing_probe",
    "square_detect",
    "veronese_secant_dim",
]
