"""
Beacon Limit - classical and quantum limits of reading a satellite optical beacon.

Computes Shannon and Holevo capacities for a weak optical identification
beacon on a low Earth orbit satellite, the time a ground station needs to
read its ID, and the part of a pass that remains usable afterwards.
"""

__version__ = "0.1.0"
__author__ = "Beacon Limit Contributors"

from . import models
from .capacity import capacity, capacity_per_second, gordon, holevo_capacity
from .identification import classify_design, scenario_table, ttr, atw
from .link_budget import rate_params, transmittance
from .pass_geometry import pass_duration, slant_range

__all__ = [
    "models",
    "capacity",
    "capacity_per_second",
    "gordon",
    "holevo_capacity",
    "rate_params",
    "transmittance",
    "pass_duration",
    "slant_range",
    "classify_design",
    "scenario_table",
    "ttr",
    "atw",
    "__version__",
]
