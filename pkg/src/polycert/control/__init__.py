"""Control-theory pipelines: identification, 2-D stability, H-infinity."""

from .hinf import RatFun, hinf_norm, parse_transfer_matrix
from .odes import (
    Candidate,
    OdeModel,
    identify_parameters,
    interpolate_data,
    prolong_ode,
)
from .stability import (
    StabilityVerdict,
    moebius_split,
    stability_2d,
    stability_parametric,
    unit_disk_stability_1d,
)

__all__ = [
    "Candidate",
    "OdeModel",
    "RatFun",
    "StabilityVerdict",
    "hinf_norm",
    "identify_parameters",
    "interpolate_data",
    "moebius_split",
    "parse_transfer_matrix",
    "prolong_ode",
    "stability_2d",
    "stability_parametric",
    "unit_disk_stability_1d",
]
