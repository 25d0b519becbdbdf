"""slicekit: static, dynamic, conditioned and amorphous slicing for MiniJ."""

from .amorphous import TransformPass, amorphous_slice, apply_pass
from .cohesion import CohesionReport, cohesion
from .conditioned import conditioned_slice, propagate_constants
from .criteria import (
    ConditionedCriterion,
    DynamicCriterion,
    InputStream,
    Occurrence,
    SimultaneousCriterion,
    Slice,
    StaticCriterion,
    Technique,
)
from .dependence import Pdg, build_cfg, build_pdg, export_dot
from .dynamic import Trace, dynamic_slice, execute, simultaneous_dynamic_slice
from .errors import SliceKitError
from .lang import Program, load, normalize, parse, project, unparse
from .static import backward_slice, forward_slice, static_slice

__version__ = "0.1.0"

__all__ = [
    "TransformPass", "amorphous_slice", "apply_pass", "CohesionReport", "cohesion",
    "conditioned_slice", "propagate_constants", "ConditionedCriterion", "DynamicCriterion",
    "InputStream", "Occurrence", "SimultaneousCriterion", "Slice", "StaticCriterion",
    "Technique", "Pdg", "build_cfg", "build_pdg", "export_dot", "Trace", "dynamic_slice",
    "execute", "simultaneous_dynamic_slice", "SliceKitError", "Program", "load",
    "normalize", "parse", "project", "unparse", "backward_slice", "forward_slice",
    "static_slice",
]
