"""Execution, dynamic slicing and simultaneous dynamic slicing."""

from .interpreter import DEFAULT_STEP_LIMIT, Cell, Step, Trace, cell_var, execute, observe
from .slicing import dynamic_slice, simultaneous_dynamic_slice, step_closure

__all__ = [
    "DEFAULT_STEP_LIMIT", "Cell", "Step", "Trace", "cell_var", "execute", "observe",
    "dynamic_slice", "simultaneous_dynamic_slice", "step_closure",
]
