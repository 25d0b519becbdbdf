"""Semantics-preserving (non-syntax-preserving) slicing."""

from .analysis import Liveness, counted_loop, live_out, statement_count
from .passes import PASSES, PIPELINE, TransformPass, apply_pass, fold
from .slicer import PipelineResult, amorphous_slice, run_pipeline

__all__ = [
    "Liveness", "counted_loop", "live_out", "statement_count", "PASSES", "PIPELINE",
    "TransformPass", "apply_pass", "fold", "PipelineResult", "amorphous_slice", "run_pipeline",
]
