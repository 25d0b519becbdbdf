"""Control flow, postdominance, dataflow and the program dependence graph."""

from .cfg import ENTRY, EXIT, Cfg, build_cfg, node_label
from .dataflow import (
    INPUT,
    DefUse,
    ReachingDefinitions,
    data_dependences,
    def_use,
    reaching_definitions,
)
from .dot import export_dot
from .pdg import Pdg, PdgEdge, build_pdg
from .postdom import ControlEdge, PostDomTree, control_dependences, postdominators

__all__ = [
    "ENTRY", "EXIT", "Cfg", "build_cfg", "node_label", "INPUT", "DefUse",
    "ReachingDefinitions", "data_dependences", "def_use", "reaching_definitions",
    "export_dot", "Pdg", "PdgEdge", "build_pdg", "ControlEdge", "PostDomTree",
    "control_dependences", "postdominators",
]
