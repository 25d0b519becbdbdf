"""Program dependence graph over statement labels."""

from __future__ import annotations

from collections import defaultdict, deque
from collections.abc import Iterable
from dataclasses import dataclass, field

from ..lang import Program
from .cfg import ENTRY, Cfg, build_cfg, node_label
from .dataflow import DefUse, ReachingDefinitions, data_dependences, def_use, reaching_definitions
from .postdom import PostDomTree, control_dependences, postdominators


@dataclass(frozen=True)
class PdgEdge:
    src: int | str  # a label, or ENTRY for control edges
    dst: int
    kind: str  # 'data' or 'control'
    tag: str  # variable name for data edges, branch tag for control edges


@dataclass(frozen=True)
class Pdg:
    nodes: tuple
    edges: frozenset[PdgEdge]
    program: Program = field(compare=False, repr=False)
    cfg: Cfg = field(compare=False, repr=False)
    pdt: PostDomTree = field(compare=False, repr=False)
    du: DefUse = field(compare=False, repr=False)
    rd: ReachingDefinitions = field(compare=False, repr=False)

    def __post_init__(self):
        preds = defaultdict(set)
        succs = defaultdict(set)
        for e in self.edges:
            preds[e.dst].add(e.src)
            succs[e.src].add(e.dst)
        object.__setattr__(self, "_preds", dict(preds))
        object.__setattr__(self, "_succs", dict(succs))

    def predecessors(self, node) -> set:
        return self._preds.get(node, set())

    def successors(self, node) -> set:
        return self._succs.get(node, set())

    def data_edges(self) -> set[tuple[int, int]]:
        return {(e.src, e.dst) for e in self.edges if e.kind == "data"}

    def control_edges(self) -> set[tuple]:
        return {(e.src, e.dst) for e in self.edges if e.kind == "control"}

    def backward_reachable(self, seeds: Iterable) -> set[int]:
        """Seeds plus every label with a PDG path to one of them (Entry excluded)."""
        return self._reach(seeds, self.predecessors)

    def forward_reachable(self, seeds: Iterable) -> set[int]:
        return self._reach(seeds, self.successors)

    @staticmethod
    def _reach(seeds, step) -> set[int]:
        seen = set(seeds)
        queue = deque(seen)
        while queue:
            n = queue.popleft()
            for m in step(n):
                if m not in seen:
                    seen.add(m)
                    queue.append(m)
        seen.discard(ENTRY)
        return seen

    def reaching_defs(self, label: int, var: str) -> set[int]:
        """Labels whose definition of ``var`` reaches the start of ``label``."""
        out = set()
        for n in self.cfg.nodes_of(label):
            out |= self.rd.reaching(n, var)
        return out


def build_pdg(program: Program) -> Pdg:
    """Compose CFG, postdominators, control and data dependences."""
    cfg = build_cfg(program)
    pdt = postdominators(cfg)
    du = def_use(cfg)
    rd = reaching_definitions(cfg, du)
    edges = set()
    for ce in control_dependences(cfg, pdt):
        src = ENTRY if ce.src == ENTRY else node_label(ce.src)
        edges.add(PdgEdge(src, node_label(ce.dst), "control", ce.tag))
    for d, u, v in data_dependences(cfg, du, rd):
        edges.add(PdgEdge(d, u, "data", v))
    nodes = (ENTRY,) + tuple(program.labels)
    return Pdg(nodes, frozenset(edges), program, cfg, pdt, du, rd)
