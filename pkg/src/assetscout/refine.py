"""Stage 5: trace candidates to their roots at TOP-module I/O and deduplicate.

Case 1: a candidate that is already a top-module port roots at itself.
Case 2: a port of another module is traced through instantiation and
continuous-assignment edges to a reachable top port; unreachable candidates
are dropped when their module sits inside the top's instantiation tree and
kept (flagged) when it does not.
Case 3: a net first expands through assignment and instantiation edges to
port signals, then Cases 1-2 run on each discovered port.
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .design import (
    VIA_CONTINUOUS, VIA_INSTANTIATION, VIA_PROCEDURAL,
    ConnEdge, DesignDatabase, DesignError, SignalRef, adjacency,
)
from .keywords import AVAILABILITY, CLOCK_RESET_NAMES, INTEGRITY
from .patterns import CONTROL, STATUS, classify_design
from .rules import CandidateAsset
from .syntax import INOUT, INPUT, NET, OUTPUT

MAX_BFS_DEPTH = 64

_PORT_SEARCH_VIAS = {VIA_INSTANTIATION, VIA_CONTINUOUS}
_NET_EXPANSION_VIAS = {VIA_INSTANTIATION, VIA_CONTINUOUS, VIA_PROCEDURAL}


def _is_clock_reset(ref: SignalRef) -> bool:
    return ref[1].lower() in CLOCK_RESET_NAMES


def _traversal_adjacency(edges: Sequence[ConnEdge], vias: Set[str]):
    """Adjacency for refinement searches.

    Clock/reset signals are excluded both as endpoints and as hops: reset
    guards touch nearly every register, so paths through them carry no
    dataflow meaning.
    """
    usable = [e for e in edges
              if not _is_clock_reset(e.src) and not _is_clock_reset(e.dst)]
    return adjacency(usable, vias)


@dataclass
class PrimaryAsset:
    module: str
    name: str
    direction: str
    width_bits: Optional[int]
    contributors: List[CandidateAsset] = field(default_factory=list)
    patterns: List[str] = field(default_factory=list)
    objectives: List[str] = field(default_factory=list)
    trace_path: List[ConnEdge] = field(default_factory=list)
    outside_top_tree: bool = False

    @property
    def ref(self) -> SignalRef:
        return (self.module, self.name)


def _bfs_paths(start: SignalRef,
               adj: Dict[SignalRef, List[Tuple[SignalRef, ConnEdge]]],
               accept,
               max_depth: int = MAX_BFS_DEPTH,
               ) -> List[Tuple[SignalRef, List[ConnEdge]]]:
    """All accepted nodes at the minimal BFS depth, with their paths."""
    if accept(start):
        return [(start, [])]
    visited = {start}
    frontier = [(start, [])]
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        next_frontier: List[Tuple[SignalRef, List[ConnEdge]]] = []
        hits: List[Tuple[SignalRef, List[ConnEdge]]] = []
        for node, path in frontier:
            for neighbor, edge in adj.get(node, []):
                if neighbor in visited:
                    continue
                visited.add(neighbor)
                new_path = path + [edge]
                if accept(neighbor):
                    hits.append((neighbor, new_path))
                else:
                    next_frontier.append((neighbor, new_path))
        if hits:
            return sorted(hits, key=lambda h: h[0])
        frontier = next_frontier
    return []


def refine(candidates: Sequence[CandidateAsset],
           db: DesignDatabase,
           edges: Sequence[ConnEdge],
           top: str) -> List[PrimaryAsset]:
    """Trace every candidate to its root and merge duplicates."""
    if top not in db.modules_by_name:
        raise DesignError(f"top module '{top}' not found")
    top_tree = db.modules_under(top)
    port_adj = _traversal_adjacency(edges, _PORT_SEARCH_VIAS)
    net_adj = _traversal_adjacency(edges, _NET_EXPANSION_VIAS)

    def is_top_io(ref: SignalRef) -> bool:
        if _is_clock_reset(ref):
            return False
        decl = db.signal_index.get(ref)
        return ref[0] == top and decl is not None and decl.is_port

    merged: Dict[SignalRef, PrimaryAsset] = {}

    def emit(root: SignalRef, candidate: CandidateAsset,
             path: List[ConnEdge], outside: bool = False) -> None:
        decl = db.signal_index[root]
        asset = merged.get(root)
        if asset is None:
            asset = PrimaryAsset(
                module=root[0], name=root[1],
                direction=decl.direction, width_bits=decl.width_bits,
                trace_path=list(path), outside_top_tree=outside)
            merged[root] = asset
        if candidate not in asset.contributors:
            asset.contributors.append(candidate)
        for p in candidate.patterns:
            if p not in asset.patterns:
                asset.patterns.append(p)
        for o in candidate.objectives:
            if o not in asset.objectives:
                asset.objectives.append(o)
        if path and (not asset.trace_path or len(path) < len(asset.trace_path)):
            asset.trace_path = list(path)

    def resolve_port(candidate: CandidateAsset, ref: SignalRef,
                     prefix: List[ConnEdge]) -> None:
        # Case 1: the signal is a top-module I/O port
        if is_top_io(ref):
            emit(ref, candidate, prefix)
            return
        # Case 2: search for reachable top I/O through instantiations and
        # continuous assignments
        hits = _bfs_paths(ref, port_adj, is_top_io)
        if hits:
            for root, path in hits:
                emit(root, candidate, prefix + path)
        elif ref[0] not in top_tree:
            emit(ref, candidate, prefix, outside=True)
        # else: unreachable inside the top tree -> likely secondary, dropped

    for candidate in candidates:
        ref = (candidate.module, candidate.signal.name)
        if candidate.signal.is_port:
            resolve_port(candidate, ref, [])
        else:
            # Case 3: expand the net to port signals first
            hits = _bfs_paths(
                ref, net_adj,
                lambda r: (r in db.signal_index
                           and db.signal_index[r].is_port
                           and not _is_clock_reset(r)))
            if hits:
                for port_ref, path in hits:
                    resolve_port(candidate, port_ref, path)
            elif ref[0] not in top_tree:
                emit(ref, candidate, [], outside=True)

    out = sorted(merged.values(), key=lambda a: a.ref)
    for asset in out:
        asset.patterns.sort()
        asset.objectives.sort()
        asset.contributors.sort(key=lambda c: c.ref)
    return out


def link_status_to_control(assets: Sequence[PrimaryAsset],
                           db: DesignDatabase,
                           edges: Sequence[ConnEdge]) -> List[PrimaryAsset]:
    """Upgrade Status assets wired to another module's Control signal.

    Reachability through instantiation connections to a Control-classified
    signal of a different module adds Availability; otherwise Integrity is
    guaranteed present.
    """
    behaviors = classify_design(db)
    inst_adj = _traversal_adjacency(edges, {VIA_INSTANTIATION})
    for asset in assets:
        if STATUS not in asset.patterns:
            continue

        def is_foreign_control(ref: SignalRef) -> bool:
            mod, sig = ref
            if mod == asset.module:
                return False
            behavior = behaviors.get(mod)
            return behavior is not None and sig in behavior.control

        hits = _bfs_paths(asset.ref, inst_adj, is_foreign_control)
        target = AVAILABILITY if hits else INTEGRITY
        if target not in asset.objectives:
            asset.objectives.append(target)
            asset.objectives.sort()
    return list(assets)
