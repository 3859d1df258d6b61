"""Whole-design elaboration: module index, top detection, connectivity graph."""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .syntax import (
    ASSIGN_KINDS, TERNARY_STMT,
    Diagnostic, ModuleDef, SignalDecl, SourceUnit,
)

VIA_INSTANTIATION = "InstantiationConnection"
VIA_CONTINUOUS = "ContinuousAssign"
VIA_PROCEDURAL = "ProceduralAssign"

SignalRef = Tuple[str, str]  # (module name, signal name)


class DesignError(Exception):
    pass


@dataclass(frozen=True)
class ConnEdge:
    src: SignalRef
    dst: SignalRef
    via: str


@dataclass
class DesignDatabase:
    modules_by_name: Dict[str, ModuleDef] = field(default_factory=dict)
    top_modules: List[str] = field(default_factory=list)
    instantiation_parents: Dict[str, Set[str]] = field(default_factory=dict)
    signal_index: Dict[SignalRef, SignalDecl] = field(default_factory=dict)
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def signal_count(self) -> int:
        return len(self.signal_index)

    def module(self, name: str) -> ModuleDef:
        return self.modules_by_name[name]

    def modules_under(self, top: str) -> Set[str]:
        """Modules in `top`'s instantiation tree, including `top` itself."""
        seen = {top}
        queue = deque([top])
        while queue:
            mod = self.modules_by_name.get(queue.popleft())
            if mod is None:
                continue
            for inst in mod.instantiations:
                if inst.target_module in self.modules_by_name \
                        and inst.target_module not in seen:
                    seen.add(inst.target_module)
                    queue.append(inst.target_module)
        return seen


def build_database(units: Sequence[SourceUnit]) -> DesignDatabase:
    """Aggregate parsed units into one indexed design view."""
    db = DesignDatabase()
    for unit in units:
        db.diagnostics.extend(unit.diagnostics)
        for mod in unit.modules:
            if mod.name in db.modules_by_name:
                db.diagnostics.append(Diagnostic(
                    f"duplicate module '{mod.name}' "
                    f"(redefined in {unit.path}); last definition wins",
                    "warning", mod.line))
            db.modules_by_name[mod.name] = mod
    if not db.modules_by_name:
        raise DesignError("empty design: no modules found in any source unit")

    # rebuild signal index from the surviving definitions
    for name, mod in db.modules_by_name.items():
        for decl in mod.all_signals():
            db.signal_index[(name, decl.name)] = decl

    for parent_name, mod in db.modules_by_name.items():
        for inst in mod.instantiations:
            if inst.target_module in db.modules_by_name:
                db.instantiation_parents.setdefault(
                    inst.target_module, set()).add(parent_name)
    db.top_modules = sorted(
        name for name in db.modules_by_name
        if name not in db.instantiation_parents
        or db.instantiation_parents[name] == {name})
    if not db.top_modules:
        # fully cyclic instantiation graph: fall back to all modules
        db.top_modules = sorted(db.modules_by_name)
    return db


def find_top_modules(db: DesignDatabase, user_top: Optional[str] = None) -> List[str]:
    """Roots of the instantiation forest, or the user's explicit choice."""
    if user_top is not None:
        if user_top not in db.modules_by_name:
            raise DesignError(
                f"top module '{user_top}' not found; available modules: "
                + ", ".join(sorted(db.modules_by_name)))
        return [user_top]
    return list(db.top_modules)


def build_connectivity(db: DesignDatabase) -> List[ConnEdge]:
    """Undirected signal-connectivity edges (each emitted in both directions).

    Instantiation connections link parent actuals to child formals;
    assignments link every rhs (and guarding condition) identifier to every
    lhs identifier.  Endpoints must be known signals, otherwise the edge is
    skipped and counted in the diagnostics.
    """
    edges: List[ConnEdge] = []
    skipped = 0

    def add(a: SignalRef, b: SignalRef, via: str) -> None:
        edges.append(ConnEdge(a, b, via))
        edges.append(ConnEdge(b, a, via))

    for mod_name, mod in sorted(db.modules_by_name.items()):
        for stmt in mod.statements:
            if stmt.kind not in ASSIGN_KINDS and stmt.kind != TERNARY_STMT:
                continue
            if not stmt.lhs_idents:
                continue
            via = VIA_CONTINUOUS if stmt.continuous else VIA_PROCEDURAL
            sources = list(dict.fromkeys(stmt.rhs_idents + stmt.cond_idents))
            for lhs in stmt.lhs_idents:
                if (mod_name, lhs) not in db.signal_index:
                    skipped += 1
                    continue
                for src in sources:
                    if (mod_name, src) not in db.signal_index:
                        skipped += 1
                        continue
                    add((mod_name, src), (mod_name, lhs), via)
        for inst in mod.instantiations:
            child = db.modules_by_name.get(inst.target_module)
            if child is None:
                continue
            order = child.port_order()
            for formal, actual_ids in inst.connections:
                if isinstance(formal, int):
                    if formal >= len(order):
                        skipped += 1
                        db.diagnostics.append(Diagnostic(
                            f"positional connection {formal} out of range for "
                            f"'{inst.target_module}'", "warning", inst.line))
                        continue
                    formal_name = order[formal]
                else:
                    formal_name = formal
                if (inst.target_module, formal_name) not in db.signal_index:
                    skipped += 1
                    db.diagnostics.append(Diagnostic(
                        f"connection to unknown port "
                        f"'{inst.target_module}.{formal_name}'", "warning", inst.line))
                    continue
                for actual in actual_ids:
                    if (mod_name, actual) not in db.signal_index:
                        skipped += 1
                        continue
                    add((mod_name, actual), (inst.target_module, formal_name),
                        VIA_INSTANTIATION)
    if skipped:
        db.diagnostics.append(Diagnostic(
            f"{skipped} connectivity endpoints did not resolve to declared "
            "signals and were skipped", "info", 0))
    return edges


def adjacency(edges: Iterable[ConnEdge],
              vias: Optional[Set[str]] = None) -> Dict[SignalRef, List[Tuple[SignalRef, ConnEdge]]]:
    """Adjacency map for BFS, optionally restricted to edge kinds."""
    adj: Dict[SignalRef, List[Tuple[SignalRef, ConnEdge]]] = {}
    for edge in edges:
        if vias is not None and edge.via not in vias:
            continue
        adj.setdefault(edge.src, []).append((edge.dst, edge))
    return adj
