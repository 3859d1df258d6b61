"""Syntax-level data model: modules, signals, statements, instantiations.

All containers here are plain dataclasses; once a SourceUnit is built it is
treated as immutable and safe to share across threads.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

# Signal directions
INPUT = "Input"
OUTPUT = "Output"
INOUT = "Inout"
NET = "Net"

# Width classes
SINGLE = "Single"
NARROW = "Narrow"   # 2..8 bits (also the default for unresolved widths)
WIDE = "Wide"       # >= 9 bits

# Statement kinds
CONTINUOUS_ASSIGN = "ContinuousAssign"
BLOCKING_ASSIGN = "BlockingAssign"
NONBLOCKING_ASSIGN = "NonBlockingAssign"
IF_STMT = "If"
CASE_STMT = "Case"
TERNARY_STMT = "Ternary"

ASSIGN_KINDS = (CONTINUOUS_ASSIGN, BLOCKING_ASSIGN, NONBLOCKING_ASSIGN)
CONDITIONAL_KINDS = (IF_STMT, CASE_STMT, TERNARY_STMT)


def width_class(width_bits: Optional[int]) -> str:
    """Map a bit width to its class; unresolved widths default to Narrow."""
    if width_bits is None:
        return NARROW
    if width_bits == 1:
        return SINGLE
    if width_bits <= 8:
        return NARROW
    return WIDE


@dataclass
class Diagnostic:
    message: str
    severity: str = "warning"  # 'warning' or 'error'
    line: int = 0

    def as_dict(self) -> dict:
        return {"message": self.message, "severity": self.severity, "line": self.line}


@dataclass
class SignalDecl:
    name: str
    direction: str          # Input / Output / Inout / Net
    width_bits: Optional[int] = 1   # None when unresolved
    decl_line: int = 0
    range_expr: Optional[Tuple[List[str], List[str]]] = None  # raw (msb, lsb) tokens

    @property
    def width_class(self) -> str:
        return width_class(self.width_bits)

    @property
    def is_port(self) -> bool:
        return self.direction in (INPUT, OUTPUT, INOUT)


@dataclass
class Statement:
    kind: str
    line: int
    cond_idents: List[str] = field(default_factory=list)
    lhs_idents: List[str] = field(default_factory=list)
    rhs_idents: List[str] = field(default_factory=list)
    body_statement_count: int = 0   # max direct statements over branches/items
    branch_count: int = 0           # number of branches / case items parsed
    continuous: bool = False        # True for assign-statement origin


@dataclass
class Instantiation:
    instance_name: str
    target_module: str
    # formal is a port name for named connections, an int index for positional
    connections: List[Tuple[Union[str, int], List[str]]] = field(default_factory=list)
    line: int = 0


@dataclass
class ModuleDef:
    name: str
    path: str = ""
    line: int = 0
    end_line: int = 0
    ports: List[SignalDecl] = field(default_factory=list)
    nets: List[SignalDecl] = field(default_factory=list)
    parameters: Dict[str, Optional[int]] = field(default_factory=dict)
    statements: List[Statement] = field(default_factory=list)
    instantiations: List[Instantiation] = field(default_factory=list)
    unresolved_refs: List[str] = field(default_factory=list)

    def all_signals(self) -> List[SignalDecl]:
        return list(self.ports) + list(self.nets)

    def signal(self, name: str) -> Optional[SignalDecl]:
        for s in self.ports:
            if s.name == name:
                return s
        for s in self.nets:
            if s.name == name:
                return s
        return None

    def port_order(self) -> List[str]:
        return [p.name for p in self.ports]


@dataclass
class SourceUnit:
    path: str
    modules: List[ModuleDef] = field(default_factory=list)
    diagnostics: List[Diagnostic] = field(default_factory=list)
