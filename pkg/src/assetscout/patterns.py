"""Behavioral pattern detection: Control / Configuration / Status / Data.

Implements the line-scan classification over a module's flattened statement
list.  Conditionals contribute Control (1-bit) and Configuration (>=2-bit
with a multi-statement block) memberships for Input/Net signals; assignments
contribute Status (1-bit Output lhs) and Data (multi-bit Output lhs or
multi-bit Input rhs).  Inout ports count as both Input and Output.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .design import DesignDatabase
from .syntax import (
    ASSIGN_KINDS, CASE_STMT, CONDITIONAL_KINDS, INOUT, INPUT, NET, OUTPUT,
    ModuleDef, Statement,
)

CONTROL = "Control"
CONFIGURATION = "Configuration"
STATUS = "Status"
DATA = "Data"
PATTERNS = (CONTROL, CONFIGURATION, STATUS, DATA)

Evidence = Tuple[int, str, str]  # (line, statement kind, role)


@dataclass
class BehaviorClassification:
    module: str
    control: List[str] = field(default_factory=list)
    configuration: List[str] = field(default_factory=list)
    status: List[str] = field(default_factory=list)
    data: List[str] = field(default_factory=list)
    evidence: Dict[str, List[Evidence]] = field(default_factory=dict)
    unresolved_count: int = 0

    def patterns_of(self, signal: str) -> List[str]:
        out = []
        if signal in self.control:
            out.append(CONTROL)
        if signal in self.configuration:
            out.append(CONFIGURATION)
        if signal in self.status:
            out.append(STATUS)
        if signal in self.data:
            out.append(DATA)
        return out

    def _add(self, bucket: List[str], signal: str, ev: Evidence) -> None:
        if signal not in bucket:
            bucket.append(signal)
        self.evidence.setdefault(signal, []).append(ev)


def _is_multi_statement(stmt: Statement) -> bool:
    # a case block always qualifies; if/ternary need a branch with >= 2
    # direct statements
    if stmt.kind == CASE_STMT:
        return True
    return stmt.body_statement_count >= 2


def classify_behaviors(module: ModuleDef) -> BehaviorClassification:
    """Assign behavioral patterns to the signals of one module."""
    result = BehaviorClassification(module=module.name)
    for stmt in module.statements:
        if stmt.kind in CONDITIONAL_KINDS:
            for name in stmt.cond_idents:
                decl = module.signal(name)
                if decl is None:
                    result.unresolved_count += 1
                    continue
                readable = decl.direction in (INPUT, NET, INOUT)
                if not readable:
                    continue
                ev = (stmt.line, stmt.kind, "condition")
                if decl.width_bits == 1:
                    result._add(result.control, name, ev)
                elif (decl.width_bits is None or decl.width_bits >= 2) \
                        and _is_multi_statement(stmt):
                    result._add(result.configuration, name, ev)
        elif stmt.kind in ASSIGN_KINDS:
            for name in stmt.lhs_idents:
                decl = module.signal(name)
                if decl is None:
                    result.unresolved_count += 1
                    continue
                if decl.direction not in (OUTPUT, INOUT):
                    continue
                ev = (stmt.line, stmt.kind, "lhs")
                if decl.width_bits == 1:
                    result._add(result.status, name, ev)
                else:
                    result._add(result.data, name, ev)
            for name in stmt.rhs_idents:
                decl = module.signal(name)
                if decl is None:
                    result.unresolved_count += 1
                    continue
                if decl.direction not in (INPUT, INOUT):
                    continue
                if decl.width_bits is None or decl.width_bits >= 2:
                    result._add(result.data, name, (stmt.line, stmt.kind, "rhs"))
    return result


def classify_design(db: DesignDatabase) -> Dict[str, BehaviorClassification]:
    """classify_behaviors over every module, keyed by module name."""
    return {name: classify_behaviors(mod)
            for name, mod in sorted(db.modules_by_name.items())}
