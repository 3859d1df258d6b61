"""Stage 4: family-specific classification rules over matched elements."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .keywords import (
    BUILTIN_FAMILIES, ClassificationRule, ConfigError, FamilyConfig,
    load_family_config,
)
from .matcher import ImportantElement
from .patterns import BehaviorClassification
from .syntax import INOUT, INPUT, NET, OUTPUT, SignalDecl


class RuleError(Exception):
    pass


@dataclass
class CandidateAsset:
    module: str
    signal: SignalDecl
    matched_rule: str
    patterns: List[str]
    objectives: List[str]
    matched_groups: List[str]
    evidence: Dict[str, list] = field(default_factory=dict)

    @property
    def ref(self):
        return (self.module, self.signal.name)


def _direction_matches(decl: SignalDecl, allowed: Sequence[str]) -> bool:
    if decl.direction == INOUT:
        return INPUT in allowed or OUTPUT in allowed
    return decl.direction in allowed


def _width_matches(decl: SignalDecl, rule: ClassificationRule) -> bool:
    if decl.width_bits is None:
        # unresolved widths are Narrow by convention: only rules whose lower
        # bound fits in the 2..8 band can accept them
        return rule.min_width <= 8
    if decl.width_bits < rule.min_width:
        return False
    if rule.max_width is not None and decl.width_bits > rule.max_width:
        return False
    return True


def rule_applies(rule: ClassificationRule, element: ImportantElement,
                 patterns: Sequence[str]) -> bool:
    """Re-checkable predicate: group, pattern, direction and width gates."""
    if not any(g in rule.groups for g in element.group_names):
        return False
    if not any(p in rule.patterns for p in patterns):
        return False
    if not _direction_matches(element.signal, rule.directions):
        return False
    return _width_matches(element.signal, rule)


def apply_family_rules(important: Sequence[ImportantElement],
                       behaviors: Dict[str, BehaviorClassification],
                       config: FamilyConfig,
                       rules: Optional[Sequence[ClassificationRule]] = None,
                       ) -> List[CandidateAsset]:
    """Emit one CandidateAsset per element satisfying at least one rule.

    Rules are ordered; the first satisfied rule is recorded and a signal is
    emitted at most once.  Objectives are the rule's plus those of every
    matched keyword group.
    """
    if rules is None:
        rules = config.rules
    if not rules:
        raise RuleError(f"family '{config.family}' has no rules")
    out: List[CandidateAsset] = []
    for element in important:
        behavior = behaviors.get(element.module)
        patterns = behavior.patterns_of(element.signal.name) if behavior else []
        for rule in rules:
            if not rule_applies(rule, element, patterns):
                continue
            objectives = list(rule.objectives)
            for gname in element.group_names:
                group = config.group(gname)
                if group is None:
                    continue
                for obj in group.objectives:
                    if obj not in objectives:
                        objectives.append(obj)
            evidence = {
                "matches": [list(m) for m in element.matched_groups],
                "behavior": behavior.evidence.get(element.signal.name, [])
                if behavior else [],
            }
            out.append(CandidateAsset(
                module=element.module,
                signal=element.signal,
                matched_rule=rule.name,
                patterns=patterns,
                objectives=sorted(objectives),
                matched_groups=element.group_names,
                evidence=evidence,
            ))
            break
    return out


def default_rules(family: str) -> List[ClassificationRule]:
    """Bundled ordered rule list for a builtin family."""
    if family not in BUILTIN_FAMILIES:
        raise ConfigError(
            f"unknown family {family!r}; builtins: {', '.join(BUILTIN_FAMILIES)}")
    return load_family_config(family).rules
