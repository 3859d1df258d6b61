"""Partial-keyword matching: reduce all extracted signals to the important set."""

from dataclasses import dataclass, field
from typing import List, Tuple

from .design import DesignDatabase
from .keywords import FamilyConfig, PartialKeywordGroup
from .syntax import SignalDecl


@dataclass
class ImportantElement:
    module: str
    signal: SignalDecl
    # (group name, fragment, offset of the match in the lowercased name)
    matched_groups: List[Tuple[str, str, int]] = field(default_factory=list)

    @property
    def group_names(self) -> List[str]:
        seen = []
        for group, _frag, _off in self.matched_groups:
            if group not in seen:
                seen.append(group)
        return seen


def _occurrences(haystack: str, needle: str) -> List[int]:
    out = []
    start = 0
    while True:
        idx = haystack.find(needle, start)
        if idx < 0:
            return out
        out.append(idx)
        start = idx + 1


def _suppressed(offset: int, length: int, name: str,
                exclude_fragments: List[str]) -> bool:
    """A match is suppressed when it lies wholly inside an excluded token."""
    for excl in exclude_fragments:
        for eoff in _occurrences(name, excl):
            if eoff <= offset and offset + length <= eoff + len(excl):
                return True
    return False


def fragment_matches(lower_name: str, group: PartialKeywordGroup) -> List[Tuple[str, int]]:
    """All (fragment, offset) hits of a group in a lowercased signal name."""
    hits = []
    for frag in group.fragments:
        for off in _occurrences(lower_name, frag):
            if not _suppressed(off, len(frag), lower_name, group.exclude_fragments):
                hits.append((frag, off))
    return hits


def match_elements(db: DesignDatabase, config: FamilyConfig) -> List[ImportantElement]:
    """Stage 2: every signal with at least one partial-keyword match.

    Clock/reset variants and reserved words are excluded up front; output is
    ordered by (module name, declaration line, signal name).
    """
    exclusions = config.exclusion_set()
    out: List[ImportantElement] = []
    for mod_name in sorted(db.modules_by_name):
        mod = db.modules_by_name[mod_name]
        decls = sorted(mod.all_signals(), key=lambda d: (d.decl_line, d.name))
        for decl in decls:
            lower = decl.name.lower()
            if lower in exclusions:
                continue
            matched: List[Tuple[str, str, int]] = []
            for group in config.groups:
                for frag, off in fragment_matches(lower, group):
                    matched.append((group.name, frag, off))
            if matched:
                out.append(ImportantElement(mod_name, decl, matched))
    return out


def match_oracle(name: str, config: FamilyConfig) -> List[Tuple[str, str]]:
    """Naive reference matcher used for equivalence testing.

    Returns (group, fragment) pairs by scanning every offset of the name for
    every fragment of every group, applying the same exclusion semantics.
    """
    lower = name.lower()
    if lower in config.exclusion_set():
        return []
    pairs = []
    for group in config.groups:
        for frag in group.fragments:
            for off in range(len(lower) - len(frag) + 1):
                if lower[off:off + len(frag)] != frag:
                    continue
                inside_exclusion = False
                for excl in group.exclude_fragments:
                    for eoff in range(len(lower) - len(excl) + 1):
                        if lower[eoff:eoff + len(excl)] == excl \
                                and eoff <= off \
                                and off + len(frag) <= eoff + len(excl):
                            inside_exclusion = True
                if not inside_exclusion and (group.name, frag) not in pairs:
                    pairs.append((group.name, frag))
    return pairs
