"""Partial-keyword group configuration for IP families.

Bundled defaults for the crypto / gpio / peripheral families are
reconstructions assembled from typical open-source RTL naming practice;
users can supply their own JSON config instead (see CONFIG_SCHEMA_VERSION
and `FamilyConfig.to_dict` for the on-disk layout).
"""

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .tokenizer import VERILOG_2005_KEYWORDS
from .syntax import INPUT, NARROW, NET, OUTPUT, SINGLE, WIDE

CONFIG_SCHEMA_VERSION = 1

CONFIDENTIALITY = "Confidentiality"
INTEGRITY = "Integrity"
AVAILABILITY = "Availability"
OBJECTIVES = (CONFIDENTIALITY, INTEGRITY, AVAILABILITY)

BUILTIN_FAMILIES = ("crypto", "gpio", "peripheral")

_DIRECTIONS = (INPUT, OUTPUT, NET)
_WIDTH_CLASSES = (SINGLE, NARROW, WIDE)


class ConfigError(Exception):
    pass


def clock_reset_closure() -> frozenset:
    """Clock/reset signal names excluded from matching.

    Exact base names plus the common negation suffixes and i_/o_ prefixes.
    """
    names = set()
    for base in ("clk", "clock", "rst", "reset"):
        for variant in (base, base + "_n", base + "n"):
            names.add(variant)
            names.add("i_" + variant)
            names.add("o_" + variant)
    return frozenset(names)


CLOCK_RESET_NAMES = clock_reset_closure()


@dataclass
class PartialKeywordGroup:
    name: str
    fragments: List[str]
    directions: List[str] = field(default_factory=lambda: list(_DIRECTIONS))
    width_classes: List[str] = field(default_factory=lambda: list(_WIDTH_CLASSES))
    objectives: List[str] = field(default_factory=list)
    exclude_fragments: List[str] = field(default_factory=list)

    def validate(self) -> None:
        if not self.fragments:
            raise ConfigError(f"group '{self.name}': empty fragment list")
        for frag in self.fragments + self.exclude_fragments:
            if not frag or frag != frag.lower() or any(c.isspace() for c in frag):
                raise ConfigError(
                    f"group '{self.name}': fragment {frag!r} must be "
                    "non-empty, lowercase and whitespace-free")
        if not self.objectives:
            raise ConfigError(f"group '{self.name}': objectives must be non-empty")
        for obj in self.objectives:
            if obj not in OBJECTIVES:
                raise ConfigError(f"group '{self.name}': unknown objective {obj!r}")
        for d in self.directions:
            if d not in (INPUT, OUTPUT, NET):
                raise ConfigError(f"group '{self.name}': unknown direction {d!r}")
        for wc in self.width_classes:
            if wc not in _WIDTH_CLASSES:
                raise ConfigError(f"group '{self.name}': unknown width class {wc!r}")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "fragments": list(self.fragments),
            "directions": list(self.directions),
            "width_classes": list(self.width_classes),
            "objectives": list(self.objectives),
            "exclude_fragments": list(self.exclude_fragments),
        }


@dataclass
class ClassificationRule:
    name: str
    groups: List[str]                  # any-of
    patterns: List[str]                # any-of: Control/Configuration/Status/Data
    directions: List[str] = field(default_factory=lambda: list(_DIRECTIONS))
    min_width: int = 1
    max_width: Optional[int] = None    # None = unbounded
    objectives: List[str] = field(default_factory=list)

    def validate(self) -> None:
        if not self.groups:
            raise ConfigError(f"rule '{self.name}': empty group list")
        if not self.patterns:
            raise ConfigError(f"rule '{self.name}': empty pattern list")
        for p in self.patterns:
            if p not in ("Control", "Configuration", "Status", "Data"):
                raise ConfigError(f"rule '{self.name}': unknown pattern {p!r}")
        if self.min_width < 1:
            raise ConfigError(f"rule '{self.name}': min_width must be >= 1")
        if self.max_width is not None and self.min_width > self.max_width:
            raise ConfigError(
                f"rule '{self.name}': min_width {self.min_width} exceeds "
                f"max_width {self.max_width}")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "groups": list(self.groups),
            "patterns": list(self.patterns),
            "directions": list(self.directions),
            "min_width": self.min_width,
            "max_width": self.max_width,
            "objectives": list(self.objectives),
        }


@dataclass
class FamilyConfig:
    family: str
    groups: List[PartialKeywordGroup] = field(default_factory=list)
    rules: List[ClassificationRule] = field(default_factory=list)
    global_exclusions: List[str] = field(default_factory=list)

    def validate(self) -> None:
        seen = set()
        for group in self.groups:
            group.validate()
            if group.name in seen:
                raise ConfigError(f"duplicate group name '{group.name}'")
            seen.add(group.name)
        for rule in self.rules:
            rule.validate()
        excl = set(self.exclusion_set())
        for group in self.groups:
            for frag in group.fragments:
                if frag in excl:
                    raise ConfigError(
                        f"group '{group.name}': fragment {frag!r} collides "
                        "with a global exclusion")
        required = {"clk", "clock", "rst", "reset"}
        if not required <= excl:
            raise ConfigError("global exclusions must cover clock/reset names")

    def exclusion_set(self) -> frozenset:
        """Exact-match exclusion names: user list + clock/reset + keywords."""
        return frozenset(s.lower() for s in self.global_exclusions) \
            | CLOCK_RESET_NAMES | VERILOG_2005_KEYWORDS

    def group(self, name: str) -> Optional[PartialKeywordGroup]:
        for g in self.groups:
            if g.name == name:
                return g
        return None

    def to_dict(self) -> dict:
        return {
            "version": CONFIG_SCHEMA_VERSION,
            "family": self.family,
            "global_exclusions": list(self.global_exclusions),
            "groups": [g.to_dict() for g in self.groups],
            "rules": [r.to_dict() for r in self.rules],
        }

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def _config_from_dict(data: dict) -> FamilyConfig:
    if not isinstance(data, dict):
        raise ConfigError("config root must be an object")
    version = data.get("version")
    if version != CONFIG_SCHEMA_VERSION:
        raise ConfigError(f"unsupported config version: {version!r}")
    groups = []
    for gd in data.get("groups", []):
        try:
            groups.append(PartialKeywordGroup(
                name=gd["name"],
                fragments=list(gd["fragments"]),
                directions=list(gd.get("directions", _DIRECTIONS)),
                width_classes=list(gd.get("width_classes", _WIDTH_CLASSES)),
                objectives=list(gd.get("objectives", [])),
                exclude_fragments=list(gd.get("exclude_fragments", [])),
            ))
        except KeyError as err:
            raise ConfigError(f"group entry missing field {err}") from err
    rules = []
    for rd in data.get("rules", []):
        try:
            rules.append(ClassificationRule(
                name=rd["name"],
                groups=list(rd["groups"]),
                patterns=list(rd["patterns"]),
                directions=list(rd.get("directions", _DIRECTIONS)),
                min_width=int(rd.get("min_width", 1)),
                max_width=rd.get("max_width"),
                objectives=list(rd.get("objectives", [])),
            ))
        except KeyError as err:
            raise ConfigError(f"rule entry missing field {err}") from err
    cfg = FamilyConfig(
        family=str(data.get("family", "user-defined")),
        groups=groups,
        rules=rules,
        global_exclusions=list(data.get("global_exclusions",
                                        ["clk", "clock", "rst", "reset"])),
    )
    cfg.validate()
    return cfg


def load_family_config(name_or_path: str) -> FamilyConfig:
    """Load a builtin family ('crypto', 'gpio', 'peripheral') or a JSON file."""
    if name_or_path in BUILTIN_FAMILIES:
        cfg = _builtin_config(name_or_path)
        cfg.validate()
        return cfg
    try:
        with open(name_or_path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as err:
        raise ConfigError(
            f"no builtin family and no config file named {name_or_path!r}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"malformed config file {name_or_path!r}: {err}") from err
    return _config_from_dict(data)


def count_keyword_occurrences(db, config: FamilyConfig) -> Dict[str, int]:
    """Per-group count of signals whose name contains any group fragment.

    Signals hit by the global exclusions are not counted; a signal matching
    several groups contributes to each of them.
    """
    from .matcher import fragment_matches  # local import to avoid a cycle
    excl = config.exclusion_set()
    counts = {g.name: 0 for g in config.groups}
    for (_mod, name), _decl in db.signal_index.items():
        lower = name.lower()
        if lower in excl:
            continue
        for group in config.groups:
            if fragment_matches(lower, group):
                counts[group.name] += 1
    return counts


# ---------------------------------------------------------------------------
# Bundled family definitions (reconstructions, user-overridable)
# ---------------------------------------------------------------------------

def _g(name: str, fragments: Sequence[str], objectives: Sequence[str],
       directions: Sequence[str] = _DIRECTIONS,
       width_classes: Sequence[str] = _WIDTH_CLASSES,
       exclude: Sequence[str] = ()) -> PartialKeywordGroup:
    return PartialKeywordGroup(name, list(fragments), list(directions),
                               list(width_classes), list(objectives),
                               list(exclude))


def _r(name: str, groups: Sequence[str], patterns: Sequence[str],
       min_width: int = 1, max_width: Optional[int] = None,
       directions: Sequence[str] = _DIRECTIONS,
       objectives: Sequence[str] = ()) -> ClassificationRule:
    return ClassificationRule(name, list(groups), list(patterns),
                              list(directions), min_width, max_width,
                              list(objectives))


def _builtin_config(family: str) -> FamilyConfig:
    if family == "crypto":
        groups = [
            _g("key", ["key"], [CONFIDENTIALITY], width_classes=[NARROW, WIDE]),
            _g("text", ["text", "plain", "cipher", "msg"], [CONFIDENTIALITY]),
            _g("data", ["data", "din", "dout", "bank", "word", "block"],
               [CONFIDENTIALITY], exclude=["ding"]),
            _g("iv", ["iv", "nonce"], [CONFIDENTIALITY, INTEGRITY]),
            _g("seed", ["seed", "random", "rng"], [CONFIDENTIALITY]),
            _g("round", ["round", "rnd"], [INTEGRITY]),
            _g("enable", ["en", "wen", "ren"], [AVAILABILITY],
               width_classes=[SINGLE], exclude=["end", "gen", "len"]),
            _g("start", ["start", "init", "go"], [AVAILABILITY],
               width_classes=[SINGLE]),
            _g("done", ["done", "finish", "complete"], [INTEGRITY],
               width_classes=[SINGLE]),
            _g("ready", ["ready", "rdy"], [INTEGRITY], width_classes=[SINGLE]),
            _g("busy", ["busy"], [INTEGRITY], width_classes=[SINGLE]),
            _g("valid", ["valid", "vld"], [INTEGRITY], width_classes=[SINGLE]),
            _g("load", ["load"], [AVAILABILITY], width_classes=[SINGLE],
               exclude=["upload", "download"]),
            _g("mode", ["mode", "sel", "cfg", "ctl", "ctrl"],
               [AVAILABILITY, INTEGRITY], width_classes=[SINGLE, NARROW]),
        ]
        rules = [
            _r("encryption-key", ["key"], ["Data"], min_width=64,
               objectives=[CONFIDENTIALITY]),
            _r("iv-seed", ["iv", "seed"], ["Data"], min_width=8,
               objectives=[CONFIDENTIALITY, INTEGRITY]),
            _r("text-data", ["text", "data", "key", "round"], ["Data"],
               min_width=8, objectives=[CONFIDENTIALITY]),
            _r("crypto-control", ["enable", "start", "load", "done", "ready",
                                  "valid", "busy", "mode"], ["Control"],
               min_width=1, max_width=1, objectives=[AVAILABILITY]),
            _r("crypto-config", ["mode", "round", "data"], ["Configuration"],
               min_width=2, max_width=8, objectives=[AVAILABILITY, INTEGRITY]),
            _r("crypto-status", ["done", "ready", "busy", "valid"], ["Status"],
               min_width=1, max_width=1, objectives=[INTEGRITY]),
        ]
    elif family == "gpio":
        groups = [
            _g("data", ["data", "rdata", "wdata"], [CONFIDENTIALITY, INTEGRITY]),
            _g("pad", ["pad"], [INTEGRITY]),
            _g("port", ["port", "pin", "gpio"], [INTEGRITY]),
            _g("oe", ["oe", "oen"], [AVAILABILITY, INTEGRITY]),
            _g("enable", ["en", "ena"], [AVAILABILITY],
               exclude=["end", "gen", "len"]),
            _g("dir", ["dir"], [AVAILABILITY, INTEGRITY]),
            _g("irq", ["irq", "intr"], [AVAILABILITY], width_classes=[SINGLE, NARROW]),
            _g("out", ["out"], [INTEGRITY], exclude=["timeout"]),
            _g("in", ["in"], [INTEGRITY], exclude=["int", "init"]),
        ]
        rules = [
            _r("port-data", ["data", "pad", "port", "out", "in"], ["Data"],
               min_width=8, max_width=64,
               objectives=[CONFIDENTIALITY, INTEGRITY]),
            _r("direction-oe", ["oe", "dir", "enable"],
               ["Control", "Configuration", "Data"],
               objectives=[AVAILABILITY, INTEGRITY]),
            _r("gpio-control", ["enable", "irq", "port", "pad"], ["Control"],
               min_width=1, max_width=1, objectives=[AVAILABILITY]),
            _r("gpio-config", ["dir", "oe", "port"], ["Configuration"],
               min_width=2, objectives=[AVAILABILITY, INTEGRITY]),
            _r("gpio-status", ["irq", "out", "in", "port", "pad"], ["Status"],
               objectives=[INTEGRITY]),
        ]
    elif family == "peripheral":
        groups = [
            _g("tx", ["tx"], [CONFIDENTIALITY, INTEGRITY]),
            _g("rx", ["rx"], [CONFIDENTIALITY, INTEGRITY]),
            _g("data", ["data", "din", "dout"], [CONFIDENTIALITY],
               exclude=["ding"]),
            _g("enable", ["en"], [AVAILABILITY], exclude=["end", "gen", "len"]),
            _g("busy", ["busy"], [INTEGRITY], width_classes=[SINGLE]),
            _g("ready", ["ready", "rdy"], [INTEGRITY], width_classes=[SINGLE]),
            _g("valid", ["valid", "vld"], [INTEGRITY], width_classes=[SINGLE]),
            _g("addr", ["addr", "adr"], [INTEGRITY]),
            _g("cs", ["cs", "ss"], [AVAILABILITY], width_classes=[SINGLE, NARROW]),
            _g("sel", ["sel"], [AVAILABILITY, INTEGRITY]),
            _g("irq", ["irq", "intr"], [AVAILABILITY], width_classes=[SINGLE, NARROW]),
        ]
        rules = [
            _r("txrx-data", ["tx", "rx", "data"], ["Data"], min_width=2,
               objectives=[CONFIDENTIALITY]),
            _r("bus-address", ["addr"], ["Data", "Configuration"], min_width=2,
               objectives=[INTEGRITY]),
            _r("bus-control", ["enable", "cs", "sel", "irq", "ready", "valid",
                               "busy", "tx", "rx"], ["Control"],
               min_width=1, max_width=1, objectives=[AVAILABILITY]),
            _r("bus-config", ["sel", "cs", "addr", "data"], ["Configuration"],
               min_width=2, max_width=8, objectives=[AVAILABILITY, INTEGRITY]),
            _r("bus-status", ["ready", "busy", "valid", "irq", "tx", "rx"],
               ["Status"], objectives=[INTEGRITY]),
        ]
    else:
        raise ConfigError(f"unknown builtin family {family!r}")
    return FamilyConfig(family=family, groups=groups, rules=rules,
                        global_exclusions=["clk", "clock", "rst", "reset"])
