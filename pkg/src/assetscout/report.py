"""Pipeline orchestration and report emission (JSON / CSV / text)."""

import csv
import io
import json
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from . import __version__
from .design import (
    ConnEdge, DesignDatabase, DesignError, build_connectivity, build_database,
    find_top_modules,
)
from .evaluation import EvalResult, GroundTruth, evaluate
from .keywords import ConfigError, FamilyConfig, count_keyword_occurrences, load_family_config
from .matcher import ImportantElement, match_elements
from .parser import discover_rtl_files, parse_file
from .patterns import classify_design
from .refine import PrimaryAsset, link_status_to_control, refine
from .rules import apply_family_rules
from .syntax import Diagnostic

SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "text")


class NoRtlFilesError(Exception):
    pass


@dataclass
class AssetReport:
    tool_version: str
    family: str
    top_modules: List[str]
    corpus_stats: Dict[str, int]
    stage_counts: Dict[str, int]
    assets: List[PrimaryAsset]
    assets_by_top: Dict[str, List[PrimaryAsset]]
    diagnostics: List[Diagnostic]
    database: DesignDatabase = None
    edges: List[ConnEdge] = field(default_factory=list)
    important: List[ImportantElement] = field(default_factory=list)
    evaluation: Optional[EvalResult] = None

    # -- serialization -------------------------------------------------------

    def _asset_dict(self, asset: PrimaryAsset, top: str) -> dict:
        return {
            "module": asset.module,
            "name": asset.name,
            "direction": asset.direction,
            "width_bits": asset.width_bits,
            "patterns": list(asset.patterns),
            "objectives": list(asset.objectives),
            "outside_top_tree": asset.outside_top_tree,
            "top": top,
            "contributors": [
                {"module": c.module, "signal": c.signal.name,
                 "rule": c.matched_rule,
                 "matched_groups": list(c.matched_groups)}
                for c in asset.contributors
            ],
            "trace_path": [
                {"from": list(e.src), "to": list(e.dst), "via": e.via}
                for e in asset.trace_path
            ],
        }

    def to_dict(self) -> dict:
        asset_entries = []
        for top in self.top_modules:
            for asset in self.assets_by_top.get(top, []):
                asset_entries.append(self._asset_dict(asset, top))
        asset_entries.sort(key=lambda a: (a["module"], a["name"], a["top"]))
        data = {
            "schema_version": SCHEMA_VERSION,
            "tool_version": self.tool_version,
            "family": self.family,
            "top_modules": list(self.top_modules),
            "corpus_stats": dict(self.corpus_stats),
            "stage_counts": dict(self.stage_counts),
            "assets": asset_entries,
            "diagnostics": [d.as_dict() for d in self.diagnostics],
        }
        if self.evaluation is not None:
            data["evaluation"] = self.evaluation.as_dict()
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["top", "module", "signal", "direction", "width_bits",
                         "patterns", "objectives", "contributors"])
        for top in self.top_modules:
            for asset in self.assets_by_top.get(top, []):
                writer.writerow([
                    top, asset.module, asset.name, asset.direction,
                    asset.width_bits if asset.width_bits is not None else "",
                    "|".join(asset.patterns),
                    "|".join(asset.objectives),
                    "|".join(f"{c.module}.{c.signal.name}"
                             for c in asset.contributors),
                ])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [
            f"assetscout {self.tool_version} report (family: {self.family})",
            f"files: {self.corpus_stats['file_count']}  "
            f"modules: {self.corpus_stats['module_count']}  "
            f"signals: {self.corpus_stats['signal_count']}  "
            f"lines: {self.corpus_stats['line_count']}",
            "stage counts: " + "  ".join(
                f"{k}={v}" for k, v in self.stage_counts.items()),
            "",
        ]
        for top in self.top_modules:
            assets = self.assets_by_top.get(top, [])
            lines.append(f"top module {top}: {len(assets)} potential primary assets")
            for asset in assets:
                width = asset.width_bits if asset.width_bits is not None else "?"
                lines.append(
                    f"  {asset.module}.{asset.name} [{width}b {asset.direction}] "
                    f"patterns={','.join(asset.patterns) or '-'} "
                    f"objectives={','.join(asset.objectives) or '-'}")
            lines.append("")
        if self.evaluation is not None:
            lines.append(self.evaluation.confusion_text())
            lines.append("")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")


def _load_corpus(rtl_dir: str):
    if not os.path.isdir(rtl_dir):
        raise NoRtlFilesError(f"RTL directory not found: {rtl_dir}")
    files = discover_rtl_files(rtl_dir)
    if not files:
        raise NoRtlFilesError(f"no RTL files (.v/.sv/.vh/.svh) under {rtl_dir}")
    line_count = 0
    units = []
    for path in files:
        with open(path, "rb") as fh:
            line_count += fh.read().count(b"\n")
        units.append(parse_file(path, include_dirs=[rtl_dir]))
    return files, units, line_count


def run_pipeline(rtl_dir: str,
                 top: Optional[str] = None,
                 family: str = "crypto",
                 out_path: Optional[str] = None,
                 fmt: str = "json",
                 ground_truth: Optional[GroundTruth] = None) -> AssetReport:
    """Execute all five stages over an RTL tree and optionally write a report."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")
    config = load_family_config(family)
    files, units, line_count = _load_corpus(rtl_dir)
    try:
        db = build_database(units)
    except DesignError as err:
        # files exist but no module parsed: treat as an unusable corpus
        raise NoRtlFilesError(str(err)) from err
    tops = find_top_modules(db, top)
    edges = build_connectivity(db)

    important = match_elements(db, config)
    behaviors = classify_design(db)
    candidates = apply_family_rules(important, behaviors, config)

    assets_by_top: Dict[str, List[PrimaryAsset]] = {}
    all_assets: List[PrimaryAsset] = []
    for top_name in tops:
        assets = refine(candidates, db, edges, top_name)
        assets = link_status_to_control(assets, db, edges)
        assets_by_top[top_name] = assets
        all_assets.extend(assets)

    report = AssetReport(
        tool_version=__version__,
        family=config.family,
        top_modules=tops,
        corpus_stats={
            "file_count": len(files),
            "module_count": len(db.modules_by_name),
            "signal_count": db.signal_count,
            "line_count": line_count,
        },
        stage_counts={
            "extracted": db.signal_count,
            "important": len(important),
            "candidates": len(candidates),
            "assets": len(all_assets),
        },
        assets=all_assets,
        assets_by_top=assets_by_top,
        diagnostics=list(db.diagnostics),
        database=db,
        edges=edges,
        important=important,
    )
    if ground_truth is not None:
        warnings: List[str] = []
        report.evaluation = evaluate(all_assets, ground_truth,
                                     db.signal_index.keys(), warnings)
        for msg in warnings:
            report.diagnostics.append(Diagnostic(msg, "warning", 0))
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(report.render(fmt))
    return report


def emit_keyword_stats(rtl_dir: str, family: str,
                       out_path: Optional[str] = None) -> Dict[str, int]:
    """Write per-group keyword occurrence counts as `group,count` CSV."""
    config = load_family_config(family)
    _files, units, _lines = _load_corpus(rtl_dir)
    db = build_database(units)
    counts = count_keyword_occurrences(db, config)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["group", "count"])
            for group in counts:
                writer.writerow([group, counts[group]])
    return counts
