"""End-to-end pipeline runs, report formats, and CLI exit codes."""

import json
import os

import pytest

from assetscout.cli import (
    EXIT_BAD_CONFIG, EXIT_BAD_TOP, EXIT_NO_RTL, EXIT_OK, main,
)
from assetscout.report import (
    FORMATS, SCHEMA_VERSION, NoRtlFilesError, emit_keyword_stats, run_pipeline,
)

from conftest import (
    CORPUS_FAMILIES, MINI_CORPUS, SPLITTER_DIR, SPLITTER_TRUTH,
)

GOLDEN_ROOTS = {
    "load", "bank_selector", "data", "bank0", "bank1", "bank2", "bank3", "done",
}


def test_splitter_pipeline_roots():
    report = run_pipeline(SPLITTER_DIR, top="data_splitter", family="crypto")
    assert {a.name for a in report.assets} == GOLDEN_ROOTS
    assert report.top_modules == ["data_splitter"]


def test_stage_counts_monotonic_everywhere():
    dirs = [SPLITTER_DIR] + [
        os.path.join(MINI_CORPUS, ip) for ip in CORPUS_FAMILIES
    ]
    families = ["crypto"] + list(CORPUS_FAMILIES.values())
    for rtl_dir, family in zip(dirs, families):
        report = run_pipeline(rtl_dir, family=family)
        counts = report.stage_counts
        assert counts["candidates"] <= counts["important"] <= counts["extracted"]
        assert counts["extracted"] == report.corpus_stats["signal_count"]


def test_corpus_stats():
    report = run_pipeline(SPLITTER_DIR)
    stats = report.corpus_stats
    assert stats["file_count"] == 1
    assert stats["module_count"] == 1
    assert stats["signal_count"] == 14
    assert stats["line_count"] > 0


def test_json_report_is_deterministic(tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    run_pipeline(MINI_CORPUS, family="crypto", out_path=str(out1))
    run_pipeline(MINI_CORPUS, family="crypto", out_path=str(out2))
    assert out1.read_bytes() == out2.read_bytes()


def test_json_report_round_trips(tmp_path):
    out = tmp_path / "r.json"
    run_pipeline(SPLITTER_DIR, out_path=str(out))
    raw = out.read_bytes()
    data = json.loads(raw)
    assert data["schema_version"] == SCHEMA_VERSION
    again = (json.dumps(data, indent=2, sort_keys=True) + "\n").encode()
    assert again == raw


def test_assets_sorted_in_report():
    report = run_pipeline(MINI_CORPUS, family="crypto")
    rendered = json.loads(report.render("json"))
    keys = [(a["module"], a["name"], a["top"]) for a in rendered["assets"]]
    assert keys == sorted(keys)


def test_all_formats_render():
    report = run_pipeline(SPLITTER_DIR)
    for fmt in FORMATS:
        text = report.render(fmt)
        assert text
    assert report.render("csv").splitlines()[0] == \
        "top,module,signal,direction,width_bits,patterns,objectives,contributors"
    with pytest.raises(ValueError):
        run_pipeline(SPLITTER_DIR, fmt="yaml")


def test_no_rtl_files_raises(tmp_path):
    with pytest.raises(NoRtlFilesError):
        run_pipeline(str(tmp_path))


def test_files_without_modules_raise(tmp_path):
    (tmp_path / "empty.v").write_text("// no modules here\n")
    with pytest.raises(NoRtlFilesError):
        run_pipeline(str(tmp_path))


def test_keyword_stats_csv(tmp_path):
    out = tmp_path / "stats.csv"
    counts = emit_keyword_stats(SPLITTER_DIR, "crypto", str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "group,count"
    assert counts["data"] >= 2
    assert any(line.startswith("data,") for line in lines[1:])


def test_cli_success(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["--rtl-dir", SPLITTER_DIR, "--top", "data_splitter",
                 "--out", str(out)])
    assert code == EXIT_OK
    assert json.loads(out.read_text())["assets"]


def test_cli_stdout_report(capsys):
    assert main(["--rtl-dir", SPLITTER_DIR, "--format", "text"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "data_splitter" in out


def test_cli_empty_dir_exit_2(tmp_path, capsys):
    assert main(["--rtl-dir", str(tmp_path)]) == EXIT_NO_RTL


def test_cli_unknown_top_exit_3(capsys):
    code = main(["--rtl-dir", SPLITTER_DIR, "--top", "missing"])
    assert code == EXIT_BAD_TOP
    assert "data_splitter" in capsys.readouterr().err


def test_cli_bad_config_exit_4(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"version": 99}')
    code = main(["--rtl-dir", SPLITTER_DIR, "--config", str(bad)])
    assert code == EXIT_BAD_CONFIG


def test_cli_bad_ground_truth_exit_4(tmp_path, capsys):
    bad = tmp_path / "truth.csv"
    bad.write_text("module,signal,is_asset\nm,key,maybe\n")
    code = main(["--rtl-dir", SPLITTER_DIR, "--ground-truth", str(bad)])
    assert code == EXIT_BAD_CONFIG


def test_cli_ground_truth_evaluation(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["--rtl-dir", SPLITTER_DIR, "--ground-truth", SPLITTER_TRUTH,
                 "--out", str(out)])
    assert code == EXIT_OK
    data = json.loads(out.read_text())
    assert data["evaluation"]["f1"] == 1.0
    assert "predicted" in capsys.readouterr().out


def test_cli_stats_mode(capsys):
    assert main(["--rtl-dir", SPLITTER_DIR, "--stats"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "group,count"


def test_cli_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "assetscout" in capsys.readouterr().out
