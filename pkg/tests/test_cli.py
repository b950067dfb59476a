import json

import pytest

from lcsforge.cli import main, run_suite


def strip_times(payload):
    for check in payload["checks"]:
        check.pop("time_ms")
    return payload


def test_depth_suite():
    report = run_suite("depth", {"word": "x1.x2.X1.X2", "cutoff": 4})
    assert report.passed
    assert report.checks[0].detail["depth"] == "2"


def test_depth_reports_beyond_cutoff():
    report = run_suite("depth", {"word": "e", "cutoff": 4})
    assert report.checks[0].detail["depth"] == ">= 4"


def test_kneser_suite_reports_known_mismatch():
    report = run_suite("kneser", {"max_n": 12, "max_m": 2})
    by_name = {c.name: c for c in report.checks}
    # the quotable law breaks only at the degenerate point (2, 1)
    assert not by_name["law-m1"].passed
    assert by_name["law-m1"].detail["mismatches"] == [
        {"n": 2, "m": 1, "connected": True, "law": False}
    ]
    assert by_name["law-m2"].passed


def test_ia_axioms_suite():
    report = run_suite("ia-axioms", {"n": 4})
    assert report.passed
    names = {c.name for c in report.checks}
    assert names == {
        "functoriality",
        "disjoint-commuting",
        "condition-eii",
        "coverage-degree",
    }


def test_johnson_suite_small():
    report = run_suite("johnson", {"n": 3, "budget": 2, "seed": 7})
    assert report.passed, [
        (c.name, c.detail) for c in report.checks if not c.passed
    ]


def test_normal_gens_suite():
    report = run_suite("normal-gens", {"k": 1, "n": 3, "cutoff": 3, "budget": None, "jobs": 1})
    assert report.passed
    assert report.checks[0].detail["elements"] == 9


def test_normal_gens_sharded_matches_serial():
    serial = run_suite(
        "normal-gens", {"k": 2, "n": 6, "cutoff": 4, "budget": 120, "jobs": 1}
    )
    sharded = run_suite(
        "normal-gens", {"k": 2, "n": 6, "cutoff": 4, "budget": 120, "jobs": 2}
    )
    assert serial.passed and sharded.passed
    assert (
        serial.checks[0].detail["elements"] == sharded.checks[0].detail["elements"]
    )


def test_kmm_raag_graph_file(tmp_path):
    path = tmp_path / "cycle.graph"
    path.write_text("4\n1 2\n2 3\n3 4\n1 4\n")
    report = run_suite("kmm-raag", {"graph": str(path)})
    assert report.passed
    detail = report.checks[0].detail
    assert detail["characters"] == 255
    assert detail["certificates"] > 0


def test_kmm_raag_small_vertex_sweep():
    report = run_suite("kmm-raag", {"graph": None, "max_n": 3})
    assert report.passed
    by_name = {c.name: c for c in report.checks}
    assert by_name["f2-edgeless"].detail["certificates"] == 0


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suite("nope", {})


def test_main_exit_codes(tmp_path, capsys):
    assert main(["depth", "--word", "x1.x2.X1.X2", "--cutoff", "4"]) == 0
    out = capsys.readouterr().out
    assert "depth 2" in out
    # the kneser law check fails at its known degenerate point
    assert main(["kneser", "--max-n", "3", "--max-m", "1"]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["no-such-suite"])
    assert exc.value.code == 2
    assert main(["kmm-raag", "--graph", str(tmp_path / "missing.graph")]) == 2


def test_json_report_deterministic(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["ia-axioms", "--n", "3", "--json", str(out1)]) == 0
    assert main(["ia-axioms", "--n", "3", "--json", str(out2)]) == 0
    a = strip_times(json.loads(out1.read_text()))
    b = strip_times(json.loads(out2.read_text()))
    assert a == b
    assert a["schema"] == 1
    assert a["status"] == "pass"
    assert [c["name"] for c in a["checks"]] == sorted(
        c["name"] for c in a["checks"]
    )
