"""CLI wiring: exit codes, JSON shapes, determinism."""

import json

import pytest

from plumbline.cli import main

PAIR_CONFIG = {
    "t": "t",
    "curve_a": {"tau": ["0", "1"], "marks": [{"point": "O", "c": ["1", "0"]}]},
    "curve_b": {"tau": ["0", "2"], "marks": [{"point": "O", "c": ["1", "0"]}]},
}

STAR_CONFIG = {
    "curves": [
        {"tau": ["0", "1"], "marks": [{"point": "O", "c": ["1", "0"]}]},
        {"tau": ["0", "2"], "marks": [{"point": "O", "c": ["1", "0"]}]},
    ],
    "b": ["0", "1"],
    "vars": ["t1", "t2"],
}

TREE_CONFIG = {
    "genus": 3,
    "edges": [[1, 2], [2, 3]],
    "taus": [["0", "1"], ["0", "2"], ["0", "3"]],
    "edge_data": [
        {
            "edge": [1, 2],
            "var": "t1",
            "low": {"label": "O", "c": ["1", "0"]},
            "high": {"label": "O", "c": ["1", "0"]},
        },
        {
            "edge": [2, 3],
            "var": "t2",
            "low": {"label": "Half", "c": ["1", "0"]},
            "high": {"label": "Half", "c": ["1", "0"]},
        },
    ],
}


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_alkanes_count(capsys):
    code, report = _run(capsys, ["alkanes", "count", "--max", "8"])
    assert code == 0
    assert report["counts"] == [1, 1, 1, 2, 3, 5, 9, 18]


def test_alkanes_enum(capsys):
    code, report = _run(capsys, ["alkanes", "enum", "--genus", "4"])
    assert code == 0
    assert report["count"] == 2
    assert {tuple(map(tuple, a["edges"])) for a in report["alkanes"]} == {
        ((1, 2), (1, 4), (2, 3)),
        ((1, 2), (1, 3), (1, 4)),
    }


def test_alkanes_enum_out_of_range(capsys):
    code, _ = _run(capsys, ["alkanes", "enum", "--genus", "0"])
    assert code == 2


def test_periods_pair(tmp_path, capsys):
    cfg = tmp_path / "pair.json"
    cfg.write_text(json.dumps(PAIR_CONFIG))
    code, report = _run(capsys, ["periods", "pair", "--config", str(cfg)])
    assert code == 0
    assert report["genus"] == 2
    assert report["mode"] == "exact"
    e12 = report["entries"][0][1]
    assert e12["terms"] == [{"exp": [1], "re": "-1/4", "im": "0"}]


def test_periods_star(tmp_path, capsys):
    cfg = tmp_path / "star.json"
    cfg.write_text(json.dumps(STAR_CONFIG))
    code, report = _run(capsys, ["periods", "star", "--config", str(cfg)])
    assert code == 0
    e12 = report["entries"][0][1]
    assert e12["terms"] == [{"exp": [1, 1], "re": "1/16", "im": "0"}]


def test_periods_tree(tmp_path, capsys):
    cfg = tmp_path / "tree.json"
    cfg.write_text(json.dumps(TREE_CONFIG))
    code, report = _run(capsys, ["periods", "tree", "--config", str(cfg)])
    assert code == 0
    assert report["support"] == [[1, 2], [2, 3]]


def test_periods_tree_numeric(tmp_path, capsys):
    cfg = tmp_path / "tree.json"
    cfg.write_text(json.dumps(TREE_CONFIG))
    code, report = _run(capsys, ["periods", "tree", "--config", str(cfg), "--numeric"])
    assert code == 0
    assert report["mode"] == "numeric"
    (term,) = report["entries"][0][1]["terms"]
    assert term["re"] == 0.0
    assert abs(term["im"] + 1.5707963267948966) < 1e-12  # -2*pi/4


def test_missing_config_is_usage_error(capsys):
    code, _ = _run(capsys, ["periods", "tree", "--config", "missing.json"])
    assert code == 2


def test_malformed_config_is_usage_error(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{not json")
    code, _ = _run(capsys, ["periods", "pair", "--config", str(cfg)])
    assert code == 2
    cfg2 = tmp_path / "incomplete.json"
    cfg2.write_text(json.dumps({"curve_a": PAIR_CONFIG["curve_a"]}))
    code2, _ = _run(capsys, ["periods", "pair", "--config", str(cfg2)])
    assert code2 == 2


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["alkanes", "count", "--max", "5", "--bogus"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err.lower()


def test_relations_verify_small(capsys):
    code, report = _run(
        capsys,
        ["relations", "verify", "--genus", "4", "--trials", "2", "--order", "17", "--seed", "3"],
    )
    assert code == 0
    assert report["pass"] is True
    assert len(report["trials"]) == 2
    assert all(t["octics_checked"] == 1 for t in report["trials"])


def test_surfaces_dims(capsys):
    code, report = _run(capsys, ["surfaces", "dims", "--genus", "3"])
    assert code == 0
    assert report["K"] == [18, 14, 10, 6, 2]
    assert all(item["dims"]["V_Gamma"] == 36 for item in report["alkanes"])
    assert all(item["dims"]["W_1h"] == 4 for item in report["alkanes"])


def test_surfaces_egamma(capsys):
    code, report = _run(
        capsys, ["surfaces", "egamma", "--genus", "4", "--seed", "1", "--trials", "3"]
    )
    assert code == 0
    assert report["pass"] is True
    assert all(r["span_dims"] == [3, 3, 3] for r in report["results"])


def test_selftest_deterministic(tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["selftest", "--seed", "5", "--out", str(out1)]) == 0
    assert main(["selftest", "--seed", "5", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_selftest_corrupted_octic_fails(tmp_path):
    out = tmp_path / "bad.json"
    code = main(["selftest", "--seed", "5", "--inject-corrupted-octic", "--out", str(out)])
    assert code == 1
    report = json.loads(out.read_text())
    failing = {c["name"] for c in report["checks"] if not c["pass"]}
    assert "cone_vanishing" in failing and "star_on_cone" in failing


def test_tolerance_env_override(monkeypatch):
    from plumbline.cli import _float_field

    monkeypatch.setenv("PLUMBLINE_TOL", "1e-6")
    assert _float_field().tolerance == 1e-6
    monkeypatch.delenv("PLUMBLINE_TOL")
    assert _float_field().tolerance == 1e-10
