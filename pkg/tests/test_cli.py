import json

import pytest
from typer.testing import CliRunner

import app.core.config as cfg
from app.cli import app
from app.core.bundle import FinAbGroup

runner = CliRunner()


@pytest.fixture(autouse=True)
def quiet(monkeypatch):
    # keep stdout to the report alone
    monkeypatch.setattr(cfg, "LOG_LEVEL", "ERROR")


def test_validate_point(fixtures_dir):
    result = runner.invoke(app, ["validate", str(fixtures_dir / "pt.json")])
    assert result.exit_code == 0, result.output
    assert "valid double groupoid" in result.stdout


def test_validate_random():
    result = runner.invoke(app, ["validate", "--random", "--seed", "7", "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["report"]["violations"] == []


def test_validate_needs_an_input():
    assert runner.invoke(app, ["validate"]).exit_code == 3


def test_classify_vac22(fixtures_dir):
    result = runner.invoke(
        app,
        ["classify", str(fixtures_dir / "vac22.json"), "--bundle", str(fixtures_dir / "z2.json"),
         "--format", "json"],
    )
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["h1"]["invariant_factors"] == [2, 2]
    assert len(report["classes"]) == 4
    assert all(row["valid"] for row in report["classes"])


def test_classify_writes_cocycle_files(fixtures_dir, tmp_path):
    result = runner.invoke(
        app,
        ["classify", str(fixtures_dir / "vac22.json"), "--bundle", str(fixtures_dir / "z4.json"),
         "--output", str(tmp_path)],
    )
    assert result.exit_code == 0, result.output
    assert sorted(p.name for p in tmp_path.iterdir()) == [f"class_{i}.json" for i in range(4)]


def test_cohomology_of_vac22(fixtures_dir):
    result = runner.invoke(app, ["cohomology", str(fixtures_dir / "vac22.json"), "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["group"]["invariant_factors"] == [2, 2]


def test_missing_input_is_malformed(tmp_path):
    result = runner.invoke(app, ["cohomology", str(tmp_path / "missing.json")])
    assert result.exit_code == 3


def test_chain_needs_a_cover(fixtures_dir):
    result = runner.invoke(app, ["cech", str(fixtures_dir / "vac22.json"), "--chain"])
    assert result.exit_code == 3


def test_nerve_counts(fixtures_dir):
    result = runner.invoke(app, ["nerve", str(fixtures_dir / "vac22.json"), "--format", "json"])
    assert result.exit_code == 0, result.output
    counts = json.loads(result.stdout)["counts"]
    assert counts["1,1"] == 4
    assert counts["2,2"] == 16


def test_nerve_cap_exits_with_two(fixtures_dir):
    result = runner.invoke(app, ["nerve", str(fixtures_dir / "vac22.json"), "--max-cells", "3"])
    assert result.exit_code == 2


def test_kernel_bundle_of_the_point(fixtures_dir):
    result = runner.invoke(app, ["kbundle", str(fixtures_dir / "pt.json"), "--format", "json"])
    assert result.exit_code == 0, result.output
    (fiber,) = json.loads(result.stdout)["fibers"]
    assert fiber["group"]["order"] == 1


def test_filling_is_checked_on_request(fixtures_dir):
    path = str(fixtures_dir / "thin22.json")
    assert runner.invoke(app, ["validate", path]).exit_code == 0
    result = runner.invoke(app, ["validate", path, "--filling", "--format", "json"])
    assert result.exit_code == 1
    kinds = {v["kind"] for v in json.loads(result.stdout)["report"]["violations"]}
    assert kinds == {"filling"}


def _glue(fixtures_dir, seed):
    return runner.invoke(
        app,
        ["cech", str(fixtures_dir / "vac22.json"), "--bundle", str(fixtures_dir / "z4.json"),
         "--cover", str(fixtures_dir / "vac22_boxes.json"), "--glue", "--seed", str(seed),
         "--format", "json"],
    )


def test_glue_every_class(fixtures_dir):
    result = _glue(fixtures_dir, 3)
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["seed"] == 3
    assert len(report["classes"]) == 4
    for row in report["classes"]:
        assert row["consistent"] and row["valid"]
        assert row["boxes"] == row["glued_boxes"]
    assert _glue(fixtures_dir, 3).stdout == result.stdout


def test_glue_needs_a_cover(fixtures_dir):
    result = runner.invoke(app, ["cech", str(fixtures_dir / "vac22.json"), "--glue", "--seed", "1"])
    assert result.exit_code == 3


def test_disagreeing_chain_exits_with_one(monkeypatch, fixtures_dir, tmp_path):
    monkeypatch.setattr("app.cech.ext.cech_h1_total", lambda cover, action: FinAbGroup((2,)))
    doc = tmp_path / "pt_chain.json"
    doc.write_text(json.dumps({"schema": 1, "name": "PT chain", "family": [[[0]]]}), encoding="utf-8")
    result = runner.invoke(
        app, ["cech", str(fixtures_dir / "pt.json"), "--cover", str(doc), "--chain"]
    )
    assert result.exit_code == 1
