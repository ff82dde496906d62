import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from asqkd import __version__
from asqkd.cli.main import app
from asqkd.sdk.analysis import REPORT_COLUMNS
from asqkd.sdk.postprocessing import default_golden_path

runner = CliRunner()

P1_SMALL = "protocol=P1 gamma1=0.9 gamma2=0.9 xi=0.1 N=2000 seed=42\n"
P3_SMALL = "protocol=P3 kappa=40 tau=10 lambda=50 delta=0.1 exact_counts=true\n"


@pytest.fixture
def write_config(tmp_path: Path):
    """Escribe un documento de configuración y devuelve su ruta."""
    def _write(text: str, name: str = "experiment.cfg") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


def _rows(text: str):
    return [line for line in text.splitlines() if line and not line.startswith("#")]


def test_version():
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_run_is_byte_identical(write_config, tmp_path):
    config = write_config(P1_SMALL)
    outputs = []
    for name in ("first.csv", "second.csv"):
        out = tmp_path / name
        result = runner.invoke(app, ["run", "--config", str(config), "--out", str(out)])
        assert result.exit_code == 0, result.output
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    text = outputs[0].decode()
    assert "# seed=42\n" in text
    assert _rows(text)[0] == ",".join(REPORT_COLUMNS)
    assert len(_rows(text)) == 2


def test_run_independent_of_worker_count(write_config, tmp_path):
    config = write_config(P1_SMALL)
    texts = []
    for workers in ("1", "8"):
        out = tmp_path / f"w{workers}.csv"
        result = runner.invoke(
            app, ["run", "-c", str(config), "--trials", "4", "--workers", workers, "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        texts.append(out.read_text())
    assert texts[0] == texts[1]
    assert len(_rows(texts[0])) == 1 + 4


def test_run_to_stdout(write_config):
    result = runner.invoke(app, ["run", "-c", str(write_config(P3_SMALL)), "--seed", "3"])
    assert result.exit_code == 0, result.output
    assert "# seed=3 (--seed)" in result.output
    assert "# N=110 (derived)" in result.output


def test_seed_from_environment(write_config, tmp_path, monkeypatch):
    monkeypatch.setenv("SQKD_SEED", "77")
    out = tmp_path / "env.csv"
    result = runner.invoke(app, ["run", "-c", str(write_config(P1_SMALL)), "-o", str(out)])
    assert result.exit_code == 0, result.output
    assert "# seed=77 (SQKD_SEED)\n" in out.read_text()


@pytest.mark.parametrize("level", ["info", "Debug", " warning "])
def test_log_level_from_environment_ignores_case(write_config, tmp_path, monkeypatch, level):
    monkeypatch.setenv("SQKD_LOG_LEVEL", level)
    result = runner.invoke(app, ["run", "-c", str(write_config(P1_SMALL)), "-o", str(tmp_path / "log.csv")])
    assert result.exit_code == 0, result.output


def test_unknown_log_level_exits_2(write_config, monkeypatch):
    monkeypatch.setenv("SQKD_LOG_LEVEL", "chatty")
    result = runner.invoke(app, ["run", "-c", str(write_config(P1_SMALL))])
    assert result.exit_code == 2
    assert "key=SQKD_LOG_LEVEL" in result.output


def test_invalid_gamma_exits_2(write_config):
    result = runner.invoke(app, ["run", "-c", str(write_config("protocol=P1 gamma1=0.4"))])
    assert result.exit_code == 2
    lines = [line for line in result.output.splitlines() if line.startswith("error:")]
    assert len(lines) == 1
    assert lines[0].startswith("error: code=2 key=gamma1")
    assert "gamma1 must satisfy 1/2 < gamma1 < 1" in lines[0]


@pytest.mark.parametrize("text, key", [("protocol=P1 xi=0.6", "xi"), ("colour=blue", "colour")])
def test_invalid_documents_exit_2(write_config, text, key):
    result = runner.invoke(app, ["run", "-c", str(write_config(text))])
    assert result.exit_code == 2
    assert f"error: code=2 key={key}" in result.output


def test_missing_config_exits_2(tmp_path):
    result = runner.invoke(app, ["run", "-c", str(tmp_path / "absent.cfg")])
    assert result.exit_code == 2
    assert "key=--config" in result.output


def test_unwritable_output_exits_4(write_config, tmp_path):
    target = tmp_path / "no" / "such" / "dir" / "report.csv"
    result = runner.invoke(app, ["run", "-c", str(write_config(P1_SMALL)), "--out", str(target)])
    assert result.exit_code == 4
    assert "error: code=4 key=--out" in result.output
    result = runner.invoke(app, ["run", "-c", str(write_config(P1_SMALL)), "--out", str(tmp_path)])
    assert result.exit_code == 4


def test_aborted_runs_exit_0(write_config, tmp_path):
    config = write_config(P3_SMALL + "attack.name=entangling_probe attack.theta=pi/2\n")
    out = tmp_path / "abort.csv"
    result = runner.invoke(app, ["run", "-c", str(config), "-o", str(out)])
    assert result.exit_code == 0, result.output
    row = _rows(out.read_text())[1].split(",")
    assert row[REPORT_COLUMNS.index("aborted")] == "1"
    assert row[REPORT_COLUMNS.index("efficiency")] == "0"


def test_attack_eval_shape(write_config, tmp_path):
    out = tmp_path / "attack.csv"
    result = runner.invoke(app, ["attack-eval", "-c", str(write_config(P3_SMALL)), "--trials", "3", "-o", str(out)])
    assert result.exit_code == 0, result.output
    text = out.read_text()
    rows = _rows(text)[1:]
    assert len(rows) == 5 * 3
    assert {row.split(",")[1] for row in rows} == {"theta"}
    assert "# sweep.param=theta (default)" in text


def test_sweep_json(write_config, tmp_path):
    config = write_config(P1_SMALL + "sweep.param=gamma sweep.values=0.7,0.9\n")
    out = tmp_path / "sweep.json"
    result = runner.invoke(app, ["sweep", "-c", str(config), "--trials", "2", "--format", "json", "-o", str(out)])
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text())
    assert document["header"]["sweep.param"] == "gamma"
    protocols = [row["protocol"] for row in document["rows"]]
    assert protocols == ["P1"] * 4 + ["BASELINE"] * 2
    assert {(row["param_name"], row["param_value"]) for row in document["rows"][4:]} == {("baseline", None)}


def test_json_config_file(write_config, tmp_path):
    config = write_config(json.dumps({"protocol": "P2", "kappa": 40, "tau": 10, "lambda": 50,
                                      "exact_counts": True, "seed": 4}), name="experiment.json")
    result = runner.invoke(app, ["run", "-c", str(config)])
    assert result.exit_code == 0, result.output
    assert "# protocol=P2" in result.output


def test_verify_golden():
    result = runner.invoke(app, ["verify-golden"])
    assert result.exit_code == 0, result.output
    assert "golden vector OK" in result.output


def test_verify_golden_mismatch(tmp_path):
    text = default_golden_path().read_text().replace("output_hex=d1", "output_hex=d0")
    tampered = tmp_path / "tampered.txt"
    tampered.write_text(text)
    result = runner.invoke(app, ["verify-golden", str(tampered)])
    assert result.exit_code == 1
    assert "MISMATCH" in result.output


def test_verify_golden_unreadable(tmp_path):
    result = runner.invoke(app, ["verify-golden", str(tmp_path / "absent.txt")])
    assert result.exit_code == 2
    assert "key=golden" in result.output


def test_theory(write_config):
    result = runner.invoke(app, ["theory", "-c", str(write_config("protocol=P1 gamma1=0.9 gamma2=0.9 xi=0.1"))])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0] == "# protocol=P1"
    assert lines[1] == "quantity,step6,table1"
    assert "info,0.729,0.081" in lines


def test_catalog():
    result = runner.invoke(app, ["catalog"])
    assert result.exit_code == 0
    names = [line.split("\t")[0] for line in result.output.splitlines()]
    assert "entangling_probe/pi/4" in names
    assert len(names) == 7
