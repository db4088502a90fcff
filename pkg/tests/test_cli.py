import json

from click.testing import CliRunner

from waringlab import binary, files
from waringlab.cli import cli
from waringlab.points import PointSet, ProjectivePoint
from waringlab.testing import examples


def run(*args):
    return CliRunner().invoke(cli, [str(a) for a in args])


def test_generate_and_verify(tmp_path):
    instance = tmp_path / "out" / "instance.json"
    report = tmp_path / "report.json"
    result = run("generate", "--case", "a", "--d", 3, "--m", 2, "--seed", 7, "--out", instance)
    assert result.exit_code == 0, result.stderr
    payload = files.read_json(str(instance))
    assert payload["case"] == "a"
    assert payload["config"]["seed"] == 7
    result = run("verify", instance, "--out", report)
    assert result.exit_code == 0, result.stderr
    verdict = files.read_json(str(report))
    assert verdict["overall"] == "pass"
    assert verdict["config"]["seed"] == 7


def test_generate_is_byte_stable():
    args = ("generate", "--case", "a", "--d", 4, "--m", 3, "--seed", 2)
    assert run(*args).stdout == run(*args).stdout


def test_generate_reports_violations():
    result = run("generate", "--case", "c", "--d", 5, "--m", 2)
    assert result.exit_code == 2
    error = json.loads(result.stderr)
    assert error["certificate"] == "ambient-dimension"


def test_verify_outside_scope_exits_one(tmp_path):
    path = tmp_path / "instance.json"
    files.write_json(examples.worked_instance().to_json(), str(path))
    assert run("verify", path).exit_code == 0
    result = run("verify", path, "--threshold-overrides", "line=6")
    assert result.exit_code == 1
    assert json.loads(result.stdout)["overall"] == "outside-scope"


def test_verify_malformed_input(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf8")
    result = run("verify", path)
    assert result.exit_code == 2
    assert json.loads(result.stderr)["path"] == str(path)
    assert run("verify", tmp_path / "missing.json").exit_code == 2
    assert run("verify", path, "--threshold-overrides", "plane=3").exit_code == 2


def test_rank(tmp_path):
    path = tmp_path / "form.json"
    files.write_json(examples.WORKED_GAP.to_json(), str(path))
    result = run("rank", path)
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)
    assert (payload["complex_rank"], payload["real_rank"]) == (2, 3)
    assert payload["real"]["certificate"] == "hyperbolic"


def test_rank_with_irrational_complex_points(tmp_path):
    path = tmp_path / "form.json"
    files.write_json(binary.BinaryForm((2, 0, -4, 0)).to_json(), str(path))
    result = run("rank", path)
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)
    assert (payload["complex_rank"], payload["real_rank"]) == (2, 3)
    assert payload["complex"]["mode"] == "implicit"


def test_internal_errors_are_reported_as_json(tmp_path, monkeypatch):
    def broken(*args):
        raise TypeError("unexpected")

    monkeypatch.setattr(binary, "complex_rank", broken)
    path = tmp_path / "form.json"
    files.write_json(examples.WORKED_GAP.to_json(), str(path))
    result = run("rank", path)
    assert result.exit_code == 3
    error = json.loads(result.stderr.strip().splitlines()[-1])
    assert error["error"] == "TypeError"
    assert error["internal"]
    assert error["path"] == str(path)


def test_h1(tmp_path):
    path = tmp_path / "points.json"
    points = PointSet(2, tuple(ProjectivePoint.of(1, j, 0) for j in range(5)))
    files.write_json(points.to_json(), str(path))
    result = run("h1", path, "--d", 3)
    assert result.exit_code == 0, result.stderr
    assert json.loads(result.stdout)["h1"] == 1


def test_suite_subset():
    result = run("suite", "--criteria", "1,2")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)
    assert [r["criterion"] for r in payload["results"]] == [1, 2]
    assert run("suite", "--criteria", "9").exit_code == 2
