import json
from importlib import resources

import jsonschema
import pytest

from cyclectx import cli
from cyclectx.demos import DEMOS, demo_document
from cyclectx.io import parse_scenario

from conftest import TSIRELSON


def schema(name):
    return json.loads(resources.files("cyclectx").joinpath(f"schemas/{name}.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def demo_file(tmp_path):
    def make(name):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(demo_document(name)))
        return str(path)
    return make


class TestAnalyze:
    def test_chsh(self, capsys, demo_file):
        code, out, _ = run(capsys, "analyze", demo_file("chsh"))
        assert code == 0
        rep = json.loads(out)
        jsonschema.validate(rep, schema("report"))
        assert rep["classical_bound"] == 2
        assert rep["theorem2"]["supremum"] == pytest.approx(TSIRELSON, abs=1e-8)
        assert rep["theorem2"]["violation_possible"] is True
        assert rep["quantum_value"] == pytest.approx(TSIRELSON, abs=1e-8)
        assert rep["violation"] is True
        assert rep["correlation_checks"][0]["jpd_exists"]["feasible"] is False

    def test_commuting(self, capsys, demo_file):
        code, out, _ = run(capsys, "analyze", demo_file("commuting"))
        rep = json.loads(out)
        assert code == 0 and rep["theorem2"]["violation_possible"] is False
        assert rep["violation"] is False
        jsonschema.validate(rep, schema("report"))

    def test_suppes_zanotti_demo(self, capsys, demo_file):
        rep = json.loads(run(capsys, "analyze", demo_file("suppes-zanotti"))[1])
        jsonschema.validate(rep, schema("report"))
        data = [c for c in rep["correlation_checks"] if c["source"] == "data"][0]
        assert data["suppes_zanotti"]["lhs"] == 3
        assert data["jpd_exists"]["feasible"] is False
        assert rep["theorem2"] is None and rep["theorem2_note"]

    def test_original_bell_demo(self, capsys, demo_file):
        rep = json.loads(run(capsys, "analyze", demo_file("original-bell"))[1])
        jsonschema.validate(rep, schema("report"))
        by_source = {c["source"]: c for c in rep["correlation_checks"]}
        assert by_source["data"]["original_bell"]["status"] == "satisfied"
        assert by_source["state"]["original_bell"]["status"] == "violated"

    def test_even_signs_note(self, capsys, demo_file):
        code, out, _ = run(capsys, "analyze", demo_file("chsh"), "--signs", "+,+,+,+")
        rep = json.loads(out)
        assert code == 0 and rep["theorem2"] is None and rep["classical_bound"] == 4

    def test_floats_rounded(self, capsys, demo_file):
        out = run(capsys, "analyze", demo_file("chsh"))[1]
        assert "2.82842712," in out or "2.82842712\n" in out

    def test_malformed_json(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        code, _, err = run(capsys, "analyze", str(p))
        assert code == 2 and "malformed JSON" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "analyze", str(tmp_path / "nope.json"))
        assert code == 2 and "nope.json" in err

    def test_schema_violation_names_field(self, capsys, tmp_path):
        doc = demo_document("chsh")
        doc["observables"][2]["entries"] = doc["observables"][2]["entries"][:-1]
        p = tmp_path / "short.json"
        p.write_text(json.dumps(doc))
        code, _, err = run(capsys, "analyze", str(p))
        assert code == 2 and "observables[2].entries" in err

    def test_unknown_field(self, capsys, tmp_path):
        doc = demo_document("chsh")
        doc["extra"] = 1
        p = tmp_path / "extra.json"
        p.write_text(json.dumps(doc))
        code, _, err = run(capsys, "analyze", str(p))
        assert code == 2 and "extra" in err

    def test_incompatible_context(self, capsys, tmp_path):
        doc = demo_document("chsh")
        doc["observables"][1], doc["observables"][2] = doc["observables"][2], doc["observables"][1]
        p = tmp_path / "swapped.json"
        p.write_text(json.dumps(doc))
        code, _, err = run(capsys, "analyze", str(p))
        assert code == 2 and "not compatible" in err

    def test_bad_signs(self, capsys, demo_file):
        assert run(capsys, "analyze", demo_file("chsh"), "--signs", "+,+")[0] == 2
        assert run(capsys, "analyze", demo_file("chsh"), "--signs", "a,b,c,d")[0] == 2

    def test_negative_tolerance(self, capsys, demo_file):
        assert run(capsys, "analyze", demo_file("chsh"), "--tolerance", "-1")[0] == 2


class TestBounds:
    @pytest.mark.parametrize("n,signs,bound", [(4, "+,+,+,-", 2), (5, "+,+,+,+,-", 3),
                                               (3, "+,-,+", 1), (4, "+,+,+,+", 4)])
    def test_examples(self, capsys, n, signs, bound):
        code, out, _ = run(capsys, "bounds", "--n", str(n), "--signs", signs)
        doc = json.loads(out)
        jsonschema.validate(doc, schema("bounds"))
        assert code == 0 and doc["bound"] == bound

    def test_default_signs(self, capsys):
        doc = json.loads(run(capsys, "bounds", "--n", "6")[1])
        assert doc["signs"] == "+,+,+,+,+,-" and doc["bound"] == 4

    @pytest.mark.parametrize("argv", [["--n", "2"], ["--n", "25"], ["--n", "4", "--signs", "+,+"],
                                      ["--n", "4", "--signs", "+,?,+,+"], [], ["--n", "x"]])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, "bounds", *argv)[0] == 2


class TestSample:
    def test_chsh_million(self, capsys, demo_file):
        code, out, _ = run(capsys, "sample", demo_file("chsh"), "--shots", "1000000", "--seed", "42")
        doc = json.loads(out)
        jsonschema.validate(doc, schema("sample"))
        assert code == 0
        assert abs(doc["cycle_value"] - TSIRELSON) < 0.01
        assert doc["anomalous"] is False

    def test_single_shot(self, capsys, demo_file):
        doc = json.loads(run(capsys, "sample", demo_file("chsh"), "--shots", "1")[1])
        assert all(sum(c["counts"].values()) == 1 for c in doc["contexts"])

    def test_missing_state(self, capsys, tmp_path):
        doc = demo_document("chsh")
        del doc["state"]
        p = tmp_path / "nostate.json"
        p.write_text(json.dumps(doc))
        code, _, err = run(capsys, "sample", str(p))
        assert code == 2 and "state" in err

    @pytest.mark.parametrize("argv", [["--shots", "0"], ["--seed", "-1"],
                                      ["--seed", str(2**64)]])
    def test_usage_errors(self, capsys, demo_file, argv):
        assert run(capsys, "sample", demo_file("chsh"), *argv)[0] == 2

    def test_repeatable(self, capsys, demo_file):
        path = demo_file("chsh")
        first = run(capsys, "sample", path, "--shots", "5000", "--seed", "9")[1]
        assert first == run(capsys, "sample", path, "--shots", "5000", "--seed", "9")[1]


class TestDemo:
    @pytest.mark.parametrize("name", DEMOS)
    def test_round_trip(self, capsys, tmp_path, name):
        out = tmp_path / "d.json"
        code, _, err = run(capsys, "demo", name, "--out", str(out))
        assert code == 0 and "wrote" in err
        sf = parse_scenario(json.loads(out.read_text()))
        assert sf.scenario.n in (3, 4)
        assert run(capsys, "analyze", str(out))[0] == 0

    def test_default_path(self, capsys, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert run(capsys, "demo", "chsh")[0] == 0
        assert (tmp_path / "chsh.json").exists()

    def test_chsh_supremum(self, capsys, tmp_path):
        out = tmp_path / "c.json"
        run(capsys, "demo", "chsh", "--out", str(out))
        rep = json.loads(run(capsys, "analyze", str(out))[1])
        assert rep["theorem2"]["supremum"] == pytest.approx(TSIRELSON, abs=1e-8)

    def test_unknown(self, capsys):
        code, _, err = run(capsys, "demo", "unknown")
        assert code == 2 and "unknown demo" in err


class TestExitCodes:
    def test_no_command(self, capsys):
        assert run(capsys)[0] == 2

    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_internal_error(self, capsys, monkeypatch):
        def boom(*_):
            raise RuntimeError("kaput")
        monkeypatch.setattr(cli, "noncontextual_bound", boom)
        code, _, err = run(capsys, "bounds", "--n", "4")
        assert code == 1 and "internal error" in err

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["--version"])
        assert exc.value.code == 0


def test_round_floats():
    assert cli.round_floats({"a": [1 / 3, float("nan")], "b": 2}) == {"a": [0.333333333, None], "b": 2}
