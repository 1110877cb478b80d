import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from phtriplet import pipeline
from phtriplet.cli import expected_path, main
from phtriplet.problem import load_problem, load_schema, parse_problem, problem_to_dict

DOCS_SCHEMA = Path(__file__).resolve().parent.parent / "docs" / "problem.schema.json"


def write_spec(tmp_path, data, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def scalar_spec(p, s, **extra):
    return {"interval": [0, 1], "n": 1, "N": len(p) - 1,
            "P": [[[c]] for c in p], "S": [[[c]] for c in s], **extra}


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def approx_equal(a, b, tol=1e-10):
    """Recursive comparison: exact for strings/bools/ints, tolerance for floats."""
    if isinstance(a, dict):
        return a.keys() == b.keys() and all(approx_equal(a[k], b[k], tol) for k in a)
    if isinstance(a, list):
        return len(a) == len(b) and all(approx_equal(x, y, tol) for x, y in zip(a, b))
    if isinstance(a, float) or isinstance(b, float):
        return abs(a - b) <= tol * max(1.0, abs(a), abs(b))
    return a == b


class TestExampleRoundTrip:
    @pytest.mark.parametrize("name", ["dzektser", "wave", "rod"])
    def test_round_trip(self, tmp_path, capsys, name):
        spec = str(tmp_path / f"{name}.json")
        code, _, _ = run(["example", name, "--out", spec], capsys)
        assert code == 0
        expected = json.loads(expected_path(spec).read_text(encoding="utf-8"))
        problem = load_problem(spec)
        check = pipeline.check_report(problem)
        triplet = pipeline.triplet_report(problem)
        assert check == expected["check"]
        for key in ("A", "B", "gamma0", "gamma1"):
            assert triplet["range"][key] == expected["triplet"]["range"][key]
        assert approx_equal(triplet, expected["triplet"])

    def test_spec_content(self, capsys):
        code, out, _ = run(["example", "dzektser"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["interval"] == pytest.approx([0, np.pi])
        assert [m[0][0][0] for m in data["P"]] == [1, 1, 0]
        assert [m[0][0][0] for m in data["S"]] == [0, 1, 2]

    def test_wave_spec(self, capsys):
        _, out, _ = run(["example", "wave"], capsys)
        data = json.loads(out)
        assert (data["N"], data["n"], data["M"]) == (1, 2, 1)
        problem = parse_problem(out)
        np.testing.assert_array_equal(problem.skew.j_coeffs[1], [[0, 1], [1, 0]])

    def test_rod_parameters(self, capsys):
        _, out, _ = run(["example", "rod", "--mu", "2", "--tension", "3", "--rho-area", "4"], capsys)
        problem = parse_problem(out)
        np.testing.assert_allclose(problem.pair.p_coeffs[1][1, 1], -2)
        np.testing.assert_allclose(np.diag(problem.pair.s_coeffs[0]).real, [1, 3, 0.25])

    def test_rod_rejects_nonpositive(self, capsys):
        code, _, err = run(["example", "rod", "--tension", "0"], capsys)
        assert code == 2 and "positive" in err

    def test_problem_dict_round_trip(self, capsys):
        _, out, _ = run(["example", "rod"], capsys)
        assert problem_to_dict(parse_problem(out)) == json.loads(out)


class TestCommands:
    def test_check_dzektser(self, tmp_path, capsys):
        spec = str(tmp_path / "d.json")
        run(["example", "dzektser", "--out", spec], capsys)
        report = tmp_path / "report.json"
        code, out, _ = run(["check", spec, "--out", str(report)], capsys)
        assert code == 0
        r = json.loads(report.read_text())
        assert r["structural_passed"]
        assert (r["defect_dimensions"]["d_plus"], r["defect_dimensions"]["d_minus"]) == (4, 4)
        assert r["coercivity"]["c_squared_min"] == pytest.approx(1.0)
        assert "sufficient-condition certificate" in out
        assert r["tolerances"]["rank_rtol"] == 1e-10

    def test_check_maxwell_failure(self, tmp_path, capsys):
        spec = write_spec(tmp_path, scalar_spec([1, 0], [[0, 1], 1]))
        code, out, _ = run(["check", spec], capsys)
        assert code == 2
        assert "maxwell_symmetry   FAIL" in out

    def test_empty_file(self, tmp_path, capsys):
        path = tmp_path / "empty.json"
        path.write_text("")
        code, _, err = run(["check", str(path)], capsys)
        assert code == 1 and "ParseError" in err

    def test_missing_file(self, tmp_path, capsys):
        assert run(["check", str(tmp_path / "nope.json")], capsys)[0] == 1

    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert run(["triplet", str(path)], capsys)[0] == 1

    def test_schema_violation(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {"interval": [0, 1], "n": 1})
        assert run(["check", spec], capsys)[0] == 1

    def test_dimension_inconsistency(self, tmp_path, capsys):
        spec = write_spec(tmp_path, scalar_spec([1, 0], [0, 1]) | {"n": 2})
        code, _, err = run(["check", spec], capsys)
        assert code == 1 and "shape" in err

    def test_unknown_tolerance(self, tmp_path, capsys):
        spec = write_spec(tmp_path, scalar_spec([1, 0], [0, 1], tolerances={"bogus": 1.0}))
        assert run(["check", spec], capsys)[0] == 1

    def test_triplet_dzektser(self, tmp_path, capsys):
        spec = str(tmp_path / "d.json")
        run(["example", "dzektser", "--out", spec], capsys)
        report = tmp_path / "t.json"
        assert run(["triplet", spec, "--out", str(report)], capsys)[0] == 0
        a = np.array(json.loads(report.read_text())["range"]["A"])[..., 0]
        np.testing.assert_array_equal(a, [[0, 1, 0, 2], [-1, 0, -2, 0], [0, 2, 0, 2], [-2, 0, -2, 0]])

    def test_triplet_wave_and_rod(self, tmp_path, capsys):
        for name in ("wave", "rod"):
            spec = str(tmp_path / f"{name}.json")
            run(["example", name, "--out", spec], capsys)
            report = tmp_path / f"{name}.report.json"
            run(["triplet", spec, "--out", str(report)], capsys)
            r = json.loads(report.read_text())
            assert r["range"]["boundary_space_dim"] == 2
            assert r["skew"]["boundary_space_dim"] == 2
        q = np.array(r["skew"]["Q"])[..., 0]
        np.testing.assert_array_equal(q, [[0, 0, 0], [0, 0, 1], [0, 1, 0]])

    def test_classify_dzektser(self, tmp_path, capsys):
        spec = str(tmp_path / "d.json")
        run(["example", "dzektser", "--out", spec], capsys)
        report = tmp_path / "c.json"
        assert run(["classify", spec, "--out", str(report)], capsys)[0] == 0
        r = json.loads(report.read_text())
        assert r["relation"]["verdicts"]["self_adjoint"]
        assert r["relation_oracle"]["self_adjoint"]

    def test_classify_identity_pair(self, tmp_path, capsys):
        _, out, _ = run(["example", "wave"], capsys)
        data = json.loads(out)
        data["boundary_conditions"] = {"form": "triplet", "K": [[1, 0], [0, 1]], "L": [[1, 0], [0, 1]]}
        report = tmp_path / "c.json"
        code, _, _ = run(["classify", write_spec(tmp_path, data), "--out", str(report)], capsys)
        assert code == 0
        v = json.loads(report.read_text())["relation"]["verdicts"]
        assert v == {"self_adjoint": True, "maximally_dissipative": True}

    def test_classify_trace_form_reduced(self, tmp_path, capsys):
        _, out, _ = run(["example", "wave"], capsys)
        data = json.loads(out)
        eye = np.eye(4).tolist()
        data["boundary_conditions"] = {"form": "trace", "Q_b": eye, "R_b": eye}
        code, _, err = run(["classify", write_spec(tmp_path, data)], capsys)
        assert code == 3 and "SingularA" in err

    def test_classify_without_conditions(self, tmp_path, capsys):
        spec = write_spec(tmp_path, scalar_spec([1, 0], [0, 1]))
        assert run(["classify", spec], capsys)[0] == 1

    def test_classify_wrong_size(self, tmp_path, capsys):
        _, out, _ = run(["example", "wave"], capsys)
        data = json.loads(out)
        data["boundary_conditions"] = {"form": "triplet", "K": [[1]], "L": [[1]]}
        assert run(["classify", write_spec(tmp_path, data)], capsys)[0] == 3

    def test_green(self, tmp_path, capsys):
        spec = str(tmp_path / "d.json")
        run(["example", "dzektser", "--out", spec], capsys)
        report = tmp_path / "g.json"
        code, _, _ = run(["green", spec, "--samples", "100", "--seed", "4", "--out", str(report)], capsys)
        assert code == 0
        r = json.loads(report.read_text())["range"]
        assert r["count"] == 100 and r["seed"] == 4 and r["passed"]

    def test_green_zero_samples(self, tmp_path, capsys):
        spec = str(tmp_path / "r.json")
        run(["example", "rod", "--out", spec], capsys)
        report = tmp_path / "g.json"
        assert run(["green", spec, "--samples", "0", "--out", str(report)], capsys)[0] == 0
        r = json.loads(report.read_text())
        assert r["range"]["count"] == 0 and r["skew"]["count"] == 0

    def test_green_seed_from_environment(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("PHT_SEED", "17")
        spec = write_spec(tmp_path, scalar_spec([1, 0], [0, 1]))
        report = tmp_path / "g.json"
        run(["green", spec, "--samples", "3", "--out", str(report)], capsys)
        assert json.loads(report.read_text())["range"]["seed"] == 17

    def test_green_refuses_invalid_pair(self, tmp_path, capsys):
        spec = write_spec(tmp_path, scalar_spec([1, 0], [[0, 1], 1]))
        assert run(["green", spec], capsys)[0] == 2

    def test_coercivity(self, tmp_path, capsys):
        spec = str(tmp_path / "d.json")
        run(["example", "dzektser", "--out", spec], capsys)
        report = tmp_path / "k.json"
        assert run(["coercivity", spec, "--k-max", "20", "--out", str(report)], capsys)[0] == 0
        c = json.loads(report.read_text())["coercivity"]
        assert c["certified"] and c["k_max_scanned"] == 20

    def test_bad_usage_is_parse_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 1

    def test_bad_k_max(self, tmp_path, capsys):
        spec = write_spec(tmp_path, scalar_spec([1, 0], [0, 1]))
        with pytest.raises(SystemExit) as exc:
            main(["check", spec, "--k-max", "0"])
        assert exc.value.code == 1


class TestSchema:
    def test_published_copy_matches(self):
        assert json.loads(DOCS_SCHEMA.read_text(encoding="utf-8")) == load_schema()

    def test_plain_and_pair_complex(self):
        a = parse_problem(json.dumps(scalar_spec([1, 0], [0, [1, 0]])))
        b = parse_problem(json.dumps(scalar_spec([[1, 0], 0], [0, 1])))
        np.testing.assert_array_equal(a.pair.s_coeffs, b.pair.s_coeffs)


def test_module_entry_point(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "phtriplet", "example", "wave"], capture_output=True, text=True, check=False
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["n"] == 2


def test_rod_expected_report_flags_orientation(tmp_path, capsys):
    spec = str(tmp_path / "rod.json")
    run(["example", "rod", "--out", spec], capsys)
    notes = json.loads(expected_path(spec).read_text(encoding="utf-8"))["notes"]
    assert len(notes) == 1 and "orientation" in notes[0]
