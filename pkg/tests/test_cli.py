import json

import jsonschema
import pytest

from orthinv import cli
from orthinv.errors import NoGeneratorFound
from orthinv.suites import load_schema, run_suite


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_group_orders(capsys):
    assert run(capsys, "group", "--type", "minus", "--p", "7", "--show", "order")[:2] == (0, "16\n")
    assert run(capsys, "group", "--type", "plus", "--p", "3", "--show", "order")[:2] == (0, "4\n")


def test_group_bad_prime(capsys):
    for p in ("4", "2", "1", "9"):
        code, _, err = run(capsys, "group", "--type", "plus", "--p", p)
        assert code == 2 and "p must be an odd prime" in err


def test_group_prime_guard(capsys, monkeypatch):
    code, _, err = run(capsys, "group", "--type", "plus", "--p", "101")
    assert code == 2 and "ORTHINV_MAX_P" in err
    monkeypatch.setenv("ORTHINV_MAX_P", "200")
    assert run(capsys, "group", "--type", "plus", "--p", "101")[:2] == (0, "200\n")


def test_group_elements_and_generators(capsys):
    code, out, _ = run(capsys, "group", "--type", "minus", "--p", "3", "--show", "elements")
    assert code == 0 and len(out.splitlines()) == 8
    assert out.splitlines()[0] == "[[0, 1], [1, 0]]"
    code, _, err = run(capsys, "group", "--type", "minus", "--p", "17", "--show", "elements")
    assert code == 2 and "p <= 13" in err
    code, out, _ = run(capsys, "group", "--type", "minus", "--p", "3", "--show", "generators")
    assert code == 0 and "note:" in out


def test_group_non_square_lambda(capsys):
    code, _, err = run(capsys, "group", "--type", "minus", "--p", "5", "--lambda", "4")
    assert code == 2 and "non-square" in err


def test_no_generator_exit_code(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise NoGeneratorFound("search exhausted")

    monkeypatch.setattr(cli, "orthogonal_group", boom)
    code, _, err = run(capsys, "group", "--type", "minus", "--p", "7")
    assert code == 3 and "search exhausted" in err


def test_usage_errors_from_argparse(capsys):
    assert run(capsys, "group", "--type", "zero", "--p", "5")[0] == 2
    assert run(capsys, "verify", "thm9", "--p", "5")[0] == 2
    assert run(capsys)[0] == 2


def test_verify_thm1(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "thm1", "--p", "5", "--json", str(path))
    assert code == 0 and out.rstrip().endswith("PASS")
    data = json.loads(path.read_text())
    jsonschema.validate(data, load_schema())
    assert data["max_degree"] == 10 and len(data["per_degree"]) == 11
    assert all(r["dim_expected"] == r["dim_actual"] for r in data["per_degree"])


def test_verify_lemma31(capsys):
    code, out, _ = run(capsys, "verify", "lemma31", "--p", "7")
    assert code == 0 and "s_invariant: 128" in out


def test_verify_suite_constraints(capsys):
    code, _, err = run(capsys, "verify", "example-p3", "--p", "5")
    assert code == 2 and "p 3" in err
    code, _, err = run(capsys, "verify", "thm3", "--p", "11")
    assert code == 2
    assert run(capsys, "verify", "thm1", "--p", "5", "--max-degree", "2")[0] == 2


def test_verify_fail_exit_code(capsys):
    # the exact leading-term fallback at p = 3 is zero, so lemma33 reports FAIL
    code, out, _ = run(capsys, "verify", "lemma33", "--p", "3")
    assert code == 1
    assert "first failure: check leading_term_determinant_nonzero failed" in out
    assert "jacobian_nonzero: ok" in out


def test_compute_commands(capsys):
    code, out, _ = run(capsys, "compute", "transfer", "--p", "3", "--group", "o2minus", "--poly", "x1^3*y1")
    assert code == 0 and out.strip() == "x1^3*y1 + x2^3*y2"
    code, out, _ = run(capsys, "compute", "hilbert", "--p", "3", "--group", "product", "--max-degree", "8")
    assert out.strip() == "[1, 0, 2, 0, 5, 0, 8, 0, 14]"
    code, out, _ = run(capsys, "compute", "reynolds", "--p", "5", "--group", "o2plus", "--poly", "x1*y1")
    assert out.strip() == "3*x1*y1 + 3*x2*y2"
    code, out, _ = run(capsys, "compute", "relative-reynolds", "--p", "5", "--group", "o2plus", "--poly", "x2*y2")
    assert out.strip() == "3*x1*y1 + 3*x2*y2"
    code, out, _ = run(capsys, "compute", "fixed-space", "--p", "5", "--group", "so2plus", "--degree", "2")
    assert out.splitlines()[0] == "dim 4"


def test_compute_parse_error_caret(capsys):
    code, _, err = run(capsys, "compute", "reynolds", "--p", "5", "--group", "o2plus", "--poly", "x1*+y1")
    assert code == 2
    lines = err.splitlines()
    assert lines[-2] == "x1*+y1" and lines[-1] == "   ^"
    code, _, err = run(capsys, "compute", "reynolds", "--p", "5", "--group", "o2plus", "--poly", "x1*w")
    assert code == 2 and "unknown variable" in err


def test_compute_missing_arguments(capsys):
    assert run(capsys, "compute", "reynolds", "--p", "5", "--group", "o2plus")[0] == 2
    assert run(capsys, "compute", "fixed-space", "--p", "5", "--group", "o2plus")[0] == 2
    assert run(capsys, "compute", "hilbert", "--p", "5", "--group", "o2plus")[0] == 2
    code, _, err = run(capsys, "compute", "relative-reynolds", "--p", "5", "--group", "o2plus", "--poly", "x1")
    assert code == 2 and "fixed by the subgroup" in err


def test_export_magma(capsys, tmp_path):
    a, b = tmp_path / "a.m", tmp_path / "b.m"
    assert run(capsys, "export-magma", "--suite", "thm1", "--p", "5", "--out", str(a))[0] == 0
    assert run(capsys, "export-magma", "--suite", "thm1", "--p", "5", "--out", str(b))[0] == 0
    text = a.read_bytes()
    assert text == b.read_bytes()
    script = text.decode("utf-8")
    assert "MatrixGroup<4, F" in script and "MolienSeries" in script and "for d in [0..10]" in script
    assert run(capsys, "export-magma", "--suite", "lemma33", "--p", "5", "--out", str(a))[0] == 2


@pytest.mark.parametrize("suite,p", [("thm2", 3), ("thm4", 3), ("lemma33", 5), ("example-p3", 3), ("oracle-groups", 5)])
def test_reports_validate_and_are_deterministic(suite, p):
    schema = load_schema()
    a = run_suite(suite, p, seed=1)
    b = run_suite(suite, p, seed=1)
    jsonschema.validate(json.loads(a.to_json()), schema)
    assert a.to_json(include_timing=False) == b.to_json(include_timing=False)


def test_schema_rejects_malformed_report():
    schema = load_schema()
    data = json.loads(run_suite("oracle-groups", 3).to_json())
    data["overall"] = "MAYBE"
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(data, schema)
