import json
import subprocess
import sys

import jsonschema
import pytest

from tamefields.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, report_schema

SCHEMA = report_schema()


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    return code, payload


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


def test_analyze_extension_kummer(capsys):
    code, p = run_json(capsys, "analyze-extension", "F(5)((t^Z))", "X^5 - t")
    r = p["result"]
    assert code == EXIT_OK and p["ok"] and p["command"] == "analyze-extension"
    assert (r["n"], r["e"], r["f"], r["defect"]) == (5, 5, 1, 1)
    assert "purely_wild" in r["flags"] and "tame" not in r["flags"]


def test_analyze_extension_defect(capsys):
    code, p = run_json(capsys, "analyze-extension", "F(2)(t^(1/2^oo))", "X^2 - X - t^(-1)")
    r = p["result"]
    assert r["outcome"] == "DEFECT" and r["defect"] == 2
    assert r["values"] == [f"-1/{2 ** i}" for i in range(1, 9)]


def test_level_option(capsys):
    _, p = run_json(capsys, "--level", "4", "analyze-extension", "F(3)(t^(1/3^oo))",
                    "X^3 - X - t^(-1)")
    assert p["result"]["values"] == [f"-1/{3 ** i}" for i in range(1, 5)]


def test_text_output(capsys):
    code, out, _ = run(capsys, "analyze-extension", "F(3)((t^Z))", "X^2 - t")
    assert code == EXIT_OK
    assert "n=2 e=2 f=1 defect=1" in out


def test_classify(capsys):
    code, p = run_json(capsys, "classify-field", "F(5)((t^Z))")
    assert code == EXIT_OK
    assert p["result"]["tame"]["status"] == "NO" and p["result"]["tame"]["witness"] == "1"
    _, p = run_json(capsys, "classify-field", "F(5)((t^Q))")
    assert p["result"]["tame"]["status"] == "YES"
    assert p["result"]["kaplansky"]["status"] == "NO"


def test_gauss_value(capsys):
    code, p = run_json(capsys, "gauss-value", "F(5)((t^Z))", "t*x1 + x1^2", "--x", "1,0")
    assert code == EXIT_OK and p["result"]["value"] == "(1, 1)"
    _, p = run_json(capsys, "gauss-value", "F(5)((t^Z))", "3 + y1", "--ny", "1")
    assert p["result"]["value"] == "0" and p["result"]["residue"] == "Y1 + 3"


def test_hensel(capsys):
    code, p = run_json(capsys, "hensel-lift", "F(3)((t^Z))", "X^2 - (1 + t)", "1", "--target", "40")
    assert code == EXIT_OK and p["result"]["iterations"] <= 7
    assert p["result"]["root"].startswith("1 + 2*t + t^2")


def test_hensel_precondition(capsys):
    code, p = run_json(capsys, "hensel-lift", "F(3)((t^Z))", "X^2 - t", "0")
    assert code == EXIT_FAIL and p["error"]["type"] == "PreconditionFailed"


def test_pcs_trace(capsys):
    code, p = run_json(capsys, "pcs-trace", "F(2)((t^Z[1/2]))", "--a", "t^(-1)",
                       "--poly", "X^2 - X - t^(-1)", "--steps", "10")
    fit = p["result"]["poly"]["fit"]
    assert code == EXIT_OK and p["result"]["pseudo_cauchy"]
    assert (fit["kind"], fit["beta"], fit["h"]) == ("AFFINE", "0", "2")


def test_pcs_needs_a_source(capsys):
    code, p = run_json(capsys, "pcs-trace", "F(2)((t^Z))")
    assert code == EXIT_USAGE and not p["ok"]


def test_decide(capsys):
    code, p = run_json(capsys, "decide-oag", "forall x exists y (2*y = x)")
    assert code == EXIT_OK and p["result"]["truth"] is True
    _, p = run_json(capsys, "decide-oag", "exists x (x > 0)", "--trivial-allowed")
    assert p["result"]["truth"] is True and p["result"]["trivial_group"] is False
    _, p = run_json(capsys, "decide-oag", "exists y (y > 0 & y < x)")
    assert p["result"]["quantifier_free"] == "0 < x"
    _, p = run_json(capsys, "decide-oag", "forall x exists y (2*y = x)", "--group", "Z")
    assert p["result"]["truth"] is False


def test_verify_suite_filter(capsys):
    code, p = run_json(capsys, "verify-suite", "--filter", "defect")
    assert code == EXIT_OK
    assert [c["id"] for c in p["result"]["cases"]] == ["01-defect"]
    assert p["result"]["cases"][0]["status"] == "PASS"


def test_verify_suite_empty_filter(capsys):
    code, p = run_json(capsys, "verify-suite", "--filter", "no-such-case")
    assert code == EXIT_OK and p["result"]["cases"] == [] and p["result"]["ok"]


def test_syntax_error_exit_code(capsys):
    code, p = run_json(capsys, "classify-field", "F(3)((t^Z)")
    assert code == EXIT_USAGE
    assert p["error"]["type"] == "DSLSyntaxError" and p["error"]["line"] == 1


def test_semantic_error_text_goes_to_stderr(capsys):
    code, out, err = run(capsys, "classify-field", "F(6)((t^Z))")
    assert code == EXIT_USAGE and not out and "6" in err


def test_bad_arguments_exit_two(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["no-such-command"])
    assert ei.value.code == EXIT_USAGE


def test_json_flag_before_subcommand(capsys):
    code, out, _ = run(capsys, "--json", "classify-field", "Q((t^Z))")
    assert json.loads(out)["result"]["tame"]["status"] == "YES"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tamefields", "decide-oag",
                           "exists x (x > 0)", "--json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["truth"] is True
