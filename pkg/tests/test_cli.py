import json
import runpy
from pathlib import Path

import pytest

from heckezeta.cli import EXIT_FAILURE, EXIT_VERDICT, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_satake_gl2(capsys):
    code, js = run_json(capsys, "satake", "--preset", "gl2", "--lambda", "1,0")
    assert code == 0
    assert js["orbits"] == [{"orbit": [1, 0], "coeff": [[1, 1]], "pretty": "q^(1/2)"}]


def test_satake_dominates_lambda(capsys):
    _, a = run_json(capsys, "satake", "--preset", "gl2", "--lambda", "0,1")
    _, b = run_json(capsys, "satake", "--preset", "gl2", "--lambda", "1,0")
    assert a == b


def test_heckepoly_gsp4_degrees(capsys):
    code, js = run_json(capsys, "heckepoly", "--preset", "gsp4", "--c", "1")
    assert code == 0
    assert [t["degree"] for t in js["terms"]] == [0, 1, 2, 2, 3, 4]
    assert js["terms"][1]["coeff"] == [[-4, -1]]


def test_decompose_gu4(capsys):
    code, js = run_json(capsys, "decompose", "--preset", "gu4", "--lambda", "2,2,1")
    assert code == 0
    assert js["total"] == "q^6 + q^4 + q^3 + q"
    assert [c["sizeExp"] for c in js["cells"]] == [1, 3, 4, 6]


def test_orbit_diagram_dot(capsys):
    code, out = run(capsys, "orbit-diagram", "--preset", "gsp4", "--lambda", "1,1,1")
    assert code == 0
    assert out.startswith("digraph")


def test_orbit_diagram_json_has_four_nodes(capsys):
    code, out = run(capsys, "orbit-diagram", "--preset", "gsp4", "--lambda", "1,1,1", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["nodes"]) == 4


def test_mixed_gln(capsys):
    code, js = run_json(capsys, "mixed", "--preset", "gln", "--m", "2", "--k", "2")
    assert code == 0
    assert len(js["classes"]) == 6


def test_mixed_gu4_word(capsys):
    code, js = run_json(capsys, "mixed", "--preset", "gu4", "--word", "w0 r^2")
    assert code == 0
    assert [c["tauIndex"] for c in js["classes"]] == [0, 0, 1, 3]


def test_zeta_check_passes(capsys):
    code, js = run_json(capsys, "zeta-check", "--preset", "gu4", "--c", "1", "--expect-pass")
    assert code == 0 and js["overall"] is True


def test_zeta_check_product_variant_exit_code(capsys):
    code, js = run_json(capsys, "zeta-check", "--preset", "gln", "--n", "4", "--variant", "product",
                        "--expect-pass")
    assert code == EXIT_VERDICT
    assert js["overall"] is False


def test_zeta_check_gsp4_through_schwartz(capsys):
    code, js = run_json(capsys, "zeta-check", "--preset", "gsp4", "--p", "2", "--c", "1")
    assert code == 0 and js["overall"] is True


def test_schwartz_all_checks(capsys, tmp_path):
    dump = tmp_path / "dump.json"
    code, js = run_json(capsys, "schwartz", "--p", "2", "--dump", str(dump))
    assert code == 0
    assert all(c["pass"] for c in js["checks"].values())
    assert "psi" in json.loads(dump.read_text())


def test_schwartz_parity_failure(capsys):
    code, js = run_json(capsys, "schwartz", "--p", "2", "--c", "2", "--check", "hecke", "--expect-pass")
    assert code == EXIT_VERDICT
    assert js["verdict"]["overall"] is False


def test_verify_counts(capsys):
    code, js = run_json(capsys, "verify", "--preset", "gsp4", "--lambda", "1,1,1", "--p", "3", "--orbits")
    assert code == 0
    assert js["count"] == js["expected"] == 40
    assert js["orbits"] == [16, 24]


def test_bad_lambda_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["satake", "--preset", "gsp4", "--lambda", "1,0"])
    assert exc.value.code == 2


def test_unknown_preset_is_a_failure(capsys):
    code = main(["decompose", "--preset", "e8", "--lambda", "1"])
    assert code == EXIT_FAILURE
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("script", sorted((Path(__file__).parent.parent / "notebooks").glob("*.py")),
                         ids=lambda p: p.stem)
def test_notebook_scripts_run(script, capsys):
    runpy.run_path(str(script), run_name="__main__")
    assert capsys.readouterr().out
