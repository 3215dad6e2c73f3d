import json

import pytest

from cgva.cli import main
from cgva.fields import QQ
from cgva.lie import (abelian, algebra_from_name, algebra_to_dict,
                      save_algebra)


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# -- eval ------------------------------------------------------------------

def test_eval_annihilation_against_creation(capsys):
    rc, out, _ = run(capsys, "eval", "--algebra", "sl2", "e(1) f(-1) |0>")
    assert rc == 0
    assert out.strip() == "1 |0>"


def test_eval_zero_mode_scales(capsys):
    rc, out, _ = run(capsys, "eval", "--algebra", "sl2", "h(0) e(-1) |0>")
    assert rc == 0
    assert out.strip() == "2 e(-1) |0>"


def test_eval_annihilates_the_vacuum(capsys):
    rc, out, _ = run(capsys, "eval", "--algebra", "sl2", "e(0) |0>")
    assert rc == 0
    assert out.strip() == "0"


def test_eval_over_prime_field(capsys):
    rc, out, _ = run(capsys, "eval", "--algebra", "sl2", "--field", "fp:7",
                     "1/3 h(-2) |0>")
    assert rc == 0
    assert out.strip() == "5 h(-2) |0>"


def test_eval_parse_error_is_a_usage_error(capsys):
    rc, _, err = run(capsys, "eval", "--algebra", "sl2", "e(-1)")
    assert rc == 2
    assert "|0>" in err


# -- argument and input failure modes --------------------------------------

def test_characteristic_two_field_is_rejected(capsys):
    rc, _, err = run(capsys, "validate", "--algebra", "sl2", "--field", "fp:2")
    assert rc == 2
    assert "characteristic 2" in err


def test_unknown_algebra_name(capsys):
    rc, _, err = run(capsys, "validate", "--algebra", "g2023")
    assert rc == 2
    assert "unknown builtin" in err


def test_missing_file(capsys):
    rc, _, err = run(capsys, "validate", "--file", "/no/such/file.json")
    assert rc == 2
    assert "cannot read" in err


def test_algebra_and_file_conflict(capsys, tmp_path):
    path = tmp_path / "a.json"
    save_algebra(abelian(1, QQ), str(path))
    rc, _, err = run(capsys, "validate", "--algebra", "sl2",
                     "--file", str(path))
    assert rc == 2


def test_form_flag_conflicts_with_file(capsys, tmp_path):
    path = tmp_path / "a.json"
    save_algebra(abelian(1, QQ), str(path))
    rc, _, err = run(capsys, "validate", "--file", str(path),
                     "--form", "killing")
    assert rc == 2
    assert "form" in err


def test_bad_form_string(capsys):
    rc, _, err = run(capsys, "validate", "--algebra", "sl2",
                     "--form", "euclidean")
    assert rc == 2


# -- validate --------------------------------------------------------------

def test_validate_sl2_json_output(capsys):
    rc, out, _ = run(capsys, "validate", "--algebra", "sl2")
    assert rc == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert data["validation"]["admissible"] is True
    assert data["notes"] == []


def test_validate_centered_algebra_passes_with_note(capsys, tmp_path):
    path = tmp_path / "ab2.json"
    save_algebra(abelian(2, QQ), str(path))
    rc, out, _ = run(capsys, "validate", "--file", str(path))
    assert rc == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert "main-theorem: inadmissible (center != 0)" in data["notes"]


def test_validate_structurally_broken_file_fails(capsys, tmp_path):
    data = algebra_to_dict(algebra_from_name("sl2", QQ))
    data["brackets"][2] = [1, 2, [[2, "-3"]]]  # breaks the Jacobi identity
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    rc, _, err = run(capsys, "validate", "--file", str(path))
    assert rc == 1
    assert "Jacobi" in err or "jacobi" in err


# -- build-cg --------------------------------------------------------------

def test_build_cg_prints_dimension_and_unit(capsys):
    rc, out, _ = run(capsys, "build-cg", "--algebra", "sl2")
    assert rc == 0
    assert "dim A = 1" in out
    assert "unital: yes" in out
    assert "1/4 h*h" in out


def test_build_cg_export_tables(capsys, tmp_path):
    target = tmp_path / "tables.json"
    rc, out, _ = run(capsys, "build-cg", "--algebra", "sl2",
                     "--out", str(target))
    assert rc == 0
    payload = json.loads(target.read_text())
    assert payload["tables"]["dim"] == 1
    assert payload["unit"] is not None


# -- verify ----------------------------------------------------------------

def test_verify_axioms_small_sample(capsys):
    rc, out, _ = run(capsys, "verify", "axioms", "--algebra", "sl2",
                     "--samples", "10", "--seed", "4")
    assert rc == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert data["prng"] == "python-random-mt19937"
    assert data["seed"] == 4
    assert [s["suite"] for s in data["suites"]] == ["vertex-axioms"]


def test_verify_main_theorem_text_format(capsys):
    rc, out, _ = run(capsys, "verify", "main-theorem", "--algebra", "sl2",
                     "--format", "text")
    assert rc == 0
    assert "overall: PASS" in out
    assert "theta-embeds-the-symmetric-square: ok" in out


def test_verify_on_centered_algebra_fails(capsys, tmp_path):
    path = tmp_path / "ab2.json"
    save_algebra(abelian(2, QQ), str(path))
    rc, out, _ = run(capsys, "verify", "main-theorem", "--file", str(path))
    assert rc == 1
    data = json.loads(out)
    assert data["passed"] is False


def test_reports_are_byte_identical_across_runs(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for target in (a, b):
        rc, _, _ = run(capsys, "verify", "comp-lemmas", "--algebra", "sl2",
                       "--out", str(target))
        assert rc == 0
    assert a.read_bytes() == b.read_bytes()


def test_reports_embed_the_configuration(capsys):
    rc, out, _ = run(capsys, "verify", "comp-lemmas", "--algebra", "sl3",
                     "--field", "fp:11", "--form", "killing")
    assert rc == 0
    data = json.loads(out)
    assert data["tool"] == "cgva"
    assert data["field"] == "fp:11"
    assert data["form"] == "killing"
    assert data["algebra"] == "sl3"
    assert data["algebra_hash"].startswith("sha256:")


def test_jobs_env_variable_feeds_the_default(capsys, monkeypatch):
    monkeypatch.setenv("CGVA_JOBS", "3")
    rc, out, _ = run(capsys, "verify", "comp-lemmas", "--algebra", "sl2")
    assert rc == 0
    assert json.loads(out)["jobs"] == 3


def test_max_degree_floor(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "axioms", "--algebra", "sl2", "--max-degree", "1"])
    assert exc.value.code == 2
    capsys.readouterr()
