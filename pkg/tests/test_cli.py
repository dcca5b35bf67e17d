import json
import os
from fractions import Fraction

import pytest

from starconfig import cli
from starconfig.cli import (EXIT_CAP, EXIT_INPUT, EXIT_INTERNAL, TutteCache,
                            example_b3, example_e0, main, parse_input)
from starconfig.fields import ExactArithError
from starconfig.tutte import BivarPoly

E0_TEXT = """\
# a [3,2] example
field gf 2
size 2 3
1 0 1
0 1 1
labels x1 x2 x1+x2
"""


def write_input(tmp_path, text, name="code.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_input_basic():
    doc = parse_input(E0_TEXT)
    assert doc.spec.kind == "gf" and doc.spec.modulus == 2
    assert (doc.k, doc.n) == (2, 3)
    assert doc.rows == [[1, 0, 1], [0, 1, 1]]
    assert doc.labels == ["x1", "x2", "x1+x2"]
    code = doc.code()
    assert code.labels == ("x1", "x2", "x1+x2")


def test_parse_input_rationals():
    doc = parse_input("field q\nsize 1 2\n1/2 -3\n")
    assert doc.spec.kind == "q"
    assert doc.rows == [[Fraction(1, 2), Fraction(-3)]]
    assert doc.labels is None


def test_parse_input_errors():
    for bad in ("", "field gf 2\n", "size 1 1\nfield gf 2\n1\n",
                "field gf 2\nsize 2 2\n1 0\n",
                "field gf 2\nsize 1 2\n1 0 1\n",
                "field gf 2\nsize 1 2\n1 0\nlabels a\n",
                "field gf 2\nsize 1 2\n1 0\nbogus line\n",
                "field gf 4\nsize 1 1\n1\n"):
        with pytest.raises((ExactArithError, ValueError)):
            parse_input(bad)


def test_builtin_examples_match_fixtures(e0, b3):
    assert example_e0().matrix == e0.matrix
    assert example_e0().labels == e0.labels
    assert example_b3().matrix == b3.matrix
    assert example_b3().labels == b3.labels


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_tutte_table(capsys):
    rc, out, _ = run_cli(capsys, "tutte", "--example", "e0")
    assert rc == 0
    assert "x^2 + x + y" in out
    assert "engines agree: yes" in out


def test_tutte_json_matches_table_values(capsys):
    rc, out, _ = run_cli(capsys, "tutte", "--example", "e0", "--json")
    assert rc == 0
    doc = json.loads(out)
    assert BivarPoly.from_json(doc["tutte"]) == \
        BivarPoly({(2, 0): 1, (1, 0): 1, (0, 1): 1})
    assert doc["engines_agree"] is True


def test_profile_json_b3(capsys):
    rc, out, _ = run_cli(capsys, "profile", "--example", "b3", "--json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["hierarchy"] == [0, 5, 8, 9]
    degrees = [int(p["degree"]) for p in doc["profiles"]]
    assert degrees == [1, 4, 10, 20, 35, 3, 13, 36, 9]
    mus = [int(p["mu"]) for p in doc["profiles"]]
    assert mus == [3, 6, 10, 15, 21, 25, 23, 9, 1]


def test_ghw_routes_and_duality(capsys):
    rc, out, _ = run_cli(capsys, "ghw", "--example", "b3", "--json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["hierarchy"] == [0, 5, 8, 9]
    for row in doc["routes"]:
        assert row["bruteforce"] == row["tutte"] == row["dual_rank"]
    assert doc["wei_duality"]["holds"] is True


def test_primes_table(capsys):
    rc, out, _ = run_cli(capsys, "primes", "--example", "e0")
    assert rc == 0
    assert "irrelevant ideal power" in out
    assert "nu=1" in out


def test_mu_command_file_input(capsys, tmp_path):
    path = write_input(tmp_path, E0_TEXT)
    rc, out, _ = run_cli(capsys, "mu", path, "--json")
    assert rc == 0
    doc = json.loads(out)
    assert [int(row["mu"]) for row in doc["mu"]] == [2, 3, 1]


def test_verify_ok(capsys):
    rc, out, _ = run_cli(capsys, "verify", "--example", "e0", "--json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["all_ok"] is True
    assert all(c["status"] == "ok" for c in doc["oracle"])


def test_conjecture_json(capsys):
    rc, out, _ = run_cli(capsys, "conjecture", "--example", "e0", "--json",
                         "--window", "1:6")
    assert rc == 0
    doc = json.loads(out)
    assert doc["t_max"] == 6
    assert {e["a"] for e in doc["entries"]} == {2, 3}


def test_identity_command(capsys):
    rc, out, _ = run_cli(capsys, "identity", "--json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["failures"] == []
    assert doc["checked"] > 0


def test_missing_input_is_input_error(capsys):
    rc, _, err = run_cli(capsys, "tutte")
    assert rc == EXIT_INPUT
    assert "input file" in err
    rc, _, err = run_cli(capsys, "tutte", "/nonexistent/file.txt")
    assert rc == EXIT_INPUT


def test_zero_column_is_input_error(capsys, tmp_path):
    path = write_input(tmp_path, "field gf 2\nsize 2 3\n1 0 0\n0 1 0\n")
    rc, _, err = run_cli(capsys, "profile", path)
    assert rc == EXIT_INPUT
    assert "column 3" in err


def test_cap_exceeded_exit_code(capsys):
    rc, _, err = run_cli(capsys, "tutte", "--example", "b3", "--max-n", "4")
    assert rc == EXIT_CAP
    assert "exceeds" in err


def test_internal_error_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "tutte_subset_sum",
                        lambda m, cap=24, threads=1: BivarPoly({(0, 0): 1}))
    rc, _, err = run_cli(capsys, "tutte", "--example", "e0")
    assert rc == EXIT_INTERNAL
    assert "disagree" in err


def test_tutte_cache_roundtrip(tmp_path):
    cache = TutteCache(str(tmp_path / "cache"))
    assert cache.get("missing") is None
    poly = BivarPoly({(2, 0): 1, (0, 1): 3})
    cache.put("some-key", poly.to_json())
    assert BivarPoly.from_json(cache.get("some-key")) == poly
    assert cache.get("other-key") is None


def test_cache_flag_creates_entries_and_identical_output(capsys, tmp_path):
    cache_dir = str(tmp_path / "cache")
    rc1, out1, _ = run_cli(capsys, "profile", "--example", "b3",
                           "--json", "--cache-dir", cache_dir)
    files = os.listdir(cache_dir)
    assert files and all(f.endswith(".json") for f in files)
    # second run hits the cache and must emit byte-identical values
    rc2, out2, _ = run_cli(capsys, "profile", "--example", "b3",
                           "--json", "--cache-dir", cache_dir)
    doc1, doc2 = json.loads(out1), json.loads(out2)
    doc1.pop("timings"), doc2.pop("timings")
    assert rc1 == rc2 == 0 and doc1 == doc2
    # uncached run agrees as well
    _, out3, _ = run_cli(capsys, "profile", "--example", "b3",
                         "--json", "--no-cache")
    doc3 = json.loads(out3)
    doc3.pop("timings")
    assert doc3 == doc1


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    env_dir = str(tmp_path / "envcache")
    monkeypatch.setenv(cli.CACHE_ENV, env_dir)
    rc, _, _ = run_cli(capsys, "tutte", "--example", "e0", "--json")
    assert rc == 0
    assert os.listdir(env_dir)
    # --no-cache wins over the environment variable
    other = str(tmp_path / "othercache")
    monkeypatch.setenv(cli.CACHE_ENV, other)
    rc, _, _ = run_cli(capsys, "tutte", "--example", "e0", "--json",
                       "--no-cache")
    assert rc == 0
    assert not os.path.exists(other)


def test_console_script_installed():
    import shutil
    exe = shutil.which("starconfig")
    assert exe is not None
