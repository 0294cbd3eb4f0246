import json
import subprocess
import sys

import pytest

from spectral_chroma.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main
from spectral_chroma.graph import complete_graph, cycle_graph
from spectral_chroma.graph6 import write_graph6_file


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound_petersen_unified(capsys):
    code, out, _ = run(capsys, "bound", "--graph", "petersen", "-k", "2", "--bound",
                       "unified-kappa", "--optimize")
    assert code == EXIT_OK and "lower bound: 10" in out and "kappa: 9" in out


def test_bound_graph6_hoffman(capsys):
    code, out, _ = run(capsys, "bound", "--graph6", "A_", "-k", "1", "--bound", "hoffman")
    assert code == EXIT_OK and "lower bound: 2" in out


def test_bound_chvatal_hoffman_type_json(capsys):
    code, out, _ = run(capsys, "bound", "--graph", "chvatal", "-k", "2", "--bound",
                       "hoffman-type", "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["lower_bound"] == 5 and data["kind"] == "hoffman-type"
    assert len(data["witness"]) == 3


def test_bound_fixed_polynomial(capsys):
    code, out, _ = run(capsys, "bound", "--graph", "truncated_prism", "-k", "2", "--bound",
                       "unified-kappa", "--poly=0,1.3027756377319946,1")
    assert code == EXIT_OK and "kappa: 4" in out


def test_classic_bound_on_power(capsys):
    code, out, _ = run(capsys, "bound", "--graph", "petersen", "-k", "2", "--bound", "hoffman")
    assert code == EXIT_OK and "lower bound: 10" in out and "k=2" in out


def test_bound_file_batch(capsys, tmp_path):
    path = tmp_path / "two.g6"
    write_graph6_file(path, [complete_graph(4), cycle_graph(5)])
    code, out, _ = run(capsys, "bound", "--graph6-file", str(path), "--bound", "classic-kappa",
                       "--json")
    assert code == EXIT_OK and [r["lower_bound"] for r in json.loads(out)] == [4, 3]


def test_bound_dump_dir(capsys, tmp_path):
    code, _, _ = run(capsys, "bound", "--graph", "claw", "-k", "2", "--bound", "vector-r",
                     "--dump-dir", str(tmp_path))
    assert code == EXIT_OK and list(tmp_path.glob("*.lp"))


@pytest.mark.parametrize("argv", [
    ("bound", "--graph6", "Cc", "--bound", "hoffman"),          # disconnected
    ("bound", "--graph", "nonesuch", "--bound", "hoffman"),
    ("bound", "--graph6", "A_", "--bound", "unified-kappa", "--poly=0,0,1"),  # degree > k
    ("bound", "--graph6-file", "/no/such/file", "--bound", "hoffman"),
    ("table2", "--n", "8"),
])
def test_input_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT and err.startswith("error:")


def test_argparse_rejections(capsys):
    for argv in (["figure2", "--samples", "0"], ["bound", "--graph", "claw", "--bound", "bogus"],
                 ["bound", "--graph", "claw", "--bound", "hoffman", "--poly", "a,b"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2
    capsys.readouterr()


def test_table1_subset_and_mismatch(capsys, tmp_path, monkeypatch):
    out_path = tmp_path / "t1.json"
    code, _, err = run(capsys, "table1", "--graphs", "claw", "wagner", "-o", str(out_path),
                       "--format", "json", "--jobs", "1")
    assert code == EXIT_OK and "2 rows, 0 mismatches" in err
    assert [r["graph_id"] for r in json.loads(out_path.read_text())] == ["claw", "wagner"]

    from spectral_chroma import experiments as ex
    monkeypatch.setitem(ex.EXPECTED_TABLE1, "claw", (2, 3, 2, 5))
    code, out, err = run(capsys, "table1", "--graphs", "claw", "--jobs", "1")
    assert code == EXIT_MISMATCH and "MISMATCH claw: chi_k expected 5, got 4" in err
    assert out.startswith("graph_id,")


def test_table2_and_figure2(capsys, tmp_path):
    code, out, _ = run(capsys, "table2", "--n", "3-5", "--jobs", "1")
    assert code == EXIT_OK
    assert out.splitlines() == ["n,hoffman_sharp,kappa_sharp,total,matches_expected",
                                "3,2,2,2,true", "4,4,6,6,true", "5,6,21,21,true"]
    path = tmp_path / "f2.csv"
    code, _, _ = run(capsys, "figure2", "--n", "5,6", "--samples", "5", "-o", str(path),
                     "--jobs", "1")
    assert code == EXIT_OK and path.read_text().splitlines()[0] == "n,samples,proportion"


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    lines = out.splitlines()
    assert code == EXIT_OK and len(lines) == 45
    assert lines[0].split("\t")[1:3] == ["12", "18"]


def test_console_script_module_entry():
    proc = subprocess.run([sys.executable, "-m", "spectral_chroma.cli", "bound", "--graph6", "A_",
                           "--bound", "hoffman"], capture_output=True, text=True)
    assert proc.returncode == 0 and "lower bound: 2" in proc.stdout
