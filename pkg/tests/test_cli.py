import io
import subprocess
import sys

import numpy as np
import pytest

from feiso.cli import GraphRecord, build_report, format_canon, main, run_canon
from feiso.generators import complete_graph, cycle_graph, petersen_graph, rook_graph, shrikhande_graph
from feiso.graph import (
    Graph,
    Permutation,
    apply_permutation,
    emit_edge_list,
    emit_graph6,
    parse_graph6,
    random_permutation,
    read_edge_lists,
    read_graph6_lines,
)
from feiso.nutcracker import verify_correspondence
from feiso.oracle import brute_force_isomorphism
from feiso.spectral import perron


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def write(tmp_path, name, graphs, fmt="graph6"):
    path = tmp_path / name
    if fmt == "graph6":
        path.write_text("".join(emit_graph6(g) + "\n" for g in graphs))
    else:
        path.write_text("\n\n".join(emit_edge_list(g) for g in graphs) + "\n")
    return str(path)


# -- canon --------------------------------------------------------------------

def test_canon_k2(tmp_path):
    code, text = run(["canon", write(tmp_path, "k2.g6", [complete_graph(2)])])
    assert code == 0
    assert text.splitlines()[0] == "0 2.000000000000000"
    assert "# summary graphs=1 digits=9 collisions=0" in text


def test_canon_flags_permuted_copy(tmp_path):
    g = petersen_graph()
    h = apply_permutation(g, random_permutation(10, 3))
    code, text = run(["canon", write(tmp_path, "pair.g6", [g, cycle_graph(7), h])])
    assert code == 0
    assert "# collision 0 2" in text
    assert "0 2 " in text and "COLLISION" in text


def test_canon_srg_pair_distinct(tmp_path):
    code, text = run(["canon", write(tmp_path, "srg.g6", [rook_graph(4), shrikhande_graph()])])
    assert code == 0
    assert "collisions=0" in text
    assert "# collision" not in text


def test_canon_edge_list_format(tmp_path):
    path = write(tmp_path, "k2.txt", [complete_graph(2), Graph(2)], fmt="edges")
    code, text = run(["canon", path, "--format", "edges"])
    lines = text.splitlines()
    assert code == 0
    assert lines[:2] == ["0 2.000000000000000", "1 0.500000000000000"]


def test_canon_extended_precision(tmp_path):
    code, text = run(["canon", write(tmp_path, "c5.g6", [cycle_graph(5)]), "--precision", "extended"])
    assert code == 0
    _, ext = text.splitlines()[0].split()
    _, text2 = run(["canon", write(tmp_path, "c5b.g6", [cycle_graph(5)])])
    assert float(ext) == pytest.approx(float(text2.splitlines()[0].split()[1]), rel=1e-13)


def test_canon_reports_numerical_failure(tmp_path):
    code, text = run(["canon", write(tmp_path, "p.g6", [petersen_graph()]), "--max-iter", "1"])
    assert code == 1
    assert "0 FAIL ConvergenceError" in text
    assert "failures=1" in text


def test_canon_jobs_match_serial(tmp_path):
    gs = [cycle_graph(k) for k in range(3, 9)]
    serial = format_canon(run_canon(gs))
    parallel = format_canon(run_canon(gs, jobs=2))
    assert serial.splitlines() == parallel.splitlines()


def test_precision_suspect_reporting():
    # two matrices whose Perron roots agree to 6 significant digits but not to 9
    w = np.array([[0.0, 2.0, 1.0], [2.0, 0.0, 1.5], [1.0, 1.5, 0.0]])
    bump = np.zeros((3, 3))
    bump[0, 1] = bump[1, 0] = 2e-6
    a, b = float(perron(w)), float(perron(w + bump))
    assert f"{a:.5e}" == f"{b:.5e}" and f"{a:.8e}" != f"{b:.8e}"
    records = [GraphRecord(0, a, 0.0), GraphRecord(1, b, 0.0)]
    report = build_report(records, digits=9, suspect_digits=6)
    assert report.collisions == []
    assert report.suspects == [(0, 1)]
    text = format_canon(report)
    assert "# precision-suspect 0 1" in text
    assert "PRECISION-SUSPECT" in text
    # at 6 digits the same pair would be merged
    assert build_report(records, digits=6).collisions == [(0, 1)]


# -- permute ------------------------------------------------------------------

def test_permute_deterministic_and_isomorphic(tmp_path):
    gs = [petersen_graph(), cycle_graph(6), Graph(1)]
    path = write(tmp_path, "in.g6", gs)
    _, a = run(["permute", path, "--seed", "7"])
    _, b = run(["permute", path, "--seed", "7"])
    _, c = run(["permute", path, "--seed", "8"])
    assert a == b != c
    out = read_graph6_lines(a)
    assert out[2] == Graph(1)
    for g, h in zip(gs, out):
        assert brute_force_isomorphism(g, h) is not None


def test_permute_edges_format(tmp_path):
    path = write(tmp_path, "in.txt", [cycle_graph(5)], fmt="edges")
    code, text = run(["permute", path, "--format", "edges", "--seed", "1"])
    assert code == 0
    (h,) = read_edge_lists(text)
    assert brute_force_isomorphism(cycle_graph(5), h) is not None


# -- match --------------------------------------------------------------------

def test_match_ok_and_fail(tmp_path):
    c5 = cycle_graph(5)
    rot = apply_permutation(c5, random_permutation(5, 0))
    pet = petersen_graph()
    pet2 = apply_permutation(pet, random_permutation(10, 42))
    a = write(tmp_path, "a.g6", [c5, pet, complete_graph(2)])
    b = write(tmp_path, "b.g6", [rot, pet2, Graph(2)])
    code, text = run(["match", a, b])
    lines = text.splitlines()
    assert code == 1
    assert lines[0].startswith("OK ") and lines[1].startswith("OK ")
    assert lines[2] == "FAIL canonical-gate"
    assert lines[3] == "# summary pairs=3 ok=2 fail=1 canonical-gate=1"
    mapping = Permutation(tuple(int(x) for x in lines[1].split()[1].split(",")))
    assert verify_correspondence(pet, pet2, mapping)


def test_match_all_ok_exit_zero(tmp_path):
    g = cycle_graph(6)
    a = write(tmp_path, "a.g6", [g])
    b = write(tmp_path, "b.g6", [apply_permutation(g, random_permutation(6, 1))])
    code, text = run(["match", a, b])
    assert code == 0
    assert text.splitlines()[-1] == "# summary pairs=1 ok=1 fail=0"


def test_match_count_mismatch_is_usage_error(tmp_path):
    a = write(tmp_path, "a.g6", [cycle_graph(5)])
    b = write(tmp_path, "b.g6", [cycle_graph(5), cycle_graph(5)])
    assert run(["match", a, b])[0] == 2


# -- oracle -------------------------------------------------------------------

def test_oracle_verdicts(tmp_path):
    a = write(tmp_path, "a.g6", [complete_graph(3), complete_graph(2), Graph(11)])
    b = write(tmp_path, "b.g6", [complete_graph(3), Graph(2), Graph(11)])
    code, text = run(["oracle", a, b])
    lines = text.splitlines()
    assert lines[0].startswith("ISO ")
    assert lines[1] == "NONISO"
    assert lines[2] == "ERROR size-cap"
    assert code == 1


# -- errors -------------------------------------------------------------------

def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.g6"
    bad.write_text("A_\nD?\n")
    assert run(["canon", str(bad)])[0] == 2
    assert "line 2" in capsys.readouterr().err


def test_missing_file_exit_code(tmp_path):
    assert run(["canon", str(tmp_path / "nope.g6")])[0] == 2


def test_usage_errors_exit_two(tmp_path):
    path = write(tmp_path, "k2.g6", [complete_graph(2)])
    for argv in (["canon", path, "--digits", "0"], ["canon", path, "--precision", "quad"], ["frobnicate"]):
        with pytest.raises(SystemExit) as info:
            main(argv, out=io.StringIO())
        assert info.value.code == 2


def test_module_entry_point(tmp_path):
    path = write(tmp_path, "k2.g6", [complete_graph(2)])
    proc = subprocess.run([sys.executable, "-m", "feiso", "canon", path], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "0 2.000000000000000"
    bad = subprocess.run([sys.executable, "-m", "feiso", "canon", path, "--format", "xml"],
                         capture_output=True, text=True)
    assert bad.returncode == 2


def test_output_byte_identical_reruns(tmp_path):
    gs = [parse_graph6("G?zTb_"), cycle_graph(8), petersen_graph()]
    path = write(tmp_path, "in.g6", gs)
    first = run(["canon", path])[1]
    assert first == run(["canon", path])[1]
