import pytest

from spectral_chroma import experiments as ex
from spectral_chroma.catalog import CATALOG
from spectral_chroma.graph import Graph, complete_graph, cycle_graph
from spectral_chroma.graph6 import write_graph6_file


def sample_records():
    return [
        ex.ExperimentRecord("petersen", 10, 15, 2, 10, 10, 10, 10, False,
                            {"spectrum": 1.25, "chi_k": 0.1}),
        ex.ExperimentRecord("x,y \"quoted\"", 4, 3, 2, 2, 3, 2, ex.BUDGET_EXCEEDED, True, {}),
        ex.ExperimentRecord("bare", 3, 2),
    ]


def test_csv_round_trip():
    recs = sample_records()
    text = ex.records_to_csv(recs)
    assert text.splitlines()[0].startswith("graph_id,n,m,k,hoffman_type")
    assert "\r" not in text
    assert ex.records_from_csv(text) == recs


def test_json_round_trip(tmp_path):
    recs = sample_records()
    assert ex.records_from_json(ex.records_to_json(recs)) == recs
    path = tmp_path / "out.json"
    ex.write_records(path, recs, "json")
    assert ex.records_from_json(path.read_text(encoding="utf-8")) == recs
    with pytest.raises(ValueError):
        ex.write_records(path, recs, "xml")


def test_record_check():
    with pytest.raises(AssertionError):
        ex.ExperimentRecord("g", 3, 3, 2, 4, 1, 1, 3).check()


def test_jobs_resolution(monkeypatch):
    monkeypatch.delenv(ex.JOBS_ENV, raising=False)
    assert ex.resolve_jobs(3) == 3
    assert ex.resolve_jobs() >= 1
    monkeypatch.setenv(ex.JOBS_ENV, "2")
    assert ex.resolve_jobs(5) == 2
    monkeypatch.setenv(ex.JOBS_ENV, "many")
    with pytest.raises(ValueError):
        ex.resolve_jobs()
    monkeypatch.setenv(ex.JOBS_ENV, "0")
    with pytest.raises(ValueError):
        ex.resolve_jobs()


def _square(x):
    return x * x


def test_parallel_map_keeps_order():
    assert ex.parallel_map(_square, range(10), jobs=2) == [x * x for x in range(10)]
    assert ex.parallel_map(_square, [], jobs=3) == []


def test_graph_record_and_compare():
    rec = ex.graph_record(CATALOG["wagner"](), "wagner")
    assert (rec.hoffman_type, rec.vector_r, rec.unified_kappa, rec.chi_k) == (4, 4, 8, 8)
    assert rec.improved and set(rec.timings) == set(ex._STAGES)
    assert ex.compare_table1([rec]) == []
    rec.vector_r = 5
    [mm] = ex.compare_table1([rec])
    assert str(mm) == "wagner: vector_r expected 4, got 5"
    assert ex.compare_table1([ex.ExperimentRecord("nope", 1, 0)])[0].column == "graph"


def test_table1_subset():
    recs = ex.run_table1(["hoffman", "claw"], jobs=1)
    assert [r.graph_id for r in recs] == ["hoffman", "claw"]
    assert ex.compare_table1(recs) == []
    with pytest.raises(KeyError):
        ex.run_table1(["truncated_prism"])


def test_budget_exceeded_record():
    rec = ex.graph_record(CATALOG["frucht"](), "frucht", budget=2)
    assert rec.chi_k == ex.BUDGET_EXCEEDED


def test_sharpness():
    assert ex.sharpness_flags(complete_graph(4)) == (True, True)
    # C5: Hoffman 2.236 is not 3 exactly, kappa bound is 3
    assert ex.sharpness_flags(cycle_graph(5)) == (False, True)
    counts = ex.run_table2([3, 4, 5], jobs=1)
    assert [c.as_tuple() for c in counts] == [ex.EXPECTED_TABLE2[n] for n in (3, 4, 5)]


def test_table2_external_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        ex.run_table2([8])
    path = tmp_path / "g.g6"
    write_graph6_file(path, [complete_graph(8), cycle_graph(8), complete_graph(5)])
    [row] = ex.run_table2([8], path, jobs=1)
    assert row.as_tuple() == (2, 2, 2)
    with pytest.raises(ValueError):
        ex.run_table2([9], path)
    with pytest.raises(ValueError):
        ex.sharpness_counts(3, [Graph.from_edges(3, [(0, 1)])])


def test_figure2_small_and_deterministic():
    a = ex.run_figure2([5, 6], 20, seed=7, jobs=1)
    b = ex.run_figure2([6], 20, seed=7, jobs=1)
    assert a[1] == b[0]
    assert all(0 <= prop <= 1 and s == 20 for _, s, prop in a)
    text = ex.figure2_csv(a)
    assert text.splitlines()[0] == "n,samples,proportion"
    with pytest.raises(ValueError):
        ex.run_figure2([5], 0)


def test_figure2_optimal_mode_dominates():
    p2 = ex.run_figure2([7, 8], 25, seed=3, jobs=1)
    opt = ex.run_figure2([7, 8], 25, seed=3, jobs=1, kappa_mode="optimal")
    assert all(b[2] >= a[2] for a, b in zip(p2, opt))
    with pytest.raises(ValueError):
        ex.run_figure2([7], 5, kappa_mode="own")
