from tamefields.suite import PASS, run_suite, select_cases


def test_filter_by_tag():
    assert [c.id for c in select_cases("defect")] == ["01-defect"]
    assert [c.id for c in select_cases("doag")] == ["08-doag"]
    assert {c.id for c in select_cases("extension")} == {"01-defect", "02-kummer", "03-ostrowski"}
    assert [c.id for c in select_cases("10")] == ["10-pcs"]
    assert len(select_cases(None)) == 10


def test_empty_selection_passes():
    res = run_suite("nothing-matches")
    assert res.cases == [] and res.ok
    assert res.to_dict() == {"ok": True, "counts": {"PASS": 0, "FAIL": 0, "INCONCLUSIVE": 0},
                             "cases": []}


def test_parallel_run_is_ordered():
    res = run_suite("extension", jobs=2)
    assert [c.id for c in res.cases] == ["01-defect", "02-kummer", "03-ostrowski"]
    assert all(c.status == PASS for c in res.cases)


def test_doag_filter_runs_battery():
    res = run_suite("doag")
    (case,) = res.cases
    assert case.status == PASS and case.details["battery"] == 12
