import json

import pytest

from dgmzv.verifier import (
    CONJECTURE_CONSISTENT,
    FAIL,
    PASS,
    VACUOUS,
    CheckResult,
    bk_table,
    bk_table_csv,
    has_failures,
    max_workers,
    run_suites,
    status_counts,
    to_csv,
    to_json,
    verify_depth2,
    verify_depth3,
    verify_lie,
    violations,
)


def by_key(results):
    return {(r.check_id, r.weight): r for r in results}


def test_depth2_examples():
    res = by_key(verify_depth2(14, workers=1))
    assert res[("depth2.rank_series", 12)].lhs == 3 and res[("depth2.rank_series", 12)].rhs == 3
    assert res[("depth2.rank_series", 12)].status == PASS
    ten = res[("depth2.kernel_is_period", 10)]
    assert (ten.lhs, ten.rhs, ten.status) == (0, 0, PASS)
    assert res[("depth2.rank_series", 10)].lhs == 3
    assert res[("depth2.odd_weight", 7)].status == VACUOUS
    assert res[("depth2.w_equals_kernel", 12)].status == PASS
    with pytest.raises(ValueError):
        verify_depth2(5)


def test_depth3_examples():
    res = by_key(verify_depth3(15, triple_max=13, workers=1))
    assert res[("depth3.rank_series", 9)].lhs == 1
    fifteen = res[("depth3.rank_series", 15)]
    assert (fifteen.lhs, fifteen.rhs, fifteen.status) == (8, 8, CONJECTURE_CONSISTENT)
    for key in ("eta_injective", "xi_in_kernel", "d_after_dtilde", "kernel_decomposition", "d_surjective"):
        assert res[(f"depth3.{key}", 11)].status == PASS
    assert ("depth3.triple_product_matrix", 13) in res
    assert ("depth3.triple_product_matrix", 15) not in res
    with pytest.raises(ValueError):
        verify_depth3(7)


def test_lie_examples():
    res = verify_lie(15, max_weight_n4=14, max_weight_depth2=14, workers=1)
    keyed = {(r.check_id, r.weight, r.depth): r for r in res}
    assert keyed[("lie.nondegenerate", 12, 2)].status == PASS
    assert keyed[("lie.nondegenerate", 15, 3)].status == PASS
    assert keyed[("lie.nondegenerate", 6, 2)].status == VACUOUS
    assert keyed[("lie.nondegenerate", 14, 4)].status == CONJECTURE_CONSISTENT
    q = keyed[("lie.quasi_uneven_depth2", 14, 2)]
    assert q.status == PASS and q.lhs == q.rhs


def test_bk_table_rows():
    rows, checks = bk_table(16, 4)
    table = {(r.weight, r.depth): r for r in rows}
    assert table[(12, 2)].predicted_A == 3 and table[(12, 2)].computed == 3
    assert table[(3, 1)].predicted_A == 1
    assert table[(2, 1)].predicted_H == 1
    assert table[(1, 1)].predicted_A == 0 and table[(1, 1)].computed == 0
    assert table[(16, 4)].computed is None and table[(16, 4)].provenance == "prediction"
    assert table[(15, 3)].provenance == "conjectural"
    assert not has_failures(checks)
    text = bk_table_csv(rows)
    assert text.splitlines()[0] == "N,r,predicted_A,predicted_H,computed,provenance"
    assert "16,4,11,11,,prediction" in text.splitlines()


def test_reports_are_deterministic_across_worker_counts():
    one = run_suites(["depth2", "depth3"], max_weight=15, workers=1)
    two = run_suites(["depth2", "depth3"], max_weight=15, workers=2)
    assert to_json(one) == to_json(two)
    assert to_csv(one) == to_csv(two)


def test_report_formats():
    res = verify_depth2(8, workers=1)
    data = json.loads(to_json(res))
    assert set(data[0]) == {"check_id", "weight", "depth", "status", "lhs", "rhs", "details"}
    lines = to_csv(res).splitlines()
    assert lines[0] == "check_id,N,r,status,lhs,rhs"
    assert len(lines) == len(res) + 1


def test_status_helpers():
    ok = CheckResult("x", 1, 1, PASS, 0, 0)
    bad = CheckResult("x", 1, 1, FAIL, 0, 1)
    viol = CheckResult("y", 1, 1, "CONJECTURE_VIOLATED", 0, 1)
    assert has_failures([ok, bad]) and not has_failures([ok, viol])
    assert violations([ok, viol]) == [viol]
    assert status_counts([ok, bad])[PASS] == 1
    with pytest.raises(ValueError):
        CheckResult("x", 1, 1, "MAYBE", 0, 0)
    with pytest.raises(ValueError):
        run_suites(["nope"])


def test_thread_cap_from_environment(monkeypatch):
    monkeypatch.setenv("MZV_MAX_THREADS", "3")
    assert max_workers() == 3
    monkeypatch.setenv("MZV_MAX_THREADS", "0")
    assert max_workers() == 1
    monkeypatch.setenv("MZV_MAX_THREADS", "lots")
    with pytest.raises(ValueError):
        max_workers()
    monkeypatch.delenv("MZV_MAX_THREADS")
    assert max_workers() >= 1
