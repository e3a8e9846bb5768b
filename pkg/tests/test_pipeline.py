import json

import pytest

from fermat22n.pipeline import (
    OBSTRUCTED,
    SATISFIED_WITHIN_BOX,
    VACUOUS,
    PairTask,
    check_pair,
    mod8_filter,
    render_report,
    survey,
)


def test_mod8_filter_examples():
    assert mod8_filter(7, 3, "even")
    assert not mod8_filter(7, 3, "odd")  # 21 = 5 (mod 8)
    assert mod8_filter(3, 5, "odd")  # 15 = 7 (mod 8)
    assert not mod8_filter(6, 5, "even")  # even C can never pass
    assert not mod8_filter(6, 5, "odd")


def test_check_pair_obstructed_examples():
    v = check_pair(PairTask(7, 3, "even"))
    assert v.status == OBSTRUCTED and v.hypothesis_path == "main"
    assert (5, 4, 8) in {w.triple() for w in v.witnesses}
    v = check_pair(PairTask(7, 11, "even"))
    assert v.status == OBSTRUCTED
    assert (1, 2, 7) in {w.triple() for w in v.witnesses}


def test_check_pair_satisfied_via_b():
    v = check_pair(PairTask(7, 19, "even"))
    assert v.status == SATISFIED_WITHIN_BOX and v.hypothesis_path == "b"
    v = check_pair(PairTask(23, 5, "even"))
    assert v.status == SATISFIED_WITHIN_BOX and v.hypothesis_path == "b"


def test_check_pair_main_beats_b():
    # legendre(-15, 7) = -1, but 15*33^2 + 7^2 = 2^14 obstructs first
    v = check_pair(PairTask(15, 7, "even"))
    assert v.status == OBSTRUCTED and v.hypothesis_path == "main"
    assert (33, 2, 14) in {w.triple() for w in v.witnesses}


def test_check_pair_vacuous():
    v = check_pair(PairTask(7, 3, "odd"))
    assert v.status == VACUOUS and not v.witnesses


def test_check_pair_rejects_q_dividing_c():
    with pytest.raises(ValueError, match="outside enumeration"):
        PairTask(21, 3, "even")


def test_full_k_reduces_to_parity_at_boundary():
    assert PairTask(7, 3, 4).parity == "even"
    assert PairTask(7, 5, 11).parity == "odd"
    assert mod8_filter(3, 5, 7)  # k = 7: odd
    with pytest.raises(ValueError, match="parity"):
        PairTask(7, 3, -1)


def test_check_pair_path_a():
    v = check_pair(PairTask(3, 5, "odd"))
    assert v.status in (SATISFIED_WITHIN_BOX, OBSTRUCTED)
    if v.status == SATISFIED_WITHIN_BOX:
        assert v.hypothesis_path == "a"


def test_check_pair_paths_c_and_d():
    # (7, 23): q = 7 (mod 8), -7 is a square mod 23 -> path d; RN witness 29,1,8
    v = check_pair(PairTask(7, 23, "even"))
    assert v.hypothesis_path == "d" and v.status == OBSTRUCTED
    assert all(w.verifies(7, 23) for w in v.witnesses)
    # (55, 13): q = 5 (mod 8) -> path c with an RN witness
    v = check_pair(PairTask(55, 13, "even"))
    assert v.hypothesis_path == "c" and v.status == OBSTRUCTED


def test_witnesses_verify_and_persist_under_box_growth():
    small = check_pair(PairTask(7, 3, "even", 30, 30))
    large = check_pair(PairTask(7, 3, "even", 60, 60))
    assert small.status == large.status == OBSTRUCTED
    assert {w.triple() for w in small.witnesses} <= {w.triple() for w in large.witnesses}


def test_diagnostics_flag_does_not_change_verdict():
    for C, q in [(15, 7), (7, 23), (55, 13)]:
        plain = check_pair(PairTask(C, q, "even"))
        diag = check_pair(PairTask(C, q, "even"), diagnostics=True)
        assert plain.status == diag.status and plain.hypothesis_path == diag.hypothesis_path


def test_survey_enumeration_counts():
    rep = survey(m_max=10, gamma_max=10)  # tiny box: enumeration is box-free
    assert rep.count(parity="even") == 158
    assert rep.count(parity="odd") == 172
    assert len(rep.rows) == 330


def test_survey_rows_sorted_and_statuses_sane():
    rep = survey(c_max=20, q_max=20, m_max=40, gamma_max=40)
    keys = [(r.C, r.q, r.parity) for r in rep.rows]
    assert keys == sorted(keys)
    for r in rep.rows:
        assert r.verdict.status in (SATISFIED_WITHIN_BOX, OBSTRUCTED)
        if r.verdict.status == OBSTRUCTED:
            assert r.verdict.witnesses
            for w in r.verdict.witnesses:
                assert w.meets_threshold and w.verifies(r.C, r.q)
        else:
            assert not r.verdict.witnesses


def test_survey_witnesses_round_trip_through_mordell_curves():
    # every main-equation witness of a survey maps to its S-integral point
    # and back, and its adapted Frey curve reproduces the closed-form
    # minimal discriminant
    from fermat22n.diophantine import point_to_solution, solution_to_point
    from fermat22n.frey import FreyInstance, build_frey, frey_discriminant

    rep = survey(m_max=60, gamma_max=60)
    seen = 0
    for row in rep.rows:
        for w in row.verdict.witnesses:
            if w.equation != "main":
                continue
            curve, pt = solution_to_point(w, row.C, row.q)
            assert point_to_solution(pt, curve, row.C, row.q) == w
            inst = FreyInstance.adapted(row.C, row.q, w.gamma, w.t, w.m)
            assert build_frey(inst).invariants.disc == frey_discriminant(inst)
            seen += 1
    assert seen >= 50


def test_render_json_schema_and_determinism():
    rep = survey(c_max=8, q_max=12, m_max=40, gamma_max=40)
    out1 = render_report(rep, "json")
    out2 = render_report(survey(c_max=8, q_max=12, m_max=40, gamma_max=40), "json")
    assert out1 == out2  # byte-identical
    payload = json.loads(out1)
    assert set(payload) == {"params", "rows", "totals"}
    assert set(payload["params"]) == {"C_max", "q_max", "box"}
    assert set(payload["totals"]) == {"pairs", "satisfied", "obstructed", "vacuous"}
    for row in payload["rows"]:
        assert set(row) == {"C", "q", "parity", "status", "hypothesis_path", "witnesses", "notes"}
        for w in row["witnesses"]:
            assert set(w) == {"t", "gamma", "m", "equation"}


def test_render_csv_example_row():
    rep = survey(c_max=7, q_max=3, m_max=200, gamma_max=200)
    out = render_report(rep, "csv")
    lines = out.splitlines()
    assert lines[0] == "C,q,parity,status,hypothesis_path,witnesses,notes"
    row = next(l for l in lines if l.startswith("7,3,even"))
    assert row.startswith("7,3,even,OBSTRUCTED,main,(5;4;8)")


def test_render_table_and_unknown_format():
    rep = survey(c_max=8, q_max=12, m_max=40, gamma_max=40)
    table = render_report(rep, "table")
    assert "TOTAL" in table
    assert render_report(rep, "text-table") == table  # accepted alias
    with pytest.raises(ValueError, match="unknown format"):
        render_report(rep, "yaml")


def test_empty_report_renders():
    rep = survey(c_max=1, q_max=2, m_max=10, gamma_max=10)  # no admissible pairs
    payload = json.loads(render_report(rep, "json"))
    assert payload["rows"] == []
    assert payload["totals"]["pairs"] == 0
