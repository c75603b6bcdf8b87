import json

from k3lattice.report import FAIL, FLAGGED, PASS, SECTIONS, format_markdown, format_table, verify_paper


def test_full_report_passes():
    rep = verify_paper()
    fails = [(i.key, i.expected, i.computed) for i in rep.items if i.status == FAIL]
    assert fails == []
    assert rep.exit_code == 0
    assert rep.count(FLAGGED) == 2
    assert {i.section for i in rep.items} == set(SECTIONS)


def test_flagged_items_are_fibration():
    rep = verify_paper("fibration")
    flagged = [i for i in rep.items if i.status == FLAGGED]
    assert [i.key for i in flagged] == ["fib.flag.rank", "fib.flag.range"]


def test_status_pass_iff_equal():
    for item in verify_paper("divisibility").items:
        assert (item.status == PASS) == (item.expected == item.computed)


def test_deterministic_output():
    a, b = verify_paper("roots"), verify_paper("roots")
    assert json.dumps(a.as_dict()) == json.dumps(b.as_dict())
    assert format_table(a) == format_table(b)
    assert format_markdown(a) == format_markdown(b)


def test_section_counts():
    rep = verify_paper("supersingular")
    assert rep.summary == {PASS: 18, FAIL: 0, FLAGGED: 0}
