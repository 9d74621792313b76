"""Unit tests for the bundled homotopy-group table."""

from pathlib import Path

from bottlab import table
from bottlab.table import HomotopyTableEntry, render_data, render_pretty, table_entries

DATA = Path(__file__).parent / "data"


def test_dimensions_and_ordering():
    entries = table_entries()
    assert len(entries) == 60
    assert [(e.r, e.n) for e in entries[:3]] == [(1, 1), (1, 2), (1, 3)]
    assert (entries[-1].r, entries[-1].n) == (10, 6)


def test_stability_boundary():
    by_key = {(e.r, e.n): e for e in table_entries()}
    assert by_key[(3, 2)].stable  # 3 < 4
    assert not by_key[(4, 2)].stable  # 4 >= 4
    assert by_key[(9, 5)].stable
    assert not by_key[(10, 5)].stable


def test_stable_range_follows_parity():
    for e in table_entries():
        if e.stable and not (e.r % 2 == 1 and e.r == 2 * e.n - 1):
            assert e.group == ("Z" if e.r % 2 else "0")


def test_flagged_entries():
    by_key = {(e.r, e.n): e for e in table_entries()}
    assert by_key[(1, 1)].flags == "t"
    assert by_key[(3, 2)].flags == "c"
    assert by_key[(4, 2)].flags == "tc"
    assert by_key[(6, 2)].group == "Z_12" and by_key[(6, 2)].flags == "c"
    assert by_key[(8, 3)].group == "Z_12" and by_key[(8, 3)].flags == "t"
    assert by_key[(10, 4)].group == "Z_120+Z_2"
    assert by_key[(10, 5)].group == "Z_120"
    assert by_key[(7, 3)].group == "0" and not by_key[(7, 3)].stable


def test_n1_column_vanishes_above_degree_one():
    for e in table_entries():
        if e.n == 1:
            assert e.group == ("Z" if e.r == 1 else "0")


def test_render_data_matches_fixture():
    assert render_data() == (DATA / "table.golden").read_text()


def test_render_data_line_format():
    first = render_data().splitlines()[0]
    assert first == "1 1 Z t stable"


def test_render_pretty_mentions_flags_and_legend():
    text = render_pretty()
    assert "nonstable (r >= 2n)" in text
    assert "[t]" in text and "[c]" in text
    assert "Z_120+Z_2" in text


def test_entry_is_immutable():
    e = HomotopyTableEntry(1, 1, "Z", "t")
    try:
        e.group = "0"
    except AttributeError:
        pass
    else:  # pragma: no cover
        raise AssertionError("entries should be frozen")
