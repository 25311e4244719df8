import pytest

from hshift.kinetics import KineticsParams
from hshift.output import Table, emit_table, format_cell, read_csv
from hshift.shift import ShiftBreakdown, ShiftParams, ab_shift


def test_header_only():
    assert emit_table(Table(("x", "y"), [])) == b"x,y\n"


def test_shift_breakdown_columns():
    b = ab_shift(ShiftParams(), KineticsParams())
    data = emit_table(Table(ShiftBreakdown.columns(), [b.row()]))
    header, *rows = data.decode().splitlines()
    assert header.split(",") == [
        "pressure_slope_hz_cm2", "wall_slope_hz_cm2", "total_slope_hz_cm2", "wall_offset_hz", "ratio_to_C1",
    ]
    assert len(rows) == 1 and len(rows[0].split(",")) == 5


def test_round_trip():
    rows = [[1.0 / 3.0, -2.5e-17, 6.02214076e23], [12345.678901234, 0.0, -1e300]]
    cols, back = read_csv(emit_table(Table(("a", "b", "c"), rows)))
    assert cols == ("a", "b", "c")
    for row, parsed in zip(rows, back):
        for x, s in zip(row, parsed):
            assert float(s) == pytest.approx(x, rel=1e-9)


def test_lf_and_nine_digits():
    data = emit_table(Table(("x",), [[2.0 / 3.0]]))
    assert b"\r" not in data
    assert data == b"x\n0.666666667\n"


def test_kv_format():
    data = emit_table(Table(("a", "b"), [[1, "z"], [2.5, None]]), "kv")
    assert data == b"a=1\nb=z\n\na=2.5\nb=\n"


def test_cells():
    assert format_cell(True) == "true"
    assert format_cell(None) == ""
    assert format_cell(7) == "7"


def test_ragged_rows_rejected():
    with pytest.raises(ValueError, match="row 1 has 1 cells, header has 2"):
        emit_table(Table(("a", "b"), [[1, 2], [3]]))


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_table(Table(("a",), []), "json")
