import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from npkorovkin.errors import ArgumentError
from npkorovkin.report import Column, ReportTable, fmt


def make():
    t = ReportTable("demo", [Column("n", "1", "int"), Column("x", "rad"), Column("z", "1", "complex"),
                             Column("tag", "-", "text")])
    t.add(10, 0.1234567890123456, 1 - 2j, "a")
    t.add(20, -0.0, 0.5j, "b")
    return t


def test_csv_layout():
    csv = make().to_csv()
    lines = csv.split("\n")
    assert lines[0] == "n [1],x [rad],z_re [1],z_im [1],tag [-]"
    assert lines[1] == "10,0.123456789012,1,-2,a"
    assert lines[2] == "20,0,0,0.5,b"
    assert csv.endswith("\n") and "\r" not in csv


def test_write_is_byte_identical(tmp_path):
    a = make().write_csv(tmp_path / "a.csv").read_bytes()
    b = make().write_csv(tmp_path / "b.csv").read_bytes()
    assert a == b


def test_arity_and_name_checks():
    t = make()
    with pytest.raises(ArgumentError):
        t.add(1, 2.0)
    with pytest.raises(ArgumentError):
        ReportTable("", [Column("n")])
    with pytest.raises(ArgumentError):
        Column("n", "1", "matrix")


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_roundtrips_to_12_digits(v):
    s = fmt(v)
    assert float(s) == pytest.approx(v, rel=1e-11, abs=0.0) or v == 0.0
    assert s != "-0"


def test_svg_has_log_axis():
    t = ReportTable("rates", [Column("n", "1", "int"), Column("nu", "1")])
    for n in (10, 100, 1000):
        t.add(n, 1.0 / n)
    svg = t.to_svg()
    assert svg.startswith("<svg") and "<polyline" in svg
    assert "1e-3" in svg and "1e-1" in svg
    assert math.isfinite(len(svg))


def test_column_lookup():
    assert make().column("n") == [10, 20]
