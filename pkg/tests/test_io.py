import json
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tricycle import io as tio


def test_parse_number():
    assert tio.parse_number("2/3") == pytest.approx(2 / 3)
    assert tio.parse_number(" 0.25 ") == 0.25
    for bad in ("x", "nan", True, None, "1/0", float("inf")):
        with pytest.raises(tio.ConfigError):
            tio.parse_number(bad)


def test_config_round_trip():
    cfg = tio.config_from_dict({"schema": 1, "lengths": ["1", "2"], "t_max": 5,
                                "initial": {"state": dict(zip(tio.STATE_KEYS, range(8)))},
                                "integrator": {"rtol": 1e-9, "atol": 1e-9}})
    again = tio.config_from_dict(cfg.to_dict())
    assert again == cfg
    assert cfg.params.l2 == 2.0


@pytest.mark.parametrize("doc,msg", [
    ({"schema": 2}, "schema"),
    ({"schema": 1, "bogus": 1}, "unknown"),
    ({"schema": 1, "lengths": [1]}, "lengths"),
    ({"schema": 1, "lengths": [1, -1]}, "positive"),
    ({"schema": 1, "t_max": "inf"}, "t_max"),
    ({"schema": 1, "initial": {"example": "spiral"}}, "example"),
    ({"schema": 1, "initial": {"state": {"x1": 0}}}, "missing"),
    ({"schema": 1, "integrator": {"method": "euler"}}, "integrator"),
    ({"schema": 1, "outputs": ["png"]}, "outputs"),
])
def test_config_rejections(doc, msg):
    with pytest.raises(tio.ConfigError, match=msg):
        tio.config_from_dict(doc)


def test_load_config_errors(tmp_path):
    with pytest.raises(tio.ConfigError):
        tio.load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(tio.ConfigError, match="invalid JSON"):
        tio.load_config(bad)


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(finite, finite, finite), min_size=1, max_size=20))
def test_csv_round_trip_bit_exact(rows):
    import tempfile, os
    data = np.array(rows, dtype=float)
    with tempfile.TemporaryDirectory() as d:
        p = os.path.join(d, "t.csv")
        tio.write_csv(p, ["a", "b", "c"], data)
        header, back = tio.read_csv(p)
    assert header == ["a", "b", "c"]
    assert np.array_equal(back.view(np.uint64), data.view(np.uint64)) or np.array_equal(back, data)


def test_atomic_write_leaves_nothing_on_failure(tmp_path):
    target = tmp_path / "out.txt"
    with pytest.raises(TypeError):
        tio.atomic_write(target, 123)
    assert list(tmp_path.iterdir()) == []


def test_svg_valid_and_deterministic():
    t = np.linspace(0, 6, 50)
    tracks = {"x": np.column_stack([t, np.sin(t)]), "m1": np.column_stack([t, np.cos(t)])}
    a = tio.svg_tracks(tracks, "demo")
    assert a == tio.svg_tracks(tracks, "demo")
    root = ET.fromstring(a.split("\n", 1)[1])
    ns = "{http://www.w3.org/2000/svg}"
    assert {p.get("id") for p in root.iter(f"{ns}polyline")} == {"x", "m1"}
    vb = [float(v) for v in root.get("viewBox").split()]
    # 5% margin around the bounding box
    assert vb[2] == pytest.approx(6 * 1.1)


def test_json_helpers(tmp_path):
    from fractions import Fraction
    p = tio.write_json(tmp_path / "r.json", {"a": np.float64(1.5), "b": Fraction(1, 3)})
    assert json.loads(p.read_text()) == {"a": 1.5, "b": "1/3"}
