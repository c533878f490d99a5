import numpy as np
import pytest

import kdnls


def test_names():
    assert "rogue1" in kdnls.solution_names()
    assert "S1" in kdnls.param_schema("rogue2")


def test_field_shape_and_centre():
    q = kdnls.field("rogue1", "-4:4:81,-2:2:41")
    assert q.shape == (41, 81)
    assert q.dtype == np.complex128
    assert abs(q[20, 40]) ** 2 == pytest.approx(9.0, abs=1e-9)


def test_tuple_grid_matches_string_grid():
    a = kdnls.field("soliton1", "-3:3:31,-1:1:11")
    b = kdnls.field("soliton1", (-3, 3, 31, -1, 1, 11))
    assert np.array_equal(a, b)


def test_rogue2_centre():
    assert abs(kdnls.evaluate("rogue2", 0.0, 0.0)) ** 2 == pytest.approx(25.0, rel=1e-12)


def test_residual_order():
    assert 1.7 <= kdnls.residual_order("rogue1", "-4:4:201,-4:4:201") <= 2.3


def test_peaks():
    p = kdnls.peaks("rogue1", "-4:4:401,-4:4:401")
    assert p["classification"] == "fundamental"
    assert len(p["peaks"]) == 1


def test_pin_down():
    selected, scores = kdnls.pin_down_convention()
    assert selected == "sign+1/GIndependent"
    assert sum(s[4] for s in scores) == 1


def test_errors():
    with pytest.raises(kdnls.KdnlsError):
        kdnls.field("rogue1", "4:-4:10,0:1:10")
    with pytest.raises(kdnls.KdnlsError):
        kdnls.field("rogue1", "-1:1:5,-1:1:5", {"bogus": 1.0})


def test_criterion():
    ok, seconds, checks = kdnls.run_criterion(4)
    assert ok
    assert checks
