import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eccsim.csvio import read_csv
from eccsim.errors import InvalidParameterError, NotBracketedError
from eccsim.gainlab import (
    BER_CSV_HEADER,
    BerCurve,
    BerPoint,
    Budget,
    ConvScheme,
    RsScheme,
    Uncoded,
    analytic_uncoded_ber,
    ber_sweep,
    coding_gain_at,
    point_seed,
    simulate_ber_point,
    write_ber_csv,
)


def synthetic(label, grid, offset=0.0):
    pts = [BerPoint(x + offset, analytic_uncoded_ber(x), 10 ** 6, 0) for x in grid]
    pts = [BerPoint(p.ebn0_db, p.ber, p.bits, round(p.ber * p.bits)) for p in pts]
    return BerCurve(pts, label)


def test_analytic_ber_values():
    assert analytic_uncoded_ber(float("inf")) == 0.0
    assert analytic_uncoded_ber(40.0) < 1e-300 or analytic_uncoded_ber(40.0) == 0.0
    # Q(sqrt(2)) and Q(sqrt(2*10^0.676)), 30-digit reference values
    assert analytic_uncoded_ber(0.0) == pytest.approx(0.0786496035251425653, rel=1e-12)
    assert analytic_uncoded_ber(6.76) == pytest.approx(1.03588357282565035e-3, rel=1e-12)


def test_uncoded_point_matches_analytic():
    p = simulate_ber_point(Uncoded(), 4.0, Budget(200_000, 100, 200_000), seed=1)
    assert p.bits == 200_000
    assert p.ber == pytest.approx(analytic_uncoded_ber(4.0), rel=0.10)


def test_point_reports_counts_and_meets_minimums():
    p = simulate_ber_point(Uncoded(), 6.0, Budget(20_000, 300, 10 ** 6), seed=3)
    assert p.errors >= 300 and p.bits >= 20_000
    assert p.ber == p.errors / p.bits


def test_max_bits_caps_run():
    p = simulate_ber_point(Uncoded(), 12.0, Budget(10_000, 50, 30_000), seed=3)
    assert p.bits == 30_000


def test_same_seed_same_counts():
    s = ConvScheme(soft=True)
    a = simulate_ber_point(s, 2.0, Budget(20_000, 0, 20_000), seed=9)
    b = simulate_ber_point(s, 2.0, Budget(20_000, 0, 20_000), seed=9)
    assert a == b


def test_cc_soft_beats_uncoded_at_6db():
    budget = Budget(100_000, 0, 100_000)
    coded = simulate_ber_point(ConvScheme(soft=True), 6.0, budget, seed=4)
    uncoded = simulate_ber_point(Uncoded(), 6.0, budget, seed=4)
    assert coded.ber <= uncoded.ber


def test_rs_beats_uncoded_at_7db():
    budget = Budget(200_000, 0, 200_000)
    coded = simulate_ber_point(RsScheme(), 7.0, budget, seed=4)
    uncoded = simulate_ber_point(Uncoded(), 7.0, budget, seed=4)
    assert coded.ber < uncoded.ber


def test_sweep_shape_and_errors():
    with pytest.raises(InvalidParameterError):
        ber_sweep(Uncoded(), [])
    with pytest.raises(InvalidParameterError):
        ber_sweep(Uncoded(), [1.0, 1.0])
    curve = ber_sweep(Uncoded(), [0, 1, 2], Budget(10_000, 0, 10_000), seed=1)
    assert len(curve.points) == 3 and curve.codec_label == "uncoded"


def test_sweep_points_independent_of_order():
    grid = [0.0, 2.0, 4.0]
    budget = Budget(10_000, 0, 10_000)
    curve = ber_sweep(Uncoded(), grid, budget, seed=21)
    for i in reversed(range(len(grid))):
        assert simulate_ber_point(Uncoded(), grid[i], budget, point_seed(21, i)) == curve.points[i]


def test_monte_carlo_converges():
    grid = [0, 1, 2, 3, 4, 5, 6]
    ref = np.array([analytic_uncoded_ber(x) for x in grid])
    errs = []
    for bits in (10_000, 1_000_000):
        c = ber_sweep(Uncoded(), grid, Budget(bits, 0, bits), seed=5)
        errs.append(np.mean(np.abs(c.ber / ref - 1)))
    assert errs[1] < errs[0]


def test_gain_identical_curves_is_zero():
    u = synthetic("uncoded", np.arange(0, 10.5, 0.5))
    assert coding_gain_at(u, u, 1e-3).gain_db == 0.0


def test_gain_of_shifted_curve():
    grid = np.arange(0, 10.5, 0.5)
    u = synthetic("uncoded", grid)
    c = synthetic("coded", grid, offset=-2.0)
    res = coding_gain_at(c, u, 1e-3)
    assert res.gain_db == pytest.approx(2.0, abs=1e-12)
    assert res.gain_db == res.ebn0_uncoded_db - res.ebn0_coded_db


@given(st.floats(-5, 5), st.floats(0, 4), st.sampled_from([1e-2, 1e-3, 1e-4]))
def test_gain_translation_consistent(offset, shift, target):
    grid = np.arange(0, 10.5, 0.5)
    u = synthetic("uncoded", grid)
    c = synthetic("coded", grid, offset=-shift)
    g0 = coding_gain_at(c, u, target).gain_db
    g1 = coding_gain_at(c.shifted(offset), u.shifted(offset), target).gain_db
    assert g1 == pytest.approx(g0, abs=1e-9)


def test_interpolation_is_log_linear():
    curve = BerCurve([BerPoint(1.0, 1e-2, 1, 0), BerPoint(3.0, 1e-4, 1, 0)], "x")
    flat = BerCurve([BerPoint(0.0, 1e-1, 1, 0), BerPoint(10.0, 1e-6, 1, 0)], "u")
    assert coding_gain_at(curve, flat, 1e-3).ebn0_coded_db == pytest.approx(2.0)


def test_not_bracketed_names_curve():
    u = synthetic("uncoded", np.arange(0, 5, 1.0))
    with pytest.raises(NotBracketedError, match="uncoded"):
        coding_gain_at(u, u, 1e-9)


def test_curve_validation():
    with pytest.raises(InvalidParameterError):
        BerCurve([BerPoint(0.0, 0.1, 10, 11)], "x")
    with pytest.raises(InvalidParameterError):
        BerCurve([BerPoint(1.0, 0.1, 10, 1), BerPoint(0.0, 0.1, 10, 1)], "x")


def test_csv_roundtrip(tmp_path):
    curve = ber_sweep(Uncoded(), [0.0, 3.0], Budget(10_000, 0, 10_000), seed=2)
    path = write_ber_csv(tmp_path / "deep" / "ber.csv", curve)
    header, rows = read_csv(path)
    assert tuple(header) == BER_CSV_HEADER
    for p, row in zip(curve.points, rows):
        assert float(row[0]) == p.ebn0_db and float(row[1]) == p.ber
        assert int(row[2]) == p.bits and int(row[3]) == p.errors and row[4] == "uncoded"
