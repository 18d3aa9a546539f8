import os

import pytest

from eccsim.cli import main
from eccsim.csvio import read_csv


def run(*argv):
    return main(list(argv))


@pytest.fixture
def quick_conf(tmp_path):
    path = tmp_path / "quick.conf"
    path.write_text("ber_grid = 0:2:1\nber_min_bits = 10000\nber_min_errors = 0\n"
                    "ber_max_bits = 10000\nnodes = 40\nrounds = 5\n")
    return path


def test_simulate_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("simulate", "--seed", "7", "--out", str(a)) == 0
    assert run("simulate", "--seed", "7", "--out", str(b)) == 0
    names = sorted(os.listdir(a))
    assert names == sorted(os.listdir(b))
    assert "sim_adaptive.csv" in names and "sim_detail.csv" in names
    for n in names:
        assert (a / n).read_bytes() == (b / n).read_bytes()


def test_series_csv_layout(tmp_path, quick_conf):
    assert run("simulate", "--config", str(quick_conf), "--out", str(tmp_path), "--no-detail") == 0
    header, rows = read_csv(tmp_path / "sim_fixed_ccs.csv")
    assert header == ["round", "mean_txpower_dbm", "mean_saving_j_per_bit",
                      "cum_mean_saving_j_per_bit"]
    assert [r[0] for r in rows] == ["1", "2", "3", "4", "5"]
    assert not (tmp_path / "sim_detail.csv").exists()


def test_compare_ranks_adaptive_first(tmp_path, capsys):
    assert run("compare", "--out", str(tmp_path)) == 0
    header, rows = read_csv(tmp_path / "compare.csv")
    assert header == ["scheme", "final_net_saving_j_per_bit", "rank"]
    assert rows[0][0] == "adaptive" and rows[0][2] == "1"
    assert "adaptive" in capsys.readouterr().out


def test_dcr_csv(tmp_path):
    assert run("dcr", "--out", str(tmp_path)) == 0
    header, rows = read_csv(tmp_path / "dcr.csv")
    assert header == ["codec", "gain_db", "decoder_energy_j", "critical_distance_m"]
    assert [r[0] for r in rows] == ["RS", "CC-Hard", "CC-Soft"]
    d = [float(r[3]) for r in rows]
    assert d == sorted(d)


def test_ber_single_codec(tmp_path, quick_conf):
    assert run("ber", "--config", str(quick_conf), "--codec", "uncoded", "--out", str(tmp_path)) == 0
    header, rows = read_csv(tmp_path / "ber_uncoded.csv")
    assert header == ["ebn0_db", "ber", "bits", "errors", "codec"]
    assert len(rows) == 3


def test_gain_not_bracketed(tmp_path, quick_conf, capsys):
    status = run("gain", "--config", str(quick_conf), "--target-ber", "1e-12",
                 "--out", str(tmp_path))
    assert status != 0
    err = capsys.readouterr().err.strip()
    assert "not bracketed" in err and len(err.splitlines()) == 1
    assert not (tmp_path / "gains.csv").exists()


def test_bad_config_single_line_error(tmp_path, capsys):
    path = tmp_path / "bad.conf"
    path.write_text("nodes = -1\n")
    assert run("simulate", "--config", str(path), "--out", str(tmp_path)) == 1
    err = capsys.readouterr().err
    assert "nodes" in err and len(err.strip().splitlines()) == 1


def test_missing_config_file(tmp_path):
    assert run("dcr", "--config", str(tmp_path / "nope.conf"), "--out", str(tmp_path)) == 1


def test_no_partial_file_on_failure(tmp_path):
    from eccsim.csvio import write_csv

    def rows():
        yield (1.0,)
        raise RuntimeError("boom")

    with pytest.raises(RuntimeError):
        write_csv(tmp_path / "x.csv", ("a",), rows())
    assert os.listdir(tmp_path) == []


def test_csv_floats_roundtrip(tmp_path):
    from eccsim.csvio import write_csv
    values = [0.1, 1 / 3, 2.5e-17, 1e300, -0.0]
    write_csv(tmp_path / "f.csv", ("v",), [(v,) for v in values])
    _, rows = read_csv(tmp_path / "f.csv")
    assert [float(r[0]) for r in rows] == values
