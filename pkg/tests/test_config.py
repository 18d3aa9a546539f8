import pytest

from eccsim.config import Config, default_config, default_config_text, parse_config, parse_text
from eccsim.errors import ConfigError


def test_shipped_config_matches_dataclass_defaults():
    cfg = default_config()
    assert cfg.frequency_hz == 2.45e9
    assert cfg.data_rate_bps == 250e3
    assert cfg.noise_figure_db == 5.0
    assert cfg.ebn0_db == 6.76
    assert cfg.spectral_efficiency == 0.0030
    assert cfg.snr == 0.0202
    assert (cfg.nodes, cfg.rounds, cfg.area_width_m, cfg.area_height_m) == (500, 100, 100, 100)
    assert cfg == Config()


def test_empty_file_gives_defaults(tmp_path):
    path = tmp_path / "empty.conf"
    path.write_text("")
    assert parse_config(path) == Config()


def test_comments_and_values():
    cfg = parse_text("# c\n\nnodes = 20   # trailing\nsnr = none\nconv_generators = 7, 5\n"
                     "conv_constraint_length = 3\nstatic_deployment = yes\nber_grid = 1:2:0.5\n")
    assert cfg.nodes == 20 and cfg.snr is None and cfg.static_deployment
    assert cfg.conv_generators == (7, 5)
    assert cfg.ber_grid == (1.0, 1.5, 2.0)
    assert cfg.link_params().snr_override is None


def test_negative_nodes_names_key():
    with pytest.raises(ConfigError, match="nodes") as exc:
        parse_text("\nnodes = -1\n")
    assert exc.value.key == "nodes" and exc.value.line == 2


@pytest.mark.parametrize("text,key", [
    ("colour = red", "colour"),
    ("rounds = many", "rounds"),
    ("target_ber = 2", "target_ber"),
    ("rs_k = 40", "rs_n"),
    ("seed = 1\nseed = 2", "seed"),
    ("conv_constraint_length = 3", "conv_generators"),
])
def test_errors_name_the_key(text, key):
    with pytest.raises(ConfigError) as exc:
        parse_text(text)
    assert exc.value.key == key
    assert key in str(exc.value)


def test_missing_equals():
    with pytest.raises(ConfigError, match="line 1"):
        parse_text("nodes 5")


def test_bad_utf8(tmp_path):
    path = tmp_path / "bin.conf"
    path.write_bytes(b"nodes = \xff\n")
    with pytest.raises(ConfigError):
        parse_config(path)


def test_shipped_text_reparses(tmp_path):
    path = tmp_path / "t.conf"
    path.write_text(default_config_text())
    assert parse_config(path) == default_config()


def test_derived_specs(config):
    assert config.rs_spec().t == 5
    assert config.conv_spec().generators == (0o171, 0o133)
    assert [p.label for p in config.profiles()] == ["RS", "CC-Hard", "CC-Soft"]
