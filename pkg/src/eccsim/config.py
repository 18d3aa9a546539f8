"""Flat ``key = value`` configuration.

Blank lines and ``#`` comments are ignored; unknown or repeated keys are
errors.  Every omitted key takes the default listed in ``KEYS`` (the same
values as the shipped ``defaults.conf``).  Errors name the key and, when
known, the line.
"""

import math
from dataclasses import dataclass, fields, replace
from importlib import resources
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from .errors import ConfigError
from .fec.conv import ConvSpec, parse_octal
from .fec.rs import RsSpec
from .linkbudget import LinkBudgetParams
from .policy import CodecProfile

CODEC_LABELS = ("RS", "CC-Hard", "CC-Soft")


def _bool(text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _optional_float(text):
    if text.strip().lower() in ("none", ""):
        return None
    return float(text)


def _int(text):
    return int(text.strip(), 0)


def _optional_int(text):
    if text.strip().lower() in ("none", "auto", ""):
        return None
    return _int(text)


def _generators(text):
    gens = parse_octal(text)
    if not gens:
        raise ValueError("no generators given")
    return gens


def _grid(text):
    """``start:stop:step`` (stop inclusive) or a comma-separated list."""
    text = text.strip()
    if ":" in text:
        start, stop, step = (float(x) for x in text.split(":"))
        if step <= 0:
            raise ValueError("grid step must be positive")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        if n < 1:
            raise ValueError("empty grid")
        return tuple(round(start + i * step, 12) for i in range(n))
    return tuple(float(x) for x in text.split(",") if x.strip())


def _positive(v):
    return v > 0 and math.isfinite(v)


def _nonneg(v):
    return v >= 0 and math.isfinite(v)


def _finite(v):
    return math.isfinite(v)


def _any(v):
    return True


def _probability(v):
    return 0 < v < 1


# key: (parser, validator, range description)
KEYS = {
    "frequency_hz": (float, _positive, "> 0"),
    "data_rate_bps": (float, _positive, "> 0"),
    "bandwidth_hz": (float, _positive, "> 0"),
    "noise_figure_db": (float, _finite, "finite"),
    "temperature_k": (float, _positive, "> 0"),
    "ebn0_db": (float, _finite, "finite"),
    "spectral_efficiency": (float, _positive, "> 0"),
    "snr": (_optional_float, lambda v: v is None or _positive(v), "> 0 or none"),
    "rs_symbol_bits": (_int, lambda v: 2 <= v <= 8, "2..8"),
    "rs_n": (_int, lambda v: v > 1, "> 1"),
    "rs_k": (_int, lambda v: v >= 1, ">= 1"),
    "rs_poly": (_optional_int, lambda v: v is None or v > 0, "> 0 or auto"),
    "rs_first_root": (_int, lambda v: v >= 0, ">= 0"),
    "conv_constraint_length": (_int, lambda v: 2 <= v <= 16, "2..16"),
    "conv_generators": (_generators, _any, "octal list"),
    "conv_frame_bits": (_int, lambda v: v >= 1, ">= 1"),
    "gain_rs_db": (float, _nonneg, ">= 0"),
    "gain_cch_db": (float, _nonneg, ">= 0"),
    "gain_ccs_db": (float, _nonneg, ">= 0"),
    "edec_rs_j": (float, _nonneg, ">= 0"),
    "edec_cch_j": (float, _nonneg, ">= 0"),
    "edec_ccs_j": (float, _nonneg, ">= 0"),
    "target_ber": (float, _probability, "in (0, 1)"),
    "boost_margin_db": (float, _nonneg, ">= 0"),
    "ber_grid": (_grid, lambda v: len(v) > 0 and all(b > a for a, b in zip(v, v[1:])),
                 "nonempty increasing"),
    "ber_min_bits": (_int, lambda v: v >= 1, ">= 1"),
    "ber_min_errors": (_int, lambda v: v >= 0, ">= 0"),
    "ber_max_bits": (_int, lambda v: v >= 1, ">= 1"),
    "area_width_m": (float, _positive, "> 0"),
    "area_height_m": (float, _positive, "> 0"),
    "sink_x_m": (float, _finite, "finite"),
    "sink_y_m": (float, _finite, "finite"),
    "nodes": (_int, lambda v: v >= 1, ">= 1"),
    "rounds": (_int, lambda v: v >= 1, ">= 1"),
    "seed": (_int, lambda v: v >= 0, ">= 0"),
    "frame_bytes": (_int, lambda v: v >= 1, ">= 1"),
    "account_rate_expansion": (_bool, _any, "boolean"),
    "static_deployment": (_bool, _any, "boolean"),
}


@dataclass(frozen=True)
class Config:
    frequency_hz: float = 2.45e9
    data_rate_bps: float = 250e3
    bandwidth_hz: float = 2e6
    noise_figure_db: float = 5.0
    temperature_k: float = 290.0
    ebn0_db: float = 6.76
    spectral_efficiency: float = 0.0030
    snr: Optional[float] = 0.0202
    rs_symbol_bits: int = 5
    rs_n: int = 31
    rs_k: int = 21
    rs_poly: Optional[int] = None
    rs_first_root: int = 1
    conv_constraint_length: int = 7
    conv_generators: Tuple[int, ...] = (0o171, 0o133)
    conv_frame_bits: int = 1000
    gain_rs_db: float = 1.36
    gain_cch_db: float = 2.16
    gain_ccs_db: float = 4.10
    edec_rs_j: float = 1.0e-15
    edec_cch_j: float = 4.0e-15
    edec_ccs_j: float = 1.2e-14
    target_ber: float = 1e-3
    boost_margin_db: float = 0.0
    ber_grid: Tuple[float, ...] = _grid("0:10:0.5")
    ber_min_bits: int = 200_000
    ber_min_errors: int = 200
    ber_max_bits: int = 2_000_000
    area_width_m: float = 100.0
    area_height_m: float = 100.0
    sink_x_m: float = 0.0
    sink_y_m: float = 0.0
    nodes: int = 500
    rounds: int = 100
    seed: int = 2013
    frame_bytes: int = 127
    account_rate_expansion: bool = False
    static_deployment: bool = False

    def __post_init__(self):
        for f in fields(self):
            _, check, desc = KEYS[f.name]
            if not check(getattr(self, f.name)):
                raise ConfigError(f"value {getattr(self, f.name)!r} out of range ({desc})",
                                  key=f.name)
        if not self.rs_k < self.rs_n <= (1 << self.rs_symbol_bits) - 1:
            raise ConfigError("need rs_k < rs_n <= 2^rs_symbol_bits - 1", key="rs_n")
        for g in self.conv_generators:
            if g >= 1 << self.conv_constraint_length:
                raise ConfigError(f"generator {g:o} exceeds constraint length",
                                  key="conv_generators")
        if self.ber_max_bits < self.ber_min_bits:
            raise ConfigError("must be >= ber_min_bits", key="ber_max_bits")
        if not (0 <= self.sink_x_m <= self.area_width_m and 0 <= self.sink_y_m <= self.area_height_m):
            raise ConfigError("sink must lie inside the area", key="sink_x_m")

    def with_overrides(self, **kw):
        return replace(self, **kw)

    def link_params(self) -> LinkBudgetParams:
        return LinkBudgetParams(
            carrier_frequency=self.frequency_hz,
            spectral_efficiency=self.spectral_efficiency,
            ebn0_db=self.ebn0_db,
            noise_figure_db=self.noise_figure_db,
            temperature=self.temperature_k,
            bandwidth=self.bandwidth_hz,
            info_rate=self.data_rate_bps,
            snr_override=self.snr,
        )

    def rs_spec(self) -> RsSpec:
        return RsSpec(self.rs_symbol_bits, self.rs_n, self.rs_k, self.rs_poly,
                      self.rs_first_root)

    def conv_spec(self) -> ConvSpec:
        return ConvSpec(self.conv_constraint_length, tuple(self.conv_generators), True)

    def conv_rate(self):
        return self.conv_frame_bits / self.conv_spec().coded_length(self.conv_frame_bits)

    def profiles(self):
        rs_rate = self.rs_k / self.rs_n
        cc_rate = self.conv_rate()
        return [
            CodecProfile("RS", self.gain_rs_db, rs_rate, self.edec_rs_j),
            CodecProfile("CC-Hard", self.gain_cch_db, cc_rate, self.edec_cch_j),
            CodecProfile("CC-Soft", self.gain_ccs_db, cc_rate, self.edec_ccs_j),
        ]


def parse_text(text, source="<config>"):
    values = {}
    seen_line = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value' in {source}", line=lineno)
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in KEYS:
            raise ConfigError("unknown key", key=key, line=lineno)
        if key in seen_line:
            raise ConfigError(f"repeated (first set on line {seen_line[key]})",
                              key=key, line=lineno)
        parser, check, desc = KEYS[key]
        try:
            parsed = parser(value)
        except ValueError as exc:
            raise ConfigError(f"cannot parse {value!r}: {exc}", key=key, line=lineno) from None
        if not check(parsed):
            raise ConfigError(f"value {value!r} out of range ({desc})", key=key, line=lineno)
        values[key] = parsed
        seen_line[key] = lineno
    try:
        return Config(**values)
    except ConfigError as exc:
        if exc.key in seen_line and exc.line is None:
            raise ConfigError(str(exc).split(": ", 1)[-1], key=exc.key,
                              line=seen_line[exc.key]) from None
        raise


def parse_config(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ConfigError(f"{path} is not valid UTF-8: {exc}") from None
    return parse_text(text, str(path))


def default_config_text():
    return resources.files("eccsim").joinpath("data/defaults.conf").read_text(encoding="utf-8")


def default_config():
    return parse_text(default_config_text(), "defaults.conf")
