"""Critical distances and distance-driven encoder selection.

A codec's critical distance is where the transmit energy it saves per bit
equals the energy its decoder spends per bit.  The policy splits distance
into bands at the three critical distances (sorted by coding gain):

* ``d <= D[0]``            -> weakest codec
* ``D[0] < d <= D[1]``     -> middle codec
* ``D[1] < d``             -> strongest codec, flagged ``boosted`` past
  ``D[2]`` where the transmit power is raised by ``boost_margin_db``.

Ties resolve to the lower-gain codec.
"""

import math
from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

from .errors import ConfigError, InvalidParameterError
from .linkbudget import (
    LinkBudgetParams,
    coded_tx_power,
    noise_power,
    required_snr,
    tx_energy_per_bit,
    uncoded_tx_power,
)

UNREACHABLE = math.inf


@dataclass(frozen=True)
class CodecProfile:
    label: str
    gain_db: float
    code_rate: float
    decoder_energy_per_bit: float
    critical_distance: float = None

    def __post_init__(self):
        if not (math.isfinite(self.gain_db) and self.gain_db >= 0):
            raise InvalidParameterError(f"{self.label}: gain_db must be >= 0")
        if not 0 < self.code_rate <= 1:
            raise InvalidParameterError(f"{self.label}: code_rate must be in (0, 1]")
        if not (math.isfinite(self.decoder_energy_per_bit) and self.decoder_energy_per_bit >= 0):
            raise InvalidParameterError(f"{self.label}: decoder energy must be >= 0")

    @property
    def reachable(self):
        return self.critical_distance is not None and math.isfinite(self.critical_distance)


def _saving_fraction(profile, account_rate_expansion):
    """Fraction of the uncoded per-bit energy saved by coding."""
    rate = profile.code_rate if account_rate_expansion else 1.0
    return 1.0 - 10.0 ** (-profile.gain_db / 10.0) / rate


def critical_distance(profile: CodecProfile, params: LinkBudgetParams,
                      account_rate_expansion=False):
    """Distance (m) at which the per-bit saving equals the decoder energy.

    Returns 0.0 for a free decoder and :data:`UNREACHABLE` (inf) when the
    code never saves energy.
    """
    e_dec = profile.decoder_energy_per_bit
    if e_dec == 0:
        return 0.0
    frac = _saving_fraction(profile, account_rate_expansion)
    if frac <= 0:
        return UNREACHABLE
    denom = required_snr(params) * noise_power(params) * (4.0 * math.pi) ** 2 * frac
    return math.sqrt(e_dec * params.info_rate * params.wavelength ** 2 / denom)


def net_benefit(distance, profile: CodecProfile, params: LinkBudgetParams,
                account_rate_expansion=False):
    """Per-bit transmit saving minus decoder energy at ``distance``."""
    p_u = uncoded_tx_power(distance, params)
    p_c = coded_tx_power(distance, profile.gain_db, params)
    rate = profile.code_rate if account_rate_expansion else 1.0
    saving = tx_energy_per_bit(p_u, params) - tx_energy_per_bit(p_c, params, rate)
    return saving - profile.decoder_energy_per_bit


@dataclass(frozen=True)
class PolicyTable:
    profiles: Tuple[CodecProfile, ...]
    boost_margin_db: float = 0.0
    account_rate_expansion: bool = False

    @property
    def thresholds(self):
        return tuple(p.critical_distance for p in self.profiles)

    @property
    def labels(self):
        return tuple(p.label for p in self.profiles)

    def profile(self, label):
        for p in self.profiles:
            if p.label == label:
                return p
        raise KeyError(label)


def build_policy(profiles, params: LinkBudgetParams, boost_margin_db=0.0,
                 account_rate_expansion=False) -> PolicyTable:
    profiles = list(profiles)
    if len(profiles) != 3:
        raise ConfigError(f"policy needs exactly three codec profiles, got {len(profiles)}")
    labels = [p.label for p in profiles]
    if len(set(labels)) != 3:
        raise ConfigError(f"duplicate codec label in {labels}")
    if not (math.isfinite(boost_margin_db) and boost_margin_db >= 0):
        raise ConfigError("boost margin must be >= 0 dB", key="boost_margin_db")
    profiles.sort(key=lambda p: p.gain_db)
    profiles = [
        replace(p, critical_distance=critical_distance(p, params, account_rate_expansion))
        for p in profiles
    ]
    for lo, hi in zip(profiles, profiles[1:]):
        if not hi.gain_db > lo.gain_db:
            raise ConfigError(
                f"coding gains must be strictly increasing: {lo.label} ({lo.gain_db} dB) "
                f"vs {hi.label} ({hi.gain_db} dB)"
            )
        if not hi.critical_distance > lo.critical_distance:
            raise ConfigError(
                f"critical distances must be strictly increasing: {lo.label} "
                f"({lo.critical_distance:.6g} m) vs {hi.label} ({hi.critical_distance:.6g} m)"
            )
    return PolicyTable(tuple(profiles), boost_margin_db, account_rate_expansion)


@dataclass(frozen=True)
class Selection:
    label: str
    gain_db: float
    tx_power: float
    boosted: bool


def band_index(distance, table: PolicyTable):
    """Index of the selected profile (0..2) for scalar or array distances."""
    d = np.asarray(distance, dtype=float)
    if np.any(d < 0) or np.any(np.isnan(d)):
        raise InvalidParameterError("distance must be non-negative")
    t0, t1, _ = table.thresholds
    band = np.where(d <= t0, 0, np.where(d <= t1, 1, 2))
    return int(band) if band.ndim == 0 else band


def is_boosted(distance, table: PolicyTable):
    out = np.asarray(distance, dtype=float) > table.thresholds[2]
    return bool(out) if out.ndim == 0 else out


def select(distance, table: PolicyTable, params: LinkBudgetParams) -> Selection:
    profile = table.profiles[band_index(distance, table)]
    boosted = is_boosted(distance, table)
    power = coded_tx_power(distance, profile.gain_db, params)
    if boosted and table.boost_margin_db:
        power *= 10.0 ** (table.boost_margin_db / 10.0)
    return Selection(profile.label, profile.gain_db, power, boosted)
