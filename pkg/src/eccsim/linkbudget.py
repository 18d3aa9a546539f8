"""Free-space transmit power and per-bit energy accounting.

All quantities are SI (watts, joules, hertz, meters).  Decibels appear only
as inputs (noise figure, Eb/N0, coding gain) and in :func:`watts_to_dbm`.
Distance and power arguments may be floats or numpy arrays.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidParameterError

SPEED_OF_LIGHT = 299_792_458.0  # m/s
BOLTZMANN = 1.380649e-23  # J/K


def watts_to_dbm(watts):
    """Convert watts to dBm; zero power maps to -inf."""
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(np.asarray(watts, dtype=float) * 1e3)


@dataclass(frozen=True)
class LinkBudgetParams:
    """Physical parameters of the free-space link.

    ``noise_figure_db`` sets the noise proportionality constant
    ``noise_factor = 10**(NF/10)``.  When ``snr_override`` is given it is
    used verbatim as the required S/N; otherwise the required S/N is
    ``spectral_efficiency * 10**(ebn0_db/10)``.
    """

    carrier_frequency: float = 2.45e9
    spectral_efficiency: float = 0.0030
    ebn0_db: float = 6.76
    noise_figure_db: float = 5.0
    temperature: float = 290.0
    bandwidth: float = 2e6
    info_rate: float = 250e3
    boltzmann: float = BOLTZMANN
    snr_override: Optional[float] = 0.0202
    wavelength: float = field(init=False)
    noise_factor: float = field(init=False)

    def __post_init__(self):
        for name in ("carrier_frequency", "spectral_efficiency", "temperature",
                     "bandwidth", "info_rate", "boltzmann"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameterError(f"{name} must be positive, got {value!r}")
        for name in ("ebn0_db", "noise_figure_db"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")
        if self.snr_override is not None and not (
            math.isfinite(self.snr_override) and self.snr_override > 0
        ):
            raise InvalidParameterError(
                f"snr_override must be positive, got {self.snr_override!r}"
            )
        object.__setattr__(self, "wavelength", SPEED_OF_LIGHT / self.carrier_frequency)
        object.__setattr__(self, "noise_factor", 10.0 ** (self.noise_figure_db / 10.0))


def noise_power(params: LinkBudgetParams) -> float:
    """Receiver noise power m*K*T*B in watts."""
    return params.noise_factor * params.boltzmann * params.temperature * params.bandwidth


def required_snr(params: LinkBudgetParams) -> float:
    if params.snr_override is not None:
        return params.snr_override
    return params.spectral_efficiency * 10.0 ** (params.ebn0_db / 10.0)


def path_loss(distance, params: LinkBudgetParams):
    """Free-space path loss factor (4*pi*d/lambda)**2 (linear)."""
    d = np.asarray(distance, dtype=float)
    if np.any(d < 0) or np.any(~np.isfinite(d)):
        raise InvalidParameterError("distance must be finite and non-negative")
    loss = (4.0 * math.pi * d / params.wavelength) ** 2
    return float(loss) if loss.ndim == 0 else loss


def uncoded_tx_power(distance, params: LinkBudgetParams):
    """Transmit power (W) needed to deliver the required S/N at ``distance``."""
    return required_snr(params) * noise_power(params) * path_loss(distance, params)


def coded_tx_power(distance, gain_db: float, params: LinkBudgetParams):
    """Uncoded power reduced by a coding gain of ``gain_db``."""
    if not (math.isfinite(gain_db) and gain_db >= 0):
        raise InvalidParameterError(f"coding gain must be >= 0 dB, got {gain_db!r}")
    return uncoded_tx_power(distance, params) / 10.0 ** (gain_db / 10.0)


def tx_energy_per_bit(power, params: LinkBudgetParams, code_rate: float = 1.0):
    """Energy per information bit, ``power / (R * code_rate)``.

    ``code_rate`` stays 1.0 unless rate expansion is being accounted for.
    """
    if not (params.info_rate > 0):
        raise InvalidParameterError("info_rate must be positive")
    if not (0 < code_rate <= 1):
        raise InvalidParameterError(f"code_rate must be in (0, 1], got {code_rate!r}")
    p = np.asarray(power, dtype=float)
    if np.any(p < 0):
        raise InvalidParameterError("power must be non-negative")
    rate = params.info_rate if code_rate == 1.0 else params.info_rate * code_rate
    energy = p / rate
    return float(energy) if energy.ndim == 0 else energy


def energy_saving(e_uncoded, e_coded):
    """Uncoded minus coded energy per bit; negative means coding cost more."""
    return e_uncoded - e_coded


@dataclass(frozen=True)
class EnergyRecord:
    tx_power_uncoded: float
    tx_power_coded: float
    energy_uncoded: float
    energy_coded: float
    saving: float


def energy_record(distance, gain_db, params, code_rate=1.0, boost_db=0.0) -> EnergyRecord:
    """Compose the power and energy accounting for one transmission."""
    p_u = uncoded_tx_power(distance, params)
    p_c = coded_tx_power(distance, gain_db, params)
    if boost_db:
        p_c = p_c * 10.0 ** (boost_db / 10.0)
    e_u = tx_energy_per_bit(p_u, params)
    e_c = tx_energy_per_bit(p_c, params, code_rate)
    return EnergyRecord(p_u, p_c, e_u, e_c, energy_saving(e_u, e_c))
