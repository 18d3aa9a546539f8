"""Multi-round sensor-field simulation of fixed and adaptive coding.

Each round every node draws a fresh uniform position in the field (unless
``static_deployment`` is set), its distance to the sink fixes the uncoded
transmit power, and each scheme picks a codec and transmit power for it.
All randomness comes from ``SeedSequence(seed, spawn_key=(r,))`` streams,
so any round can be recomputed on its own and results do not depend on
execution order.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .config import Config
from .errors import ComparisonError, ConfigError
from .linkbudget import (
    coded_tx_power,
    energy_saving,
    tx_energy_per_bit,
    uncoded_tx_power,
    watts_to_dbm,
)
from .policy import PolicyTable, band_index, build_policy, is_boosted

SCHEMES = ("uncoded", "fixed-RS", "fixed-CCH", "fixed-CCS", "adaptive")
FIXED_LABELS = {"fixed-RS": "RS", "fixed-CCH": "CC-Hard", "fixed-CCS": "CC-Soft"}
COMPARED = ("adaptive", "fixed-RS", "fixed-CCH", "fixed-CCS")

SERIES_CSV_HEADER = ("round", "mean_txpower_dbm", "mean_saving_j_per_bit",
                     "cum_mean_saving_j_per_bit")
COMPARE_CSV_HEADER = ("scheme", "final_net_saving_j_per_bit", "rank")
DETAIL_CSV_HEADER = ("round", "node", "scheme", "distance_m", "codec", "boosted",
                     "tx_power_w", "tx_power_uncoded_w", "energy_uncoded_j_per_bit",
                     "energy_coded_j_per_bit", "saving_j_per_bit", "net_saving_j_per_bit")


@dataclass(frozen=True)
class Deployment:
    width: float
    height: float
    sink: Tuple[float, float]
    positions: np.ndarray  # (nodes, 2)
    seed: int

    @property
    def node_count(self):
        return len(self.positions)

    def distances(self, positions=None):
        pos = self.positions if positions is None else positions
        return np.hypot(pos[:, 0] - self.sink[0], pos[:, 1] - self.sink[1])


def _stream(seed, index):
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _draw_positions(rng, n, width, height):
    return rng.uniform((0.0, 0.0), (width, height), size=(n, 2))


def deploy(config: Config, seed=None) -> Deployment:
    """Uniform i.i.d. node placement; deterministic for a given seed."""
    seed = config.seed if seed is None else seed
    if config.nodes < 1:
        raise ConfigError("need at least one node", key="nodes")
    pos = _draw_positions(_stream(seed, 0), config.nodes, config.area_width_m,
                          config.area_height_m)
    return Deployment(config.area_width_m, config.area_height_m,
                      (config.sink_x_m, config.sink_y_m), pos, seed)


def round_positions(deployment: Deployment, round_index, static=False):
    """Node positions in ``round_index`` (1-based); static keeps the deployment."""
    if static:
        return deployment.positions
    return _draw_positions(_stream(deployment.seed, round_index), deployment.node_count,
                           deployment.width, deployment.height)


@dataclass(frozen=True)
class RoundRecord:
    round_index: int
    node_index: int
    distance: float
    scheme: str
    codec: str
    boosted: bool
    tx_power: float
    tx_power_uncoded: float
    energy_uncoded: float
    energy_coded: float
    saving: float
    net_saving: float


def scheme_arrays(distances, scheme, table: PolicyTable, params):
    """Vectorised per-node accounting for one scheme.

    Returns a dict of equal-length arrays: ``codec`` (profile index, -1 for
    uncoded), ``boosted``, ``tx_power``, ``tx_power_uncoded``,
    ``energy_uncoded``, ``energy_coded``, ``saving``, ``decoder_energy`` and
    ``net_saving``.
    """
    d = np.asarray(distances, dtype=float)
    n = d.size
    p_u = uncoded_tx_power(d, params)
    e_u = tx_energy_per_bit(p_u, params)
    if scheme == "uncoded":
        codec = np.full(n, -1)
        boosted = np.zeros(n, dtype=bool)
        p_c = p_u
        e_c = e_u
        e_dec = np.zeros(n)
    else:
        if scheme == "adaptive":
            codec = np.asarray(band_index(d, table)).reshape(n)
            boosted = np.asarray(is_boosted(d, table)).reshape(n)
        elif scheme in FIXED_LABELS:
            idx = table.labels.index(FIXED_LABELS[scheme])
            codec = np.full(n, idx)
            boosted = np.zeros(n, dtype=bool)
        else:
            raise ValueError(f"unknown scheme {scheme!r}")
        gains = np.array([p.gain_db for p in table.profiles])
        rates = np.array([p.code_rate for p in table.profiles])
        edecs = np.array([p.decoder_energy_per_bit for p in table.profiles])
        p_c = np.empty(n)
        for i, g in enumerate(gains):
            mask = codec == i
            if mask.any():
                p_c[mask] = coded_tx_power(d[mask], float(g), params)
        if table.boost_margin_db:
            p_c = np.where(boosted, p_c * 10.0 ** (table.boost_margin_db / 10.0), p_c)
        if table.account_rate_expansion:
            e_c = p_c / (params.info_rate * rates[codec])
        else:
            e_c = tx_energy_per_bit(p_c, params)
        e_dec = edecs[codec]
    saving = energy_saving(e_u, e_c)
    return {
        "codec": codec,
        "boosted": boosted,
        "tx_power": p_c,
        "tx_power_uncoded": p_u,
        "energy_uncoded": e_u,
        "energy_coded": e_c,
        "saving": saving,
        "decoder_energy": e_dec,
        "net_saving": saving - e_dec,
    }


def run_round(deployment: Deployment, round_index, scheme, policy: PolicyTable, params,
              static=False) -> List[RoundRecord]:
    """Per-node records of one round for one scheme."""
    d = deployment.distances(round_positions(deployment, round_index, static))
    arr = scheme_arrays(d, scheme, policy, params)
    labels = policy.labels
    return [
        RoundRecord(
            round_index, i, float(d[i]), scheme,
            "none" if arr["codec"][i] < 0 else labels[arr["codec"][i]],
            bool(arr["boosted"][i]), float(arr["tx_power"][i]),
            float(arr["tx_power_uncoded"][i]), float(arr["energy_uncoded"][i]),
            float(arr["energy_coded"][i]), float(arr["saving"][i]),
            float(arr["net_saving"][i]),
        )
        for i in range(d.size)
    ]


@dataclass
class SchemeSeries:
    mean_tx_power: np.ndarray
    mean_saving: np.ndarray
    cum_mean_saving: np.ndarray
    mean_net_saving: np.ndarray
    cum_mean_net_saving: np.ndarray

    @property
    def final_saving(self):
        return float(self.cum_mean_saving[-1])

    @property
    def final_net_saving(self):
        return float(self.cum_mean_net_saving[-1])


@dataclass
class SimReport:
    rounds: int
    policy: PolicyTable
    series: Dict[str, SchemeSeries]
    distances: np.ndarray  # (rounds, nodes)
    details: Dict[str, Dict[str, np.ndarray]]  # scheme -> field -> (rounds, nodes)

    def final_table(self):
        return {
            s: (ser.final_saving, ser.final_net_saving) for s, ser in self.series.items()
        }


def _cum_mean(x):
    return np.cumsum(x) / np.arange(1, len(x) + 1)


def run_simulation(config: Config, schemes=SCHEMES) -> SimReport:
    if config.rounds < 1:
        raise ConfigError("need at least one round", key="rounds")
    params = config.link_params()
    policy = build_policy(config.profiles(), params, config.boost_margin_db,
                          config.account_rate_expansion)
    deployment = deploy(config)
    dist = np.stack([
        deployment.distances(round_positions(deployment, r, config.static_deployment))
        for r in range(1, config.rounds + 1)
    ])
    series = {}
    details = {}
    for scheme in schemes:
        per_round = [scheme_arrays(dist[r], scheme, policy, params) for r in range(config.rounds)]
        stacked = {k: np.stack([pr[k] for pr in per_round]) for k in per_round[0]}
        details[scheme] = stacked
        mean_saving = stacked["saving"].mean(axis=1)
        mean_net = stacked["net_saving"].mean(axis=1)
        series[scheme] = SchemeSeries(
            stacked["tx_power"].mean(axis=1),
            mean_saving,
            _cum_mean(mean_saving),
            mean_net,
            _cum_mean(mean_net),
        )
    return SimReport(config.rounds, policy, series, dist, details)


def compare_schemes(report: SimReport):
    """``[(scheme, final_net_saving, rank), ...]`` best first."""
    missing = [s for s in COMPARED if s not in report.series]
    if missing:
        raise ComparisonError(f"report lacks schemes {missing}")
    finals = [(s, report.series[s].final_net_saving) for s in COMPARED]
    finals.sort(key=lambda item: (-item[1], item[0]))
    return [(s, v, rank) for rank, (s, v) in enumerate(finals, start=1)]


def series_rows(report: SimReport, scheme):
    ser = report.series[scheme]
    dbm = watts_to_dbm(ser.mean_tx_power)
    for r in range(report.rounds):
        yield (r + 1, float(dbm[r]), float(ser.mean_saving[r]), float(ser.cum_mean_saving[r]))


def detail_rows(report: SimReport):
    labels = report.policy.labels
    rounds, nodes = report.distances.shape
    for scheme, arr in report.details.items():
        codec = arr["codec"]
        cols = [arr[k].tolist() for k in ("tx_power", "tx_power_uncoded", "energy_uncoded",
                                           "energy_coded", "saving", "net_saving")]
        boosted = arr["boosted"].tolist()
        dist = report.distances.tolist()
        codec_l = codec.tolist()
        for r in range(rounds):
            for i in range(nodes):
                c = codec_l[r][i]
                yield (r + 1, i, scheme, dist[r][i], "none" if c < 0 else labels[c],
                       boosted[r][i], *(col[r][i] for col in cols))

