"""Command-line entry point: ``eccsim {ber,gain,dcr,simulate,compare}``."""

import argparse
import sys
from pathlib import Path

from . import gainlab, simkernel
from .config import default_config, parse_config
from .csvio import write_csv
from .errors import EccSimError
from .policy import build_policy

GAIN_CSV_HEADER = ("codec", "target_ber", "gain_db", "ebn0_uncoded_db", "ebn0_coded_db")
DCR_CSV_HEADER = ("codec", "gain_db", "decoder_energy_j", "critical_distance_m")
CODEC_CHOICES = ("uncoded", "RS", "CC-Hard", "CC-Soft")


def _slug(label):
    return label.lower().replace("-", "_")


def _budget(cfg):
    return gainlab.Budget(cfg.ber_min_bits, cfg.ber_min_errors, cfg.ber_max_bits)


def _scheme(cfg, label):
    if label == "uncoded":
        return gainlab.Uncoded()
    if label == "RS":
        return gainlab.RsScheme(cfg.rs_spec())
    return gainlab.ConvScheme(cfg.conv_spec(), soft=label == "CC-Soft",
                              frame_bits=cfg.conv_frame_bits)


def _sweep(cfg, label, out):
    curve = gainlab.ber_sweep(_scheme(cfg, label), cfg.ber_grid, _budget(cfg), cfg.seed)
    gainlab.write_ber_csv(out / f"ber_{_slug(label)}.csv", curve)
    return curve


def cmd_ber(cfg, args):
    labels = CODEC_CHOICES if args.codec == "all" else (args.codec,)
    for label in labels:
        _sweep(cfg, label, args.out)
    return 0


def cmd_gain(cfg, args):
    target = cfg.target_ber if args.target_ber is None else args.target_ber
    uncoded = _sweep(cfg, "uncoded", args.out)
    rows = []
    for label in CODEC_CHOICES[1:]:
        curve = _sweep(cfg, label, args.out)
        res = gainlab.coding_gain_at(curve, uncoded, target)
        rows.append((label, target, res.gain_db, res.ebn0_uncoded_db, res.ebn0_coded_db))
    write_csv(args.out / "gains.csv", GAIN_CSV_HEADER, rows)
    return 0


def cmd_dcr(cfg, args):
    table = build_policy(cfg.profiles(), cfg.link_params(), cfg.boost_margin_db,
                         cfg.account_rate_expansion)
    rows = [(p.label, p.gain_db, p.decoder_energy_per_bit, p.critical_distance)
            for p in table.profiles]
    write_csv(args.out / "dcr.csv", DCR_CSV_HEADER, rows)
    return 0


def _write_report(report, out, detail):
    for scheme in report.series:
        write_csv(out / f"sim_{_slug(scheme)}.csv", simkernel.SERIES_CSV_HEADER,
                  simkernel.series_rows(report, scheme))
    if detail:
        write_csv(out / "sim_detail.csv", simkernel.DETAIL_CSV_HEADER,
                  simkernel.detail_rows(report))


def cmd_simulate(cfg, args):
    report = simkernel.run_simulation(cfg)
    _write_report(report, args.out, not args.no_detail)
    return 0


def cmd_compare(cfg, args):
    report = simkernel.run_simulation(cfg)
    ranking = simkernel.compare_schemes(report)
    write_csv(args.out / "compare.csv", simkernel.COMPARE_CSV_HEADER, ranking)
    for scheme, value, rank in ranking:
        print(f"{rank}. {scheme:10s} {value:.6e} J/bit")
    return 0


COMMANDS = {
    "ber": cmd_ber,
    "gain": cmd_gain,
    "dcr": cmd_dcr,
    "simulate": cmd_simulate,
    "compare": cmd_compare,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key = value config file "
                        "(default: the bundled defaults.conf)")
    common.add_argument("--seed", type=int, help="override the config seed")
    common.add_argument("--out", type=Path, default=Path("out"), help="output directory")

    parser = argparse.ArgumentParser(prog="eccsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("ber", parents=[common], help="measure BER curves")
    p.add_argument("--codec", choices=CODEC_CHOICES + ("all",), default="all")
    p = sub.add_parser("gain", parents=[common], help="measure coding gains")
    p.add_argument("--target-ber", type=float)
    sub.add_parser("dcr", parents=[common], help="critical distance table")
    p = sub.add_parser("simulate", parents=[common], help="run the sensor-field simulation")
    p.add_argument("--no-detail", action="store_true", help="skip the per-node detail CSV")
    sub.add_parser("compare", parents=[common], help="rank adaptive vs fixed schemes")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = default_config() if args.config is None else parse_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise EccSimError("--seed must be >= 0")
            cfg = cfg.with_overrides(seed=args.seed)
        return COMMANDS[args.command](cfg, args)
    except (EccSimError, OSError) as exc:
        print(f"eccsim {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
