"""
spin-memory: command-line front end.

    spin-memory gen       --spins 6 --d-nn-hz 800 --seed 7 --out system.json
    spin-memory write     --text "hi" --out-dir runs/hi
    spin-memory simulate  runs/hi
    spin-memory read      runs/hi
    spin-memory plot      runs/hi/spectrum.csv --manifest runs/hi/manifest.json
    spin-memory roundtrip --bits 101101001110 --out-dir runs/ac1
    spin-memory noise     runs/ac1 --sigma-rel 0.1 --trials 20

Exit codes: 0 success, 1 decoded payload differs from the manifest,
2 invalid input.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd

from spin_cluster_memory import __version__
from spin_cluster_memory.core.exceptions import CalibrationError, SpinMemoryError
from spin_cluster_memory.core.logger import configure_logging
from spin_cluster_memory.core.registry import get_settings
from spin_cluster_memory.pipeline import bundle as bundles
from spin_cluster_memory.pipeline.config import RunConfig
from spin_cluster_memory.spectro.processing import Spectrum
from spin_cluster_memory.spin.system import GEOMETRIES, generate_spin_system
from spin_cluster_memory.utils.io_utils import read_json, write_csv
from spin_cluster_memory.viz.plots import plot_spectrum

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2

# argparse dest -> RunConfig field
FLAG_FIELDS = {
    "system": "system_path",
    "geometry": "geometry",
    "spins": "spins",
    "d_nn_hz": "d_nn_hz",
    "spread_hz": "spread_hz",
    "system_seed": "system_seed",
    "max_spins": "max_spins",
    "spacing_hz": "spacing_hz",
    "amp_hz": "amp_hz",
    "base_offset_hz": "base_offset_hz",
    "harmonics": "harmonics",
    "duration_s": "duration_s",
    "sample_step_s": "sample_step_s",
    "dt_s": "dt_s",
    "points": "points",
    "dwell_s": "dwell_s",
    "delay_s": "delay_s",
    "t2star_s": "t2star_s",
    "noise": "noise",
    "transients": "transients",
    "seed": "seed",
    "zero_fill": "zero_fill",
    "threshold": "margin_threshold",
    "apodize_hz": "apodize_hz",
    "hann_t2star": "hann_t2star",
    "width": "number_width",
}


# -------------------------------------------------------------
# 1) PARSER
# -------------------------------------------------------------
def _system_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("spin system")
    g.add_argument("--geometry", choices=GEOMETRIES)
    g.add_argument("--spins", type=int, help="number of spins n")
    g.add_argument("--d-nn-hz", type=float, help="nearest-neighbour coupling (Hz)")
    g.add_argument("--spread-hz", type=float, help="offset spread; offsets uniform in +-spread/2 (Hz)")
    g.add_argument("--system-seed", type=int, help="seed for the offset draw")
    g.add_argument("--max-spins", type=int, help="dense-matrix bound on n")
    return p


def _run_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("payload")
    payload = g.add_mutually_exclusive_group()
    payload.add_argument("--text", help="text over [ a-z] (5 bits per character)")
    payload.add_argument("--bits", help="bit string such as 101101")
    payload.add_argument("--number", type=int, help="non-negative integer")
    g.add_argument("--width", type=int, help="bit width for --number")

    g = p.add_argument_group("comb and pulse")
    g.add_argument("--system", help="spin-system JSON (overrides generator flags)")
    g.add_argument("--spacing-hz", type=float)
    g.add_argument(
        "--amp-hz", type=float,
        help="harmonic amplitude, > 0 (Hz); a silent comb has no harmonics rather than zero amplitude",
    )
    g.add_argument("--base-offset-hz", type=float, help="offset of harmonic 0 (default: centred comb)")
    g.add_argument("--harmonics", type=int, help="expected number of harmonics (checked against the payload)")
    g.add_argument("--duration-s", type=float)
    g.add_argument("--sample-step-s", type=float)
    g.add_argument("--dt-s", type=float, help="propagation step (default: derived from the pulse and system)")

    g = p.add_argument_group("acquisition and readout")
    g.add_argument("--points", type=int)
    g.add_argument("--dwell-s", type=float)
    g.add_argument("--delay-s", type=float)
    g.add_argument("--t2star-s", type=float, help="FID damping time (default 1/(pi*12 Hz))")
    g.add_argument("--noise", type=float, help="noise sigma per transient (signal units)")
    g.add_argument("--transients", type=int)
    g.add_argument("--seed", type=int, help="acquisition noise seed")
    g.add_argument("--zero-fill", type=int)
    g.add_argument("--apodize-hz", type=float, help="exponential line broadening (Hz)")
    g.add_argument("--hann-t2star", type=float, help="Hann readout window length in units of t2star (damped FIDs only)")
    g.add_argument("--threshold", type=float, help="margin under which a peak is flagged")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spin-memory",
        description="Store bit arrays in the coherent response of a dipolar spin cluster.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING (default: $SPIN_MEMORY_LOG_LEVEL or INFO)")
    parser.add_argument("--config", default=None, help="simulation YAML (default: configs/simulation.yaml)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[_system_flags()], help="generate a spin-system JSON file")
    p.add_argument("--out", help="output path (default: <systems_dir>/<geometry>_n<spins>_s<seed>.json)")
    p.add_argument("--seed", dest="system_seed_alias", type=int, help="alias of --system-seed")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("write", parents=[_system_flags(), _run_flags()], help="encode a payload into a run bundle")
    p.add_argument("--out-dir", help="bundle directory (default: <runs_dir>/run)")
    p.set_defaults(func=cmd_write)

    p = sub.add_parser("simulate", help="simulate payload and reference acquisitions for a bundle")
    p.add_argument("bundle", help="bundle directory written by 'write'")
    p.add_argument("--conventional", action="store_true", help="also simulate a hard 90 degree pulse")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("read", help="decode a spectrum against its reference")
    p.add_argument("bundle", nargs="?", help="bundle directory (supplies default file names)")
    p.add_argument("--spectrum")
    p.add_argument("--reference")
    p.add_argument("--manifest")
    p.add_argument("--threshold", type=float)
    p.add_argument("--report", help="write the per-peak table to this CSV")
    p.set_defaults(func=cmd_read)

    p = sub.add_parser("plot", help="render a spectrum CSV as SVG")
    p.add_argument("spectrum")
    p.add_argument("--manifest", help="manifest supplying the comb positions")
    p.add_argument("--conventional", help="conventional spectrum CSV drawn underneath")
    p.add_argument("--out", help="SVG path (default: next to the CSV)")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("roundtrip", parents=[_system_flags(), _run_flags()], help="write, simulate, read and plot")
    p.add_argument("--out-dir", help="bundle directory (default: <runs_dir>/roundtrip)")
    p.add_argument("--conventional", action="store_true")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("noise", help="re-draw acquisition noise over many seeds")
    p.add_argument("bundle")
    p.add_argument("--sigma-rel", type=float, default=0.1, help="sigma as a fraction of max|reference FID|")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--transients", type=int)
    p.add_argument("--min-fraction", type=float, default=0.95, help="required fraction of fully recovered seeds")
    p.set_defaults(func=cmd_noise)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """YAML defaults overlaid with whichever flags were given."""
    from spin_cluster_memory.core.config import load_simulation_defaults

    overrides = {field: getattr(args, dest, None) for dest, field in FLAG_FIELDS.items()}
    for kind in ("text", "bits", "number"):
        value = getattr(args, kind, None)
        if value is not None:
            overrides["payload_kind"] = kind
            overrides["payload"] = str(value)
    return RunConfig.from_defaults(load_simulation_defaults(args.config), **overrides)


# -------------------------------------------------------------
# 2) COMMANDS
# -------------------------------------------------------------
def cmd_gen(args: argparse.Namespace) -> int:
    if args.system_seed_alias is not None and args.system_seed is None:
        args.system_seed = args.system_seed_alias
    cfg = config_from_args(args)
    system = generate_spin_system(
        cfg.geometry, cfg.spins, cfg.d_nn_hz, cfg.spread_hz, cfg.system_seed, max_spins=cfg.max_spins,
    )
    out = Path(args.out) if args.out else (
        get_settings().DATA["systems_dir"] / f"{cfg.geometry}_n{cfg.spins}_s{cfg.system_seed}.json"
    )
    system.save(out)
    print(f"Spin system ({system.n} spins, {cfg.geometry}) saved to {out}")
    return EXIT_OK


def _out_dir(args: argparse.Namespace, default: str) -> Path:
    return Path(args.out_dir) if args.out_dir else get_settings().DATA["runs_dir"] / default


def cmd_write(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    manifest = bundles.write_bundle(cfg, _out_dir(args, "run"))
    data = read_json(manifest)
    print(f"Bundle: {manifest.parent}")
    print(f"Bits:   {data['bits']} ({len(data['bits'])} harmonics)")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    paths = bundles.simulate_bundle(args.bundle, conventional=args.conventional)
    for name, path in paths.items():
        print(f"{name:>22}: {path}")
    return EXIT_OK


def _resolve_read_paths(args: argparse.Namespace):
    base = Path(args.bundle) if args.bundle else None

    def pick(explicit: Optional[str], default_name: str) -> Path:
        if explicit:
            return Path(explicit)
        if base is None:
            raise SpinMemoryError(f"give a bundle directory or an explicit path for {default_name}")
        return base / default_name

    return (
        pick(args.spectrum, bundles.SPECTRUM),
        pick(args.reference, bundles.REFERENCE_SPECTRUM),
        pick(args.manifest, bundles.MANIFEST),
    )


def _print_result(result: bundles.ReadResult) -> None:
    print(f"Bits:   {result.bits}")
    if result.text is not None:
        print(f"Text:   {result.text!r}")
    print(f"Number: {result.number}")
    with pd.option_context("display.width", 120, "display.float_format", "{:.4g}".format):
        print(result.report.to_string(index=False))
    if result.expected is not None:
        if result.matches:
            print(f"Recovered {len(result.bits)}/{len(result.expected)} bits")
        else:
            print(f"MISMATCH at bit(s) {result.errors}; expected {result.expected}")


def cmd_read(args: argparse.Namespace) -> int:
    spectrum_path, reference_path, manifest_path = _resolve_read_paths(args)
    try:
        result = bundles.read_files(spectrum_path, reference_path, manifest_path, threshold=args.threshold)
    except CalibrationError as e:
        for offset in e.offsets:
            print(f"weak reference peak at {offset:g} Hz")
        raise
    _print_result(result)
    if args.report:
        write_csv(result.report, args.report)
    if result.expected is not None and not result.matches:
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    spec = Spectrum.load(args.spectrum)
    offsets: List[float] = []
    if args.manifest:
        offsets = [float(o) for o in read_json(args.manifest)["comb"]["offsets_hz"]]
    conventional = Spectrum.load(args.conventional) if args.conventional else None
    out = Path(args.out) if args.out else Path(args.spectrum).with_suffix(".svg")
    plot_spectrum(spec, offsets, out, conventional=conventional)
    print(f"Plot saved to {out}")
    return EXIT_OK


def cmd_roundtrip(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    out_dir = _out_dir(args, "roundtrip")
    manifest = bundles.write_bundle(cfg, out_dir)
    paths = bundles.simulate_bundle(out_dir, conventional=args.conventional)
    result = bundles.read_files(paths["spectrum"], paths["reference_spectrum"], manifest)
    _print_result(result)
    write_csv(result.report, out_dir / "peaks.csv")

    conventional = Spectrum.load(paths["conventional_spectrum"]) if args.conventional else None
    comb = [h.offset for h in bundles.comb_from_manifest(read_json(manifest))]
    plot_spectrum(Spectrum.load(paths["spectrum"]), comb, out_dir / "spectrum.svg", conventional=conventional)
    return EXIT_OK if result.matches else EXIT_MISMATCH


def cmd_noise(args: argparse.Namespace) -> int:
    trials = bundles.noise_trials(args.bundle, args.sigma_rel, range(args.trials), transients=args.transients)
    fraction = bundles.recovery_fraction(trials)
    print(trials.to_string(index=False))
    print(f"Full recovery in {fraction:.0%} of {len(trials)} seeds (sigma_rel={args.sigma_rel:g})")
    return EXIT_OK if fraction >= args.min_fraction else EXIT_MISMATCH


# -------------------------------------------------------------
# 3) ENTRY POINT
# -------------------------------------------------------------
def _log_dir() -> Optional[Path]:
    try:
        return get_settings().LOGS["logs_dir"]
    except RuntimeError:
        return None


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level, log_dir=_log_dir())
    try:
        return args.func(args)
    except (SpinMemoryError, ValueError, OSError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
