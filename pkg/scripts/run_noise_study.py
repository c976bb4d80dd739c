# run_noise_study.py

import argparse
from pathlib import Path

from spin_cluster_memory.core.logger import configure_logging
from spin_cluster_memory.core.registry import get_settings
from spin_cluster_memory.pipeline import RunConfig, noise_sweep, write_bundle
from spin_cluster_memory.utils.io_utils import write_csv
from spin_cluster_memory.viz.plots import plot_recovery


def run_noise_study(payload: str, sigma_rels, trials: int, transients: int):
    """
    Write a bundle for ``payload`` (bits), then sweep the acquisition noise
    level and record how often all bits survive.
    """
    # -----------------------------
    # Paths
    # -----------------------------
    settings = get_settings()
    run_dir = settings.DATA["runs_dir"] / "noise_study"
    report_dir = Path(settings.REPORTS["reports_dir"])
    plots_dir = Path(settings.REPORTS["plots_dir"])

    # -----------------------------
    # Bundle
    # -----------------------------
    print(f"Writing bundle for {payload} to {run_dir}...")
    write_bundle(RunConfig(payload_kind="bits", payload=payload), run_dir)

    # -----------------------------
    # Sweep
    # -----------------------------
    print(f"Sweeping sigma_rel over {list(sigma_rels)} ({trials} seeds, {transients} transients)...")
    sweep = noise_sweep(run_dir, sigma_rels, range(trials), transients=transients)
    print(sweep.to_string(index=False))

    # -----------------------------
    # Save
    # -----------------------------
    table = write_csv(sweep, report_dir / "noise_study.csv")
    plot = plot_recovery(sweep, plots_dir / "noise_study.png")
    print(f"\nTable saved to {table}\nPlot saved to {plot}")
    return sweep


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Bit recovery against acquisition noise.")
    parser.add_argument("--bits", default="101101001110")
    parser.add_argument("--sigma-rel", type=float, nargs="+", default=[0.05, 0.1, 0.2, 0.5, 1.0])
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--transients", type=int, default=512)
    args = parser.parse_args()

    configure_logging(log_dir=get_settings().LOGS["logs_dir"])
    run_noise_study(args.bits, args.sigma_rel, args.trials, args.transients)
