# src/spin_cluster_memory/viz/plots.py

import io
import json
import logging
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402
import seaborn as sns  # noqa: E402

from spin_cluster_memory.core.exceptions import FileFormatError, SpectrumError  # noqa: E402
from spin_cluster_memory.spectro.processing import Spectrum  # noqa: E402
from spin_cluster_memory.utils.io_utils import read_text, write_text_atomic  # noqa: E402

logger = logging.getLogger(__name__)

sns.set_theme(style="whitegrid")

DC_NAMESPACE = "http://purl.org/dc/elements/1.1/"
# fixed salt so element ids in the SVG do not change between runs
SVG_HASH_SALT = "spin-cluster-memory"


def _render_svg(fig, metadata: dict) -> str:
    buf = io.StringIO()
    with plt.rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "path"}):
        fig.savefig(buf, format="svg", metadata=metadata)
    return buf.getvalue()


# -------------------------------------------------------------
# 1) SPECTRUM
# -------------------------------------------------------------
def plot_spectrum(
    spec: Spectrum,
    comb_offsets: Sequence[float],
    save_path: Path,
    conventional: Optional[Spectrum] = None,
    title: str = "Stored comb spectrum",
) -> Path:
    """
    Plot the real part of a spectrum with every comb position marked.

    Parameters
    ----------
    spec : Spectrum
        Spectrum to draw (real part).
    comb_offsets : sequence of float
        Comb positions in Hz; line k gets the SVG id ``comb-k``.
    save_path : Path
        Destination SVG file. Nothing is written when the spectrum is empty.
    conventional : Spectrum, optional
        Hard-pulse spectrum drawn underneath, scaled to the same peak height.
    """
    if spec.freqs.size == 0:
        raise SpectrumError("cannot plot an empty spectrum")

    fig, ax = plt.subplots(figsize=(12, 5))
    real = spec.values.real
    if conventional is not None and conventional.freqs.size:
        conv = np.abs(conventional.values)
        scale = np.max(np.abs(real)) / np.max(conv) if np.max(conv) > 0 else 1.0
        ax.plot(conventional.freqs, conv * scale, color="grey", lw=0.8, alpha=0.6, label="conventional |S|")
    ax.plot(spec.freqs, real, color="tab:blue", lw=0.8, label="Re S(f)")

    for k, offset in enumerate(comb_offsets):
        line = ax.axvline(offset, color="tab:red", lw=0.5, ls=":", alpha=0.7)
        line.set_gid(f"comb-{k}")

    ax.set_xlabel("Frequency offset (Hz)")
    ax.set_ylabel("Re S(f) (a.u.)")
    ax.set_title(title)
    ax.legend(loc="upper right")
    fig.tight_layout()

    metadata = {
        "Date": None,
        "Title": title,
        "Description": json.dumps({"comb_offsets_hz": [float(o) for o in comb_offsets]}, sort_keys=True),
    }
    try:
        svg = _render_svg(fig, metadata)
    finally:
        plt.close(fig)

    out = write_text_atomic(save_path, svg)
    logger.info(f"[PLOT] Spectrum saved: {out}")
    return out


def read_plot_metadata(path: str | Path) -> dict:
    """Recover the JSON stored in an SVG's description metadata."""
    try:
        root = ET.fromstring(read_text(path).encode("utf-8"))
    except ET.ParseError as e:
        raise FileFormatError(f"{path} is not valid SVG: {e}") from e
    node = root.find(f".//{{{DC_NAMESPACE}}}description")
    if node is None or not node.text:
        raise FileFormatError(f"{path} carries no description metadata")
    return json.loads(node.text)


# -------------------------------------------------------------
# 2) NOISE STUDY
# -------------------------------------------------------------
def plot_recovery(sweep: pd.DataFrame, save_path: Optional[Path] = None):
    """
    Recovery fraction against relative noise level.

    ``sweep`` needs the columns sigma_rel and recovery_fraction (as returned
    by pipeline.noise_sweep).
    """
    missing = {"sigma_rel", "recovery_fraction"} - set(sweep.columns)
    if missing:
        raise ValueError(f"sweep table is missing columns: {sorted(missing)}")

    fig, ax = plt.subplots(figsize=(7, 4))
    sns.lineplot(data=sweep, x="sigma_rel", y="recovery_fraction", marker="o", ax=ax)
    ax.axhline(0.95, color="tab:red", lw=0.8, ls="--")
    ax.set_ylim(-0.05, 1.05)
    ax.set_xlabel("sigma / max|reference FID|")
    ax.set_ylabel("Seeds fully recovered")
    ax.set_title("Readout under acquisition noise")
    fig.tight_layout()

    if save_path:
        save_path = Path(save_path)
        save_path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(save_path, dpi=300)
        logger.info(f"[PLOT] Recovery curve saved: {save_path}")
    plt.close(fig)
    return save_path
