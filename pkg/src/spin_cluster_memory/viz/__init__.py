"""Plots of stored spectra and noise studies."""

from spin_cluster_memory.viz.plots import plot_recovery, plot_spectrum, read_plot_metadata

__all__ = ["plot_recovery", "plot_spectrum", "read_plot_metadata"]
