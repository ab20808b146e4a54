"""Matplotlib rendering of run records, written next to the delimited output."""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .sweeps import ANGLE_AXIS, SCHEMA_BEAM_SWEEP, SCHEMA_FRAUNHOFER, SCHEMA_SCHEDULE


def figure_path(out_path) -> Path:
    return Path(out_path).with_suffix(".png")


def render_beam_sweep(record: dict, path) -> Path:
    rows = np.asarray(record["rows"], dtype=float)
    axis = record["sweep"]["axis"]
    xlabel = "angle off broadside [deg]" if axis == ANGLE_AXIS else "distance on Z-axis [m]"
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(rows[:, 0], rows[:, 4], label="near field")
    ax.plot(rows[:, 0], rows[:, 5], "--", label="far field")
    focus = record["sweep"]["focus_m"]
    ax.set_xlabel(xlabel)
    ax.set_ylabel("normalized received power [dB]")
    ax.set_title(f"MF beam power, focus at ({focus[0]:g}, {focus[1]:g}, {focus[2]:g}) m")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_schedule(record: dict, path) -> Path:
    distance = np.asarray(record["profiles"]["distance_m"], dtype=float)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for idx in record["selected_indices"]:
        z = record["users"]["positions_m"][idx][2]
        power = np.asarray(record["profiles"]["power_db"][str(idx)], dtype=float)
        (line,) = ax.plot(distance, power, label=f"user {idx} @ {z:.3g} m")
        ax.axvline(z, color=line.get_color(), alpha=0.25, linewidth=0.8)
    ax.set_xlabel("distance on Z-axis [m]")
    ax.set_ylabel("normalized received power [dB]")
    ax.set_title(f"selected users, SIR threshold {record['gamma_db']:g} dB")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_fraunhofer(record: dict, path) -> Path:
    gaps = record["gaps"]
    fractions = [g["fraction"] for g in gaps]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(fractions, [g["max_gap_db"] for g in gaps], "o-", label="max over arc")
    ax.plot(fractions, [g["main_lobe_gap_db"] for g in gaps], "s--", label="max over main lobe")
    ax.set_xscale("log")
    ax.set_xlabel("distance / Fraunhofer distance")
    ax.set_ylabel("near/far model gap [dB]")
    ax.set_title(f"model gap vs distance (Fraunhofer = {record['fraunhofer_m']:.1f} m)")
    ax.grid(True, alpha=0.3, which="both")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


_RENDERERS = {
    SCHEMA_BEAM_SWEEP: render_beam_sweep,
    SCHEMA_SCHEDULE: render_schedule,
    SCHEMA_FRAUNHOFER: render_fraunhofer,
}


def render(record: dict, path) -> Path:
    return _RENDERERS[record["schema"]](record, path)
