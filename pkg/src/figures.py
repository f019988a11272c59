# src/figures.py
"""Static SVG figures of sweep records (eps_corr, entropies, discord against chi or S_ov)."""
import logging
from collections import OrderedDict
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import matplotlib
import numpy as np

import config
from models.lipkin_params import LipkinModel, SweepConfig
from models.sweep_record import SweepRecord
from src.correlations import hf_discord_closed_form_two_level
from src.errors import FigureDataError
from src.transitions import second_derivative_series
from src.utils import resolve_output_path

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

logger = logging.getLogger(__name__)

plt.rcParams["svg.hashsalt"] = "lipkin"

FIGURE_MODELS = {
    "f1": LipkinModel.TWO_LEVEL, "f2": LipkinModel.TWO_LEVEL,
    "f3": LipkinModel.TWO_LEVEL, "f4": LipkinModel.TWO_LEVEL,
    "f5": LipkinModel.THREE_LEVEL, "f6": LipkinModel.THREE_LEVEL,
    "f7": LipkinModel.THREE_LEVEL, "f8": LipkinModel.THREE_LEVEL,
}

REQUIRED_COLUMNS = {
    "f1": ("n_particles", "s_ov", "eps_corr"),
    "f2": ("n_particles", "chi", "s_ov", "eps_corr"),
    "f3": ("n_particles", "chi", "s_ov_per_particle"),
    "f4": ("chi", "discord_01"),
    "f8": ("chi", "discord_01", "discord_02", "discord_12", "discord_sum"),
}
REQUIRED_COLUMNS.update({"f5": REQUIRED_COLUMNS["f1"], "f6": REQUIRED_COLUMNS["f2"],
                         "f7": REQUIRED_COLUMNS["f3"]})


def default_figure_config(figure_id: str, steps: Optional[int] = None,
                          output_path: Optional[str] = None) -> SweepConfig:
    """Sweep behind a figure command when no CSV is supplied"""
    model = _figure_model(figure_id)
    if model is LipkinModel.TWO_LEVEL:
        particles, (chi_min, chi_max) = config.FIGURE_PARTICLES_TWO, config.FIGURE_CHI_RANGE_TWO
    else:
        particles, (chi_min, chi_max) = config.FIGURE_PARTICLES_THREE, config.FIGURE_CHI_RANGE_THREE
    return SweepConfig(model=model, particles=list(particles), chi_min=chi_min, chi_max=chi_max,
                       steps=steps or config.DEFAULT_GRID_STEPS, output_path=output_path, figure_id=figure_id)


def _figure_model(figure_id: str) -> LipkinModel:
    if figure_id not in FIGURE_MODELS:
        raise FigureDataError(f"unknown figure id {figure_id!r}, expected one of {sorted(FIGURE_MODELS)}")
    return FIGURE_MODELS[figure_id]


def _by_particle_number(records: Sequence[SweepRecord]) -> Dict[int, List[SweepRecord]]:
    groups: Dict[int, List[SweepRecord]] = OrderedDict()
    for record in records:
        groups.setdefault(record.n_particles, []).append(record)
    return {n: sorted(rows, key=lambda r: r.chi) for n, rows in groups.items()}


def _check_records(figure_id: str, records: Sequence[SweepRecord]):
    model = _figure_model(figure_id)
    if not records:
        raise FigureDataError(f"figure {figure_id} needs sweep records, got none")
    wrong = {r.model.value for r in records if r.model is not model}
    if wrong:
        raise FigureDataError(f"figure {figure_id} plots the {model.value}-level model, got {sorted(wrong)} records")
    missing = [column for column in REQUIRED_COLUMNS[figure_id] if not hasattr(records[0], column)]
    if missing:
        raise FigureDataError(f"figure {figure_id} is missing columns {missing}")


def _plot_correlation_vs_entropy(ax, groups):
    for n, rows in groups.items():
        ax.plot([r.s_ov for r in rows], [r.eps_corr for r in rows], label=f"N = {n}")
    ax.set_xlabel(r"overall entropy $S_{ov}$")
    ax.set_ylabel(r"relative correlation energy $\epsilon_{corr}$")


def _plot_curvature(ax, groups):
    for n, rows in groups.items():
        if len(rows) < 5:
            logger.warning("⚠️ N=%d has %d points, too few for second differences", n, len(rows))
            continue
        s_ov = np.array([r.s_ov for r in rows])
        curvature = second_derivative_series(s_ov, [r.eps_corr for r in rows])
        ax.plot(s_ov[1:-1], curvature, label=f"N = {n}")
    ax.set_xlabel(r"overall entropy $S_{ov}$")
    ax.set_ylabel(r"$d^2\epsilon_{corr} / dS_{ov}^2$")


def _plot_entropy_per_particle(ax, groups):
    for n, rows in groups.items():
        ax.plot([r.chi for r in rows], [r.s_ov_per_particle for r in rows], label=f"N = {n}")
    ax.set_xlabel(r"interaction strength $\chi$")
    ax.set_ylabel(r"$S_{ov} / N$")


def _plot_two_level_discord(ax, groups):
    # the HF discord depends on chi only; one N is enough
    n, rows = next(iter(groups.items()))
    chi = np.array([r.chi for r in rows])
    ax.plot(chi, [r.discord_01 for r in rows], label=f"HF discord (N = {n})")
    ax.plot(chi, [hf_discord_closed_form_two_level(x) for x in chi], linestyle="--", color="gray",
            label=r"closed form $h(\chi)$")
    ax.set_xlabel(r"interaction strength $\chi$")
    ax.set_ylabel(r"$\delta(+,p;-,p)$")


def _plot_three_level_discord(ax, groups):
    n, rows = next(iter(groups.items()))
    chi = [r.chi for r in rows]
    ax.plot(chi, [r.discord_01 for r in rows], label=r"$\delta(0,p;1,p)$")
    ax.plot(chi, [r.discord_02 for r in rows], label=r"$\delta(0,p;2,p)$")
    ax.plot(chi, [r.discord_12 for r in rows], label=r"$\delta(1,p;2,p)$")
    ax.plot(chi, [r.discord_sum for r in rows], color="black", label="sum")
    ax.set_xlabel(r"interaction strength $\chi$")
    ax.set_ylabel("HF quantum discord")


_PLOTTERS = {
    "f1": (_plot_correlation_vs_entropy, "Two-level: correlation energy vs overall entropy"),
    "f2": (_plot_curvature, "Two-level: second derivative of the correlation energy"),
    "f3": (_plot_entropy_per_particle, "Two-level: overall entropy per particle"),
    "f4": (_plot_two_level_discord, "Two-level: HF quantum discord"),
    "f5": (_plot_correlation_vs_entropy, "Three-level: correlation energy vs overall entropy"),
    "f6": (_plot_curvature, "Three-level: second derivative of the correlation energy"),
    "f7": (_plot_entropy_per_particle, "Three-level: overall entropy per particle"),
    "f8": (_plot_three_level_discord, "Three-level: HF quantum discord per level pair"),
}


def emit_figure(figure_id: str, records: Sequence[SweepRecord], output_path: str) -> Path:
    """Draws one figure from sweep records and saves it as SVG"""
    _check_records(figure_id, records)
    plotter, title = _PLOTTERS[figure_id]
    groups = _by_particle_number(records)

    fig, ax = plt.subplots(figsize=(7, 5))
    try:
        plotter(ax, groups)
        ax.set_title(title)
        ax.grid(alpha=0.3)
        ax.legend()
        path = resolve_output_path(output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format="svg", bbox_inches="tight", metadata={"Date": None})
    finally:
        plt.close(fig)

    logger.info("🖼️ Figure %s saved to '%s'", figure_id, path)
    return path
