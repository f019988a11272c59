# src/transitions.py
"""Finite-difference curvature of eps_corr against S_ov and jump detection on it."""
import logging
from typing import List, NamedTuple, Sequence

import numpy as np

import config
from models.sweep_record import SweepRecord
from src.errors import SeriesError

logger = logging.getLogger(__name__)


class Transition(NamedTuple):
    chi: float
    jump: float


def second_derivative_series(x: Sequence[float], y: Sequence[float]) -> np.ndarray:
    """Three-point second differences on a nonuniform grid, endpoints dropped.

    d_i = 2 [(y_{i+1} - y_i) / h2 - (y_i - y_{i-1}) / h1] / (h1 + h2)
    with h1 = x_i - x_{i-1}, h2 = x_{i+1} - x_i. Exact for quadratics, and
    exactly zero on a constant series.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise SeriesError(f"x and y must be 1-d and of equal length, got {x.shape} and {y.shape}")
    if x.size < 5:
        raise SeriesError(f"need at least 5 points, got {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise SeriesError("series contains non-finite values")
    steps = np.diff(x)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        raise SeriesError("x must be strictly monotone")

    h1, h2 = steps[:-1], steps[1:]
    return 2.0 * ((y[2:] - y[1:-1]) / h2 - (y[1:-1] - y[:-2]) / h1) / (h1 + h2)


def find_jumps(values: Sequence[float]) -> List[tuple]:
    """(index, signed jump) of isolated jumps between neighbouring values.

    This is not the bare "TRANSITION_JUMP_FACTOR x median |difference|" rule:
    each |difference| is first detrended by a symmetric local baseline, the
    median over k = 2..TRANSITION_WINDOW of the mean of the |differences| k
    steps to either side, which removes any linear drift of the curvature.
    A difference counts when it exceeds that baseline by TRANSITION_JUMP_FACTOR
    times the series-wide median. Only differences with a full window on both
    sides are tested, so nothing within TRANSITION_WINDOW of either end of the
    series is reported. Flagged indices closer than the window are one jump,
    reported where |difference| peaks; the index i refers to the step between
    values[i] and values[i+1].
    """
    delta = np.diff(np.asarray(values, dtype=float))
    magnitude = np.abs(delta)
    window = config.TRANSITION_WINDOW
    if magnitude.size < 2 * window + 1 or not np.any(magnitude > 0):
        return []

    offsets = np.arange(2, window + 1)
    inner = np.arange(window, magnitude.size - window)
    baseline = np.median(0.5 * (magnitude[inner[:, None] - offsets] + magnitude[inner[:, None] + offsets]), axis=1)
    floor = config.TRANSITION_NOISE_FLOOR * magnitude.max()
    threshold = config.TRANSITION_JUMP_FACTOR * max(float(np.median(magnitude)), floor)
    flagged = inner[magnitude[inner] - baseline > threshold]
    if flagged.size == 0:
        return []

    clusters = np.split(flagged, np.flatnonzero(np.diff(flagged) > window) + 1)
    jumps = []
    for cluster in clusters:
        peak = int(cluster[np.argmax(magnitude[cluster])])
        jumps.append((peak, float(delta[peak])))
    return jumps


def detect_transitions(records: Sequence[SweepRecord]) -> List[Transition]:
    """Jumps of d^2 eps_corr / d S_ov^2 along one (model, N) sweep, located in chi"""
    if not records:
        return []
    keys = {(record.model, record.n_particles) for record in records}
    if len(keys) > 1:
        raise SeriesError(f"transition detection needs a single (model, N) series, got {sorted(keys)}")
    if len(records) < config.TRANSITION_MIN_POINTS:
        logger.warning("⚠️ Only %d grid points, at least %d needed for transition detection",
                       len(records), config.TRANSITION_MIN_POINTS)
        return []

    ordered = sorted(records, key=lambda record: record.chi)
    chi = np.array([record.chi for record in ordered])
    curvature = second_derivative_series([record.s_ov for record in ordered],
                                         [record.eps_corr for record in ordered])
    # curvature[k] sits at chi[k + 1]; a jump at k lies between chi[k + 1] and chi[k + 2]
    transitions = [Transition(chi=float(0.5 * (chi[k + 1] + chi[k + 2])), jump=jump)
                   for k, jump in find_jumps(curvature)]
    model, n = keys.pop()
    logger.info("🔎 %s-level N=%d: %d transition(s) at chi = %s", model.value, n, len(transitions),
                ", ".join(f"{t.chi:.4f}" for t in transitions) or "-")
    return transitions
