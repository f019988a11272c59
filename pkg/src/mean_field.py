# src/mean_field.py
"""Hartree-Fock solutions of the two- and three-level Lipkin models.

The HF determinant occupies one rotated orbital per p, so the energy per
particle depends only on the first row u of the orbital rotation:

    two-level:   e(phi)       = -1/2 [cos phi + chi/2 sin^2 phi]
    three-level: e(alpha,beta) = R - P - chi (PQ + PR + QR),
                 P, Q, R = u0^2, u1^2, u2^2,  u = (c_a, c_b s_a, s_b s_a)

and E_HF = N eps e. Both are minimized in squared-trig coordinates (cos phi;
sin^2 alpha, sin^2 beta), where they are polynomials on the unit box, and
polished by projected Newton steps. The closed-form angles are kept as a check.
"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np
from scipy import optimize

import config
from models.lipkin_params import LipkinModel, ModelParams
from src.errors import InvalidParametersError, MeanFieldError, VariationalBoundError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HFSolution:
    model: LipkinModel
    chi: float
    angles: Tuple[float, ...]
    energy: float
    rotation: np.ndarray
    density_block: np.ndarray
    closed_form_deviation: float = 0.0

    @property
    def occupations(self) -> np.ndarray:
        """Level occupations per p in the original basis"""
        return np.diag(self.density_block).copy()


# ---------------------------------------------------------------- closed forms

def hf_angles_closed_form(model: LipkinModel, chi: float) -> Tuple[float, ...]:
    """phi (two-level) or (alpha, beta) (three-level) from the piecewise cosines, symmetric branch at the boundaries"""
    if chi < 0:
        raise InvalidParametersError(f"chi must be non-negative, got {chi}")
    if model is LipkinModel.TWO_LEVEL:
        return (float(np.arccos(1.0 / chi)) if chi > 1 else 0.0,)
    if chi <= 1:
        return 0.0, 0.0
    if chi <= 3:
        return float(np.arccos(np.sqrt(0.5 * (1 + 1 / chi)))), 0.0
    cos2_alpha = (chi + 3) / (3 * chi)
    cos2_beta = chi / (2 * chi - 3)
    return float(np.arccos(np.sqrt(cos2_alpha))), float(np.arccos(np.sqrt(cos2_beta)))


def hf_energy_closed_form(model: LipkinModel, chi: float, n_particles: int, epsilon: float = 1.0) -> float:
    if chi < 0:
        raise InvalidParametersError(f"chi must be non-negative, got {chi}")
    scale = n_particles * epsilon
    if model is LipkinModel.TWO_LEVEL:
        return -0.5 * scale if chi <= 1 else -0.25 * scale * (chi + 1 / chi)
    if chi <= 1:
        return -scale
    if chi <= 3:
        return -scale * (chi + 1) ** 2 / (4 * chi)
    return -scale * (chi / 3 + 1 / chi)


# ---------------------------------------------------------------- functionals

def two_level_energy_per_particle(phi: float, chi: float) -> float:
    return float(-0.5 * (np.cos(phi) + 0.5 * chi * np.sin(phi) ** 2))


# The minimizers work in squared-trig coordinates, where both functionals are
# low-order polynomials on the unit box:
#   two-level:   c = cos phi,                       e = -1/2 [c + chi/2 (1 - c^2)]
#   three-level: x = sin^2 alpha, y = sin^2 beta,   P = 1 - x, Q = x (1 - y), R = x y

def _two_level_energy_cos(c: np.ndarray, chi: float) -> float:
    return float(-0.5 * (c[0] + 0.5 * chi * (1 - c[0] ** 2)))


def _two_level_gradient_cos(c: np.ndarray, chi: float) -> np.ndarray:
    return np.array([0.5 * (chi * c[0] - 1)])


def _two_level_hessian_cos(c: np.ndarray, chi: float) -> np.ndarray:
    return np.array([[0.5 * chi]])


def _three_level_weights(alpha: float, beta: float) -> Tuple[float, float, float]:
    sa2 = np.sin(alpha) ** 2
    return np.cos(alpha) ** 2, sa2 * np.cos(beta) ** 2, sa2 * np.sin(beta) ** 2


def three_level_energy_per_particle(alpha: float, beta: float, chi: float) -> float:
    p, q, r = _three_level_weights(alpha, beta)
    return float(r - p - chi * (p * q + p * r + q * r))


def _three_level_energy_sin2(w: np.ndarray, chi: float) -> float:
    x, y = w
    return float(x * y - 1 + x - chi * ((1 - x) * x + x * x * y * (1 - y)))


def _three_level_gradient_sin2(w: np.ndarray, chi: float) -> np.ndarray:
    x, y = w
    d_x = y + 1 - chi * (1 - 2 * x + 2 * x * y * (1 - y))
    d_y = x - chi * x * x * (1 - 2 * y)
    return np.array([d_x, d_y])


def _three_level_hessian_sin2(w: np.ndarray, chi: float) -> np.ndarray:
    x, y = w
    d_xx = 2 * chi * (1 - y * (1 - y))
    d_xy = 1 - 2 * chi * x * (1 - 2 * y)
    d_yy = 2 * chi * x * x
    return np.array([[d_xx, d_xy], [d_xy, d_yy]])


def _projected_gradient(point: np.ndarray, gradient: np.ndarray) -> np.ndarray:
    """Gradient with the components pushing out of [0, 1] zeroed"""
    projected = gradient.copy()
    projected[(point <= 0) & (gradient >= 0)] = 0.0
    projected[(point >= 1) & (gradient <= 0)] = 0.0
    return projected


def _polish(jac: Callable, hess: Callable, start: np.ndarray) -> np.ndarray:
    """Projected Newton steps on [0, 1]^n with exact derivatives.

    Coordinates resting on a bound with the gradient pointing outward stay
    pinned. A step is kept while it lowers the projected gradient norm and the
    free block of the Hessian is positive definite.
    """
    point = np.clip(np.asarray(start, dtype=float), 0.0, 1.0)
    residual = np.linalg.norm(_projected_gradient(point, jac(point)))
    for _ in range(config.HF_NEWTON_STEPS):
        if residual <= config.HF_GRADIENT_TOL:
            break
        gradient = jac(point)
        free = _projected_gradient(point, gradient) != 0
        block = hess(point)[np.ix_(free, free)]
        if np.any(np.linalg.eigvalsh(block) <= 0):
            break
        trial = point.copy()
        trial[free] = np.clip(point[free] - np.linalg.solve(block, gradient[free]), 0.0, 1.0)
        trial_residual = np.linalg.norm(_projected_gradient(trial, jac(trial)))
        if not np.all(np.isfinite(trial)) or trial_residual >= residual:
            break
        point, residual = trial, trial_residual
    return point


# ---------------------------------------------------------------- densities

def two_level_rotation(phi: float) -> np.ndarray:
    half = 0.5 * phi
    return np.array([[np.cos(half), -np.sin(half)], [np.sin(half), np.cos(half)]])


def three_level_rotation(alpha: float, beta: float) -> np.ndarray:
    """Orbital rotation U(alpha, beta); row 0 is the occupied HF orbital"""
    ca, sa, cb, sb = np.cos(alpha), np.sin(alpha), np.cos(beta), np.sin(beta)
    return np.array([
        [ca, cb * sa, sb * sa],
        [-cb * sa, 1 + cb ** 2 * (ca - 1), sb * cb * (ca - 1)],
        [-sb * sa, sb * cb * (ca - 1), 1 + sb ** 2 * (ca - 1)],
    ])


def _density_from_rotation(rotation: np.ndarray) -> np.ndarray:
    occupied = rotation[0]
    return np.outer(occupied, occupied)


# ---------------------------------------------------------------- solvers

def _require_chi(params: ModelParams, expected: LipkinModel):
    if params.n_particles < 2:
        raise InvalidParametersError(f"Hartree-Fock needs N >= 2 for chi to be defined, got N={params.n_particles}")
    if params.model is not expected:
        raise InvalidParametersError(f"parameters are for the {params.model.value}-level model, "
                                     f"expected {expected.value}-level")


def _report_deviation(model: LipkinModel, chi: float, deviation: float):
    if deviation > config.HF_CLOSED_FORM_FATAL_TOL:
        raise MeanFieldError(f"{model.value}-level HF minimum off the closed-form angles by {deviation:.3e} at chi={chi:.6g}")
    if deviation > config.HF_CLOSED_FORM_TOL:
        logger.warning("⚠️ %s-level HF angles deviate from closed form by %.2e at chi=%.6g",
                       model.value, deviation, chi)


def hf_two_level(params: ModelParams) -> HFSolution:
    _require_chi(params, LipkinModel.TWO_LEVEL)
    chi = params.chi

    bracketed = optimize.minimize_scalar(lambda c: _two_level_energy_cos(np.array([c]), chi),
                                         bounds=(0.0, 1.0), method="bounded",
                                         options={"xatol": 1e-12})
    if not np.isfinite(bracketed.x):
        raise MeanFieldError(f"two-level HF minimization failed at chi={chi:.6g}")
    cos_phi = _polish(lambda c: _two_level_gradient_cos(c, chi),
                      lambda c: _two_level_hessian_cos(c, chi),
                      np.array([bracketed.x]))[0]
    phi = float(np.arccos(cos_phi))

    best = two_level_energy_per_particle(phi, chi)
    if two_level_energy_per_particle(0.0, chi) <= best + config.HF_SYMMETRIC_BRANCH_TOL * abs(best):
        phi, cos_phi = 0.0, 1.0

    deviation = abs(cos_phi - min(1.0, 1.0 / chi)) if chi > 0 else abs(cos_phi - 1.0)
    _report_deviation(LipkinModel.TWO_LEVEL, chi, float(deviation))

    rotation = two_level_rotation(phi)
    energy = params.n_particles * params.epsilon * two_level_energy_per_particle(phi, chi)
    logger.debug("HF two-level chi=%.6g: phi=%.12g, E=%.12g", chi, phi, energy)
    return HFSolution(LipkinModel.TWO_LEVEL, chi, (phi,), energy, rotation,
                      _density_from_rotation(rotation), float(deviation))


def _three_level_starts(chi: float) -> List[np.ndarray]:
    side = max(1, int(round(np.sqrt(config.HF_MULTISTART))))
    grid = (np.arange(side) + 0.5) / side
    starts = [np.array([x0, y0]) for x0 in grid for y0 in grid]
    # the deformed minimum leaves x = 0 (chi -> 1+) and y = 0 (chi -> 3+) continuously
    starts += [np.array([1e-3, 0.0]), np.array([1e-3, 1e-3]), np.array([0.5, 1e-3])]
    cos2_alpha, cos2_beta = _cos2_closed_form(chi)
    starts.append(np.array([1 - cos2_alpha, 1 - cos2_beta]))
    return starts


def hf_three_level(params: ModelParams) -> HFSolution:
    _require_chi(params, LipkinModel.THREE_LEVEL)
    chi = params.chi

    def fun(w):
        return _three_level_energy_sin2(w, chi)

    def jac(w):
        return _three_level_gradient_sin2(w, chi)

    candidates = []
    for start in _three_level_starts(chi):
        result = optimize.minimize(fun, start, jac=jac, method="L-BFGS-B", bounds=[(0.0, 1.0)] * 2,
                                   options={"ftol": config.HF_LBFGS_FTOL, "gtol": config.HF_GRADIENT_TOL,
                                            "maxiter": 500})
        if np.all(np.isfinite(result.x)):
            point = _polish(jac, lambda w: _three_level_hessian_sin2(w, chi), result.x)
            candidates.append((fun(point), point))
    if not candidates:
        raise MeanFieldError(f"three-level HF minimization failed at chi={chi:.6g}")

    x, y = min(candidates, key=lambda item: item[0])[1]
    if x <= 0:
        y = 0.0
    alpha, beta = float(np.arcsin(np.sqrt(x))), float(np.arcsin(np.sqrt(y)))

    best = three_level_energy_per_particle(alpha, beta, chi)
    window = config.HF_SYMMETRIC_BRANCH_TOL * abs(best)
    if three_level_energy_per_particle(0.0, 0.0, chi) <= best + window:
        alpha, beta, x, y = 0.0, 0.0, 0.0, 0.0
    elif three_level_energy_per_particle(alpha, 0.0, chi) <= best + window:
        beta, y = 0.0, 0.0

    closed = _cos2_closed_form(chi)
    deviation = max(abs((1 - x) - closed[0]), abs((1 - y) - closed[1]))
    _report_deviation(LipkinModel.THREE_LEVEL, chi, float(deviation))

    rotation = three_level_rotation(alpha, beta)
    energy = params.n_particles * params.epsilon * three_level_energy_per_particle(alpha, beta, chi)
    logger.debug("HF three-level chi=%.6g: alpha=%.12g, beta=%.12g, E=%.12g", chi, alpha, beta, energy)
    return HFSolution(LipkinModel.THREE_LEVEL, chi, (alpha, beta), energy, rotation,
                      _density_from_rotation(rotation), float(deviation))


def _cos2_closed_form(chi: float) -> Tuple[float, float]:
    if chi <= 1:
        return 1.0, 1.0
    if chi <= 3:
        return 0.5 * (1 + 1 / chi), 1.0
    return (chi + 3) / (3 * chi), chi / (2 * chi - 3)


def hartree_fock(params: ModelParams) -> HFSolution:
    if params.model is LipkinModel.TWO_LEVEL:
        return hf_two_level(params)
    return hf_three_level(params)


def relative_correlation_energy(e_exact: float, e_hf: float) -> float:
    """(E_exact - E_HF) / E_exact, non-negative when the variational bound holds"""
    if e_exact == 0:
        raise InvalidParametersError("relative correlation energy undefined for E_exact = 0")
    scale = abs(e_exact)
    if e_exact - e_hf > config.VARIATIONAL_TOL * scale:
        raise VariationalBoundError(f"E_exact = {e_exact:.15g} lies above E_HF = {e_hf:.15g}")
    return max((e_exact - e_hf) / e_exact, 0.0)
