# src/correlations.py
"""Entropies, two-mode reduced states, mutual information and quantum discord.

All logarithms are natural. Two-mode states use the pair-occupation basis
{|00>, |10>, |01>, |11>} with the first digit for mode A and the coherence
<10|rho|01> = <c^dag_B c_A>.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import numpy as np
from scipy import optimize
from scipy.special import entr

import config
from models.lipkin_params import LipkinModel
from src.errors import InvalidParametersError, NonPhysicalStateError
from src.mean_field import HFSolution
from src.quasispin import GroundState, expectation_k

logger = logging.getLogger(__name__)

LEVEL_PAIRS = ("01", "02", "12")

# pair-occupation basis -> A (x) B tensor order
_TENSOR_ORDER = np.array([0, 2, 1, 3])


class MeasurementSet(str, Enum):
    """Von Neumann measurements allowed on mode B"""
    UNRESTRICTED = "unrestricted"
    SSR_RESTRICTED = "ssr"


@dataclass(frozen=True)
class OneBodyDensityBlock:
    """gamma_ij = <c^dag_j c_i> for one p; the full matrix is N copies of it"""
    matrix: np.ndarray
    multiplicity: int

    def __post_init__(self):
        matrix = self.matrix
        if matrix.shape not in ((2, 2), (3, 3)):
            raise NonPhysicalStateError(f"one-body block must be 2x2 or 3x3, got {matrix.shape}")
        if np.max(np.abs(matrix - matrix.conj().T)) > config.STATE_TOL:
            raise NonPhysicalStateError("one-body block is not Hermitian")
        if abs(np.trace(matrix).real - 1.0) > config.STATE_TOL:
            raise NonPhysicalStateError(f"one-body block trace {np.trace(matrix).real:.12g} != 1")
        eigenvalues = np.linalg.eigvalsh(matrix)
        if eigenvalues[0] < -config.STATE_TOL or eigenvalues[-1] > 1 + config.STATE_TOL:
            raise NonPhysicalStateError(f"natural occupations {eigenvalues} outside [0, 1]")


@dataclass(frozen=True)
class EntropyReport:
    overall_entropy: float
    overall_entropy_per_particle: float
    one_body_entropy: float
    natural_occupations: List[float]


@dataclass(frozen=True)
class TwoModeState:
    rho: np.ndarray
    modes: Tuple[str, str] = ("A", "B")

    def __post_init__(self):
        if self.rho.shape != (4, 4):
            raise NonPhysicalStateError(f"two-mode state must be 4x4, got {self.rho.shape}")
        if np.max(np.abs(self.rho - self.rho.conj().T)) > config.STATE_TOL:
            raise NonPhysicalStateError("two-mode state is not Hermitian")
        if abs(np.trace(self.rho).real - 1.0) > config.STATE_TOL:
            raise NonPhysicalStateError(f"two-mode state trace {np.trace(self.rho).real:.12g} != 1")


# ---------------------------------------------------------------- entropy functions

def binary_entropy(x) -> np.ndarray:
    """f(x) = -(1 - x) ln(1 - x) - x ln x, zero at both ends"""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    return entr(x) + entr(1.0 - x)


def shannon_term(x) -> np.ndarray:
    """g(x) = -x ln x"""
    return entr(np.clip(np.asarray(x, dtype=float), 0.0, None))


def von_neumann_entropy(rho: np.ndarray) -> float:
    eigenvalues = np.linalg.eigvalsh(rho)
    return float(np.sum(entr(np.clip(eigenvalues, 0.0, None))))


# ---------------------------------------------------------------- one-body density

def exact_one_body_density(gs: GroundState) -> OneBodyDensityBlock:
    """Per-p block of the exact ground state from collective expectation values"""
    n = gs.basis.n_particles
    if gs.basis.model is LipkinModel.TWO_LEVEL:
        k0 = expectation_k(gs, "K0") / n
        kp = expectation_k(gs, "K+") / n
        matrix = np.array([[0.5 - k0, kp], [kp, 0.5 + k0]])
    else:
        matrix = np.array([[expectation_k(gs, f"K{j}{i}") / n for j in range(3)] for i in range(3)])
    return OneBodyDensityBlock(matrix, n)


def hf_one_body_density(hf: HFSolution, n_particles: int) -> OneBodyDensityBlock:
    return OneBodyDensityBlock(hf.density_block, n_particles)


def natural_occupations(block: OneBodyDensityBlock) -> List[float]:
    """Eigenvalues of the block, descending"""
    eigenvalues = np.clip(np.linalg.eigvalsh(block.matrix), 0.0, 1.0)
    return [float(x) for x in eigenvalues[::-1]]


def entropies(block: OneBodyDensityBlock) -> EntropyReport:
    occupations = natural_occupations(block)
    n = block.multiplicity
    overall = n * float(np.sum(binary_entropy(occupations)))
    return EntropyReport(overall_entropy=overall,
                         overall_entropy_per_particle=overall / n,
                         one_body_entropy=n * float(np.sum(shannon_term(occupations))),
                         natural_occupations=occupations)


def overall_entropy_original_basis(block: OneBodyDensityBlock) -> float:
    """Overall entropy from the diagonal of gamma in the original orbitals"""
    return block.multiplicity * float(np.sum(binary_entropy(np.real(np.diag(block.matrix)))))


# ---------------------------------------------------------------- two-mode states

def two_mode_state_from_correlators(n_a: float, n_b: float, n_ab: float, coh: complex,
                                    modes: Tuple[str, str] = ("A", "B")) -> TwoModeState:
    """Pair reduced state from <n_A>, <n_B>, <n_A n_B> and <c^dag_B c_A>"""
    probabilities = np.array([1.0 - n_a - n_b + n_ab, n_a - n_ab, n_b - n_ab, n_ab])
    if np.any(probabilities < -config.STATE_TOL):
        raise NonPhysicalStateError(f"negative occupation probabilities {probabilities} for modes {modes}")
    if abs(coh) ** 2 > probabilities[1] * probabilities[2] + config.STATE_TOL:
        raise NonPhysicalStateError(f"|coherence|^2 = {abs(coh) ** 2:.3e} exceeds p10 * p01 for modes {modes}")
    rho = np.diag(probabilities).astype(complex)
    rho[1, 2] = coh
    rho[2, 1] = np.conj(coh)
    return TwoModeState(rho, modes)


def _pair_indices(model: LipkinModel, pair: str) -> Tuple[int, int]:
    allowed = ("01",) if model is LipkinModel.TWO_LEVEL else LEVEL_PAIRS
    if pair not in allowed:
        raise InvalidParametersError(f"pair {pair!r} not available for the {model.value}-level model, use {allowed}")
    return int(pair[0]), int(pair[1])


def hf_pair_state(hf: HFSolution, pair: str = "01") -> TwoModeState:
    """Two modes (a, p), (b, p) of the HF determinant, two-body part by Wick factorization"""
    a, b = _pair_indices(hf.model, pair)
    gamma = hf.density_block
    n_ab = max(gamma[a, a] * gamma[b, b] - abs(gamma[a, b]) ** 2, 0.0)
    return two_mode_state_from_correlators(gamma[a, a], gamma[b, b], n_ab, gamma[a, b], (pair[0], pair[1]))


def exact_pair_state(gs: GroundState, pair: str = "01") -> TwoModeState:
    """Two modes of one p in the exact ground state; each p holds exactly one particle"""
    a, b = _pair_indices(gs.basis.model, pair)
    gamma = exact_one_body_density(gs).matrix
    return two_mode_state_from_correlators(gamma[a, a], gamma[b, b], 0.0, gamma[a, b], (pair[0], pair[1]))


def _tensor(state: TwoModeState) -> np.ndarray:
    """rho as rho[a, b, a', b']"""
    ordered = state.rho[np.ix_(_TENSOR_ORDER, _TENSOR_ORDER)]
    return ordered.reshape(2, 2, 2, 2)


def reduced_mode_states(state: TwoModeState) -> Tuple[np.ndarray, np.ndarray]:
    tensor = _tensor(state)
    return np.einsum("ijkj->ik", tensor), np.einsum("ijil->jl", tensor)


def purity(state: TwoModeState) -> float:
    return float(np.real(np.trace(state.rho @ state.rho)))


def mutual_information(state: TwoModeState) -> float:
    rho_a, rho_b = reduced_mode_states(state)
    value = von_neumann_entropy(rho_a) + von_neumann_entropy(rho_b) - von_neumann_entropy(state.rho)
    return max(value, 0.0)


# ---------------------------------------------------------------- discord

def _measurement_vectors(theta: np.ndarray, mu: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    phase = np.exp(1j * mu)
    v0 = np.stack([np.cos(theta) + 0j, phase * np.sin(theta)], axis=-1)
    v1 = np.stack([-np.conj(phase) * np.sin(theta), np.cos(theta) + 0j], axis=-1)
    return v0, v1


def _conditional_entropy(tensor: np.ndarray, theta: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """sum_k p_k S(rho_A^k) for measurements on B, vectorized over (theta, mu)"""
    total = np.zeros(np.shape(theta))
    for vector in _measurement_vectors(np.asarray(theta, dtype=float), np.asarray(mu, dtype=float)):
        conditioned = np.einsum("...b,abcd,...d->...ac", vector.conj(), tensor, vector)
        probability = np.real(np.trace(conditioned, axis1=-2, axis2=-1))
        eigenvalues = np.clip(np.linalg.eigvalsh(conditioned), 0.0, None)
        safe = np.where(probability > np.finfo(float).tiny, probability, 1.0)
        normalized = eigenvalues / safe[..., None]
        total = total + np.where(probability > np.finfo(float).tiny,
                                 probability * np.sum(entr(normalized), axis=-1), 0.0)
    return total


def _minimal_conditional_entropy(state: TwoModeState, measurement_set: MeasurementSet) -> float:
    tensor = _tensor(state)
    if measurement_set is MeasurementSet.SSR_RESTRICTED:
        return float(_conditional_entropy(tensor, np.array(0.0), np.array(0.0)))

    theta, mu = np.meshgrid(np.linspace(0.0, 0.5 * np.pi, config.DISCORD_GRID),
                            np.linspace(0.0, 2 * np.pi, config.DISCORD_GRID, endpoint=False), indexing="ij")
    values = _conditional_entropy(tensor, theta, mu).ravel()
    # stable sort keeps ties at the smallest theta, then smallest mu
    order = np.argsort(values, kind="stable")[:config.DISCORD_REFINE_STARTS]
    best = float(values[order[0]])
    for index in order:
        result = optimize.minimize(lambda x: float(_conditional_entropy(tensor, np.array(x[0]), np.array(x[1]))),
                                   np.array([theta.ravel()[index], mu.ravel()[index]]), method="Nelder-Mead",
                                   options={"xatol": config.DISCORD_REFINE_TOL, "fatol": 1e-15, "maxiter": 2000})
        best = min(best, float(result.fun))
    return best


def classical_correlation(state: TwoModeState,
                          measurement_set: MeasurementSet = MeasurementSet.SSR_RESTRICTED) -> float:
    """J = S(rho_A) - min over measurements on B of the conditional entropy"""
    rho_a, _ = reduced_mode_states(state)
    return von_neumann_entropy(rho_a) - _minimal_conditional_entropy(state, measurement_set)


def quantum_discord(state: TwoModeState,
                    measurement_set: MeasurementSet = MeasurementSet.SSR_RESTRICTED) -> float:
    information = mutual_information(state)
    discord = information - classical_correlation(state, measurement_set)
    if discord < -config.NEGATIVE_CLAMP_TOL:
        logger.warning("⚠️ Negative discord %.3e clamped to zero (%s measurements)", discord, measurement_set.value)
    return float(min(max(discord, 0.0), information))


# ---------------------------------------------------------------- closed forms

def _s(x: float) -> float:
    return float(shannon_term(x))


def h_function(x: float) -> float:
    """h(x) = -1/2 (1 - 1/x) ln[1/2 (1 - 1/x)] - 1/2 (1 + 1/x) ln[1/2 (1 + 1/x)]"""
    if x <= 0:
        raise InvalidParametersError(f"h(x) needs x > 0, got {x}")
    return _s(0.5 * (1 - 1 / x)) + _s(0.5 * (1 + 1 / x))


def hf_discord_closed_form_two_level(chi: float) -> float:
    if chi < 0:
        raise InvalidParametersError(f"chi must be non-negative, got {chi}")
    return 0.0 if chi <= 1 else h_function(chi)


def hf_discord_closed_form_three_level(chi: float, pair: str) -> float:
    if chi < 0:
        raise InvalidParametersError(f"chi must be non-negative, got {chi}")
    if pair not in LEVEL_PAIRS:
        raise InvalidParametersError(f"pair must be one of {LEVEL_PAIRS}, got {pair!r}")
    if pair == "01":
        if chi <= 1:
            return 0.0
        if chi <= 3:
            return _s(0.5 * (1 + 1 / chi)) + _s(0.5 * (1 - 1 / chi))
        return -_s(2 / 3 + 1 / chi) + _s(1 / 3 + 1 / chi) + _s(1 / 3)
    if chi <= 3:
        return 0.0
    if pair == "02":
        return _s(1 / 3 + 1 / chi) + _s(1 / 3 - 1 / chi) - _s(2 / 3)
    return -_s(2 / 3 - 1 / chi) + _s(1 / 3 - 1 / chi) + _s(1 / 3)


def hf_discord_closed_form(model: LipkinModel, chi: float, pair: str = "01") -> float:
    if model is LipkinModel.TWO_LEVEL:
        _pair_indices(model, pair)
        return hf_discord_closed_form_two_level(chi)
    return hf_discord_closed_form_three_level(chi, pair)

