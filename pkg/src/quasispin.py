# src/quasispin.py
"""Collective bases, Hamiltonian matrices and exact ground states of the Lipkin models.

Two-level states live in the J = N/2 irrep of SU(2) and are labelled by M
(ascending). Three-level states live in the symmetric SU(3) irrep, realized
with three bosonic modes, and are labelled by (n1, n2) in lexicographic order
with n0 = N - n1 - n2. Both orders are part of the contract: vectors are
exchanged between modules by position.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple, Union

import numpy as np
from scipy import linalg, sparse

import config
from models.lipkin_params import LipkinModel, ModelParams
from src.errors import GroundStateError, InvalidParametersError

logger = logging.getLogger(__name__)

Label = Union[float, Tuple[int, int]]

TWO_LEVEL_OPERATORS = ("K0", "K+", "K-")
THREE_LEVEL_OPERATORS = tuple(f"K{a}{b}" for a in range(3) for b in range(3))


@dataclass(frozen=True)
class CollectiveBasis:
    """Symmetric-irrep basis with its label -> index map"""
    model: LipkinModel
    n_particles: int
    labels: Tuple[Label, ...]
    index_of: Dict[Label, int] = field(repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class HamiltonianMatrix:
    basis: CollectiveBasis
    entries: np.ndarray
    params: ModelParams

    def __post_init__(self):
        scale = _scale(self.entries)
        asymmetry = float(np.max(np.abs(self.entries - self.entries.T))) if self.entries.size else 0.0
        if asymmetry > config.SYMMETRY_TOL * scale:
            raise GroundStateError(f"Hamiltonian not symmetric: max |H_ij - H_ji| = {asymmetry:.3e}")


@dataclass(frozen=True)
class GroundState:
    energy: float
    vector: np.ndarray
    basis: CollectiveBasis
    quasi_degenerate: bool = False


def _scale(matrix: np.ndarray) -> float:
    if matrix.size == 0:
        return 1.0
    return max(float(np.max(np.abs(matrix))), np.finfo(float).tiny)


def _three_level_occupations(basis: CollectiveBasis) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    n1 = np.array([label[0] for label in basis.labels], dtype=int)
    n2 = np.array([label[1] for label in basis.labels], dtype=int)
    return basis.n_particles - n1 - n2, n1, n2


def _three_level_index_table(basis: CollectiveBasis) -> np.ndarray:
    """table[n1, n2] -> basis index, -1 outside the simplex"""
    n = basis.n_particles
    table = -np.ones((n + 1, n + 1), dtype=int)
    for index, (n1, n2) in enumerate(basis.labels):
        table[n1, n2] = index
    return table


def build_two_level_basis(n_particles: int) -> CollectiveBasis:
    """|J = N/2, M>, M = -J .. J"""
    if n_particles < 1:
        raise InvalidParametersError(f"two-level basis needs N >= 1, got {n_particles}")
    j = n_particles / 2
    labels = tuple(-j + k for k in range(n_particles + 1))
    return CollectiveBasis(LipkinModel.TWO_LEVEL, n_particles, labels,
                           {label: i for i, label in enumerate(labels)})


def build_three_level_basis(n_particles: int) -> CollectiveBasis:
    """|n1, n2> with n0 = N - n1 - n2 >= 0, lexicographic in (n1, n2)"""
    if n_particles < 1:
        raise InvalidParametersError(f"three-level basis needs N >= 1, got {n_particles}")
    labels = tuple((n1, n2) for n1 in range(n_particles + 1) for n2 in range(n_particles + 1 - n1))
    return CollectiveBasis(LipkinModel.THREE_LEVEL, n_particles, labels,
                           {label: i for i, label in enumerate(labels)})


def build_basis(model: LipkinModel, n_particles: int) -> CollectiveBasis:
    if model is LipkinModel.TWO_LEVEL:
        return build_two_level_basis(n_particles)
    return build_three_level_basis(n_particles)


def parity_labels(basis: CollectiveBasis) -> np.ndarray:
    """Parity sector per basis state; sector 0 holds the ground state"""
    if basis.model is LipkinModel.TWO_LEVEL:
        j = basis.n_particles / 2
        return np.array([int(round(m + j)) % 2 for m in basis.labels], dtype=int)
    _, n1, n2 = _three_level_occupations(basis)
    return 2 * (n1 % 2) + (n2 % 2)


def collective_operator(basis: CollectiveBasis, label: str) -> sparse.csr_matrix:
    """Single-step collective operator (K0, K+, K- or K_ab = b_a^dag b_b) on the basis"""
    dim = basis.dimension
    if basis.model is LipkinModel.TWO_LEVEL:
        if label not in TWO_LEVEL_OPERATORS:
            raise InvalidParametersError(f"{label!r} is not a two-level operator {TWO_LEVEL_OPERATORS}")
        m = np.asarray(basis.labels, dtype=float)
        if label == "K0":
            return sparse.diags(m).tocsr()
        j = basis.n_particles / 2
        lower = np.arange(dim - 1)
        amplitudes = np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1))
        raising = sparse.coo_matrix((amplitudes, (lower + 1, lower)), shape=(dim, dim)).tocsr()
        return raising if label == "K+" else raising.T.tocsr()

    if label not in THREE_LEVEL_OPERATORS:
        raise InvalidParametersError(f"{label!r} is not a three-level operator K_ab with a, b in 0..2")
    a, b = int(label[1]), int(label[2])
    occupations = np.vstack(_three_level_occupations(basis))
    if a == b:
        return sparse.diags(occupations[a].astype(float)).tocsr()
    source = np.flatnonzero(occupations[b] > 0)
    moved = occupations[:, source].copy()
    amplitudes = np.sqrt(moved[b] * (moved[a] + 1.0))
    moved[b] -= 1
    moved[a] += 1
    target = _three_level_index_table(basis)[moved[1], moved[2]]
    return sparse.coo_matrix((amplitudes, (target, source)), shape=(dim, dim)).tocsr()


def _check_model(params: ModelParams, expected: LipkinModel):
    if params.model is not expected:
        raise InvalidParametersError(f"parameters are for the {params.model.value}-level model, "
                                     f"expected {expected.value}-level")


def build_two_level_hamiltonian(params: ModelParams) -> HamiltonianMatrix:
    """H = eps K0 - V/2 (K+^2 + K-^2) in the |J, M> basis"""
    _check_model(params, LipkinModel.TWO_LEVEL)
    basis = build_two_level_basis(params.n_particles)
    dim = basis.dimension
    j = params.n_particles / 2
    m = np.asarray(basis.labels, dtype=float)

    entries = np.diag(params.epsilon * m)
    if dim > 2:
        low = m[:-2]
        ladder = np.sqrt(j * (j + 1) - low * (low + 1)) * np.sqrt(j * (j + 1) - (low + 1) * (low + 2))
        rows = np.arange(dim - 2)
        entries[rows + 2, rows] = -0.5 * params.v * ladder
        entries[rows, rows + 2] = -0.5 * params.v * ladder
    return HamiltonianMatrix(basis, entries, params)


def build_three_level_hamiltonian(params: ModelParams) -> HamiltonianMatrix:
    """H = eps (K22 - K00) - V/2 (K10^2 + K20^2 + K21^2 + h.c.) in the |n1, n2> basis"""
    _check_model(params, LipkinModel.THREE_LEVEL)
    basis = build_three_level_basis(params.n_particles)
    n0, n1, n2 = _three_level_occupations(basis)
    table = _three_level_index_table(basis)
    entries = np.diag(params.epsilon * (n2 - n0).astype(float))

    # (condition, target n1, target n2, amplitude) for K10^2, K20^2, K21^2
    transitions = (
        (n0 >= 2, n1 + 2, n2, np.sqrt((n1 + 1.0) * (n1 + 2.0) * n0 * (n0 - 1.0))),
        (n0 >= 2, n1, n2 + 2, np.sqrt((n2 + 1.0) * (n2 + 2.0) * n0 * (n0 - 1.0))),
        (n1 >= 2, n1 - 2, n2 + 2, np.sqrt((n2 + 1.0) * (n2 + 2.0) * n1 * (n1 - 1.0))),
    )
    for allowed, t1, t2, amplitude in transitions:
        source = np.flatnonzero(allowed)
        target = table[t1[source], t2[source]]
        if np.any(target < 0):
            raise InvalidParametersError("transition left the n0 >= 0 simplex")
        entries[target, source] += -0.5 * params.v * amplitude[source]
        entries[source, target] += -0.5 * params.v * amplitude[source]
    return HamiltonianMatrix(basis, entries, params)


def build_hamiltonian(params: ModelParams) -> HamiltonianMatrix:
    if params.model is LipkinModel.TWO_LEVEL:
        return build_two_level_hamiltonian(params)
    return build_three_level_hamiltonian(params)


def ground_state(hamiltonian: HamiltonianMatrix) -> GroundState:
    """Lowest eigenpair from a dense symmetric eigensolve, restricted to the even-parity sector.

    Near-degenerate parity partners (deformed phase) can come back mixed; the
    even component of the best candidate is then kept and the state flagged.
    """
    entries = hamiltonian.entries
    scale = _scale(entries)
    try:
        values, vectors = linalg.eigh(entries)
    except linalg.LinAlgError as exc:
        raise GroundStateError(f"dense eigensolver did not converge: {exc}") from exc

    even = parity_labels(hamiltonian.basis) == 0
    quasi_degenerate = values.size > 1 and (values[1] - values[0]) < config.DEGENERACY_TOL * scale

    cluster = np.flatnonzero(values - values[0] <= config.CLUSTER_TOL * scale)[:4]
    even_weights = np.sum(vectors[even][:, cluster] ** 2, axis=0)
    best = int(cluster[np.argmax(even_weights)])
    vector = vectors[:, best].copy()
    energy = float(values[best])

    odd_weight = float(np.sum(vector[~even] ** 2))
    if odd_weight > config.PARITY_TOL:
        if odd_weight > 0.5:
            raise GroundStateError(f"no even-parity state among the {cluster.size} lowest levels")
        logger.warning("⚠️ Parity partners mixed by the eigensolver (odd weight %.2e), projecting", odd_weight)
        vector[~even] = 0.0
        vector /= np.linalg.norm(vector)
        energy = float(vector @ entries @ vector)
        quasi_degenerate = True

    if vector[np.argmax(np.abs(vector))] < 0:
        vector = -vector

    residual = float(np.linalg.norm(entries @ vector - energy * vector))
    if residual > config.RESIDUAL_TOL * scale:
        raise GroundStateError(f"ground-state residual {residual:.3e} above tolerance")
    if quasi_degenerate:
        logger.debug("Quasi-degenerate ground state at N=%d, chi=%.6g",
                     hamiltonian.params.n_particles, hamiltonian.params.chi)
    return GroundState(energy=energy, vector=vector, basis=hamiltonian.basis,
                       quasi_degenerate=bool(quasi_degenerate))


def solve_exact(params: ModelParams) -> GroundState:
    return ground_state(build_hamiltonian(params))


def expectation_k(gs: GroundState, operator: str) -> float:
    """<gs| K |gs> for a single-step collective operator label"""
    matrix = collective_operator(gs.basis, operator)
    return float(gs.vector @ (matrix @ gs.vector))
