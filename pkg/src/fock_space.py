# src/fock_space.py
"""Brute-force second-quantized Lipkin Hamiltonians on the full fermionic Fock space.

Only meant for small N: it is the oracle the collective-basis construction is
checked against. Modes are ordered p-major (mode index p * levels + sigma) and
fermionic signs come from a Jordan-Wigner string over the lower modes.
"""
import logging
from functools import reduce
from itertools import product
from typing import List, Optional

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from models.lipkin_params import LipkinModel, ModelParams
from src.errors import InvalidParametersError

logger = logging.getLogger(__name__)

MAX_MODES = 12
DENSE_LIMIT = 1024

_CREATE = sparse.csr_matrix(np.array([[0.0, 0.0], [1.0, 0.0]]))
_STRING = sparse.csr_matrix(np.diag([1.0, -1.0]))
_IDENTITY = sparse.identity(2, format="csr")


def creation_operators(n_modes: int) -> List[sparse.csr_matrix]:
    """c^dag_m for every mode, Jordan-Wigner ordered, mode 0 the leading tensor factor"""
    operators = []
    for mode in range(n_modes):
        factors = [_STRING] * mode + [_CREATE] + [_IDENTITY] * (n_modes - mode - 1)
        operators.append(reduce(lambda a, b: sparse.kron(a, b, format="csr"), factors))
    return operators


def _projection_indices(n_modes: int, particle_number: int) -> np.ndarray:
    return np.array([i for i, state in enumerate(product((0, 1), repeat=n_modes))
                     if sum(state) == particle_number], dtype=int)


def fock_space_hamiltonian(params: ModelParams, particle_number: Optional[int] = None) -> np.ndarray:
    """Dense Hamiltonian over 2^(levels*N) Fock states, or its fixed particle-number block"""
    levels = params.model.levels
    n_modes = levels * params.n_particles
    if n_modes > MAX_MODES:
        raise InvalidParametersError(f"Fock-space oracle limited to {MAX_MODES} modes, got {n_modes}")

    cdag = creation_operators(n_modes)

    def k(a: int, b: int) -> sparse.csr_matrix:
        # K_ab = sum_p c^dag_{a p} c_{b p}
        return reduce(lambda x, y: x + y,
                      (cdag[p * levels + a] @ cdag[p * levels + b].T for p in range(params.n_particles)))

    if params.model is LipkinModel.TWO_LEVEL:
        k_plus = k(1, 0)
        hamiltonian = 0.5 * params.epsilon * (k(1, 1) - k(0, 0))
        hamiltonian = hamiltonian - 0.5 * params.v * (k_plus @ k_plus + k_plus.T @ k_plus.T)
    else:
        hamiltonian = params.epsilon * (k(2, 2) - k(0, 0))
        for a, b in ((1, 0), (2, 0), (2, 1)):
            raising = k(a, b)
            hamiltonian = hamiltonian - 0.5 * params.v * (raising @ raising + raising.T @ raising.T)

    if particle_number is not None:
        if not 0 <= particle_number <= n_modes:
            raise InvalidParametersError(f"particle number {particle_number} outside 0..{n_modes}")
        index = _projection_indices(n_modes, particle_number)
        hamiltonian = hamiltonian.tocsr()[index][:, index]
    return hamiltonian.toarray()


def fock_space_ground_energy(params: ModelParams, particle_number: Optional[int] = None) -> float:
    hamiltonian = fock_space_hamiltonian(params, particle_number)
    logger.debug("Fock-space oracle: %s-level N=%d, dim=%d",
                 params.model.value, params.n_particles, hamiltonian.shape[0])
    if hamiltonian.shape[0] <= DENSE_LIMIT:
        return float(np.linalg.eigvalsh(hamiltonian)[0])
    values = sparse_linalg.eigsh(sparse.csr_matrix(hamiltonian), k=1, which="SA", tol=0)[0]
    return float(values[0])
