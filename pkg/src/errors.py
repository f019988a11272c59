# src/errors.py
from typing import Optional


class LipkinError(Exception):
    """Base class for every failure raised by the toolkit"""


class InvalidParametersError(LipkinError, ValueError):
    """Model parameters or operator labels that the requested operation cannot use"""


class GroundStateError(LipkinError):
    """Eigensolver failure or a ground state violating its parity/normalization contract"""


class MeanFieldError(LipkinError):
    """Hartree-Fock minimization failed or disagrees with the closed-form angles"""


class VariationalBoundError(LipkinError):
    """E_exact above E_HF: one of the two energies is wrong upstream"""


class NonPhysicalStateError(LipkinError, ValueError):
    """Correlator set that does not define a positive two-mode density matrix"""


class SeriesError(LipkinError, ValueError):
    """Input series unusable for finite differences or transition detection"""


class FigureDataError(LipkinError, ValueError):
    """Records do not cover the axes a figure needs"""


class SweepError(LipkinError):
    """A grid point of a sweep failed; carries the offending point"""

    def __init__(self, message: str, n_particles: Optional[int] = None, chi: Optional[float] = None):
        self.n_particles = n_particles
        self.chi = chi
        where = f" at N={n_particles}, chi={chi:.6g}" if n_particles is not None and chi is not None else ""
        super().__init__(f"{message}{where}")
