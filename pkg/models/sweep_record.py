# models/sweep_record.py
from pydantic import BaseModel, ConfigDict, Field

from models.lipkin_params import LipkinModel


class SweepRecord(BaseModel):
    """Pydantic model for one (N, chi) row of a sweep; field order is the CSV column order.

    Two-level rows store the (-,+) pair discord in discord_01, zeros in the
    02/12 columns, and phi in hf_angle_a (hf_angle_b = 0).
    """
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    model: LipkinModel = Field(..., description="two- or three-level model")
    n_particles: int = Field(..., ge=1, description="Particle number N")
    chi: float = Field(..., ge=0, description="Dimensionless interaction strength")
    v: float = Field(..., ge=0, description="Interaction strength used for this point")
    e_exact: float = Field(..., description="Exact ground-state energy")
    e_hf: float = Field(..., description="Hartree-Fock energy")
    eps_corr: float = Field(..., ge=0, description="Relative correlation energy (E_exact - E_HF) / E_exact")
    s_ov: float = Field(..., ge=0, description="Overall entropy in the natural-orbital basis (nats)")
    s_ov_per_particle: float = Field(..., ge=0, description="Overall entropy per particle")
    s_gamma: float = Field(..., ge=0, description="One-body entropy S(gamma)")
    discord_01: float = Field(..., ge=0, description="HF discord between levels 0 and 1 (two-level: - and +)")
    discord_02: float = Field(..., ge=0, description="HF discord between levels 0 and 2")
    discord_12: float = Field(..., ge=0, description="HF discord between levels 1 and 2")
    discord_sum: float = Field(..., ge=0, description="Sum of the pair discords")
    hf_angle_a: float = Field(..., description="phi (two-level) or alpha (three-level), radians")
    hf_angle_b: float = Field(..., description="beta (three-level), radians; 0 for two-level")
