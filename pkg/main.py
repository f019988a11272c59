# main.py
import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

import config
from models.lipkin_params import LipkinModel, ModelParams, SweepConfig
from models.sweep_record import SweepRecord
from src.correlations import (LEVEL_PAIRS, MeasurementSet, entropies, exact_one_body_density,
                              hf_pair_state, quantum_discord)
from src.errors import LipkinError, SweepError
from src.mean_field import hartree_fock, relative_correlation_energy
from src.quasispin import solve_exact
from src.transitions import Transition, detect_transitions
from src.utils import save_records_to_csv

logger = logging.getLogger(__name__)


def evaluate_point(model: LipkinModel, n_particles: int, chi: float, epsilon: float = 1.0) -> SweepRecord:
    """Exact and HF solutions at one grid point, reduced to the plotted quantities"""
    params = ModelParams.from_chi(n_particles, chi, epsilon, model)
    gs = solve_exact(params)
    hf = hartree_fock(params)
    report = entropies(exact_one_body_density(gs))

    pairs = ("01",) if model is LipkinModel.TWO_LEVEL else LEVEL_PAIRS
    discord = {pair: quantum_discord(hf_pair_state(hf, pair), MeasurementSet.SSR_RESTRICTED) for pair in pairs}
    angles = tuple(hf.angles) + (0.0,) * (2 - len(hf.angles))

    return SweepRecord(
        model=model,
        n_particles=n_particles,
        chi=chi,
        v=params.v,
        e_exact=gs.energy,
        e_hf=hf.energy,
        eps_corr=relative_correlation_energy(gs.energy, hf.energy),
        s_ov=report.overall_entropy,
        s_ov_per_particle=report.overall_entropy_per_particle,
        s_gamma=report.one_body_entropy,
        discord_01=discord.get("01", 0.0),
        discord_02=discord.get("02", 0.0),
        discord_12=discord.get("12", 0.0),
        discord_sum=sum(discord.values()),
        hf_angle_a=angles[0],
        hf_angle_b=angles[1],
    )


class LipkinSweepRunner:
    """Runs chi-sweeps over the Lipkin models and keeps the resulting records"""

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max(1, max_workers or config.MAX_WORKERS)
        self.records: List[SweepRecord] = []

    def _evaluate(self, point: Tuple[LipkinModel, int, float, float]) -> SweepRecord:
        model, n_particles, chi, epsilon = point
        try:
            return evaluate_point(model, n_particles, chi, epsilon)
        except LipkinError as exc:
            raise SweepError(str(exc), n_particles, chi) from exc

    def run_sweep(self, sweep: SweepConfig) -> List[SweepRecord]:
        """One record per (N, chi), N outer and chi inner ascending; written to CSV when a path is set"""
        grid = sorted(float(chi) for chi in sweep.chi_grid())
        points = [(sweep.model, n, chi, sweep.epsilon) for n in sweep.particles for chi in grid]
        target = f" for figure {sweep.figure_id}" if sweep.figure_id else ""
        logger.info("🚀 %s-level sweep%s: N=%s, %d chi points in [%g, %g], %d worker(s)",
                    sweep.model.value, target, sweep.particles, len(grid), sweep.chi_min, sweep.chi_max,
                    self.max_workers)

        if self.max_workers == 1:
            records = [self._evaluate(point) for point in points]
        else:
            # map keeps submission order, so the output is independent of scheduling
            with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
                records = list(executor.map(self._evaluate, points))

        self.records = records
        logger.info("✅ Sweep finished: %d records", len(records))
        if sweep.output_path:
            self.save_to_csv(sweep.output_path)
        return records

    def save_to_csv(self, filename: str):
        """Writes the current records; I/O errors are logged with the path and re-raised"""
        try:
            save_records_to_csv(self.records, filename)
        except OSError as exc:
            logger.error("❌ Could not write '%s': %s", filename, exc)
            raise

    def transitions(self) -> Dict[Tuple[LipkinModel, int], List[Transition]]:
        series = defaultdict(list)
        for record in self.records:
            series[(record.model, record.n_particles)].append(record)
        return {key: detect_transitions(records) for key, records in series.items()}

    def print_summary(self):
        """Prints per-N extremes and detected transitions"""
        if not self.records:
            print("❌ No sweep records")
            return

        print("\n📊 === SWEEP SUMMARY ===")
        print(f"🎯 Records: {len(self.records)}")
        found = self.transitions()
        for (model, n), transitions in found.items():
            rows = [record for record in self.records if record.model is model and record.n_particles == n]
            print(f"\n⚛️  {model.value}-level, N={n}: {len(rows)} points, "
                  f"chi {rows[0].chi:.4g} .. {rows[-1].chi:.4g}")
            print(f"   • max eps_corr      {max(r.eps_corr for r in rows):.6f}")
            print(f"   • max S_ov/N        {max(r.s_ov_per_particle for r in rows):.6f}")
            print(f"   • max discord sum   {max(r.discord_sum for r in rows):.6f}")
            if transitions:
                for transition in transitions:
                    print(f"   • transition near chi = {transition.chi:.4f} (jump {transition.jump:+.4g})")
            else:
                print("   • no transition detected")
