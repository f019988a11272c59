# oracle_check.py
import time
from typing import Callable, Dict

import numpy as np
from termcolor import colored

from models.lipkin_params import LipkinModel, ModelParams
from src.correlations import (LEVEL_PAIRS, MeasurementSet, entropies, exact_one_body_density,
                              hf_discord_closed_form, hf_pair_state, purity, quantum_discord)
from src.fock_space import fock_space_ground_energy
from src.mean_field import hartree_fock, hf_angles_closed_form, hf_energy_closed_form
from src.quasispin import solve_exact
from src.transitions import second_derivative_series


class OracleCheck:
    """Analytic and brute-force oracles for the exact, mean-field and correlation layers"""

    def __init__(self):
        self.results: Dict[str, Dict] = {
            name: {"status": "pending", "detail": None, "latency": None}
            for name in ("fock_space_oracle", "two_level_analytic", "hf_closed_forms", "discord_closed_forms",
                         "pair_state_purity", "entropy_identity", "variational_bound", "second_difference")
        }

    def _run(self, name: str, check: Callable[[], str]):
        """Run one check with timing; a failed assertion or exception marks it as failed"""
        start_time = time.time()
        try:
            detail = check()
            status = "success"
        except Exception as e:
            detail = f"{type(e).__name__}: {e}"
            status = "error"
        self.results[name] = {"status": status, "detail": detail, "latency": f"{time.time() - start_time:.2f}s"}

    def check_fock_space_oracle(self) -> str:
        worst = 0.0
        for model in LipkinModel:
            for n in (2, 3):
                for chi in (0.5, 1.0, 2.0, 4.0):
                    params = ModelParams.from_chi(n, chi, model=model)
                    worst = max(worst, abs(solve_exact(params).energy - fock_space_ground_energy(params)))
        assert worst < 1e-10, f"collective and Fock-space energies differ by {worst:.3e}"
        return f"max |E_collective - E_fock| = {worst:.2e}"

    def check_two_level_analytic(self) -> str:
        worst = 0.0
        for v in (0.1, 0.5, 1.0, 3.0):
            params = ModelParams(n_particles=2, v=v)
            worst = max(worst, abs(solve_exact(params).energy + np.sqrt(1.0 + v ** 2)))
        assert worst < 1e-10, f"N=2 energy off by {worst:.3e}"
        return f"N=2 exact energy within {worst:.2e} of -sqrt(eps^2 + V^2)"

    def check_hf_closed_forms(self) -> str:
        worst_angle, worst_energy = 0.0, 0.0
        for model in LipkinModel:
            for chi in np.geomspace(0.05, 20.0, 40):
                hf = hartree_fock(ModelParams.from_chi(10, chi, model=model))
                closed = hf_angles_closed_form(model, chi)
                worst_angle = max(worst_angle, max(abs(np.cos(a) ** 2 - np.cos(b) ** 2)
                                                   for a, b in zip(hf.angles, closed)))
                worst_energy = max(worst_energy, abs(hf.energy - hf_energy_closed_form(model, chi, 10)))
        assert worst_angle < 1e-6 and worst_energy < 1e-10, \
            f"angles off by {worst_angle:.3e}, energies by {worst_energy:.3e}"
        return f"cos^2 within {worst_angle:.2e}, energies within {worst_energy:.2e}"

    def check_discord_closed_forms(self) -> str:
        worst = 0.0
        for model in LipkinModel:
            pairs = ("01",) if model is LipkinModel.TWO_LEVEL else LEVEL_PAIRS
            for chi in np.linspace(0.3, 8.0, 25):
                hf = hartree_fock(ModelParams.from_chi(10, chi, model=model))
                for pair in pairs:
                    value = quantum_discord(hf_pair_state(hf, pair), MeasurementSet.SSR_RESTRICTED)
                    worst = max(worst, abs(value - hf_discord_closed_form(model, chi, pair)))
        assert worst < 1e-6, f"discord off the closed forms by {worst:.3e}"
        return f"HF pair discord within {worst:.2e} of the closed forms"

    def check_pair_state_purity(self) -> str:
        for chi in (0.5, 2.0, 6.0):
            value = purity(hf_pair_state(hartree_fock(ModelParams.from_chi(10, chi))))
            assert abs(value - 1.0) < 1e-10, f"two-level HF pair purity {value:.12f} at chi={chi}"
        mixed = purity(hf_pair_state(hartree_fock(ModelParams.from_chi(10, 4.0, model=LipkinModel.THREE_LEVEL))))
        assert mixed < 1.0 - 1e-6, f"three-level pair state at chi=4 should be mixed, purity {mixed:.12f}"
        return f"two-level pairs pure, three-level chi=4 purity {mixed:.6f}"

    def check_entropy_identity(self) -> str:
        worst = 0.0
        for n in (5, 20):
            for chi in (0.5, 1.0, 2.0):
                report = entropies(exact_one_body_density(solve_exact(ModelParams.from_chi(n, chi))))
                worst = max(worst, abs(report.overall_entropy - 2 * report.one_body_entropy))
        assert worst < 1e-10, f"S_ov - 2 S(gamma) = {worst:.3e}"
        return f"S_ov = 2 S(gamma) within {worst:.2e}"

    def check_variational_bound(self) -> str:
        for model in LipkinModel:
            for chi in np.linspace(0.0, 5.0, 11):
                params = ModelParams.from_chi(6, chi, model=model)
                e_exact, e_hf = solve_exact(params).energy, hartree_fock(params).energy
                assert e_exact <= e_hf + 1e-10 * abs(e_exact), f"E_exact > E_HF at {model.value}, chi={chi}"
        return "E_exact <= E_HF on both models"

    def check_second_difference(self) -> str:
        x = np.sort(np.random.default_rng(7).uniform(-2.0, 3.0, 40))
        worst = float(np.max(np.abs(second_derivative_series(x, x ** 2) - 2.0)))
        assert worst < 1e-8, f"second difference of x^2 off by {worst:.3e}"
        return f"exact on quadratics within {worst:.2e}"

    def run_all_tests(self):
        """Execute all oracle checks"""
        print("🚀 Starting Lipkin oracle self-check")
        checks = [
            ("fock_space_oracle", self.check_fock_space_oracle),
            ("two_level_analytic", self.check_two_level_analytic),
            ("hf_closed_forms", self.check_hf_closed_forms),
            ("discord_closed_forms", self.check_discord_closed_forms),
            ("pair_state_purity", self.check_pair_state_purity),
            ("entropy_identity", self.check_entropy_identity),
            ("variational_bound", self.check_variational_bound),
            ("second_difference", self.check_second_difference),
        ]
        for i, (name, check) in enumerate(checks):
            print(f"\n🔍 Running check {i + 1}/{len(checks)}: {name}...")
            self._run(name, check)

        self.display_results()

    def all_passed(self) -> bool:
        return all(result["status"] == "success" for result in self.results.values())

    def display_results(self):
        """Display the pass/fail report"""
        print("\n" + "=" * 60)
        print("📊 Lipkin Oracle Report")
        print("=" * 60)

        for test_name, result in self.results.items():
            status = result["status"]
            color = "green" if status == "success" else "red"
            symbol = "✅" if status == "success" else "❌"
            print(f"\n{symbol} {test_name.replace('_', ' ').title()}:")
            print(f"   Status: {colored(status.upper(), color)}")
            print(f"   Time: {result['latency'] or 'N/A'}")
            print(f"   Detail: {result['detail']}")

        print("=" * 60)
        failed_tests = sum(1 for r in self.results.values() if r["status"] != "success")
        if failed_tests == 0:
            print(colored("\n🎉 All checks passed!", "green"))
        else:
            print(colored(f"\n⚠️ {failed_tests} check(s) failed. See details above.", "yellow"))


if __name__ == "__main__":
    OracleCheck().run_all_tests()
