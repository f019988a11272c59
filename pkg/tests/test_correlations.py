import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models.lipkin_params import LipkinModel, ModelParams
from src.correlations import (LEVEL_PAIRS, MeasurementSet, OneBodyDensityBlock, TwoModeState, binary_entropy,
                              classical_correlation, entropies, exact_one_body_density, exact_pair_state,
                              h_function, hf_discord_closed_form, hf_discord_closed_form_three_level,
                              hf_one_body_density, hf_pair_state, mutual_information, natural_occupations,
                              overall_entropy_original_basis, purity, quantum_discord, reduced_mode_states,
                              shannon_term, two_mode_state_from_correlators, von_neumann_entropy)
from src.errors import InvalidParametersError, NonPhysicalStateError
from src.mean_field import hartree_fock
from src.quasispin import solve_exact

TWO, THREE = LipkinModel.TWO_LEVEL, LipkinModel.THREE_LEVEL
UNRESTRICTED = MeasurementSet.UNRESTRICTED
H_OF_TWO = 0.25 * np.log(4.0) + 0.75 * np.log(4.0 / 3.0)


def s(x):
    return float(shannon_term(x))


def test_entropy_functions_at_the_ends():
    assert float(binary_entropy(0.0)) == 0.0
    assert float(binary_entropy(1.0)) == 0.0
    assert float(binary_entropy(0.5)) == pytest.approx(np.log(2.0))
    assert s(0.0) == 0.0
    assert s(1.0) == 0.0


@given(st.floats(0.0, 1.0))
def test_binary_entropy_is_symmetric_and_bounded(x):
    value = float(binary_entropy(x))
    assert value == pytest.approx(float(binary_entropy(1.0 - x)), abs=1e-12)
    assert 0.0 <= value <= np.log(2.0) + 1e-15


def test_von_neumann_entropy():
    assert von_neumann_entropy(np.diag([1.0, 0.0])) == 0.0
    assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(np.log(4.0))


def test_natural_occupations():
    assert natural_occupations(OneBodyDensityBlock(np.diag([1.0, 0.0]), 3)) == [1.0, 0.0]
    assert natural_occupations(OneBodyDensityBlock(np.diag([0.5, 0.5]), 3)) == pytest.approx([0.5, 0.5])
    hf = hartree_fock(ModelParams.from_chi(10, 2.0))
    assert natural_occupations(hf_one_body_density(hf, 10)) == pytest.approx([1.0, 0.0], abs=1e-10)


def test_overall_entropy_examples():
    assert entropies(OneBodyDensityBlock(np.diag([1.0, 0.0]), 7)).overall_entropy == 0.0
    report = entropies(OneBodyDensityBlock(np.diag([0.75, 0.25]), 4))
    assert report.overall_entropy == pytest.approx(4.4987, abs=1e-4)
    assert report.overall_entropy_per_particle == pytest.approx(report.overall_entropy / 4)


def test_invalid_density_blocks():
    with pytest.raises(NonPhysicalStateError):
        OneBodyDensityBlock(np.diag([1.0, 1.0]), 2)
    with pytest.raises(NonPhysicalStateError):
        OneBodyDensityBlock(np.array([[0.5, 0.2], [0.0, 0.5]]), 2)
    with pytest.raises(NonPhysicalStateError):
        OneBodyDensityBlock(np.diag([1.5, -0.5]), 2)
    with pytest.raises(NonPhysicalStateError):
        OneBodyDensityBlock(np.eye(4) / 4, 2)


@pytest.mark.parametrize("n", [5, 20])
@pytest.mark.parametrize("chi_value", [0.3, 1.0, 2.0, 4.0])
def test_two_level_overall_entropy_is_twice_the_one_body_entropy(n, chi_value):
    block = exact_one_body_density(solve_exact(ModelParams.from_chi(n, chi_value)))
    report = entropies(block)
    assert report.overall_entropy == pytest.approx(2 * report.one_body_entropy, abs=1e-10)
    assert overall_entropy_original_basis(block) >= report.overall_entropy - 1e-12


@pytest.mark.parametrize("model", [TWO, THREE])
def test_exact_density_block_is_physical(model):
    block = exact_one_body_density(solve_exact(ModelParams.from_chi(8, 2.5, model=model)))
    assert np.trace(block.matrix) == pytest.approx(1.0)
    report = entropies(block)
    assert report.overall_entropy >= 0.0
    assert report.one_body_entropy >= 0.0


def test_product_and_bell_states():
    product = two_mode_state_from_correlators(0.3, 0.6, 0.18, 0.0)
    assert mutual_information(product) == pytest.approx(0.0, abs=1e-12)
    assert quantum_discord(product) == pytest.approx(0.0, abs=1e-12)

    bell = two_mode_state_from_correlators(0.5, 0.5, 0.0, 0.5)
    assert purity(bell) == pytest.approx(1.0)
    assert mutual_information(bell) == pytest.approx(2 * np.log(2.0))
    rho_a, rho_b = reduced_mode_states(bell)
    np.testing.assert_allclose(rho_a, np.eye(2) / 2, atol=1e-12)
    np.testing.assert_allclose(rho_b, np.eye(2) / 2, atol=1e-12)


def test_purity_examples():
    assert purity(two_mode_state_from_correlators(1.0, 0.0, 0.0, 0.0)) == pytest.approx(1.0)
    assert purity(two_mode_state_from_correlators(0.5, 0.5, 0.25, 0.0)) == pytest.approx(0.25)


def test_non_physical_correlators():
    with pytest.raises(NonPhysicalStateError):
        two_mode_state_from_correlators(0.8, 0.8, 0.0, 0.0)
    with pytest.raises(NonPhysicalStateError):
        two_mode_state_from_correlators(0.5, 0.5, 0.0, 0.6)
    with pytest.raises(NonPhysicalStateError):
        TwoModeState(np.eye(3) / 3)


def test_two_level_hf_pair_at_chi_two():
    state = hf_pair_state(hartree_fock(ModelParams.from_chi(10, 2.0)))
    assert purity(state) == pytest.approx(1.0, abs=1e-10)
    assert mutual_information(state) == pytest.approx(2 * H_OF_TWO, abs=1e-6)
    assert quantum_discord(state) == pytest.approx(H_OF_TWO, abs=1e-6)
    assert quantum_discord(state, UNRESTRICTED) == pytest.approx(H_OF_TWO, abs=1e-6)


@pytest.mark.parametrize("chi_value", np.linspace(0.2, 8.0, 12))
def test_two_level_hf_pair_is_always_pure(chi_value):
    assert purity(hf_pair_state(hartree_fock(ModelParams.from_chi(10, chi_value)))) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("model, pairs, branches", [
    (TWO, ("01",), [(0.2, 1.0), (1.0, 8.0)]),
    (THREE, LEVEL_PAIRS, [(0.2, 1.0), (1.0, 3.0), (3.0, 10.0)]),
])
def test_hf_discord_matches_closed_forms(model, pairs, branches):
    for low, high in branches:
        for chi_value in np.linspace(low, high, 101)[1:]:
            hf = hartree_fock(ModelParams.from_chi(10, chi_value, model=model))
            for pair in pairs:
                value = quantum_discord(hf_pair_state(hf, pair))
                assert value == pytest.approx(hf_discord_closed_form(model, chi_value, pair), abs=1e-6), \
                    f"{model.value}-level pair {pair} at chi={chi_value}"


@pytest.mark.parametrize("chi_value", np.linspace(1.05, 3.0, 10))
def test_three_level_first_pair_repeats_the_two_level_curve(chi_value):
    hf = hartree_fock(ModelParams.from_chi(10, chi_value, model=THREE))
    assert quantum_discord(hf_pair_state(hf, "01")) == pytest.approx(h_function(chi_value), abs=1e-6)


def test_three_level_pairs_at_chi_four():
    hf = hartree_fock(ModelParams.from_chi(10, 4.0, model=THREE))
    expected = {
        "01": -s(2 / 3 + 1 / 4) + s(1 / 3 + 1 / 4) + s(1 / 3),
        "02": s(1 / 3 + 1 / 4) + s(1 / 3 - 1 / 4) - s(2 / 3),
        "12": -s(2 / 3 - 1 / 4) + s(1 / 3 - 1 / 4) + s(1 / 3),
    }
    for pair, value in expected.items():
        state = hf_pair_state(hf, pair)
        assert purity(state) < 1.0 - 1e-6
        assert quantum_discord(state) == pytest.approx(value, abs=1e-6)
        assert hf_discord_closed_form_three_level(4.0, pair) == pytest.approx(value)


def test_three_level_discord_below_second_transition():
    assert hf_discord_closed_form(THREE, 2.0, "02") == 0.0
    assert hf_discord_closed_form(THREE, 2.0, "01") == pytest.approx(H_OF_TWO)


@pytest.mark.parametrize("chi_value", [3.5, 4.0, 6.0])
def test_unrestricted_discord_never_exceeds_the_restricted_one(chi_value):
    hf = hartree_fock(ModelParams.from_chi(10, chi_value, model=THREE))
    for pair in LEVEL_PAIRS:
        state = hf_pair_state(hf, pair)
        unrestricted = quantum_discord(state, UNRESTRICTED)
        assert 0.0 <= unrestricted <= quantum_discord(state) + 1e-9


@pytest.mark.parametrize("model, chi_value", [(TWO, 1.5), (TWO, 5.0), (THREE, 2.0)])
def test_measurement_sets_agree_on_pure_states(model, chi_value):
    state = hf_pair_state(hartree_fock(ModelParams.from_chi(10, chi_value, model=model)), "01")
    assert purity(state) == pytest.approx(1.0, abs=1e-10)
    assert quantum_discord(state, UNRESTRICTED) == pytest.approx(quantum_discord(state), abs=1e-6)
    rho_a, _ = reduced_mode_states(state)
    assert quantum_discord(state) == pytest.approx(von_neumann_entropy(rho_a), abs=1e-8)


def test_discord_ignores_the_coherence_sign():
    plus = two_mode_state_from_correlators(0.4, 0.3, 0.0, 0.2)
    minus = two_mode_state_from_correlators(0.4, 0.3, 0.0, -0.2)
    for measurement_set in MeasurementSet:
        assert quantum_discord(plus, measurement_set) == pytest.approx(quantum_discord(minus, measurement_set),
                                                                       abs=1e-8)


@settings(max_examples=40, deadline=None)
@given(weights=st.lists(st.floats(0.0, 1.0), min_size=4, max_size=4).filter(lambda w: sum(w) > 1e-3),
       fraction=st.floats(-1.0, 1.0))
def test_discord_bounded_by_mutual_information(weights, fraction):
    p00, p10, p01, p11 = np.asarray(weights) / sum(weights)
    coh = fraction * np.sqrt(p10 * p01)
    state = two_mode_state_from_correlators(p10 + p11, p01 + p11, p11, coh)
    information = mutual_information(state)
    discord = quantum_discord(state)
    assert 0.0 <= discord <= information + 1e-12
    assert classical_correlation(state) <= information + 1e-9


@pytest.mark.parametrize("model", [TWO, THREE])
def test_exact_pair_states_are_valid(model):
    gs = solve_exact(ModelParams.from_chi(8, 2.0, model=model))
    pairs = ("01",) if model is TWO else LEVEL_PAIRS
    for pair in pairs:
        state = exact_pair_state(gs, pair)
        assert np.real(state.rho[3, 3]) == 0.0
        assert 0.0 <= quantum_discord(state) <= mutual_information(state) + 1e-12


@pytest.mark.parametrize("n, chi_value", [(4, 0.5), (8, 2.0), (10, 3.0)])
def test_exact_two_level_pair_state_is_classical(n, chi_value):
    state = exact_pair_state(solve_exact(ModelParams.from_chi(n, chi_value)))
    assert abs(state.rho[1, 2]) < 1e-12
    assert quantum_discord(state) == pytest.approx(0.0, abs=1e-10)
    # occupation-correlated, so the mutual information stays positive
    assert mutual_information(state) > 0.0


def test_closed_form_limits_and_errors():
    assert hf_discord_closed_form(TWO, 0.7) == 0.0
    assert hf_discord_closed_form(TWO, 1.0) == 0.0
    assert h_function(1e9) == pytest.approx(np.log(2.0), abs=1e-8)
    with pytest.raises(InvalidParametersError):
        h_function(0.0)
    with pytest.raises(InvalidParametersError):
        hf_discord_closed_form(TWO, 2.0, "02")
    with pytest.raises(InvalidParametersError):
        hf_pair_state(hartree_fock(ModelParams.from_chi(4, 2.0)), "12")
