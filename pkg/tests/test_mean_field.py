import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models.lipkin_params import LipkinModel, ModelParams
from src.errors import InvalidParametersError, VariationalBoundError
from src.mean_field import (hartree_fock, hf_angles_closed_form, hf_energy_closed_form, hf_three_level,
                            hf_two_level, relative_correlation_energy, three_level_energy_per_particle,
                            three_level_rotation, two_level_energy_per_particle)
from src.quasispin import solve_exact
from src.transitions import find_jumps, second_derivative_series

TWO, THREE = LipkinModel.TWO_LEVEL, LipkinModel.THREE_LEVEL
CHI_GRID = np.geomspace(0.05, 20.0, 200)


def test_two_level_spherical_phase():
    hf = hf_two_level(ModelParams.from_chi(10, 0.5))
    assert hf.angles == (0.0,)
    assert hf.energy == pytest.approx(-5.0, abs=1e-12)
    np.testing.assert_allclose(hf.density_block, np.diag([1.0, 0.0]), atol=1e-12)


def test_two_level_deformed_phase():
    hf = hf_two_level(ModelParams.from_chi(5, 2.0))
    assert np.cos(hf.angles[0]) == pytest.approx(0.5, abs=1e-8)
    assert hf.energy == pytest.approx(-3.125, abs=1e-10)
    # symmetry breaking shows up as an off-diagonal density element
    assert abs(hf.density_block[0, 1]) == pytest.approx(0.5 * np.sin(hf.angles[0]), abs=1e-8)


def test_two_level_boundary_takes_symmetric_branch():
    hf = hf_two_level(ModelParams.from_chi(8, 1.0))
    assert hf.angles == (0.0,)
    assert hf.energy == pytest.approx(-4.0, abs=1e-12)


def test_three_level_examples():
    spherical = hf_three_level(ModelParams.from_chi(10, 0.5, model=THREE))
    np.testing.assert_allclose(spherical.rotation, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(spherical.density_block, np.diag([1.0, 0.0, 0.0]), atol=1e-12)

    alpha, beta = hf_three_level(ModelParams.from_chi(10, 2.0, model=THREE)).angles
    assert np.cos(alpha) ** 2 == pytest.approx(0.75, abs=1e-6)
    assert np.cos(beta) ** 2 == pytest.approx(1.0, abs=1e-6)

    alpha, beta = hf_three_level(ModelParams.from_chi(10, 6.0, model=THREE)).angles
    assert np.cos(alpha) ** 2 == pytest.approx(0.5, abs=1e-6)
    assert np.cos(beta) ** 2 == pytest.approx(2.0 / 3.0, abs=1e-6)


@pytest.mark.parametrize("model", [TWO, THREE])
def test_numerical_minimum_matches_closed_forms(model):
    for chi_value in CHI_GRID:
        hf = hartree_fock(ModelParams.from_chi(10, chi_value, model=model))
        closed = hf_angles_closed_form(model, chi_value)
        for numeric, expected in zip(hf.angles, closed):
            assert np.cos(numeric) ** 2 == pytest.approx(np.cos(expected) ** 2, abs=1e-6)
        assert hf.energy == pytest.approx(hf_energy_closed_form(model, chi_value, 10), abs=1e-10)
        assert hf.closed_form_deviation < 1e-6


@pytest.mark.parametrize("model, boundary", [(TWO, 1.0), (THREE, 1.0), (THREE, 3.0)])
def test_closed_form_energy_is_continuous(model, boundary):
    below = hf_energy_closed_form(model, boundary - 1e-9, 1)
    above = hf_energy_closed_form(model, boundary + 1e-9, 1)
    assert below == pytest.approx(above, abs=1e-8)


@pytest.mark.parametrize("chi_value", [1.0001, 1.5, 2.0, 3.7, 25.0])
def test_two_level_stationary_angle_is_exact(chi_value):
    hf = hf_two_level(ModelParams.from_chi(12, chi_value))
    assert np.cos(hf.angles[0]) == pytest.approx(1 / chi_value, abs=1e-12)
    assert hf.closed_form_deviation < 1e-12


def test_three_level_just_above_each_boundary():
    grid = np.linspace(0.2, 5.0, 400)
    near_grid = grid[(np.abs(grid - 1) < 0.02) | (np.abs(grid - 3) < 0.02)]
    assert np.any(np.isclose(near_grid, 1.006015, atol=1e-6))
    chis = np.concatenate([np.linspace(1.0, 1.01, 101)[1:], np.linspace(3.0, 3.01, 101)[1:], near_grid])
    for chi_value in chis:
        hf = hf_three_level(ModelParams.from_chi(20, chi_value, model=THREE))
        assert hf.closed_form_deviation < 1e-6
        for numeric, expected in zip(hf.angles, hf_angles_closed_form(THREE, chi_value)):
            assert np.cos(numeric) ** 2 == pytest.approx(np.cos(expected) ** 2, abs=1e-6)
        assert hf.energy == pytest.approx(hf_energy_closed_form(THREE, chi_value, 20), rel=1e-13)


@pytest.mark.parametrize("model, boundary, below, above", [
    (TWO, 1.0, lambda c: 0.0, lambda c: -0.5 / c ** 3),
    (THREE, 1.0, lambda c: 0.0, lambda c: -0.5 / c ** 3),
    (THREE, 3.0, lambda c: -0.5 / c ** 3, lambda c: -2.0 / c ** 3),
])
def test_hf_energy_curvature_jumps_at_the_boundary(model, boundary, below, above):
    chis = boundary + 0.01 * np.arange(-30, 31)
    energies = [hartree_fock(ModelParams.from_chi(10, c, model=model)).energy / 10 for c in chis]
    curvature = second_derivative_series(chis, energies)
    centres = chis[1:-1]
    left, right = centres < boundary - 1e-9, centres > boundary + 1e-9
    np.testing.assert_allclose(curvature[left], below(centres[left]), atol=1e-4)
    np.testing.assert_allclose(curvature[right], above(centres[right]), atol=1e-4)

    jumps = find_jumps(curvature)
    assert len(jumps) == 1
    index, jump = jumps[0]
    assert abs(0.5 * (chis[index + 1] + chis[index + 2]) - boundary) <= 0.01 + 1e-9
    assert jump < 0


@settings(max_examples=50, deadline=None)
@given(alpha=st.floats(0.0, np.pi / 2), beta=st.floats(0.0, np.pi / 2))
def test_three_level_rotation_is_orthogonal(alpha, beta):
    rotation = three_level_rotation(alpha, beta)
    np.testing.assert_allclose(rotation @ rotation.T, np.eye(3), atol=1e-12)


@pytest.mark.parametrize("model, chi_value", [(TWO, 0.5), (TWO, 2.5), (THREE, 2.0), (THREE, 4.5)])
def test_density_is_a_projector(model, chi_value):
    hf = hartree_fock(ModelParams.from_chi(10, chi_value, model=model))
    density = hf.density_block
    np.testing.assert_allclose(density @ density, density, atol=1e-10)
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(density)), [0.0] * (model.levels - 1) + [1.0],
                               atol=1e-10)
    assert hf.occupations.sum() == pytest.approx(1.0)


def test_functionals_at_the_symmetric_point():
    assert two_level_energy_per_particle(0.0, 3.0) == pytest.approx(-0.5)
    assert three_level_energy_per_particle(0.0, 0.0, 3.0) == pytest.approx(-1.0)


def test_hf_rejects_single_particle_and_wrong_model():
    with pytest.raises(InvalidParametersError):
        hartree_fock(ModelParams(n_particles=1, v=1.0))
    with pytest.raises(InvalidParametersError):
        hf_three_level(ModelParams.from_chi(4, 1.0))
    with pytest.raises(InvalidParametersError):
        hf_angles_closed_form(TWO, -1.0)


@pytest.mark.parametrize("model", [TWO, THREE])
def test_variational_bound(model):
    for chi_value in np.linspace(0.0, 5.0, 21):
        params = ModelParams.from_chi(8, chi_value, model=model)
        assert solve_exact(params).energy <= hartree_fock(params).energy + 1e-10


def test_relative_correlation_energy_examples():
    assert relative_correlation_energy(-3.0, -3.0) == 0.0
    params = ModelParams(n_particles=2, v=1.0)
    e_exact, e_hf = solve_exact(params).energy, hartree_fock(params).energy
    assert e_hf == pytest.approx(-1.0)
    assert relative_correlation_energy(e_exact, e_hf) == pytest.approx(1 - 1 / np.sqrt(2), abs=1e-10)


def test_relative_correlation_energy_errors():
    with pytest.raises(InvalidParametersError):
        relative_correlation_energy(0.0, -1.0)
    with pytest.raises(VariationalBoundError):
        relative_correlation_energy(-1.0, -1.5)


def test_correlation_energy_falls_with_particle_number():
    values = []
    for n in (5, 10, 20, 50):
        params = ModelParams.from_chi(n, 2.0)
        values.append(relative_correlation_energy(solve_exact(params).energy, hartree_fock(params).energy))
    assert all(later < earlier for earlier, later in zip(values, values[1:]))
