import numpy as np
import pytest
from pydantic import ValidationError

from app.schemas.cloning import MachineParam
from app.schemas.state import BlochTwoQubit, MixParam
from app.services.cloning import (
    SI_LAMBDA,
    clone,
    clone_local,
    local_output_coherence,
    machine_param,
    positivity_survey,
    si_coefficients,
    si_machine,
)
from app.services.coherence import coherence_of
from app.services.states import mcs_mis_mixture
from app.utils.errors import MachineRangeError


def test_mu_from_lambda():
    """μ = 1 − 2λ локально и 1 − 4λ нелокально."""
    assert si_machine("local").mu == pytest.approx(2 / 3)
    assert si_machine("nonlocal").mu == pytest.approx(0.6)


def test_zero_lambda_keeps_input(random_states):
    """При λ = 0 локальный клонер не меняет нелокальную пару."""
    state = random_states(1)[0]
    outputs = clone(state, machine_param("local", 0.0))
    assert outputs.rho12 == state
    assert outputs.rho34 == state


@pytest.mark.parametrize("p", [0.0, 0.5, 0.8, 1.0])
def test_mcs_local_si_coherences(p):
    """Локальный SI: C(ρ̃12) = 16p/9, C(ρ̃13) = (1 + 4p)/3."""
    outputs = clone(mcs_mis_mixture(MixParam(p=p)), si_machine("local"))
    assert outputs.coherence.c12 == pytest.approx(16 * p / 9)
    assert outputs.coherence.c13 == pytest.approx((1 + 4 * p) / 3)
    assert outputs.coherence.c24 == pytest.approx(outputs.coherence.c13)


@pytest.mark.parametrize("p", [0.0, 0.5, 1.0])
def test_mcs_nonlocal_si_coherences(p):
    """Нелокальный SI: C(ρ̃12) = 9p/5, C(ρ̃13) = (1 + 6p)/5."""
    outputs = clone(mcs_mis_mixture(MixParam(p=p)), si_machine("nonlocal"))
    assert outputs.coherence.c12 == pytest.approx(9 * p / 5)
    assert outputs.coherence.c13 == pytest.approx((1 + 6 * p) / 5)


def test_nonlocal_si_local_pair():
    """Нелокальный SI: ρ̃13 = {0.6x, 0.6x, 0.2·I}."""
    state = BlochTwoQubit.from_arrays((0.5, 0.1, 0.2), (0.0, 0.3, 0.0), np.zeros((3, 3)))
    outputs = clone(state, si_machine("nonlocal"))
    assert np.allclose(outputs.rho13.x_vec, 0.6 * state.x_vec)
    assert np.allclose(outputs.rho13.y_vec, 0.6 * state.x_vec)
    assert np.allclose(outputs.rho13.t_mat, 0.2 * np.eye(3))


@pytest.mark.parametrize("M, mode", [(2, "local"), (4, "nonlocal")])
def test_si_coefficients_match_lambda(M, mode):
    """d² оптимального клонера равно λ состояние-независимой машины, c² + 2(M−1)d² = 1."""
    c, d = si_coefficients(M)
    assert d ** 2 == pytest.approx(SI_LAMBDA[mode])
    assert c ** 2 + 2 * (M - 1) * d ** 2 == pytest.approx(1.0)


@pytest.mark.parametrize("mode, lam", [("local", 0.1), ("local", 1 / 6), ("nonlocal", 0.05), ("nonlocal", 0.2)])
def test_local_output_formula(random_states, mode, lam):
    """C(ρ̃13) = 2‖x⊥‖ + 2λ(1 − k‖x⊥‖), C(ρ̃24) - то же для y."""
    machine = machine_param(mode, lam)
    for state in random_states(1000):
        outputs = clone(state, machine)
        assert outputs.coherence.c13 == pytest.approx(local_output_coherence(mode, state.x, lam), abs=1e-12)
        assert outputs.coherence.c24 == pytest.approx(local_output_coherence(mode, state.y, lam), abs=1e-12)


@pytest.mark.parametrize("mode", ["local", "nonlocal"])
def test_local_outputs_keep_coherence(random_states, mode, rng):
    """Локальные выходы всегда когерентны: C ≥ 2λ."""
    for state in random_states(1000):
        lam = rng.uniform(0, 0.25)
        outputs = clone(state, machine_param(mode, lam))
        assert outputs.coherence.c13 >= 2 * lam - 1e-12
        assert outputs.coherence.c24 >= 2 * lam - 1e-12


def test_nonlocal_scales_coherence(random_states, rng):
    """Нелокальный клонер: C(ρ̃12) = μ·C(ρ12)."""
    for state in random_states(1000):
        machine = machine_param("nonlocal", rng.uniform(0, 0.25))
        assert clone(state, machine).coherence.c12 == pytest.approx(machine.mu * coherence_of(state), abs=1e-12)


def test_local_decreases_coherence(random_states, rng):
    for state in random_states(100):
        machine = machine_param("local", rng.uniform(0.01, 0.5))
        assert clone(state, machine).coherence.c12 < coherence_of(state)


@pytest.mark.parametrize("mode, lam", [("local", 0.6), ("local", -0.1), ("nonlocal", 0.3)])
def test_machine_range(mode, lam):
    with pytest.raises(MachineRangeError):
        machine_param(mode, lam)


def test_mode_mismatch(mcs_state):
    """Нелокальная машина не подходит локальному клонеру."""
    with pytest.raises(MachineRangeError):
        clone_local(mcs_state, si_machine("nonlocal"))


def test_machine_param_alias():
    machine = MachineParam.model_validate({"mode": "local", "lambda": 0.25})
    assert machine.lambda_ == 0.25
    assert machine.model_dump(by_alias=True)["lambda"] == 0.25
    with pytest.raises(ValidationError):
        MachineParam(mode="global", lambda_=0.1)


def test_positivity_finding_at_zero_lambda():
    """При λ = 0 локальная пара {x, x, diag(0, 0, 1)} не является состоянием."""
    state = BlochTwoQubit.from_arrays((1, 0, 0), (0, 0, 0), np.zeros((3, 3)))
    survey = positivity_survey([state], machine_param("local", 0.0))
    assert survey.samples == 1
    assert survey.violations == 1
    assert survey.findings[0].pair == "rho13"
    assert survey.worst_min_eigenvalue == pytest.approx((1 - np.sqrt(5)) / 4)


def test_positivity_at_si_point(random_states):
    """В состояние-независимой точке выходы остаются состояниями."""
    survey = positivity_survey(random_states(50), si_machine("local"))
    assert survey.violations == 0
